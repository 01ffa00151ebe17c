"""Classical reference computations for Kronecker and plethysm
coefficients.  These are the ground truth the projector pipelines are
checked against, so they deliberately use nothing but character sums and
explicit group enumeration.

Every average here is an integer for structural reasons; a non-integral
result is raised as a ConsistencyError instead of being rounded, because
it means something upstream (characters, enumeration) is broken.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .characters import character_table
from .errors import ConsistencyError, InputError
from .partitions import Partition, check_partition, hook_dimension
from .permutations import cycle_type_census, full_group, wreath_product
from .specht import build_seminormal, invariant_dim


@dataclass
class CoefficientResult:
    value: int
    method: str
    inputs: dict
    millis: float = 0.0

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "inputs": self.inputs,
            "millis": self.millis,
        }


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ConsistencyError(f"{what} came out non-integral: {x}")
    return int(x)


def kron_char(lam: Partition, mu: Partition, nu: Partition) -> CoefficientResult:
    """Kronecker coefficient as the normalized character product sum
    (1/n!) sum over classes of |class| * chi_lam * chi_mu * chi_nu."""
    start = time.perf_counter()
    lam, mu, nu = check_partition(lam), check_partition(mu), check_partition(nu)
    n = sum(lam)
    if sum(mu) != n or sum(nu) != n:
        raise InputError(f"sizes differ: {sum(lam)}, {sum(mu)}, {sum(nu)}")
    table = character_table(n)
    total = 0
    for rho, size in zip(table.classes, table.class_sizes):
        total += size * table.chi(lam, rho) * table.chi(mu, rho) * table.chi(nu, rho)
    value = _exact_int(Fraction(total, factorial(n)), "Kronecker class sum")
    if value < 0:
        raise ConsistencyError(f"negative multiplicity {value}")
    return CoefficientResult(
        value,
        "character",
        {"lam": list(lam), "mu": list(mu), "nu": list(nu)},
        (time.perf_counter() - start) * 1000,
    )


def scaled_kron(lam: Partition, mu: Partition, nu: Partition) -> int:
    """d(lam) d(mu) d(nu) k(lam, mu, nu)."""
    k = kron_char(lam, mu, nu).value
    return hook_dimension(tuple(lam)) * hook_dimension(tuple(mu)) * hook_dimension(tuple(nu)) * k


def pleth_wreath(d: int, m: int, lam: Partition) -> CoefficientResult:
    """Plethysm coefficient a_lam(d, m) as the average of chi_lam over the
    wreath product S_m wr S_d, enumerated explicitly inside S_{md}."""
    start = time.perf_counter()
    lam = check_partition(lam)
    if d < 1 or m < 1:
        raise InputError("d and m must be positive")
    if sum(lam) != m * d:
        raise InputError(f"|lam| = {sum(lam)} but md = {m * d}")
    table = character_table(m * d)
    census = cycle_type_census(wreath_product(m, d))
    order = wreath_product(m, d).order()
    total = sum(count * table.chi(lam, rho) for rho, count in census.items())
    value = _exact_int(Fraction(total, order), "wreath average")
    if value < 0:
        raise ConsistencyError(f"negative multiplicity {value}")
    return CoefficientResult(
        value,
        "wreath",
        {"d": d, "m": m, "lam": list(lam)},
        (time.perf_counter() - start) * 1000,
    )


def kron_invariant_def(
    lam: Partition, mu: Partition, nu: Partition, *, dim_bound: int = 5000
) -> CoefficientResult:
    """Kronecker coefficient straight from its definition: the dimension of
    the invariant subspace of [lam] x [mu] x [nu] under the diagonal
    S_n action, computed as the exact rank of the averaged projector on
    explicit Specht matrices."""
    start = time.perf_counter()
    lam, mu, nu = check_partition(lam), check_partition(mu), check_partition(nu)
    n = sum(lam)
    if sum(mu) != n or sum(nu) != n:
        raise InputError(f"sizes differ: {sum(lam)}, {sum(mu)}, {sum(nu)}")
    reps = [build_seminormal(lam), build_seminormal(mu), build_seminormal(nu)]
    value = invariant_dim(reps, full_group(n), dim_bound=dim_bound)
    return CoefficientResult(
        value,
        "specht",
        {"lam": list(lam), "mu": list(mu), "nu": list(nu)},
        (time.perf_counter() - start) * 1000,
    )

"""Commuting Hermitian projectors on the k-fold tensor power of the group
algebra of S_n, composed into the pipelines whose image dimensions are
the Kronecker and plethysm coefficients.

Two evaluation paths exist and are cross-checked against each other:

* a sparse path on exact-rational state vectors (`StateVector`,
  `apply_*`), used by the verifier protocol and for small exhaustive
  checks;
* an integer batch path (`pipeline_trace_dense`,
  `check_projector_algebra`) that pushes many basis vectors through the
  stage sequence at once.  Amplitudes stay integer numerators over a
  running denominator; they are carried in float64 arrays purely for
  speed, with an l1-norm bound asserted below 2^53 before every stage so
  every intermediate is exactly representable.

`pipeline_trace_collapsed` is the independent closed-form route: it
expands every stage into its group sum and contracts with the per-factor
identity  trace(L_l R_tau) = z(type(tau)) [type(l) = type(tau)],
never touching a state vector.

All operators in play are real and rational in the permutation basis, so
no complex numbers appear anywhere.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np
from scipy import sparse as _sparse

from .characters import character_table
from .errors import BoundExceededError, ConsistencyError, InputError
from .partitions import Partition, check_partition, enumerate_partitions, hook_dimension
from .permutations import (
    Perm,
    SubgroupDescriptor,
    all_perms,
    block_permutations,
    centralizer_order,
    compose,
    cycle_type,
    enumerate_subgroup,
    full_group,
    identity,
    inverse,
    young_subgroup,
)

FLOAT_EXACT_LIMIT = 1 << 53  # float64 holds integers exactly below this
DENSE_DIM_LIMIT = 24**3  # 13824; one factor never exceeds 6! = 720
DENSE_FACTOR_LIMIT = 720


# ---------------------------------------------------------------------------
# stage and pipeline descriptions


@dataclass(frozen=True)
class Isotypic:
    """Projection of one tensor factor onto its lam-isotypic component,
    realized as (d(lam)/n!) sum_g chi_lam(g) L_g on that factor."""

    factor: int
    shape: Partition

    def describe(self) -> dict:
        return {"kind": "isotypic", "factor": self.factor, "shape": list(self.shape)}


@dataclass(frozen=True)
class InvariantAverage:
    """Average over a subgroup of the given one-sided actions,
    (1/|G|) sum_g prod of the listed (factor, side) actions of g."""

    group: SubgroupDescriptor
    actions: tuple[tuple[int, str], ...]  # (factor index, 'L' or 'R')

    def describe(self) -> dict:
        return {
            "kind": "invariant_average",
            "group": {
                "kind": self.group.kind,
                "degree": self.group.degree,
                "shape": list(self.group.shape),
                "m": self.group.m,
                "d": self.group.d,
            },
            "actions": [[f, side] for f, side in self.actions],
        }


Stage = Isotypic | InvariantAverage


@dataclass(frozen=True)
class Pipeline:
    n: int
    k: int
    stages: tuple[Stage, ...]
    label: str

    @property
    def dim(self) -> int:
        return factorial(self.n) ** self.k

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "k": self.k,
            "stages": [s.describe() for s in self.stages],
        }


def kron_pipeline(lam: Partition, mu: Partition, nu: Partition) -> Pipeline:
    """Isotypic projections on the three factors, the simultaneous-left
    invariant average over all of S_n, then one right Young-subgroup
    average per factor."""
    lam, mu, nu = check_partition(lam), check_partition(mu), check_partition(nu)
    n = sum(lam)
    if sum(mu) != n or sum(nu) != n:
        raise InputError(f"sizes differ: {sum(lam)}, {sum(mu)}, {sum(nu)}")
    stages: tuple[Stage, ...] = (
        Isotypic(0, lam),
        Isotypic(1, mu),
        Isotypic(2, nu),
        InvariantAverage(full_group(n), ((0, "L"), (1, "L"), (2, "L"))),
        InvariantAverage(young_subgroup(lam), ((0, "R"),)),
        InvariantAverage(young_subgroup(mu), ((1, "R"),)),
        InvariantAverage(young_subgroup(nu), ((2, "R"),)),
    )
    label = "kron(%s|%s|%s)" % (
        ",".join(map(str, lam)),
        ",".join(map(str, mu)),
        ",".join(map(str, nu)),
    )
    return Pipeline(n, 3, stages, label)


def truncated_kron_pipeline(lam: Partition, mu: Partition, nu: Partition) -> Pipeline:
    """The Kronecker pipeline without the right refinements; its trace is
    the coefficient rescaled by the three hook dimensions."""
    base = kron_pipeline(lam, mu, nu)
    return Pipeline(base.n, 3, base.stages[:4], base.label.replace("kron", "scaledkron"))


def pleth_pipeline(d: int, m: int, lam: Partition) -> Pipeline:
    """Single-factor pipeline: isotypic projection, left averages over the
    block Young subgroup and over block permutations (together: the
    wreath product), and the right Young-subgroup average."""
    lam = check_partition(lam)
    n = m * d
    if d < 1 or m < 1:
        raise InputError("d and m must be positive")
    if sum(lam) != n:
        raise InputError(f"|lam| = {sum(lam)} but md = {n}")
    stages: tuple[Stage, ...] = (
        Isotypic(0, lam),
        InvariantAverage(young_subgroup((m,) * d), ((0, "L"),)),
        InvariantAverage(block_permutations(m, d), ((0, "L"),)),
        InvariantAverage(young_subgroup(lam), ((0, "R"),)),
    )
    return Pipeline(n, 1, stages, f"pleth({d},{m}|{','.join(map(str, lam))})")


# ---------------------------------------------------------------------------
# sparse exact-rational state vectors

# a computational basis label: one permutation per tensor factor
TensorBasisState = tuple[Perm, ...]


@dataclass
class StateVector:
    """Sparse rational vector over k-tuples of permutations of degree n.
    Zero amplitudes are never stored."""

    n: int
    k: int
    amps: dict[TensorBasisState, Fraction]

    @staticmethod
    def basis_state(n: int, perms: tuple[Perm, ...]) -> "StateVector":
        return StateVector(n, len(perms), {tuple(perms): Fraction(1)})

    @staticmethod
    def zero(n: int, k: int) -> "StateVector":
        return StateVector(n, k, {})

    def is_zero(self) -> bool:
        return not self.amps

    def norm_sq(self) -> Fraction:
        return sum((a * a for a in self.amps.values()), Fraction(0))

    def inner(self, other: "StateVector") -> Fraction:
        if len(self.amps) > len(other.amps):
            return other.inner(self)
        return sum(
            (a * other.amps[key] for key, a in self.amps.items() if key in other.amps),
            Fraction(0),
        )

    def scaled(self, c) -> "StateVector":
        c = Fraction(c)
        if not c:
            return StateVector.zero(self.n, self.k)
        return StateVector(self.n, self.k, {key: a * c for key, a in self.amps.items()})

    def plus(self, other: "StateVector") -> "StateVector":
        out = dict(self.amps)
        for key, a in other.amps.items():
            s = out.get(key, Fraction(0)) + a
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return StateVector(self.n, self.k, out)

    def minus(self, other: "StateVector") -> "StateVector":
        return self.plus(other.scaled(-1))


def apply_action(state: StateVector, factor: int, side: str, g: Perm) -> StateVector:
    """One-sided action of g on one tensor factor: L sends sigma to
    g*sigma, R sends sigma to sigma*g^-1.  Pure basis relabeling."""
    if side not in ("L", "R"):
        raise InputError(f"side must be 'L' or 'R', got {side!r}")
    ginv = inverse(g)
    out: dict[tuple[Perm, ...], Fraction] = {}
    for key, amp in state.amps.items():
        comps = list(key)
        comps[factor] = compose(g, comps[factor]) if side == "L" else compose(comps[factor], ginv)
        out[tuple(comps)] = amp
    return StateVector(state.n, state.k, out)


def apply_isotypic(state: StateVector, factor: int, lam: Partition) -> StateVector:
    """Weak-Fourier-sampling projector on one factor:
    (d(lam)/n!) sum_g chi_lam(g) L_g."""
    lam = check_partition(lam)
    n = state.n
    if sum(lam) != n:
        raise InputError(f"|lam| = {sum(lam)} but degree is {n}")
    table = character_table(n)
    d = hook_dimension(lam)
    n_fact = factorial(n)
    out: dict[tuple[Perm, ...], Fraction] = {}
    for g in all_perms(n):
        chi = table.chi(lam, cycle_type(g))
        if not chi:
            continue
        coeff = Fraction(d * chi, n_fact)
        for key, amp in state.amps.items():
            comps = list(key)
            comps[factor] = compose(g, comps[factor])
            new_key = tuple(comps)
            s = out.get(new_key, Fraction(0)) + coeff * amp
            if s:
                out[new_key] = s
            else:
                out.pop(new_key, None)
    return StateVector(n, state.k, out)


def apply_invariant_average(state: StateVector, stage: InvariantAverage) -> StateVector:
    """(1/|G|) sum over the subgroup of the product of the stage's
    one-sided actions."""
    elements = enumerate_subgroup(stage.group)
    out: dict[tuple[Perm, ...], Fraction] = {}
    for g in elements:
        ginv = inverse(g)
        for key, amp in state.amps.items():
            comps = list(key)
            for f, side in stage.actions:
                comps[f] = compose(g, comps[f]) if side == "L" else compose(comps[f], ginv)
            new_key = tuple(comps)
            s = out.get(new_key, Fraction(0)) + amp
            if s:
                out[new_key] = s
            else:
                out.pop(new_key, None)
    inv_order = Fraction(1, len(elements))
    return StateVector(state.n, state.k, {k: a * inv_order for k, a in out.items()})


def apply_stage(state: StateVector, stage: Stage) -> StateVector:
    if isinstance(stage, Isotypic):
        return apply_isotypic(state, stage.factor, stage.shape)
    return apply_invariant_average(state, stage)


def apply_pipeline(p: Pipeline, state: StateVector) -> StateVector:
    for stage in p.stages:
        state = apply_stage(state, stage)
    return state


# ---------------------------------------------------------------------------
# indexed permutation space shared by the batch backends


class PermIndex:
    """S_n with a fixed basis order (lexicographic one-line; identity
    first) plus the multiplication and inverse index tables."""

    def __init__(self, n: int):
        self.n = n
        self.perms = all_perms(n)
        self.nf = len(self.perms)
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.inv = np.array([self.index[inverse(p)] for p in self.perms], dtype=np.int64)
        mult = np.empty((self.nf, self.nf), dtype=np.int64)
        for i, a in enumerate(self.perms):
            row = mult[i]
            for j, b in enumerate(self.perms):
                row[j] = self.index[compose(a, b)]
        self.mult = mult
        classes = enumerate_partitions(n)
        class_index = {rho: i for i, rho in enumerate(classes)}
        self.classes = classes
        self.type_index = np.array(
            [class_index[cycle_type(p)] for p in self.perms], dtype=np.int64
        )


@lru_cache(maxsize=None)
def perm_index(n: int) -> PermIndex:
    return PermIndex(n)


def _member_vector(space: PermIndex, group: SubgroupDescriptor) -> np.ndarray:
    member = np.zeros(space.nf, dtype=np.float64)
    for g in enumerate_subgroup(group):
        member[space.index[g]] = 1.0
    return member


# ---------------------------------------------------------------------------
# integer batch evaluator


class _FactorKernel:
    """Stage acting on a single tensor factor through an nf x nf integer
    kernel (stored as exact-integer-valued float64)."""

    def __init__(self, factor: int, kernel: np.ndarray, den: int):
        self.factor = factor
        self.kernel = kernel
        self.den = den
        self.l1 = int(np.abs(kernel).sum(axis=1).max())

    def apply(self, x: np.ndarray, k: int, nf: int) -> np.ndarray:
        rows = x.shape[0]
        pre = nf**self.factor
        post = nf ** (k - self.factor - 1)
        x4 = x.reshape(rows, pre, nf, post)
        tmp = x4.transpose(0, 1, 3, 2).reshape(-1, nf) @ self.kernel.T
        return tmp.reshape(rows, pre, post, nf).transpose(0, 1, 3, 2).reshape(rows, pre * nf * post)


class _SparseKernel:
    """Stage acting on several factors at once (the simultaneous-left
    average), applied as one sparse matrix over the full tensor basis."""

    def __init__(self, matrix: "_sparse.csr_matrix", den: int, l1: int):
        self.matrix = matrix
        self.den = den
        self.l1 = l1

    def apply(self, x: np.ndarray, k: int, nf: int) -> np.ndarray:
        return np.ascontiguousarray(self.matrix.dot(x.T).T)


@lru_cache(maxsize=256)
def _stage_kernel_cached(n: int, stage: Stage, k: int):
    """Kernels depend only on (n, k, stage), so pipelines sharing stages
    (every pipeline at one degree shares the left average, for instance)
    reuse them."""
    return _stage_kernel(perm_index(n), stage, k)


def _stage_kernel(space: PermIndex, stage: Stage, k: int):
    nf = space.nf
    if isinstance(stage, Isotypic):
        table = character_table(space.n)
        chi = np.array(
            [table.chi(stage.shape, rho) for rho in space.classes], dtype=np.float64
        )
        d = hook_dimension(stage.shape)
        ts = space.mult[:, space.inv]  # ts[t, s] = index of perm_t o perm_s^-1
        kernel = d * chi[space.type_index[ts]]
        return _FactorKernel(stage.factor, kernel, factorial(space.n))
    if len(stage.actions) == 1:
        (f, side) = stage.actions[0]
        member = _member_vector(space, stage.group)
        if side == "L":
            ts = space.mult[:, space.inv]  # kernel[t, s] = [t o s^-1 in G]
            kernel = member[ts]
        else:
            st = space.mult[space.inv, :]  # st[s, t] = s^-1 o t
            kernel = member[st].T  # kernel[t, s] = [s^-1 o t in G]
        return _FactorKernel(f, kernel, stage.group.order())
    # simultaneous action on several factors: one sparse matrix
    dim = nf**k
    sides = {f: side for f, side in stage.actions}
    cols = np.arange(dim, dtype=np.int64)
    digits = []
    rem = cols
    for _ in range(k):
        digits.append(rem % nf)
        rem = rem // nf
    digits = digits[::-1]  # digits[f] is the factor-f index of each column
    row_blocks = []
    col_blocks = []
    elements = enumerate_subgroup(stage.group)
    for g in elements:
        gi = space.index[g]
        gii = space.index[inverse(g)]
        new_digits = []
        for f in range(k):
            if f in sides:
                if sides[f] == "L":
                    new_digits.append(space.mult[gi][digits[f]])
                else:
                    new_digits.append(space.mult[digits[f], gii])
            else:
                new_digits.append(digits[f])
        rows = new_digits[0]
        for f in range(1, k):
            rows = rows * nf + new_digits[f]
        row_blocks.append(rows)
        col_blocks.append(cols)
    data = np.ones(len(elements) * dim, dtype=np.float64)
    matrix = _sparse.csr_matrix(
        (data, (np.concatenate(row_blocks), np.concatenate(col_blocks))),
        shape=(dim, dim),
    )
    return _SparseKernel(matrix, len(elements), len(elements))


class BatchEvaluator:
    """Applies a pipeline's stage sequence to batches of vectors with
    integer amplitudes.  Tracks the common denominator and an l1 bound
    guaranteeing float64 exactness."""

    def __init__(self, p: Pipeline):
        self.pipeline = p
        self.space = perm_index(p.n)
        if self.space.nf > DENSE_FACTOR_LIMIT or p.dim > DENSE_DIM_LIMIT:
            raise BoundExceededError(
                f"dense evaluation bound exceeded for {p.label}: dim {p.dim}"
            )
        self.kernels = [_stage_kernel_cached(p.n, s, p.k) for s in p.stages]
        self.denominator = 1
        for kern in self.kernels:
            self.denominator *= kern.den

    def check_bound(self, start_max_abs: int) -> None:
        bound = start_max_abs
        for kern in self.kernels:
            bound *= kern.l1
            if bound >= FLOAT_EXACT_LIMIT:
                raise BoundExceededError(
                    f"integer amplitudes for {self.pipeline.label} would exceed "
                    "exact float64 range"
                )

    def apply(self, x: np.ndarray, *, start_max_abs: int = 1) -> np.ndarray:
        """Push batch rows through every stage in pipeline order.  Returns
        integer-valued float64 amplitudes over self.denominator."""
        self.check_bound(start_max_abs)
        for kern in self.kernels:
            x = kern.apply(x, self.pipeline.k, self.space.nf)
        return x

    def apply_stages(
        self, x: np.ndarray, stage_indices, *, start_max_abs: int = 1
    ) -> tuple[np.ndarray, int]:
        """Apply a subset of stages (in the given order); returns the batch
        and the denominator for that subset."""
        den = 1
        bound = start_max_abs
        for i in stage_indices:
            bound *= self.kernels[i].l1
            if bound >= FLOAT_EXACT_LIMIT:
                raise BoundExceededError("stage subset exceeds exact float64 range")
            x = self.kernels[i].apply(x, self.pipeline.k, self.space.nf)
            den *= self.kernels[i].den
        return x, den


def _basis_batch(dim: int, cols, dtype=np.float64) -> np.ndarray:
    x = np.zeros((len(cols), dim), dtype=dtype)
    x[np.arange(len(cols)), cols] = 1.0
    return x


def _exact_int_array(x: np.ndarray) -> np.ndarray:
    r = np.rint(x)
    if not np.all(np.abs(x - r) == 0.0):
        raise ConsistencyError("batch amplitudes drifted off the integers")
    return r.astype(np.int64)


def _is_left_translation_equivariant(p: Pipeline) -> bool:
    """True when every stage commutes with simultaneous left translation
    on all factors: isotypic stages (central class sums), right-side-only
    averages, and the full-group all-factor left average qualify."""
    for stage in p.stages:
        if isinstance(stage, Isotypic):
            continue
        if all(side == "R" for _, side in stage.actions):
            continue
        if (
            stage.group.kind == "full"
            and len(stage.actions) == p.k
            and all(side == "L" for _, side in stage.actions)
            and sorted(f for f, _ in stage.actions) == list(range(p.k))
        ):
            continue
        return False
    return True


def pipeline_trace_dense(
    p: Pipeline, *, strategy: str = "auto", chunk_rows: int = 1024
) -> int:
    """Exact trace of the composed pipeline operator, by applying the full
    stage sequence to basis vectors and summing diagonal entries.

    strategy:
      'full'       every one of the (n!)^k basis vectors;
      'left_orbit' only basis vectors whose first factor is the identity,
                   times n!.  Valid because every stage of the Kronecker
                   and truncated templates commutes with simultaneous
                   left translation, which moves the diagonal entry of
                   (sigma_1, ..., sigma_k) onto (id, sigma_1^-1 sigma_2,
                   ...) without changing it; the strategies are asserted
                   equal on small instances by the test suite.
      'auto'       'full' below 4096 dimensions, else 'left_orbit'.
    """
    ev = BatchEvaluator(p)
    dim = p.dim
    nf = ev.space.nf
    if strategy == "auto":
        strategy = "full" if dim <= 4096 or not _is_left_translation_equivariant(p) else "left_orbit"
    if strategy == "left_orbit":
        if not _is_left_translation_equivariant(p):
            raise InputError(f"pipeline {p.label} is not left-translation equivariant")
        cols = np.arange(dim // nf, dtype=np.int64)  # flat indices with factor 0 = id
        multiplier = nf
    elif strategy == "full":
        cols = np.arange(dim, dtype=np.int64)
        multiplier = 1
    else:
        raise InputError(f"unknown strategy {strategy!r}")
    total = 0
    for start in range(0, len(cols), chunk_rows):
        chunk = cols[start : start + chunk_rows]
        out = ev.apply(_basis_batch(dim, chunk))
        diag = _exact_int_array(out[np.arange(len(chunk)), chunk])
        total += int(sum(int(v) for v in diag))
    value = Fraction(total * multiplier, ev.denominator)
    if value.denominator != 1:
        raise ConsistencyError(f"dense trace of {p.label} is not integral: {value}")
    if value < 0:
        raise ConsistencyError(f"dense trace of {p.label} is negative: {value}")
    return int(value)


# ---------------------------------------------------------------------------
# collapsed (closed-form) trace


@lru_cache(maxsize=None)
def _shifted_class_counts(n: int) -> np.ndarray:
    """counts[a, b, c] = number of permutations l of type class_a with
    type(l * rep_b^-1) = class_c, where rep_b is a fixed representative
    of class_b.  This is a class function of the representative."""
    classes = enumerate_partitions(n)
    class_index = {rho: i for i, rho in enumerate(classes)}
    reps = {}
    for pi in all_perms(n):
        reps.setdefault(cycle_type(pi), pi)
    p = len(classes)
    counts = np.zeros((p, p, p), dtype=np.int64)
    rep_invs = [inverse(reps[rho]) for rho in classes]
    for l in all_perms(n):
        a = class_index[cycle_type(l)]
        for b in range(p):
            c = class_index[cycle_type(compose(l, rep_invs[b]))]
            counts[a, b, c] += 1
    return counts


def _collapsed_template(p: Pipeline):
    """Split a kron/pleth-template pipeline into per-factor isotypic
    shapes, per-factor right groups, and the left-acting stage list."""
    iso: dict[int, Partition] = {}
    right: dict[int, SubgroupDescriptor] = {}
    left: list[SubgroupDescriptor] = []
    for stage in p.stages:
        if isinstance(stage, Isotypic):
            if stage.factor in iso:
                raise InputError("two isotypic stages on one factor")
            iso[stage.factor] = stage.shape
        elif all(side == "R" for _, side in stage.actions) and len(stage.actions) == 1:
            f = stage.actions[0][0]
            if f in right:
                raise InputError("two right averages on one factor")
            right[f] = stage.group
        elif all(side == "L" for _, side in stage.actions) and sorted(
            f for f, _ in stage.actions
        ) == list(range(p.k)):
            left.append(stage.group)
        else:
            raise InputError(f"stage {stage} does not fit the collapsed template")
    if sorted(iso) != list(range(p.k)):
        raise InputError("collapsed trace needs an isotypic stage on every factor")
    return iso, right, left


@lru_cache(maxsize=None)
def _left_census(n: int, groups: tuple[SubgroupDescriptor, ...]):
    """Cycle-type census of the composed left-acting elements (one product
    element per tuple of choices from the groups' sums), as a sorted tuple
    of (class, count), plus the product of the group orders."""
    elements = [identity(n)]
    order = 1
    for g in groups:
        elements = [compose(a, b) for a in elements for b in enumerate_subgroup(g)]
        order *= g.order()
    census = Counter(cycle_type(w) for w in elements)
    return tuple(sorted(census.items())), order


@lru_cache(maxsize=None)
def _factor_contraction(
    n: int, shape: Partition, right_group: SubgroupDescriptor | None
) -> tuple:
    """Per-factor trace contribution as a function of the left element's
    class: T(class b) = sum over right-subgroup classes rho_h of
    census(rho_h) * z(rho_h) * sum_{l ~ rho_h} chi_shape(l w_b^-1)."""
    table = character_table(n)
    classes = list(table.classes)
    class_index = {rho: i for i, rho in enumerate(classes)}
    counts = _shifted_class_counts(n)
    chi_col = [table.chi(shape, rho) for rho in classes]
    if right_group is not None:
        census = Counter()
        for h in enumerate_subgroup(right_group):
            census[cycle_type(h)] += 1
    else:
        census = Counter({(1,) * n: 1})
    out = []
    for b in range(len(classes)):
        total = 0
        for rho_h, cnt in census.items():
            a = class_index[rho_h]
            inner = sum(int(counts[a, b, c]) * chi_col[c] for c in range(len(classes)))
            total += cnt * centralizer_order(rho_h) * inner
        out.append(total)
    return tuple(out)


def pipeline_trace_collapsed(p: Pipeline) -> int:
    """Exact trace by group-sum contraction: expand stages into sums over
    group elements and contract factor by factor with
    trace(L_l R_tau) = z(type(tau)) [type(l) = type(tau)]."""
    iso, right, left = _collapsed_template(p)
    n = p.n
    table = character_table(n)
    classes = list(table.classes)
    class_index = {rho: i for i, rho in enumerate(classes)}

    census_items, left_order = _left_census(n, tuple(left))
    factor_t = [_factor_contraction(n, iso[f], right.get(f)) for f in range(p.k)]

    grand = 0
    for rho_w, cnt in census_items:
        b = class_index[rho_w]
        prod = cnt
        for f in range(p.k):
            prod *= factor_t[f][b]
        grand += prod

    numer = grand
    for f in range(p.k):
        numer *= hook_dimension(iso[f])
    denom = left_order * factorial(n) ** p.k
    for f in range(p.k):
        denom *= right[f].order() if f in right else 1
    value = Fraction(numer, denom)
    if value.denominator != 1:
        raise ConsistencyError(f"collapsed trace of {p.label} is not integral: {value}")
    if value < 0:
        raise ConsistencyError(f"collapsed trace of {p.label} is negative: {value}")
    return int(value)


def truncated_kron_trace(
    lam: Partition, mu: Partition, nu: Partition, *, method: str = "dense"
) -> int:
    """Trace of the Kronecker pipeline without the right refinements;
    equals d(lam) d(mu) d(nu) k(lam, mu, nu)."""
    p = truncated_kron_pipeline(lam, mu, nu)
    if method == "dense":
        return pipeline_trace_dense(p)
    if method == "collapsed":
        return pipeline_trace_collapsed(p)
    raise InputError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# projector algebra checks


@dataclass
class AlgebraReport:
    pipeline_label: str
    mode: str  # 'exhaustive' or 'sampled'
    stage_idempotent: list[bool]
    stage_symmetric: list[bool]
    pair_commutes: dict[tuple[int, int], bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_projector_algebra(
    p: Pipeline,
    *,
    sample_size: int = 192,
    seed: int = 7,
    exhaustive_limit: int = 1728,
) -> AlgebraReport:
    """Verify per stage: idempotence and symmetry; and for every stage
    pair: commutation, by applying both orders to basis vectors.  Below
    exhaustive_limit dimensions every basis vector is used; above it a
    seeded sample (symmetry then checks the sampled submatrix)."""
    ev = BatchEvaluator(p)
    dim = p.dim
    rng = np.random.default_rng(seed)
    if dim <= exhaustive_limit:
        mode = "exhaustive"
        cols = np.arange(dim, dtype=np.int64)
    else:
        mode = "sampled"
        cols = np.sort(rng.choice(dim, size=min(sample_size, dim), replace=False))
    base = _basis_batch(dim, cols)
    failures: list[str] = []
    num_stages = len(p.stages)

    once: list[np.ndarray] = []
    bounds: list[int] = []
    idempotent: list[bool] = []
    symmetric: list[bool] = []
    for i in range(num_stages):
        l1 = ev.kernels[i].l1
        den = ev.kernels[i].den
        out1, _ = ev.apply_stages(base.copy(), [i])
        out2, _ = ev.apply_stages(out1.copy(), [i], start_max_abs=l1)
        a = _exact_int_array(out2)  # stage applied twice, over den^2
        b = _exact_int_array(out1)  # stage applied once, over den
        # S^2 = S  <=>  a / den^2 == b / den  <=>  a == b * den
        if int(np.abs(b).max(initial=0)) * den >= 2**62:
            raise BoundExceededError("idempotence comparison would overflow int64")
        idem = bool(np.array_equal(a, b * np.int64(den)))
        idempotent.append(idem)
        if not idem:
            failures.append(f"stage {i} not idempotent")
        # rows of out1 are stage columns: out1[r, t] = S[t, cols[r]]
        sub = _exact_int_array(out1[:, cols])  # sub[r, r'] = S[cols[r'], cols[r]]
        sym = bool(np.array_equal(sub, sub.T))
        symmetric.append(sym)
        if not sym:
            failures.append(f"stage {i} not symmetric")
        once.append(out1)
        bounds.append(l1)

    pair_commutes: dict[tuple[int, int], bool] = {}
    for i in range(num_stages):
        for j in range(i + 1, num_stages):
            ij, _ = ev.apply_stages(once[i].copy(), [j], start_max_abs=bounds[i])
            ji, _ = ev.apply_stages(once[j].copy(), [i], start_max_abs=bounds[j])
            same = bool(np.array_equal(_exact_int_array(ij), _exact_int_array(ji)))
            pair_commutes[(i, j)] = same
            if not same:
                failures.append(f"stages {i} and {j} do not commute")
    return AlgebraReport(p.label, mode, idempotent, symmetric, pair_commutes, failures)

"""Irreducible S_n matrices in Young's seminormal form, all entries exact
rationals, plus subgroup-invariant dimensions computed from them.

The generator matrix convention: for an adjacent transposition s_k and a
standard tableau T, let D be the axial distance from k to k+1 in T,
D = (col(k+1) - row(k+1)) - (col(k) - row(k)).  If swapping k and k+1
breaks standardness the diagonal entry at T is 1/D (then D = +-1);
otherwise the pair (T, T') with T' = s_k T carries the 2x2 block

    [[1/D, 1 - 1/D^2],
     [1,   -1/D     ]]

anchored at whichever of T, T' comes first in the basis order.  The form
is rational, not unitary; everything downstream only needs traces and
ranks, which are basis-independent.  The Coxeter relations and the
character traces are the tests that pin the convention down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundExceededError, ConsistencyError, InputError
from .partitions import Partition, check_partition, enumerate_syt
from .permutations import (
    Perm,
    SubgroupDescriptor,
    check_perm,
    enumerate_subgroup,
    identity,
)
from .ratlinalg import (
    Matrix,
    identity_matrix,
    mat_eq,
    mat_kron,
    mat_mul,
    mat_scale,
    mat_trace,
    rank,
    zero_matrix,
)


def _cell_of(tab, value) -> tuple[int, int]:
    for r, row in enumerate(tab):
        for c, x in enumerate(row):
            if x == value:
                return r, c
    raise ValueError(f"{value} not in tableau")


def _swap_values(tab, a, b):
    return tuple(tuple(b if x == a else a if x == b else x for x in row) for row in tab)


@dataclass
class SpechtRep:
    """Matrices of the irreducible S_n representation of type shape."""

    shape: Partition
    basis: tuple  # standard tableaux, in enumerate_syt order
    generators: list[Matrix]  # generators[k-1] is the matrix of (k, k+1)
    _matrix_cache: dict[Perm, Matrix] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, pi: Perm) -> Matrix:
        """Matrix of pi: generator product along an adjacent-transposition
        factorization (bubble sort of the one-line form).  Cached."""
        pi = check_perm(pi)
        if len(pi) != self.n:
            raise InputError(f"permutation degree {len(pi)} != {self.n}")
        cached = self._matrix_cache.get(pi)
        if cached is not None:
            return cached
        # sort pi to the identity by right-multiplying adjacent swaps:
        # pi * s_{a1} * ... * s_{am} = id  =>  pi = s_{am} * ... * s_{a1}
        word = []
        q = list(pi)
        done = False
        while not done:
            done = True
            for i in range(len(q) - 1):
                if q[i] > q[i + 1]:
                    q[i], q[i + 1] = q[i + 1], q[i]
                    word.append(i)  # s_{i+1}, stored 0-based
                    done = False
        mat = identity_matrix(self.dim)
        for k in reversed(word):
            mat = mat_mul(mat, self.generators[k])
        self._matrix_cache[pi] = mat
        return mat

    def populate_group_cache(self) -> None:
        """Fill the matrix cache for all of S_n by walking the Cayley graph
        (one generator multiplication per element instead of a full
        factorization per query)."""
        n = self.n
        ident = identity(n)
        self._matrix_cache[ident] = identity_matrix(self.dim)
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                mg = self._matrix_cache[g]
                for k in range(n - 1):
                    h = list(g)
                    h[k], h[k + 1] = h[k + 1], h[k]  # h = g * s_{k+1}
                    h = tuple(h)
                    if h not in self._matrix_cache:
                        self._matrix_cache[h] = mat_mul(mg, self.generators[k])
                        nxt.append(h)
            frontier = nxt


def build_seminormal(lam: Partition) -> SpechtRep:
    lam = check_partition(lam) if lam else ()
    if not lam:
        raise InputError("empty shape has no representation")
    basis = enumerate_syt(lam)
    index = {t: i for i, t in enumerate(basis)}
    n = sum(lam)
    dim = len(basis)
    generators = []
    for k in range(1, n):
        mat = zero_matrix(dim, dim)
        seen = set()
        for t_idx, tab in enumerate(basis):
            if t_idx in seen:
                continue
            rk, ck = _cell_of(tab, k)
            rk1, ck1 = _cell_of(tab, k + 1)
            dist = (ck1 - rk1) - (ck - rk)
            swapped = _swap_values(tab, k, k + 1)
            if swapped not in index:
                # same row or same column: axial distance is +-1
                mat[t_idx][t_idx] = Fraction(1, dist)
                seen.add(t_idx)
                continue
            s_idx = index[swapped]
            if s_idx < t_idx:
                t_idx, s_idx = s_idx, t_idx
                dist = -dist
            a = Fraction(1, dist)
            mat[t_idx][t_idx] = a
            mat[t_idx][s_idx] = 1 - a * a
            mat[s_idx][t_idx] = Fraction(1)
            mat[s_idx][s_idx] = -a
            seen.update((t_idx, s_idx))
        generators.append(mat)
    return SpechtRep(lam, basis, generators)


def rep_matrix(rep: SpechtRep, pi: Perm) -> Matrix:
    return rep.matrix(pi)


def check_coxeter(rep: SpechtRep) -> None:
    """Exact generator relations; raises on any failure."""
    gens = rep.generators
    ident = identity_matrix(rep.dim)
    for k, m in enumerate(gens):
        if not mat_eq(mat_mul(m, m), ident):
            raise ConsistencyError(f"s_{k + 1}^2 != 1 for shape {rep.shape}")
    for k in range(len(gens) - 1):
        lhs = mat_mul(gens[k], mat_mul(gens[k + 1], gens[k]))
        rhs = mat_mul(gens[k + 1], mat_mul(gens[k], gens[k + 1]))
        if not mat_eq(lhs, rhs):
            raise ConsistencyError(f"braid relation fails at k={k + 1}, shape {rep.shape}")
    for k in range(len(gens)):
        for l in range(k + 2, len(gens)):
            if not mat_eq(mat_mul(gens[k], gens[l]), mat_mul(gens[l], gens[k])):
                raise ConsistencyError(
                    f"distant generators s_{k + 1}, s_{l + 1} do not commute, shape {rep.shape}"
                )


DEFAULT_DIM_BOUND = 5000


def invariant_dim(
    reps: list[SpechtRep],
    subgroup: SubgroupDescriptor,
    *,
    dim_bound: int = DEFAULT_DIM_BOUND,
) -> int:
    """Dimension of the subgroup-invariant subspace of the tensor product
    of the given representations under the diagonal action.

    Averages the tensor action over the subgroup into an exact projector
    P, verifies P^2 = P and rank(P) = trace(P), and returns the rank.
    """
    if not reps:
        raise InputError("need at least one representation")
    n = reps[0].n
    if any(r.n != n for r in reps):
        raise InputError("representations must share one degree")
    if subgroup.degree != n:
        raise InputError(f"subgroup degree {subgroup.degree} != {n}")
    total_dim = 1
    for r in reps:
        total_dim *= r.dim
    if total_dim > dim_bound:
        raise BoundExceededError(
            f"tensor dimension {total_dim} exceeds bound {dim_bound}"
        )
    elements = enumerate_subgroup(subgroup)
    for r in reps:
        # one Cayley-graph sweep beats per-element factorizations once the
        # subgroup is more than a sliver of S_n
        if len(elements) > 4 * n:
            r.populate_group_cache()
    acc = zero_matrix(total_dim, total_dim)
    for g in elements:
        term = reps[0].matrix(g)
        for r in reps[1:]:
            term = mat_kron(term, r.matrix(g))
        for i in range(total_dim):
            row_acc, row_term = acc[i], term[i]
            for j in range(total_dim):
                if row_term[j]:
                    row_acc[j] += row_term[j]
    inv = Fraction(1, len(elements))
    proj = mat_scale(acc, inv)
    if not mat_eq(mat_mul(proj, proj), proj):
        raise ConsistencyError(f"group average over {subgroup.label()} is not idempotent")
    tr = mat_trace(proj)
    if tr.denominator != 1:
        raise ConsistencyError(f"projector trace {tr} is not integral")
    rk = rank(proj)
    if rk != tr:
        raise ConsistencyError(f"rank {rk} != trace {tr} for {subgroup.label()}")
    return rk

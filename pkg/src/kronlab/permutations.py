"""Permutations, conjugacy classes, Young subgroups and wreath products.

A permutation of degree n is a tuple ``images`` of length n with
``images[i] = pi(i+1)``, i.e. one-line notation on {1..n}.  Composition
is ``compose(a, b)(x) = a(b(x))`` everywhere in the package; the
character-consistency tests pin this convention down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import InputError
from .partitions import Partition, check_partition

Perm = tuple[int, ...]


def check_perm(images) -> Perm:
    pi = tuple(int(x) for x in images)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise InputError(f"{pi} is not a permutation of 1..{len(pi)}")
    return pi


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(a: Perm, b: Perm) -> Perm:
    """(a ∘ b)(x) = a(b(x))."""
    if len(a) != len(b):
        raise InputError(f"degree mismatch: {len(a)} vs {len(b)}")
    return tuple(a[x - 1] for x in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x - 1] = i + 1
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Perm:
    """The transposition (i j) inside S_n."""
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return tuple(images)


def from_cycles(n: int, cycles) -> Perm:
    """Build a permutation of S_n from disjoint cycles, e.g. [(1,2),(3,4)]."""
    images = list(range(1, n + 1))
    for cyc in cycles:
        for k in range(len(cyc)):
            images[cyc[k] - 1] = cyc[(k + 1) % len(cyc)]
    return check_perm(images)


def cycle_type(pi: Perm) -> Partition:
    """Sorted cycle lengths, as a partition of the degree."""
    n = len(pi)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = pi[x] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def sign_of_type(rho: Partition) -> int:
    n = sum(rho)
    return -1 if (n - len(rho)) % 2 else 1


def centralizer_order(rho: Partition) -> int:
    """z_rho = prod_i i^{m_i} m_i! where m_i = multiplicity of part i."""
    rho = check_partition(rho) if rho else ()
    z = 1
    for part in set(rho):
        m = rho.count(part)
        z *= part**m * factorial(m)
    return z


def class_size(rho: Partition) -> int:
    n = sum(rho)
    return factorial(n) // centralizer_order(rho)


def all_perms(n: int) -> list[Perm]:
    """All of S_n in lexicographic one-line order; identity comes first."""
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def wreath_embed(sigma: Perm, m: int) -> Perm:
    """Embed sigma in S_d as the block permutation of d consecutive blocks
    of size m inside S_{md}: position (a-1)m + b goes to (sigma(a)-1)m + b."""
    d = len(sigma)
    images = [0] * (m * d)
    for a in range(1, d + 1):
        for b in range(1, m + 1):
            images[(a - 1) * m + b - 1] = (sigma[a - 1] - 1) * m + b
    return tuple(images)


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A named subgroup of S_degree.

    kinds:
      'full'         all of S_n                        (param: none)
      'young'        S_mu block subgroup               (param: shape mu)
      'wreath'       S_m wr S_d inside S_{md}          (param: (m, d))
      'block_perms'  image of S_d permuting m-blocks   (param: (m, d))
    """

    kind: str
    degree: int
    shape: Partition = ()
    m: int = 0
    d: int = 0

    def order(self) -> int:
        if self.kind == "full":
            return factorial(self.degree)
        if self.kind == "young":
            out = 1
            for p in self.shape:
                out *= factorial(p)
            return out
        if self.kind == "wreath":
            return factorial(self.m) ** self.d * factorial(self.d)
        if self.kind == "block_perms":
            return factorial(self.d)
        raise InputError(f"unknown subgroup kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "full":
            return f"S{self.degree}"
        if self.kind == "young":
            return "S(" + ",".join(map(str, self.shape)) + ")"
        if self.kind == "wreath":
            return f"S{self.m}wrS{self.d}"
        if self.kind == "block_perms":
            return f"blocks({self.m}^{self.d})"
        raise InputError(f"unknown subgroup kind {self.kind!r}")

    def contains(self, pi: Perm) -> bool:
        """Membership test independent of the enumeration."""
        if len(pi) != self.degree:
            return False
        if self.kind == "full":
            return True
        if self.kind == "young":
            start = 0
            for p in self.shape:
                block = set(range(start + 1, start + p + 1))
                if any(pi[x - 1] not in block for x in block):
                    return False
                start += p
            return True
        if self.kind == "wreath":
            return self._block_map(pi) is not None
        if self.kind == "block_perms":
            blocks = self._block_map(pi)
            if blocks is None:
                return False
            return pi == wreath_embed(blocks, self.m)
        raise InputError(f"unknown subgroup kind {self.kind!r}")

    def _block_map(self, pi: Perm) -> Perm | None:
        """Induced permutation of the d size-m blocks, or None if pi does
        not map blocks onto blocks."""
        m, d = self.m, self.d
        images = []
        for a in range(d):
            targets = {(pi[a * m + b] - 1) // m for b in range(m)}
            if len(targets) != 1:
                return None
            images.append(targets.pop() + 1)
        if sorted(images) != list(range(1, d + 1)):
            return None
        return tuple(images)


def full_group(n: int) -> SubgroupDescriptor:
    return SubgroupDescriptor("full", n)


def young_subgroup(mu: Partition, degree: int | None = None) -> SubgroupDescriptor:
    mu = check_partition(mu)
    n = sum(mu)
    if degree is not None and degree != n:
        raise InputError(f"Young subgroup shape {mu} does not fill degree {degree}")
    return SubgroupDescriptor("young", n, shape=mu)


def wreath_product(m: int, d: int) -> SubgroupDescriptor:
    if m < 1 or d < 1:
        raise InputError("wreath product needs m, d >= 1")
    return SubgroupDescriptor("wreath", m * d, m=m, d=d)


def block_permutations(m: int, d: int) -> SubgroupDescriptor:
    if m < 1 or d < 1:
        raise InputError("block permutations need m, d >= 1")
    return SubgroupDescriptor("block_perms", m * d, m=m, d=d)


@lru_cache(maxsize=None)
def enumerate_subgroup(g: SubgroupDescriptor) -> tuple[Perm, ...]:
    """All elements, each exactly once, in a deterministic order."""
    n = g.degree
    if g.kind == "full":
        return tuple(all_perms(n))
    if g.kind == "young":
        blocks = []
        start = 0
        for p in g.shape:
            blocks.append(list(itertools.permutations(range(start + 1, start + p + 1))))
            start += p
        out = []
        for pieces in itertools.product(*blocks):
            images = [0] * n
            start = 0
            for p, piece in zip(g.shape, pieces):
                for off, img in enumerate(piece):
                    images[start + off] = img
                start += p
            out.append(tuple(images))
        return tuple(out)
    if g.kind == "block_perms":
        return tuple(wreath_embed(s, g.m) for s in all_perms(g.d))
    if g.kind == "wreath":
        base = enumerate_subgroup(young_subgroup((g.m,) * g.d))
        tops = enumerate_subgroup(block_permutations(g.m, g.d))
        out = [compose(y, t) for y in base for t in tops]
        if len(set(out)) != g.order():
            raise AssertionError("wreath enumeration produced duplicates")
        return tuple(out)
    raise InputError(f"unknown subgroup kind {g.kind!r}")


def cycle_type_census(g: SubgroupDescriptor) -> dict[Partition, int]:
    """How many elements of each cycle type the subgroup contains."""
    census: dict[Partition, int] = {}
    for pi in enumerate_subgroup(g):
        t = cycle_type(pi)
        census[t] = census.get(t, 0) + 1
    return census


def encode_permutation(pi: Perm) -> str:
    """n^2 bits: the permutation matrix (row i has its 1 in column pi(i)),
    read row-wise."""
    n = len(pi)
    rows = []
    for i in range(n):
        row = ["0"] * n
        row[pi[i] - 1] = "1"
        rows.append("".join(row))
    return "".join(rows)


def decode_permutation(bits: str) -> Perm:
    """Inverse of encode_permutation; rejects non permutation matrices."""
    if any(c not in "01" for c in bits):
        raise InputError("permutation encoding must be 0/1 characters")
    n = round(len(bits) ** 0.5)
    if n * n != len(bits):
        raise InputError(f"encoding length {len(bits)} is not a square")
    images = []
    for i in range(n):
        row = bits[i * n : (i + 1) * n]
        if row.count("1") != 1:
            raise InputError(f"row {i + 1} of the matrix is not one-hot")
        images.append(row.index("1") + 1)
    if sorted(images) != list(range(1, n + 1)):
        raise InputError("matrix columns are not one-hot")
    return tuple(images)

"""Exact irreducible characters of S_n via the Murnaghan-Nakayama recursion.

Values are plain integers.  Tables carry classes in the same
reverse-lexicographic cycle-type order the partition enumeration uses,
so row/column indices cross-reference cleanly everywhere else.

Tables are cached on disk as JSON, one file per n, under the directory
named by the KRONLAB_CACHE environment variable (default
``./.kronlab-cache``).  Cached files are re-validated by the
orthogonality relations on load and silently recomputed if corrupt.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from pathlib import Path

from .errors import ConsistencyError, InputError
from .partitions import Partition, check_partition, enumerate_partitions, hook_dimension
from .permutations import class_size, centralizer_order

DEFAULT_CACHE_DIR = ".kronlab-cache"
CACHE_ENV_VAR = "KRONLAB_CACHE"


def _border_strip_removals(lam: Partition, length: int) -> list[tuple[Partition, int]]:
    """All ways to remove a border strip of the given length from lam.

    Works on the beta-set (first-column hook lengths): removing a strip
    of length k moves one beta number down by k; the strip height is the
    number of beta numbers jumped over.
    """
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    beta_set = set(beta)
    out = []
    for i, b in enumerate(beta):
        target = b - length
        if target < 0 or target in beta_set:
            continue
        height = sum(1 for c in beta if target < c < b)
        new_beta = sorted((beta_set - {b}) | {target}, reverse=True)
        new_lam = tuple(nb - (ell - 1 - j) for j, nb in enumerate(new_beta))
        new_lam = tuple(p for p in new_lam if p > 0)
        out.append((new_lam, height))
    return out


@lru_cache(maxsize=None)
def mn_character(lam: Partition, rho: Partition) -> int:
    """Character of the irreducible of type lam at the class of type rho.

    The recursion strips a border strip of size rho[0] (the largest part
    first) and recurses on the remainder with sign (-1)^height.
    """
    lam = check_partition(lam) if lam else ()
    rho = check_partition(rho) if rho else ()
    if sum(lam) != sum(rho):
        raise InputError(f"|lam| = {sum(lam)} but |rho| = {sum(rho)}")
    if not lam:
        return 1
    total = 0
    for new_lam, height in _border_strip_removals(lam, rho[0]):
        total += (-1) ** height * mn_character(new_lam, rho[1:])
    return total


@dataclass(frozen=True)
class CharacterTable:
    n: int
    partitions: tuple[Partition, ...]
    classes: tuple[Partition, ...]
    class_sizes: tuple[int, ...]
    values: dict[tuple[Partition, Partition], int]

    def chi(self, lam: Partition, rho: Partition) -> int:
        return self.values[(tuple(lam), tuple(rho))]

    def row(self, lam: Partition) -> tuple[int, ...]:
        return tuple(self.values[(tuple(lam), rho)] for rho in self.classes)

    def dimension(self, lam: Partition) -> int:
        return self.chi(lam, (1,) * self.n) if self.n else 1

    def check_orthogonality(self) -> None:
        """Exact row and column orthogonality; raises on any failure."""
        n_fact = factorial(self.n)
        for lam in self.partitions:
            for mu in self.partitions:
                s = sum(
                    size * self.chi(lam, rho) * self.chi(mu, rho)
                    for rho, size in zip(self.classes, self.class_sizes)
                )
                if s != (n_fact if lam == mu else 0):
                    raise ConsistencyError(f"row orthogonality fails at ({lam}, {mu})")
        for rho in self.classes:
            for tau in self.classes:
                s = sum(self.chi(lam, rho) * self.chi(lam, tau) for lam in self.partitions)
                expected = centralizer_order(rho) if rho == tau else 0
                if s != expected:
                    raise ConsistencyError(f"column orthogonality fails at ({rho}, {tau})")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": [
                {"type": list(rho), "size": size}
                for rho, size in zip(self.classes, self.class_sizes)
            ],
            "rows": [
                {"partition": list(lam), "values": list(self.row(lam))}
                for lam in self.partitions
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "CharacterTable":
        n = int(data["n"])
        classes = tuple(tuple(c["type"]) for c in data["classes"])
        sizes = tuple(int(c["size"]) for c in data["classes"])
        partitions = tuple(tuple(r["partition"]) for r in data["rows"])
        values = {}
        for r in data["rows"]:
            lam = tuple(r["partition"])
            for rho, v in zip(classes, r["values"]):
                values[(lam, rho)] = int(v)
        return CharacterTable(n, partitions, classes, sizes, values)


@lru_cache(maxsize=None)
def _compute_table(n: int) -> CharacterTable:
    parts = tuple(enumerate_partitions(n))
    sizes = tuple(class_size(rho) for rho in parts)
    values = {(lam, rho): mn_character(lam, rho) for lam in parts for rho in parts}
    table = CharacterTable(n, parts, parts, sizes, values)
    # dimensions must come out of the recursion, not the hook formula;
    # their agreement is a real check on both
    for lam in parts:
        if table.dimension(lam) != hook_dimension(lam):
            raise ConsistencyError(f"MN dimension disagrees with hooks at {lam}")
    return table


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.environ.get(CACHE_ENV_VAR, DEFAULT_CACHE_DIR))


def _cache_path(n: int, override=None) -> Path:
    return cache_dir(override) / f"chartable-n{n}.json"


def character_table(
    n: int,
    *,
    cache_dir: str | os.PathLike | None = None,
    use_cache: bool = True,
) -> CharacterTable:
    """Complete character table of S_n (practical bound n <= 12).

    With use_cache, tries the JSON disk cache first; a file that fails to
    parse or fails orthogonality is recomputed and overwritten.
    """
    if n < 1:
        raise InputError("character table needs n >= 1")
    if not use_cache:
        return _compute_table(n)
    path = _cache_path(n, cache_dir)
    if path.exists():
        try:
            table = CharacterTable.from_json(json.loads(path.read_text()))
            if table.n != n:
                raise ConsistencyError("cache file holds the wrong degree")
            table.check_orthogonality()
            return table
        except (ValueError, KeyError, TypeError, ConsistencyError):
            pass  # recompute below and overwrite
    table = _compute_table(n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(table.to_json()))
    except OSError:
        pass  # cache is best-effort
    return table

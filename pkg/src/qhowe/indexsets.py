"""Basis labels: flavored integer matrices, compositions and bipartitions.

Type A labels are m x n matrices with rows 1..m and columns 1..n summing to d.
Types B and C use rows -m..m and columns -n..n with the symmetry
a[i][j] = a[-i][-j]; type B has total 2d+1 (so the centre entry is odd), type C
has total 2d. Each side carries a flavor letter, ``j`` or ``i``; an ``i`` side
pins the centre row (or column) as described in ``IndexMatrix.validate``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator

DEFAULT_CAP = 200_000


class InvalidLabel(ValueError):
    pass


class SizeGuard(RuntimeError):
    pass


@dataclass(frozen=True)
class Flavor:
    kind: str          # "A", "B" or "C"
    row: str = ""      # side flavors "i"/"j" for B and C
    col: str = ""

    @classmethod
    def parse(cls, text: str | "Flavor") -> "Flavor":
        if isinstance(text, Flavor):
            return text
        t = text.strip()
        if t == "A":
            return cls("A")
        if len(t) == 3 and t[0] in "BC" and t[1] in "ij" and t[2] in "ij":
            return cls(t[0], t[1], t[2])
        raise ValueError(f"unknown flavor {text!r}; expected A, Bjj, Bji, Bij, Bii or C..")

    @property
    def name(self) -> str:
        return self.kind + self.row + self.col

    def transposed(self) -> "Flavor":
        return Flavor(self.kind, self.col, self.row)

    def side(self, side: str) -> str:
        """Flavor letter acting on a side: rows are acted on from the left."""
        return self.row if side == "left" else self.col

    @property
    def symmetric(self) -> bool:
        return self.kind in "BC"

    def __str__(self):
        return self.name


class IndexMatrix:
    """An immutable flavored matrix; ``rows`` are listed from the lowest row index."""

    __slots__ = ("flavor", "m", "n", "rows", "_hash")

    def __init__(self, flavor, m: int, n: int, rows):
        self.flavor = Flavor.parse(flavor)
        self.m = m
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self._hash = None
        nr, nc = self.shape
        if len(self.rows) != nr or any(len(r) != nc for r in self.rows):
            raise InvalidLabel(f"shape {len(self.rows)}x? does not match {self.flavor} m={m} n={n}")

    # -- geometry ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        if self.flavor.kind == "A":
            return self.m, self.n
        return 2 * self.m + 1, 2 * self.n + 1

    @property
    def row_offset(self) -> int:
        return 1 if self.flavor.kind == "A" else -self.m

    @property
    def col_offset(self) -> int:
        return 1 if self.flavor.kind == "A" else -self.n

    def row_indices(self) -> range:
        o = self.row_offset
        return range(o, o + self.shape[0])

    def col_indices(self) -> range:
        o = self.col_offset
        return range(o, o + self.shape[1])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        ri, cj = i - self.row_offset, j - self.col_offset
        if 0 <= ri < len(self.rows) and 0 <= cj < len(self.rows[0]):
            return self.rows[ri][cj]
        return 0

    def entry(self, i: int, j: int) -> int:
        return self[i, j]

    # -- statistics -------------------------------------------------------
    @property
    def total(self) -> int:
        return sum(map(sum, self.rows))

    @property
    def d(self) -> int:
        t = self.total
        if self.flavor.kind == "A":
            return t
        if self.flavor.kind == "B":
            return (t - 1) // 2
        return t // 2

    def ro(self) -> tuple:
        return tuple(sum(r) for r in self.rows)

    def co(self) -> tuple:
        return tuple(sum(c) for c in zip(*self.rows)) if self.rows and self.rows[0] else ()

    def ro_at(self, i: int) -> int:
        return sum(self.rows[i - self.row_offset])

    def co_at(self, j: int) -> int:
        c = j - self.col_offset
        return sum(r[c] for r in self.rows)

    def sharp(self, i: int, j: int) -> int:
        if self.flavor.kind != "B":
            raise InvalidLabel("sharp entries are defined for type B labels")
        if (i, j) == (0, 0):
            a = self[0, 0]
            if a % 2 == 0:
                raise InvalidLabel(f"centre entry {a} is even")
            return (a - 1) // 2
        return self[i, j]

    # -- constructions ----------------------------------------------------
    def with_changes(self, delta: dict) -> "IndexMatrix | None":
        """Apply {(i, j): increment}; None if an entry would become negative."""
        rows = [list(r) for r in self.rows]
        ro, co = self.row_offset, self.col_offset
        for (i, j), v in delta.items():
            x = rows[i - ro][j - co] + v
            if x < 0:
                return None
            rows[i - ro][j - co] = x
        return IndexMatrix(self.flavor, self.m, self.n, rows)

    def transpose(self) -> "IndexMatrix":
        return IndexMatrix(self.flavor.transposed(), self.n, self.m, list(zip(*self.rows)))

    # -- validation -------------------------------------------------------
    def validate(self, d: int | None = None) -> None:
        f = self.flavor
        if any(x < 0 for r in self.rows for x in r):
            raise InvalidLabel("negative entry")
        if f.kind == "A":
            if d is not None and self.total != d:
                raise InvalidLabel(f"total {self.total} != {d}")
            return
        for i in self.row_indices():
            for j in self.col_indices():
                if self[i, j] != self[-i, -j]:
                    raise InvalidLabel(f"entry ({i},{j}) breaks the symmetry a_ij = a_-i,-j")
        t = self.total
        a00 = self[0, 0]
        if f.kind == "B":
            if t % 2 != 1 or a00 % 2 != 1:
                raise InvalidLabel("type B labels need odd total and odd centre entry")
            if d is not None and t != 2 * d + 1:
                raise InvalidLabel(f"total {t} != 2*{d}+1")
            if f.row == "i" and (a00 != 1 or any(self[0, j] for j in self.col_indices() if j)):
                raise InvalidLabel("row flavor i needs row 0 equal to the centre unit")
            if f.col == "i" and (a00 != 1 or any(self[i, 0] for i in self.row_indices() if i)):
                raise InvalidLabel("column flavor i needs column 0 equal to the centre unit")
        else:
            if t % 2 or a00 % 2:
                raise InvalidLabel("type C labels need even total and even centre entry")
            if d is not None and t != 2 * d:
                raise InvalidLabel(f"total {t} != 2*{d}")
            if f.row == "i" and any(self[0, j] for j in self.col_indices()):
                raise InvalidLabel("row flavor i needs row 0 to vanish")
            if f.col == "i" and any(self[i, 0] for i in self.row_indices()):
                raise InvalidLabel("column flavor i needs column 0 to vanish")

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except InvalidLabel:
            return False

    # -- dunder -----------------------------------------------------------
    def _key(self):
        return (self.flavor.name, self.m, self.n, self.rows)

    def __eq__(self, other):
        if not isinstance(other, IndexMatrix):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"IndexMatrix({self.flavor.name}, m={self.m}, n={self.n}, {[list(r) for r in self.rows]})"

    def short(self) -> str:
        """Compact sparse form, e.g. ``E00+E11+E-1-1`` (entries listed with multiplicity)."""
        parts = []
        for i in self.row_indices():
            for j in self.col_indices():
                a = self[i, j]
                if a:
                    parts.append(("" if a == 1 else f"{a}") + f"E{i},{j}")
        return "+".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"flavor": self.flavor.name, "m": self.m, "n": self.n, "d": self.d,
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "IndexMatrix":
        A = cls(data["flavor"], data["m"], data["n"], data["rows"])
        A.validate(data.get("d"))
        return A


# ---------------------------------------------------------------------------
# builders

def zero_matrix(flavor, m: int, n: int) -> IndexMatrix:
    f = Flavor.parse(flavor)
    r, c = (m, n) if f.kind == "A" else (2 * m + 1, 2 * n + 1)
    return IndexMatrix(f, m, n, [[0] * c for _ in range(r)])


def from_entries(flavor, m: int, n: int, entries: dict, symmetrize: bool = True) -> IndexMatrix:
    """Build from {(i, j): value}; for B/C each value is mirrored to (-i, -j)."""
    f = Flavor.parse(flavor)
    Z = zero_matrix(f, m, n)
    delta: dict = {}
    for (i, j), v in entries.items():
        delta[(i, j)] = delta.get((i, j), 0) + v
        if symmetrize and f.symmetric and (i, j) != (0, 0):
            delta[(-i, -j)] = delta.get((-i, -j), 0) + v
    out = Z.with_changes(delta)
    if out is None:
        raise InvalidLabel("negative entries")
    return out


def e_theta(i: int, j: int) -> dict:
    """Increment dict of E^theta_ij = E_ij + E_-i,-j."""
    if (i, j) == (0, 0):
        return {(0, 0): 2}
    return {(i, j): 1, (-i, -j): 1}


def merge(*deltas: dict, sign: tuple | None = None) -> dict:
    out: dict = {}
    for k, dl in enumerate(deltas):
        s = 1 if sign is None else sign[k]
        for key, v in dl.items():
            out[key] = out.get(key, 0) + s * v
    return {k: v for k, v in out.items() if v}


def c_shift(A: IndexMatrix) -> IndexMatrix:
    """Type C label to the type B label obtained by adding 1 at the centre."""
    if A.flavor.kind != "C":
        raise InvalidLabel("c_shift expects a type C label")
    out = A.with_changes({(0, 0): 1})
    out = IndexMatrix(Flavor("B", A.flavor.row, A.flavor.col), A.m, A.n, out.rows)
    out.validate()
    return out


def c_unshift(A: IndexMatrix) -> IndexMatrix:
    if A.flavor.kind != "B":
        raise InvalidLabel("c_unshift expects a type B label")
    out = A.with_changes({(0, 0): -1})
    out = IndexMatrix(Flavor("C", A.flavor.row, A.flavor.col), A.m, A.n, out.rows)
    out.validate()
    return out


def transpose(A: IndexMatrix) -> IndexMatrix:
    return A.transpose()


def row_sums(A: IndexMatrix) -> "Composition":
    return Composition(A.ro(), _side_kind(A.flavor, "left"))


def col_sums(A: IndexMatrix) -> "Composition":
    return Composition(A.co(), _side_kind(A.flavor, "right"))


def sharp_entry(A: IndexMatrix, i: int, j: int) -> int:
    return A.sharp(i, j)


def _side_kind(f: Flavor, side: str) -> str:
    if f.kind == "A":
        return "A"
    return f.kind + f.side(side)


@dataclass(frozen=True)
class Composition:
    parts: tuple
    kind: str = "A"     # "A", "Bj", "Bi", "Cj", "Ci"


# ---------------------------------------------------------------------------
# enumeration

def _free_cells(f: Flavor, m: int, n: int) -> list:
    """Cells (i, j) >= (0, 0) (lexicographically) that carry free mass."""
    cells = []
    for i in range(0, m + 1):
        for j in range(-n, n + 1):
            if (i, j) < (0, 0):
                continue
            if (i, j) == (0, 0):
                # the centre contributes through a00 = 2*s + 1 (B) or 2*s (C)
                if f.row == "i" or f.col == "i":
                    continue
                cells.append((0, 0))
                continue
            if f.row == "i" and i == 0:
                continue
            if f.col == "i" and j == 0:
                continue
            cells.append((i, j))
    return cells


def count_matrices(flavor, m: int, n: int, d: int) -> int:
    f = Flavor.parse(flavor)
    if f.kind == "A":
        cells = m * n
    else:
        cells = len(_free_cells(f, m, n))
    if d == 0:
        return 1
    if cells == 0:
        return 0
    return comb(cells + d - 1, d)


def _compositions(total: int, k: int) -> Iterator[tuple]:
    """All k-tuples of nonnegative integers summing to total."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for picks in combinations_with_replacement(range(k), total):
        v = [0] * k
        for p in picks:
            v[p] += 1
        yield tuple(v)


def enumerate_matrices(flavor, m: int, n: int, d: int, cap: int = DEFAULT_CAP) -> list:
    """Complete list of labels, sorted lexicographically by rows (row-major)."""
    f = Flavor.parse(flavor)
    if m < 0 or n < 0 or d < 0:
        raise ValueError("sizes must be nonnegative")
    if f.kind != "A" and (m < 1 or n < 1) and "i" in (f.row, f.col):
        raise ValueError("i-flavors need m, n >= 1")
    total = count_matrices(f, m, n, d)
    if total > cap:
        raise SizeGuard(f"{total} labels exceed the cap {cap}")
    return list(_enumerate_cached(f, m, n, d))


@lru_cache(maxsize=256)
def _enumerate_cached(f: Flavor, m: int, n: int, d: int) -> tuple:
    out = []
    if f.kind == "A":
        for v in _compositions(d, m * n):
            out.append(IndexMatrix(f, m, n, [v[r * n:(r + 1) * n] for r in range(m)]))
    else:
        cells = _free_cells(f, m, n)
        base = 1 if f.kind == "B" else 0
        for v in _compositions(d, len(cells)):
            entries = {(0, 0): base}
            for (i, j), x in zip(cells, v):
                if x:
                    if (i, j) == (0, 0):
                        entries[(0, 0)] = base + 2 * x
                    else:
                        entries[(i, j)] = x
            out.append(from_entries(f, m, n, entries))
    out.sort(key=lambda A: A.rows)
    return tuple(out)


# ---------------------------------------------------------------------------
# partitions

def partitions(d: int, max_parts: int | None = None, max_part: int | None = None) -> list:
    """Partitions of d (weakly decreasing tuples without zeros), reverse-lex order."""
    if max_parts is not None and max_parts < 0:
        return []
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for p in range(min(rem, cap), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(d, d if max_part is None else max_part, [])
    return out


@dataclass(frozen=True)
class BiPartitionLabel:
    plus: tuple
    minus: tuple
    flavor: str     # "i" or "j"
    rank: int

    @property
    def size(self) -> int:
        return sum(self.plus) + sum(self.minus)

    def __str__(self):
        return f"({list(self.plus)},{list(self.minus)})"


def enumerate_bipartitions(flavor: str, n: int, d: int) -> list:
    """Pairs (plus, minus) with |plus| + |minus| = d; plus has at most n+1 (j) or n (i) parts."""
    if flavor not in ("i", "j"):
        raise ValueError(f"flavor must be 'i' or 'j', got {flavor!r}")
    top = n + 1 if flavor == "j" else n
    out = []
    for l in range(0, d + 1):
        for lp in partitions(d - l, top):
            for lm in partitions(l, n):
                out.append(BiPartitionLabel(lp, lm, flavor, n))
    return out


# ---------------------------------------------------------------------------
# spaces

@dataclass(frozen=True)
class Space:
    """A Fock space (or coordinate space) descriptor with its enumerated basis."""
    flavor: Flavor
    m: int
    n: int
    d: int

    @classmethod
    def make(cls, flavor, m: int, n: int, d: int) -> "Space":
        return cls(Flavor.parse(flavor), m, n, d)

    def basis(self) -> list:
        return enumerate_matrices(self.flavor, self.m, self.n, self.d)

    def index(self) -> dict:
        return _index_of(self)

    def __contains__(self, A: IndexMatrix) -> bool:
        return A in _index_of(self)

    def transposed(self) -> "Space":
        return Space(self.flavor.transposed(), self.n, self.m, self.d)

    def to_json(self) -> dict:
        return {"flavor": self.flavor.name, "m": self.m, "n": self.n, "d": self.d}

    def __str__(self):
        return f"{self.flavor.name}({self.m}|{self.n},{self.d})"


@lru_cache(maxsize=256)
def _index_of(space: Space) -> dict:
    return {A: k for k, A in enumerate(space.basis())}

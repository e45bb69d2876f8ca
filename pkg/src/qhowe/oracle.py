"""Finite-field ground truth for Schur-algebra structure constants.

Flags are enumerated over F_p, pairs of flags are classified by their
intersection-dimension matrix, and convolution fibres are counted directly.
Counting at several primes and interpolating gives polynomials in the field
size x; substituting a power of q and applying normalization exponents turns
them into products in the [A] basis.  Nothing here uses the closed formulas
of ``qhowe.fock``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path

from .fock import ModuleVector, normalization_exponent
from .indexsets import Flavor, IndexMatrix, Space
from .ring import Laurent

DEFAULT_PRIMES = (7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
ORIENTATIONS = ("inverse", "direct")   # x -> q^-2 or x -> q^2
FLAG_CAP = 400_000


class OracleError(RuntimeError):
    pass


class InterpolationError(OracleError):
    pass


def _check_prime(p: int) -> None:
    if p <= 5:
        raise ValueError(f"primes must exceed 5, got {p}")
    if any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# linear algebra over F_p (vectors are tuples of ints in [0, p))

def rref(rows, p: int) -> tuple:
    """Canonical reduced row echelon basis of the span of ``rows``."""
    mat = [list(r) for r in rows]
    out = []
    ncols = len(mat[0]) if mat else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    for i in range(r):
        out.append(tuple(mat[i]))
    return tuple(out)


def rank(rows, p: int) -> int:
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        pr = [(x * inv) % p for x in mat[r]]
        mat[r] = pr
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if f:
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], pr)]
        r += 1
        if r == len(mat):
            break
    return r


def kernel(rows, ncols: int, p: int) -> tuple:
    """Basis (in rref) of {x : row . x = 0 for every row}."""
    R = rref(rows, p) if rows else ()
    pivots = []
    for r in R:
        pivots.append(next(c for c, x in enumerate(r) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(R, pivots):
            v[pc] = (-r[f]) % p
        basis.append(tuple(v))
    return rref(basis, p) if basis else ()


def intersection_dim(U: tuple, W: tuple, p: int) -> int:
    if not U or not W:
        return 0
    return len(U) + len(W) - rank(U + W, p)


def subspaces(D: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^D, each as its rref basis."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(D), k):
        slots = []
        for r, c in enumerate(pivots):
            for cc in range(c + 1, D):
                if cc not in pivots:
                    slots.append((r, cc))
        for vals in product(range(p), repeat=len(slots)):
            rows = [[0] * D for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# forms

@dataclass(frozen=True)
class Ambient:
    """F_p^D with the fixed form of a flag family (none for type A).

    Type B: symmetric form (v_i, v_j) = delta_{i,-j} on the basis v_-d..v_d.
    Type C: symplectic form (v_i, v_j) = sign(i) delta_{i,-j} on v_{+-1/2}..v_{+-(d-1/2)}.
    """
    kind: str
    d: int
    p: int

    @property
    def dim(self) -> int:
        return {"A": self.d, "B": 2 * self.d + 1, "C": 2 * self.d}[self.kind]

    def _doubled_labels(self) -> list:
        if self.kind == "B":
            return [2 * i for i in range(-self.d, self.d + 1)]
        return [2 * i + 1 for i in range(-self.d, self.d)]

    @property
    def gram(self) -> tuple:
        return _gram(self.kind, self.d, self.p)

    def form(self, u, v) -> int:
        G = self.gram
        return sum(u[a] * G[a][b] * v[b] for a in range(self.dim) for b in range(self.dim)
                   if G[a][b] and u[a] and v[b]) % self.p

    def perp(self, U: tuple) -> tuple:
        D, p, G = self.dim, self.p, self.gram
        if not U:
            return _full(D)
        rows = [tuple(sum(u[a] * G[a][b] for a in range(D)) % p for b in range(D)) for u in U]
        return kernel(rows, D, p)

    def is_isotropic(self, U: tuple) -> bool:
        return all(self.form(u, v) == 0 for u in U for v in U)


@lru_cache(maxsize=None)
def _gram(kind: str, d: int, p: int) -> tuple:
    if kind == "A":
        return ()
    lab = Ambient(kind, d, p)._doubled_labels()
    D = len(lab)
    G = [[0] * D for _ in range(D)]
    for a in range(D):
        for b in range(D):
            if lab[a] == -lab[b]:
                G[a][b] = 1 if kind == "B" or lab[a] > 0 else p - 1
    return tuple(tuple(r) for r in G)


# ---------------------------------------------------------------------------
# flags

@dataclass(frozen=True)
class FlagRep:
    """Chain 0 = U_0 <= U_1 <= ... <= U_N = F_p^D.

    N = n for type A. For types B and C, N = 2n + 1 and U_{N-k} = U_k^perp, so
    U_0..U_n are isotropic; ``side`` is "i" when U_n is as large as possible.
    """
    chain: tuple
    kind: str
    side: str = ""

    @property
    def composition(self) -> tuple:
        return tuple(len(self.chain[k + 1]) - len(self.chain[k]) for k in range(len(self.chain) - 1))


def _full(D: int) -> tuple:
    return tuple(tuple(1 if c == r else 0 for c in range(D)) for r in range(D))


def _chains_inside(top: tuple, steps: int, p: int) -> list:
    """Chains V_1 <= ... <= V_steps = top of subspaces of ``top``."""
    if steps == 1:
        return [(top,)]
    out = []
    k = len(top)
    D = len(top[0]) if top else 0
    for j in range(k + 1):
        for coords in subspaces(k, j, p):
            sub = rref([tuple(sum(c[r] * top[r][x] for r in range(k)) % p for x in range(D))
                        for c in coords], p) if coords else ()
            for ch in _chains_inside(sub, steps - 1, p):
                out.append(ch + (top,))
    return out


def projective_points(basis: tuple, p: int):
    """One vector per line in the span of ``basis`` (first nonzero coordinate 1)."""
    k = len(basis)
    D = len(basis[0]) if basis else 0
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            coords = (0,) * lead + (1,) + tail
            yield tuple(sum(c * b[x] for c, b in zip(coords, basis) if c) % p for x in range(D))


@lru_cache(maxsize=64)
def isotropic_subspaces(kind: str, d: int, p: int, k: int) -> tuple:
    """Isotropic k-subspaces, grown one isotropic vector at a time from U^perp."""
    amb = Ambient(kind, d, p)
    if k == 0:
        return ((),)
    pairs = [(a, b, amb.gram[a][b]) for a in range(amb.dim) for b in range(amb.dim) if amb.gram[a][b]]

    def quad(v):
        return sum(v[a] * v[b] * g for a, b, g in pairs) % p

    found = set()
    for U in isotropic_subspaces(kind, d, p, k - 1):
        perp = amb.perp(U)
        # complement of U inside U^perp
        comp, cur = [], list(U)
        for w in perp:
            if rank(cur + [w], p) > len(cur):
                cur.append(w)
                comp.append(w)
        for v in projective_points(tuple(comp), p):
            if kind == "C" or quad(v) == 0:
                found.add(rref(U + (v,), p))
    return tuple(sorted(found))


@lru_cache(maxsize=64)
def enumerate_flags(family: str, n: int, d: int, p: int, cap: int = FLAG_CAP) -> tuple:
    """All flags of a family: ``A`` (n steps in F^d) or ``Bj``, ``Bi``, ``Cj``, ``Ci``."""
    _check_prime(p)
    kind, side = family[0], family[1:]
    if kind not in "ABC" or (kind == "A") != (side == "") or side not in ("", "i", "j"):
        raise ValueError(f"unknown flag family {family!r}")
    amb = Ambient(kind, d, p)
    D = amb.dim
    full = _full(D)
    out = []
    if kind == "A":
        if n < 1:
            raise ValueError("type A flags need at least one step")
        for ch in _chains_inside(full, n, p):
            out.append(FlagRep(((),) + ch, "A"))
            if len(out) > cap:
                raise OracleError("flag cap exceeded")
        return tuple(out)
    if n < 1:
        raise ValueError("flags need at least one step below the middle")
    dims = [d] if side == "i" else range(d + 1)
    for k in dims:
        for top in isotropic_subspaces(kind, d, p, k):
            for ch in _chains_inside(top, n, p):
                lower = ((),) + ch
                upper = tuple(amb.perp(U) for U in reversed(lower))
                out.append(FlagRep(lower + upper, kind, side))
                if len(out) > cap:
                    raise OracleError("flag cap exceeded")
    return tuple(out)


def standard_flag(flavor: str, composition: tuple, p: int) -> FlagRep:
    """A flag with the given composition; any one works by transitivity."""
    for f in flags_by_composition(flavor, len(composition), sum(composition), p).get(composition, ()):
        return f
    raise OracleError(f"no flag with composition {composition}")


@lru_cache(maxsize=64)
def flags_by_composition(flavor: str, steps: int, D: int, p: int) -> dict:
    kind = flavor[0]
    if kind == "A":
        n, d = steps, D
    else:
        n = (steps - 1) // 2
        d = (D - 1) // 2 if kind == "B" else D // 2
    out: dict = {}
    for f in enumerate_flags(flavor, n, d, p):
        out.setdefault(f.composition, []).append(f)
    return {k: tuple(v) for k, v in out.items()}


def orbit_invariant(f: FlagRep, g: FlagRep, p: int) -> IndexMatrix:
    """a_ij = dim(V_i & W_j) - dim(V_i-1 & W_j) - dim(V_i & W_j-1) + dim(V_i-1 & W_j-1)."""
    if f.kind != g.kind:
        raise ValueError("flags of different types")
    V, W = f.chain, g.chain
    R, S = len(V) - 1, len(W) - 1
    c = [[0] * (S + 1) for _ in range(R + 1)]
    for i in range(1, R + 1):
        di = len(V[i])
        for j in range(1, S + 1):
            dj = len(W[j])
            if i == R:
                c[i][j] = dj
            elif j == S:
                c[i][j] = di
            elif di == 0 or dj == 0:
                c[i][j] = 0
            elif V[i] == W[j]:
                c[i][j] = di
            else:
                c[i][j] = di + dj - rank(V[i] + W[j], p)
    rows = [[c[i][j] - c[i - 1][j] - c[i][j - 1] + c[i - 1][j - 1] for j in range(1, S + 1)]
            for i in range(1, R + 1)]
    if f.kind == "A":
        return IndexMatrix("A", R, S, rows)
    return IndexMatrix(Flavor(f.kind, f.side, g.side), (R - 1) // 2, (S - 1) // 2, rows)


# ---------------------------------------------------------------------------
# convolution counting

def _family(A: IndexMatrix, side: str) -> str:
    f = A.flavor
    return "A" if f.kind == "A" else f.kind + f.side(side)


def _ambient_dim(A: IndexMatrix) -> int:
    return A.total


def _steps(A: IndexMatrix, side: str) -> int:
    return A.shape[0] if side == "left" else A.shape[1]


@lru_cache(maxsize=4096)
def _bucket(fixed: FlagRep, family: str, steps: int, comp: tuple, p: int, fixed_first: bool) -> dict:
    """Group flags of a composition by their invariant against a fixed flag."""
    D = sum(comp)
    out: dict = {}
    for f in flags_by_composition(family, steps, D, p).get(comp, ()):
        M = orbit_invariant(fixed, f, p) if fixed_first else orbit_invariant(f, fixed, p)
        out.setdefault(M, []).append(f)
    return {k: tuple(v) for k, v in out.items()}


def _reps(fixed: FlagRep, family: str, steps: int, comp: tuple, p: int, fixed_first: bool) -> dict:
    return {M: fl[0] for M, fl in _bucket(fixed, family, steps, comp, p, fixed_first).items()}


def count_table(X: IndexMatrix, Y: IndexMatrix, p: int, fix: str = "left") -> dict:
    """Fibre counts for products with X fixed (fix='left') or Y fixed (fix='right').

    With fix='left' returns {(Y', C): count} for every Y' with the row sums of Y;
    with fix='right' returns {(X', C): count} for every X' with the column sums of X.
    Here count = #{f : (f1, f) in O_X, (f, f2) in O_Y} for a fixed (f1, f2) in O_C.
    """
    fam_r, fam_m, fam_c = _family(X, "left"), _family(X, "right"), _family(Y, "right")
    if fam_m != _family(Y, "left") or X.co() != Y.ro():
        raise ValueError("incompatible labels for a product")
    st_r, st_m, st_c = _steps(X, "left"), _steps(X, "right"), _steps(Y, "right")
    out: dict = {}
    if fix == "left":
        f1 = standard_flag(fam_r, X.ro(), p)
        mids = _bucket(f1, fam_m, st_m, X.co(), p, True).get(X, ())
        for C, f2 in _reps(f1, fam_c, st_c, Y.co(), p, True).items():
            for f in mids:
                key = (orbit_invariant(f, f2, p), C)
                out[key] = out.get(key, 0) + 1
    else:
        f2 = standard_flag(fam_c, Y.co(), p)
        mids = _bucket(f2, fam_m, st_m, Y.ro(), p, False).get(Y, ())
        for C, f1 in _reps(f2, fam_r, st_r, X.ro(), p, False).items():
            for f in mids:
                key = (orbit_invariant(f1, f, p), C)
                out[key] = out.get(key, 0) + 1
    return out


def convolve_count(X: IndexMatrix, Y: IndexMatrix, C: IndexMatrix, p: int,
                   rep: tuple | None = None) -> int:
    """#{f : (f1, f) in O_X and (f, f2) in O_Y} for a pair (f1, f2) in O_C.

    ``rep`` optionally supplies the pair (f1, f2); by default a standard one is used.
    """
    fam_r, fam_m, fam_c = _family(X, "left"), _family(X, "right"), _family(Y, "right")
    st_m = _steps(X, "right")
    if rep is None:
        f1 = standard_flag(fam_r, C.ro(), p)
        reps = _reps(f1, fam_c, _steps(Y, "right"), C.co(), p, True)
        if C not in reps:
            raise OracleError(f"empty orbit for {C!r}")
        f2 = reps[C]
    else:
        f1, f2 = rep
        if orbit_invariant(f1, f2, p) != C:
            raise ValueError("representative pair is not in the orbit of C")
    n = 0
    for f in flags_by_composition(fam_m, st_m, X.total, p).get(X.co(), ()):
        if orbit_invariant(f1, f, p) == X and orbit_invariant(f, f2, p) == Y:
            n += 1
    return n


def space_family(flavor, side: str) -> str:
    f = Flavor.parse(flavor)
    return "A" if f.kind == "A" else f.kind + f.side(side)


def _geometry(flavor, m: int, n: int, d: int) -> tuple:
    f = Flavor.parse(flavor)
    D = Ambient(f.kind, d, 7).dim
    if f.kind == "A":
        return f, m, n, D
    return f, 2 * m + 1, 2 * n + 1, D


def orbit_set(flavor, m: int, n: int, d: int, p: int) -> set:
    """All invariants of flag pairs; one left flag per composition suffices by transitivity."""
    f, sr, sc, D = _geometry(flavor, m, n, d)
    left = flags_by_composition(space_family(f, "left"), sr, D, p)
    right = flags_by_composition(space_family(f, "right"), sc, D, p)
    out = set()
    for fl in left.values():
        f1 = fl[0]
        for flags in right.values():
            for g in flags:
                out.add(orbit_invariant(f1, g, p))
    return out


def random_pairs(C: IndexMatrix, p: int, count: int, rng) -> list:
    """Random flag pairs in the orbit of C (left flag drawn at random first)."""
    f, sr, sc, D = _geometry(C.flavor, C.m, C.n, C.d)
    lefts = flags_by_composition(space_family(f, "left"), sr, D, p)[C.ro()]
    rights = flags_by_composition(space_family(f, "right"), sc, D, p)[C.co()]
    out = []
    while len(out) < count:
        f1 = lefts[rng.randrange(len(lefts))]
        hits = [g for g in rights if orbit_invariant(f1, g, p) == C]
        if hits:
            out.append((f1, hits[rng.randrange(len(hits))]))
    return out


def orbit_size(C: IndexMatrix, p: int) -> int:
    f, sr, sc, D = _geometry(C.flavor, C.m, C.n, C.d)
    lefts = flags_by_composition(space_family(f, "left"), sr, D, p)[C.ro()]
    rights = flags_by_composition(space_family(f, "right"), sc, D, p)[C.co()]
    return len(lefts) * sum(1 for g in rights if orbit_invariant(lefts[0], g, p) == C)


def counting_consistency(X: IndexMatrix, Y: IndexMatrix, p: int) -> tuple:
    """Both sides of sum_C count(C) |O_C| = |O_X| * #{f2 : (f, f2) in O_Y} for fixed f."""
    table = count_table(X, Y, p, "left")
    lhs = sum(c * orbit_size(C, p) for (Z, C), c in table.items() if Z == Y)
    f, sm, sc, D = _geometry(Y.flavor, Y.m, Y.n, Y.d)
    mid = flags_by_composition(space_family(f, "left"), sm, D, p)[Y.ro()][0]
    fibre = sum(1 for g in flags_by_composition(space_family(f, "right"), sc, D, p)[Y.co()]
                if orbit_invariant(mid, g, p) == Y)
    return lhs, orbit_size(X, p) * fibre


# ---------------------------------------------------------------------------
# interpolation

def interpolate_structure_constant(counts, degree_bound: int) -> tuple:
    """Integer polynomial (low degree first) through the (p, count) samples.

    The first degree_bound + 1 samples determine the fit; all remaining samples
    (at least one) must agree with it.
    """
    pts = sorted(counts)
    if len(pts) < degree_bound + 2:
        raise InterpolationError(f"need {degree_bound + 2} samples, got {len(pts)}")
    base = pts[:degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, (xi, yi) in enumerate(base):
        # Lagrange basis polynomial for node i, expanded
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(base):
            if j == i:
                continue
            poly = [Fraction(0)] + poly
            for k in range(len(poly) - 1):
                poly[k] -= xj * poly[k + 1]
            denom *= (xi - xj)
        for k, c in enumerate(poly):
            coeffs[k] += yi * c / denom
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError("non-integral coefficients")
    ints = [int(c) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    for x, y in pts:
        if sum(c * x ** k for k, c in enumerate(ints)) != y:
            raise InterpolationError(f"sample at {x} disagrees with the fitted polynomial")
        if y < 0:
            raise InterpolationError("negative count")
    return tuple(ints)


def fit_counts(samples, degree_bound: int) -> tuple:
    """Interpolate, doubling the degree bound while samples allow.

    The starting bound is capped so that at least one sample is left over to
    validate the fit.
    """
    db = max(min(degree_bound, len(samples) - 2), 0)
    last = None
    while db + 2 <= len(samples):
        try:
            return interpolate_structure_constant(samples, db)
        except InterpolationError as exc:
            last = exc
            db = max(1, db * 2)
    raise InterpolationError(f"no fit within {len(samples)} samples: {last}")


def substitute(poly: tuple, orientation: str) -> Laurent:
    """x -> q^-2 (inverse) or q^2 (direct)."""
    s = -2 if orientation == "inverse" else 2
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    return Laurent({s * k: c for k, c in enumerate(poly) if c})


# ---------------------------------------------------------------------------
# products in the normalized basis

@dataclass
class OracleConfig:
    primes: tuple = DEFAULT_PRIMES
    degree_bound: int | None = None   # default d^2
    orientation: str = "inverse"


def _product_polys(X: IndexMatrix, Y: IndexMatrix, primes, degree_bound, fix: str) -> dict:
    """{(other, C): integer polynomial} for the product table with one factor fixed."""
    tables = [(p, count_table(X, Y, p, fix)) for p in primes]
    keys = set()
    for _, t in tables:
        keys |= set(t)
    out = {}
    for key in sorted(keys, key=lambda k: (k[0].rows, k[1].rows)):
        samples = [(p, t.get(key, 0)) for p, t in tables]
        poly = fit_counts(samples, degree_bound)
        if poly:
            out[key] = poly
    return out


def _assemble(X, Y, polys, orientation, space_flavor, m, n, d) -> ModuleVector:
    space = Space.make(space_flavor, m, n, d)
    terms: dict = {}
    for C, poly in polys.items():
        e = normalization_exponent(X) + normalization_exponent(Y) - normalization_exponent(C)
        terms[C] = substitute(poly, orientation).shift(e)
    return ModuleVector(space, terms)


def oracle_product(X: IndexMatrix, Y: IndexMatrix, primes=DEFAULT_PRIMES,
                   orientation: str | None = None, degree_bound: int | None = None,
                   fix: str = "left") -> ModuleVector:
    """[X] * [Y] in the normalized basis, from counting over F_p."""
    orientation = orientation or load_calibration()
    if orientation is None:
        raise OracleError("oracle is uncalibrated; run calibrate() first")
    d = X.d
    db = d * d if degree_bound is None else degree_bound
    polys = _product_polys(X, Y, tuple(primes), db, fix)
    other = Y if fix == "left" else X
    chosen = {C: poly for (Z, C), poly in polys.items() if Z == other}
    f = Flavor(X.flavor.kind, X.flavor.row, Y.flavor.col) if X.flavor.kind != "A" else Flavor("A")
    return _assemble(X, Y, chosen, orientation, f, X.m, Y.n, d)


def oracle_action(X: IndexMatrix, space: Space, side: str, primes=DEFAULT_PRIMES,
                  orientation: str | None = None, degree_bound: int | None = None) -> dict:
    """{A: [X]*[A] (left) or [A]*[X] (right)} for every label A of ``space`` X can meet."""
    orientation = orientation or load_calibration()
    if orientation is None:
        raise OracleError("oracle is uncalibrated; run calibrate() first")
    if side not in ("left", "right"):
        raise ValueError(f"side must be left or right, got {side!r}")
    d = space.d
    db = d * d if degree_bound is None else degree_bound
    # one count table per composition on the far side of the module label
    groups: dict = {}
    for A in space.basis():
        if side == "left" and A.ro() == X.co():
            groups.setdefault(A.co(), []).append(A)
        elif side == "right" and A.co() == X.ro():
            groups.setdefault(A.ro(), []).append(A)
    res = {}
    for labels in groups.values():
        probe = labels[0]
        if side == "left":
            polys = _product_polys(X, probe, tuple(primes), db, "left")
        else:
            polys = _product_polys(probe, X, tuple(primes), db, "right")
        grouped: dict = {A: {} for A in labels}
        for (Z, C), poly in polys.items():
            if Z in grouped:
                grouped[Z][C] = poly
        for A, chosen in grouped.items():
            L, R = (X, A) if side == "left" else (A, X)
            res[A] = _assemble(L, R, chosen, orientation, space.flavor, space.m, space.n, d)
    return res


# ---------------------------------------------------------------------------
# generators as Schur-algebra elements

def _generator_offdiag(g, kind: str) -> dict:
    """Off-diagonal part of the matrix of a Chevalley-type generator."""
    i = g.index
    if kind == "A":
        if g.kind == "E":
            return {(i, i + 1): 1}
        if g.kind == "F":
            return {(i + 1, i): 1}
        return {}
    if g.kind == "e":
        pairs = [(i, i + 1), (-i, -i - 1)]
    elif g.kind == "f":
        pairs = [(i + 1, i), (-i - 1, -i)]
    elif g.kind == "t":
        pairs = [(1, -1), (-1, 1)]
    else:
        return {}
    out: dict = {}
    for ij in pairs:
        out[ij] = out.get(ij, 0) + 1
    return out


def _diag_scalar(g, kind: str, weight: dict) -> int:
    """Exponent of q for diagonal generators, from the side weight of the label."""
    k, i = g.kind, g.index
    if kind == "A":
        if k in ("D", "Dinv"):
            e = weight[i]
        else:
            e = weight[i] - weight[i + 1]
        return e if k in ("D", "K") else -e

    def dexp(j):
        if g.flavor == "j" and j == 0:
            # centre weight 2s+1 (type B) or 2s (type C) gives exponent s
            return weight[0] // 2
        return weight[j]
    if k in ("d", "dinv"):
        e = dexp(i)
    elif g.flavor == "j" and i == 0:
        e = 2 * dexp(0) - dexp(1)
    else:
        e = dexp(i) - dexp(i + 1)
    return e if k in ("d", "k") else -e


def generator_expansion(g, composition: tuple, kind: str) -> list:
    """Terms (coefficient, X) with g acting on labels of side weight ``composition``.

    For a left generator the relevant X have co(X) = composition; for a right one
    ro(X) = composition.  Labels: 1..r for type A, -r..r for types B and C.
    """
    r = len(composition) if kind == "A" else (len(composition) - 1) // 2
    lo = 1 if kind == "A" else -r
    weight = {lo + k: c for k, c in enumerate(composition)}
    flavor = "A" if kind == "A" else kind + g.flavor + g.flavor
    off = _generator_offdiag(g, kind)
    if not off:
        X = _diag_matrix(flavor, r, weight)
        return [(Laurent.mono(_diag_scalar(g, kind, weight)), X)]
    used: dict = {}
    for (a, b), v in off.items():
        j = b if g.side == "left" else a
        used[j] = used.get(j, 0) + v
    diag = {j: weight[j] - used.get(j, 0) for j in weight}
    if any(v < 0 for v in diag.values()):
        return []
    terms = []
    X = _matrix(flavor, r, diag, off)
    if X is not None:
        terms.append((Laurent.mono(0), X))
    if g.kind == "t":
        terms.append((Laurent.mono(weight[1]), _diag_matrix(flavor, r, weight)))
    return terms


def _diag_matrix(flavor: str, r: int, weight: dict) -> IndexMatrix:
    X = _matrix(flavor, r, weight, {})
    if X is None:
        raise OracleError(f"weight {weight} is not a valid diagonal for {flavor}")
    return X


def _matrix(flavor: str, r: int, diag: dict, off: dict) -> IndexMatrix | None:
    size = r if flavor == "A" else 2 * r + 1
    lo = 1 if flavor == "A" else -r
    rows = [[0] * size for _ in range(size)]
    for j, v in diag.items():
        rows[j - lo][j - lo] += v
    for (a, b), v in off.items():
        rows[a - lo][b - lo] += v
    X = IndexMatrix(flavor, r, r, rows)
    return X if X.is_valid() else None


def oracle_generator_action(g, space: Space, primes=DEFAULT_PRIMES, orientation: str | None = None,
                            degree_bound: int | None = None) -> dict:
    """{A: g acting on [A]} for every label of ``space``, computed by counting."""
    kind = space.flavor.kind
    out = {A: ModuleVector(space) for A in space.basis()}
    comps = sorted({A.ro() if g.side == "left" else A.co() for A in space.basis()})
    for comp in comps:
        for coeff, X in generator_expansion(g, comp, kind):
            acts = oracle_action(X, space, g.side, primes, orientation, degree_bound)
            for A, vec in acts.items():
                out[A] = out[A] + vec.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# calibration

def cache_dir() -> Path:
    return Path(os.environ.get("QHOWE_CACHE_DIR", Path.home() / ".cache" / "qhowe"))


def calibration_path() -> Path:
    return cache_dir() / "calibration.json"


def load_calibration() -> str | None:
    path = calibration_path()
    if not path.exists():
        return None
    data = json.loads(path.read_text())
    o = data.get("orientation")
    return o if o in ORIENTATIONS else None


@dataclass
class CalibrationResult:
    orientation: str
    agreeing: dict = field(default_factory=dict)


def calibrate(primes=DEFAULT_PRIMES[:6], persist: bool = True) -> CalibrationResult:
    """Fix x -> q^(+-2) by matching left E_1, F_1 on the type A space with m = n = d = 2.

    The generator E_1 is the sum of [E_12 + D] over diagonal D, so each summand's
    product with [A] must reproduce the closed-form action; only one orientation can.
    """
    from .fock import GeneratorSymbol, apply_generator
    from .indexsets import from_entries

    space = Space.make("A", 2, 2, 2)
    gens = []
    for kind, off in (("E", (1, 2)), ("F", (2, 1))):
        for z11 in range(2):
            X = from_entries("A", 2, 2, {off: 1, (1, 1): z11, (2, 2): 1 - z11})
            gens.append((GeneratorSymbol("left", "A", kind, 1), X))
    agreeing = {}
    for orientation in ORIENTATIONS:
        ok = total = 0
        for g, X in gens:
            for A, vec in oracle_action(X, space, "left", primes, orientation).items():
                total += 1
                ok += apply_generator(g, ModuleVector.basis(space, A)) == vec
        agreeing[orientation] = (ok, total)
    winners = [o for o, (ok, tot) in agreeing.items() if tot and ok == tot]
    if len(winners) != 1:
        raise OracleError(f"calibration is not decisive: {agreeing}")
    res = CalibrationResult(winners[0], agreeing)
    if persist:
        path = calibration_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"orientation": res.orientation,
                                    "anchor": "type A, m=n=d=2, left E1 and F1",
                                    "primes": list(primes),
                                    "agreeing": {k: list(v) for k, v in agreeing.items()}},
                                   sort_keys=True, indent=2))
    return res


# ---------------------------------------------------------------------------
# checks

def oracle_check(flavor, m: int, n: int, d: int, primes=DEFAULT_PRIMES,
                 orientation: str | None = None, degree_bound: int | None = None,
                 sides=("left", "right")):
    """Compare counted generator actions with the closed formulas on every basis label."""
    from .fock import CheckReport, apply_generator, generators

    space = Space.make(flavor, m, n, d)
    orientation = orientation or load_calibration()
    if orientation is None:
        raise OracleError("oracle is uncalibrated; run calibrate() first")
    rep = CheckReport("oracle", f"{space.flavor.name} {m}|{n},{d}")
    for side in sides:
        for g in generators(space, side, diagonal=True):
            got = oracle_generator_action(g, space, primes, orientation, degree_bound)
            for A in space.basis():
                rep.checked += 1
                want = apply_generator(g, ModuleVector.basis(space, A))
                if got[A] != want:
                    rep.failures.append(f"{g} on {A.short()}: counted {got[A]} closed {want}")
    return rep


def _column_merges(m: int, n: int, d: int, parts: tuple):
    """Pairs (xi, xi') with xi in Theta_{m|n,d} and xi' the generic n x sum(parts) refinement label."""
    from .indexsets import enumerate_matrices, from_entries

    for xi in enumerate_matrices("A", m, n, d):
        nu = xi.co()
        splits = [[c for c in product(range(nu[j] + 1), repeat=parts[j]) if sum(c) == nu[j]]
                  for j in range(n)]
        for choice in product(*splits):
            entries, col = {}, 1
            for j, block in enumerate(choice):
                for v in block:
                    if v:
                        entries[(j + 1, col)] = v
                    col += 1
            yield xi, from_entries("A", n, col - 1, entries), choice


def refinement_identity_check(m: int, d: int, n: int = 1, parts: tuple = (2,),
                              primes=(7, 11), literal: bool = False):
    """chi_xi * chi_xi' for a column-refining xi': every count is 0 or 1, and it is 1
    exactly for the labels whose merged columns give back xi.

    With ``literal`` the stronger single-orbit form is checked instead.
    """
    from .fock import CheckReport
    from .indexsets import enumerate_matrices

    rep = CheckReport("refinement identity" + (" (single orbit)" if literal else ""),
                      f"A {m}|{n}->{sum(parts)},{d}")
    for p in primes:
        for xi, xip, choice in _column_merges(m, n, d, parts):
            hits = []
            for C in enumerate_matrices("A", m, sum(parts), d):
                if C.ro() != xi.ro() or C.co() != xip.co():
                    continue
                rep.checked += 1
                k = convolve_count(xi, xip, C, p)
                merged = _merge_columns(C, parts)
                want = 1 if merged == xi.rows else 0
                if k not in (0, 1) or k != want:
                    rep.failures.append(f"p={p} {xi.short()} * {xip.short()} at {C.short()}: {k}")
                if k:
                    hits.append(C)
            if literal and len(hits) != 1:
                rep.failures.append(f"p={p} {xi.short()} * {xip.short()}: {len(hits)} orbits")
    return rep


def _merge_columns(C: IndexMatrix, parts: tuple) -> tuple:
    out, col = [], 0
    blocks = []
    for k in parts:
        blocks.append(range(col, col + k))
        col += k
    for row in C.rows:
        out.append(tuple(sum(row[j] for j in b) for b in blocks))
    return tuple(out)

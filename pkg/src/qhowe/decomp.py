"""Representation-theoretic checks on Fock spaces over Q(q).

Everything here is exact linear algebra on operator matrices assembled from
the generator actions in ``qhowe.fock``: highest-weight lines, t-element
spectra, commutant dimensions, and the multiplicity-free decomposition with
its classical dimension accounting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coord import act_coord, coord_side
from .fock import (GeneratorSymbol, GeneratorWord, ModuleVector, apply_word, generators,
                   raising_generators, side_flavor, side_rank, word)
from .indexsets import BiPartitionLabel, Space, enumerate_bipartitions, partitions
from .ring import (ONE, RONE, RZERO, Laurent, Rational, qpow, quantum_integer, solve_sparse,
                   to_text)

MATRIX_CAP = 400
COMMUTANT_CAP = 60


class DecompError(ValueError):
    pass


# ---------------------------------------------------------------------------
# operator matrices

@dataclass
class OperatorMatrix:
    """Sparse exact matrix of an operator in the enumerated basis order.

    ``entries[(r, c)]`` is the coefficient of basis label r in the image of
    basis label c.
    """
    space: Space
    label: str
    size: int
    entries: dict

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def dense(self) -> list:
        out = [[Laurent() for _ in range(self.size)] for _ in range(self.size)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, vec: dict) -> dict:
        """Multiply a sparse coordinate vector {index: scalar}."""
        out: dict = {}
        cols = self._by_column()
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                term = Rational.coerce(x) * Rational.coerce(v)
                out[r] = out[r] + term if r in out else term
        return {r: v for r, v in out.items() if not v.is_zero()}

    def _by_column(self) -> dict:
        cache = getattr(self, "_cols", None)
        if cache is None:
            cache = {}
            for (r, c), v in sorted(self.entries.items()):
                cache.setdefault(c, []).append((r, v))
            self._cols = cache
        return cache

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {"label": self.label, "size": self.size,
                "entries": [[r, c, to_text(v)] for (r, c), v in sorted(self.entries.items())]}


def _as_words(g) -> tuple:
    if isinstance(g, GeneratorSymbol):
        return (word(g),)
    if isinstance(g, GeneratorWord):
        return (g,)
    return tuple(g)


def _label_of(g) -> str:
    if isinstance(g, GeneratorSymbol):
        return str(g)
    return " + ".join(str(w) for w in _as_words(g)) or "0"


def operator_matrix(g, space: Space, cap: int = MATRIX_CAP, basis_kind: str = "fock") -> OperatorMatrix:
    """Exact matrix of a generator, word or word sum; column j is the image of basis vector j.

    With ``basis_kind="coord"`` a single generator acts on the coordinate basis t^(A).
    """
    basis = space.basis()
    if len(basis) > cap:
        raise DecompError(f"space has {len(basis)} labels, above the cap {cap}")
    index = {A: i for i, A in enumerate(basis)}
    if basis_kind == "coord":
        if not isinstance(g, GeneratorSymbol):
            raise DecompError("the coordinate basis takes single generators")
        act = lambda v: act_coord(g, v)  # noqa: E731
    elif basis_kind == "fock":
        words = _as_words(g)
        act = lambda v: apply_word(words, v)  # noqa: E731
    else:
        raise DecompError(f"unknown basis {basis_kind!r}")
    entries: dict = {}
    for c, A in enumerate(basis):
        img = act(ModuleVector.basis(space, A))
        for B, x in img.terms.items():
            if not x.is_zero():
                entries[(index[B], c)] = x
    return OperatorMatrix(space, _label_of(g), len(basis), entries)


def identity_matrix(space: Space) -> OperatorMatrix:
    n = len(space.basis())
    return OperatorMatrix(space, "1", n, {(i, i): ONE for i in range(n)})


def matmul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    rows_of_a: dict = {}
    for (r, k), v in a.entries.items():
        rows_of_a.setdefault(k, []).append((r, v))
    out: dict = {}
    for (k, c), w in b.entries.items():
        for r, v in rows_of_a.get(k, ()):
            x = v * w
            out[(r, c)] = out[(r, c)] + x if (r, c) in out else x
    out = {rc: v for rc, v in out.items() if not v.is_zero()}
    return OperatorMatrix(a.space, f"({a.label})({b.label})", a.size, out)


def shifted(a: OperatorMatrix, c) -> OperatorMatrix:
    """a - c * identity."""
    out = dict(a.entries)
    for i in range(a.size):
        v = out.get((i, i), Laurent()) - c
        if v.is_zero():
            out.pop((i, i), None)
        else:
            out[(i, i)] = v
    return OperatorMatrix(a.space, f"{a.label} - {to_text(c)}", a.size, out)


# ---------------------------------------------------------------------------
# t-elements via braid substitutions

def _sym(side: str, fl: str, kind: str, i: int) -> GeneratorSymbol:
    return GeneratorSymbol(side, fl, kind, i)


def _k_expansion(side: str, fl: str, i: int, inverse: bool) -> list:
    """k_i (or its inverse) written as a product of d-letters."""
    d, dinv = ("dinv", "d") if inverse else ("d", "dinv")
    if fl == "j" and i == 0:
        return [_sym(side, fl, d, 0), _sym(side, fl, d, 0), _sym(side, fl, dinv, 1)]
    return [_sym(side, fl, d, i), _sym(side, fl, dinv, i + 1)]


def _expand_k(w: GeneratorWord) -> GeneratorWord:
    out = []
    for s in w.symbols:
        if s.kind in ("k", "kinv"):
            out += _k_expansion(s.side, s.flavor, s.index, s.kind == "kinv")
        else:
            out.append(s)
    return GeneratorWord(tuple(out), w.coeff)


def _bracket(x: Sequence, y: Sequence, a: int) -> tuple:
    """[x, y]_a = xy - q^a yx on word sums."""
    xy = tuple(u * v for u in x for v in y)
    yx = tuple((v * u).scaled(qpow(a) * -1) for u in x for v in y)
    return xy + yx


def _braid_image(s: GeneratorSymbol, i: int) -> tuple:
    """Image of one letter under the braid automorphism T_i (1 <= i < rank)."""
    side, fl, kind, j = s.side, s.flavor, s.kind, s.index
    one = (word(s),)
    if kind in ("d", "dinv"):
        jj = i + 1 if j == i else (i if j == i + 1 else j)
        return (word(_sym(side, fl, kind, jj)),)
    if kind == "t":
        if i != 1:
            return one
        e1, f1 = (word(_sym(side, fl, "e", 1)),), (word(_sym(side, fl, "f", 1)),)
        t0 = one
        k1 = (GeneratorWord(tuple(_k_expansion(side, fl, 1, False))),)
        return _bracket(e1, _bracket(t0, f1, 1), -1) + tuple(a * b for a in t0 for b in k1)
    ei, fi = (word(_sym(side, fl, "e", i)),), (word(_sym(side, fl, "f", i)),)
    if kind == "e":
        if j == i:
            return (GeneratorWord((_sym(side, fl, "f", i),) + tuple(_k_expansion(side, fl, i, False)),
                                  -ONE),)
        if abs(j - i) == 1:
            return _bracket(ei, one, -1)
        return one
    if kind == "f":
        if j == i:
            return (GeneratorWord(tuple(_k_expansion(side, fl, i, True)) + (_sym(side, fl, "e", i),),
                                  -ONE),)
        if abs(j - i) == 1:
            return _bracket(one, fi, 1)
        return one
    raise DecompError(f"no braid image for {s}")


def apply_braid(words: Sequence[GeneratorWord], i: int) -> tuple:
    out: list = []
    for w in words:
        w = _expand_k(w)
        acc: tuple = (GeneratorWord((), w.coeff),)
        for s in w.symbols:
            acc = tuple(a * b for a in acc for b in _braid_image(s, i))
        out += acc
    return tuple(out)


def build_t_element(flavor: str, i: int, rank: int | None = None, side: str = "left") -> tuple:
    """The t_i element of the coideal algebra of the given flavor ("i" or "j") as a word sum."""
    if flavor not in ("i", "j"):
        raise DecompError(f"t-elements exist only for flavors i and j, got {flavor!r}")
    if i < 0 or (rank is not None and i >= rank):
        raise DecompError(f"t-element index {i} out of range for rank {rank}")
    if flavor == "i":
        base: tuple = (word(_sym(side, "i", "t", 0)),)
    else:
        e0, f0 = (word(_sym(side, "j", "e", 0)),), (word(_sym(side, "j", "f", 0)),)
        inv = Rational.coerce(ONE) / Rational.coerce(qpow(1) - qpow(-1))
        k0 = GeneratorWord(tuple(_k_expansion(side, "j", 0, False)), -inv)
        k0inv = GeneratorWord(tuple(_k_expansion(side, "j", 0, True)), inv)
        base = _bracket(e0, f0, 1) + (k0, k0inv)
    for step in range(1, i + 1):
        base = apply_braid(base, step)
    return _simplify(base)


def _simplify(words: Sequence[GeneratorWord]) -> tuple:
    """Merge equal monomials; drops cancelled ones."""
    acc: dict = {}
    order: list = []
    for w in words:
        if w.symbols not in acc:
            order.append(w.symbols)
            acc[w.symbols] = w.coeff
        else:
            a, b = acc[w.symbols], w.coeff
            if isinstance(a, Rational) or isinstance(b, Rational):
                acc[w.symbols] = Rational.coerce(a) + Rational.coerce(b)
            else:
                acc[w.symbols] = a + b
    return tuple(GeneratorWord(s, acc[s]) for s in order if not acc[s].is_zero())


# ---------------------------------------------------------------------------
# diagonal weights

def _diag_symbols(space: Space, side: str) -> list:
    return [g for g in generators(space, side, diagonal=True) if g.kind in ("D", "d")]


def weight_of(space: Space, side: str, A) -> tuple:
    """Exponents a with D_i [A] = q^{a_i} [A] (or d_i) on the given side."""
    out = []
    for g in _diag_symbols(space, side):
        img = apply_word((word(g),), ModuleVector.basis(space, A))
        c = img.coefficient(A)
        if not c.is_monomial() or c.coeff(c.min_exp()) != 1:
            raise DecompError(f"{g} is not diagonal on {A!r}")
        out.append(c.min_exp())
    return tuple(out)


# ---------------------------------------------------------------------------
# highest-weight vectors

@dataclass
class HighestWeightDatum:
    side: str
    d_weights: tuple
    t_values: list             # Rational per computed t_i, None when not an eigenvector
    vector: dict               # basis label -> Rational, one representative
    multiplicity: int = 1      # dimension of the joint eigenspace
    vectors: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"side": self.side, "d_weights": list(self.d_weights),
                "t_values": [None if t is None else str(t) for t in self.t_values],
                "multiplicity": self.multiplicity,
                "vector": [[A.short(), str(c)] for A, c in sorted(self.vector.items())]}


def _kernel_in_block(mats: Sequence[OperatorMatrix], block: Sequence[int]) -> list:
    """Basis of {x supported on block : M x = 0 for all M} as sparse {index: Rational}."""
    pos = {b: k for k, b in enumerate(block)}
    rows: dict = {}
    for tag, M in enumerate(mats):
        for (r, c), v in M.entries.items():
            if c in pos:
                rows.setdefault((tag, r), {})[pos[c]] = Rational.coerce(v)
    sol = solve_sparse(list(rows.values()), len(block))
    return [{block[k]: x for k, x in enumerate(vec) if not x.is_zero()} for vec in sol.kernel]


def t_candidates(d: int) -> list:
    """Quantum integers [k] for |k| <= 2d + 1, without repetition."""
    seen, out = set(), []
    for k in range(-2 * d - 1, 2 * d + 2):
        v = quantum_integer(k)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _eigenvalue_of(T: OperatorMatrix, v: dict):
    """c with T v = c v, or None."""
    w = T.apply(v)
    i0 = min(v)
    c = w.get(i0, RZERO) / v[i0]
    for i in set(v) | set(w):
        if not (w.get(i, RZERO) - c * v.get(i, RZERO)).is_zero():
            return None
    return c


@lru_cache(maxsize=64)
def _t_matrices(space: Space, side: str) -> tuple:
    fl = side_flavor(space, side)
    if fl not in ("i", "j"):
        return ()
    rank = side_rank(space, side)
    out = []
    for i in range(rank):
        try:
            out.append(operator_matrix(build_t_element(fl, i, rank, side), space))
        except ArithmeticError:
            out.append(None)
    return tuple(out)


def _refine(space: Space, sides: Sequence[str]) -> list:
    """Joint highest-weight lines of the given sides.

    Inside each joint weight block, solves for vectors killed by every raising
    operator that are simultaneously eigenvectors of t0 on each side carrying
    one, for every candidate eigenvalue.  Returns [(weights, t0 values, vectors)].
    """
    basis = space.basis()
    mats = [operator_matrix(g, space) for s in sides for g in raising_generators(space, s)]
    blocks: dict = {}
    for i, A in enumerate(basis):
        key = tuple(weight_of(space, s, A) for s in sides)
        blocks.setdefault(key, []).append(i)
    cands = t_candidates(space.d)
    t0s = [(_t_matrices(space, s) or (None,))[0] for s in sides]
    out = []
    for key in sorted(blocks):
        block = blocks[key]
        if not _kernel_in_block(mats, block):
            continue
        stack = [((), list(mats))]
        for T in t0s:
            nxt = []
            for tvals, ms in stack:
                if T is None:
                    nxt.append((tvals + (None,), ms))
                    continue
                for c in cands:
                    trial = ms + [shifted(T, c)]
                    if _kernel_in_block(trial, block):
                        nxt.append((tvals + (Rational.coerce(c),), trial))
            stack = nxt
        for tvals, ms in stack:
            vecs = _kernel_in_block(ms, block)
            if vecs:
                out.append((key, tvals, vecs))
    return out


def joint_highest_weight_vectors(space: Space, side: str) -> list:
    """One datum per joint eigenspace of the side's weights inside its highest-weight space."""
    out = []
    tms = _t_matrices(space, side)
    for key, tvals, vecs in _refine(space, (side,)):
        v = vecs[0]
        t_values = [_eigenvalue_of(T, v) if T is not None else None for T in tms]
        if tvals[0] is not None:
            t_values[0] = tvals[0]
        basis = space.basis()
        out.append(HighestWeightDatum(side, key[0], t_values,
                                      {basis[i]: x for i, x in v.items()},
                                      len(vecs), vecs))
    return out


# ---------------------------------------------------------------------------
# spectra

@dataclass
class SpectrumReport:
    space: Space
    side: str
    annihilates: bool
    minimal_factors: list      # k values of the smallest annihilating sub-product
    squarefree: bool

    @property
    def passed(self) -> bool:
        return self.annihilates and self.squarefree

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "side": self.side, "annihilates": self.annihilates,
                "minimal_factors": self.minimal_factors, "squarefree": self.squarefree,
                "pass": self.passed}


def verify_t0_spectrum(space: Space, side: str = "left", basis_kind: str = "fock") -> SpectrumReport:
    """prod_{k=-d}^{d} (t0 - [k+1]) must vanish; the annihilating factors must be distinct.

    ``basis_kind="coord"`` reads ``space`` as a coordinate space acted on through
    the closed coordinate formulas.
    """
    fl = coord_side(space, side)[0] if basis_kind == "coord" else side_flavor(space, side)
    if fl != "i":
        raise DecompError(f"the {side} side of {space} has no t0")
    T = operator_matrix(GeneratorSymbol(side, "i", "t", 0), space, basis_kind=basis_kind)
    ks = list(range(-space.d, space.d + 1))
    factors = {k: shifted(T, quantum_integer(k + 1)) for k in ks}
    prod = identity_matrix(space)
    for k in ks:
        prod = matmul(factors[k], prod)
    annihilates = prod.is_zero()
    # drop factors one at a time while the product still vanishes
    keep = list(ks)
    if annihilates:
        for k in ks:
            trial = [x for x in keep if x != k]
            p = identity_matrix(space)
            for x in trial:
                p = matmul(factors[x], p)
            if p.is_zero():
                keep = trial
    # distinct linear factors [k+1] are automatically pairwise different here
    values = [quantum_integer(k + 1) for k in keep]
    squarefree = annihilates and len(set(values)) == len(values)
    return SpectrumReport(space, side, annihilates, keep, squarefree)


# ---------------------------------------------------------------------------
# commutants

def centralizer_dimension(space: Space, side: str, cap: int = COMMUTANT_CAP) -> int:
    """Dimension of the commutant of all generators of ``side`` (including diagonal ones)."""
    basis = space.basis()
    N = len(basis)
    if N > cap:
        raise DecompError(f"commutant of a {N}-dimensional space is above the cap {cap}")
    gens = generators(space, side, diagonal=True)
    # commuting with the diagonal generators forces X to preserve weight spaces
    w = [weight_of(space, side, A) for A in basis]
    cells = [(r, k) for r in range(N) for k in range(N) if w[r] == w[k]]
    var = {rk: i for i, rk in enumerate(cells)}
    rows = []
    for g in gens:
        if g.kind in ("D", "Dinv", "d", "dinv", "K", "Kinv", "k", "kinv"):
            continue
        M = operator_matrix(g, space)
        by_row: dict = {}
        by_col: dict = {}
        for (r, c), v in M.entries.items():
            by_row.setdefault(r, []).append((c, v))
            by_col.setdefault(c, []).append((r, v))
        # (X M - M X)[r, c] = sum_k X[r,k] M[k,c] - sum_k M[r,k] X[k,c]
        for r in range(N):
            for c in range(N):
                eq: dict = {}
                for k, v in by_col.get(c, ()):
                    i = var.get((r, k))
                    if i is not None:
                        eq[i] = eq.get(i, Laurent()) + v
                for k, v in by_row.get(r, ()):
                    i = var.get((k, c))
                    if i is not None:
                        eq[i] = eq.get(i, Laurent()) - v
                eq = {i: Rational.coerce(v) for i, v in eq.items() if not v.is_zero()}
                if eq:
                    rows.append(eq)
    sol = solve_sparse(rows, len(cells))
    return len(cells) - sol.rank


# ---------------------------------------------------------------------------
# classical dimensions

def weyl_dimension(weight: Sequence[int], rank: int) -> int:
    lam = list(weight) + [0] * (rank - len(weight))
    if len(lam) > rank:
        raise DecompError(f"weight {tuple(weight)} has more than {rank} parts")
    if any(lam[i] < lam[i + 1] for i in range(rank - 1)):
        raise DecompError(f"weight {tuple(weight)} is not dominant")
    num = Fraction(1)
    for i in range(rank):
        for j in range(i + 1, rank):
            num *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return int(num)


def classical_dimension(label, shape: Sequence[int] | None = None) -> int:
    """Weyl dimension of a partition (one gl factor) or a bipartition (two gl factors)."""
    if isinstance(label, BiPartitionLabel):
        parts = (label.plus, label.minus)
        if shape is None:
            r = label.rank
            shape = (r + 1, r) if label.flavor == "j" else (r, r)
    elif label and isinstance(label[0], (tuple, list)):
        parts = tuple(tuple(p) for p in label)
    else:
        parts = (tuple(label),)
    if shape is None:
        raise DecompError("shape is required for a plain label")
    if len(shape) != len(parts):
        raise DecompError(f"label {label} does not fit the shape {tuple(shape)}")
    out = 1
    for p, r in zip(parts, shape):
        out *= weyl_dimension(p, r)
    return out


# ---------------------------------------------------------------------------
# labels

def _pad(p: Sequence[int], k: int) -> list:
    return list(p) + [0] * (k - len(p))


def side_shape(space: Space, side: str) -> tuple:
    fl, r = side_flavor(space, side), side_rank(space, side)
    return (r,) if fl == "A" else ((r + 1, r) if fl == "j" else (r, r))


def predicted_label(lam, fl: str, rank: int) -> tuple:
    """(d-weight exponents, t-values) carried by the highest-weight line of label lam.

    The d-weights are (lam+_1, lam+_2 + lam-_1, ...) for j and (lam+_i + lam-_i)
    for i.  The t-values are the ones the Fock spaces realize: [lam-_i - lam+_{i+1}]
    for j and [1 + lam+_i - lam-_i] for i.
    """
    if fl == "A":
        return tuple(_pad(lam, rank)), ()
    plus, minus = lam
    if fl == "j":
        p, m = _pad(plus, rank + 1), _pad(minus, rank)
        a = (p[0],) + tuple(p[i + 1] + m[i] for i in range(rank))
        b = tuple(quantum_integer(m[i] - p[i + 1]) for i in range(rank))
    else:
        p, m = _pad(plus, rank), _pad(minus, rank)
        a = tuple(p[i] + m[i] for i in range(rank))
        b = tuple(quantum_integer(1 + p[i] - m[i]) for i in range(rank))
    return a, b


def index_set(flavor, m: int, n: int, d: int) -> list:
    """Labels of the summands: Par_min(m,n)(d) in type A, a Par^b_m(d) and Par^c_n(d) intersection otherwise."""
    space = Space.make(flavor, m, n, d)
    if space.flavor.kind == "A":
        return [tuple(p) for p in partitions(d, min(m, n))]
    lf, rf = side_flavor(space, "left"), side_flavor(space, "right")
    left = {(b.plus, b.minus) for b in enumerate_bipartitions(lf, m, d)}
    right = {(b.plus, b.minus) for b in enumerate_bipartitions(rf, n, d)}
    return sorted(left & right, key=lambda pm: (-sum(pm[0]), tuple(-x for x in pm[0]), pm[1]))


def _label_dim(lam, space: Space, side: str) -> int:
    return classical_dimension(lam, side_shape(space, side))


# ---------------------------------------------------------------------------
# decomposition

@dataclass
class DecompositionReport:
    space: Space
    summands: list
    checks: dict
    lines: list

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.checks.values())

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "summands": self.summands,
                "checks": self.checks, "pass": self.passed}


def _lam_text(lam) -> str:
    if lam and isinstance(lam[0], tuple):
        return f"({list(lam[0])},{list(lam[1])})"
    return str(list(lam))


def _val_text(x) -> str | None:
    if x is None:
        return None
    lau = Rational.coerce(x).to_laurent()
    return to_text(lau) if lau is not None else str(x)


def _t_agree(predicted: Sequence, observed: Sequence):
    """True/False when some t-value is comparable, None when nothing could be compared."""
    verdict = None
    for p, o in zip(predicted, observed):
        if o is None:
            continue
        if Rational.coerce(p) != Rational.coerce(o):
            return False
        verdict = True
    return verdict


def _side_key(lam, space: Space, side: str) -> tuple:
    """(d-weights, t0 value or None) of lam on one side, comparable with ``_refine`` keys."""
    fl, r = side_flavor(space, side), side_rank(space, side)
    a, b = predicted_label(lam, fl, r)
    return a, (Rational.coerce(b[0]) if b else None)


def _multiplicity_check(space: Space, labels: list, side: str) -> dict:
    """One-sided highest-weight spaces have the dimension of the opposite simple module."""
    other = "right" if side == "left" else "left"
    observed = {(key[0], t[0]): len(v) for key, t, v in _refine(space, (side,))}
    expected: dict = {}
    for lam in labels:
        k = _side_key(lam, space, side)
        expected[k] = expected.get(k, 0) + _label_dim(lam, space, other)
    ok = observed == expected
    return {"pass": ok, "classes": len(observed)}


def verify_decomposition(flavor, m: int, n: int, d: int) -> DecompositionReport:
    """Check the multiplicity-free decomposition by highest-weight lines and dimension counting.

    Checks: the number of joint highest-weight lines equals the number of labels;
    the space dimension equals the classical dimension sum; the d-weights of the
    lines are those of the labels (as multisets); t-values agree with the labels
    where computable; and each one-sided highest-weight space has the dimension
    of the opposite simple module.
    """
    space = Space.make(flavor, m, n, d)
    labels = index_set(flavor, m, n, d)
    dim = len(space.basis())
    lines = _refine(space, ("left", "right"))
    lf, rf = side_flavor(space, "left"), side_flavor(space, "right")

    tms = {s: _t_matrices(space, s) for s in ("left", "right")}
    observed = []
    for key, t0s, vecs in lines:
        entry = {"weights": key, "mult": len(vecs), "t": {}}
        for s, t0 in zip(("left", "right"), t0s):
            vals = []
            for i, T in enumerate(tms[s]):
                if i == 0 and t0 is not None:
                    vals.append(t0)
                elif T is None or len(vecs) != 1:
                    vals.append(None)
                else:
                    vals.append(_eigenvalue_of(T, vecs[0]))
            entry["t"][s] = vals
        observed.append(entry)

    counts_ok = len(lines) == len(labels) and all(e["mult"] == 1 for e in observed)
    dim_sum = sum(_label_dim(l, space, "left") * _label_dim(l, space, "right") for l in labels)

    predicted = {lam: (predicted_label(lam, lf, m), predicted_label(lam, rf, n)) for lam in labels}
    want = sorted((p[0][0], p[1][0]) for p in predicted.values())
    got = sorted(e["weights"] for e in observed)
    weights_ok = want == got

    summands = []
    used: set = set()
    t_ok = True
    for e in observed:
        lw, rw = e["weights"]
        cands = [lam for lam in labels if lam not in used
                 and predicted[lam][0][0] == lw and predicted[lam][1][0] == rw]
        match, evidence = None, "unmatched"
        for lam in cands:
            pl, pr = predicted[lam]
            tl, tr = _t_agree(pl[1], e["t"]["left"]), _t_agree(pr[1], e["t"]["right"])
            if tl is False or tr is False:
                continue
            match = lam
            evidence = "d-weights+t-values" if (tl or tr) else "d-weights"
            break
        if match is None and cands:
            match, evidence = cands[0], "d-weights only (t-values disagree)"
            t_ok = False
        if match is None:
            summands.append({"lambda": None, "left_weights": list(lw), "right_weights": list(rw),
                             "evidence": evidence})
            continue
        used.add(match)
        summands.append({
            "lambda": _lam_text(match),
            "left_dim": _label_dim(match, space, "left"),
            "right_dim": _label_dim(match, space, "right"),
            "left_weights": list(lw), "right_weights": list(rw),
            "left_t": [_val_text(x) for x in e["t"]["left"]],
            "right_t": [_val_text(x) for x in e["t"]["right"]],
            "evidence": evidence,
        })

    checks = {
        "counts": {"pass": counts_ok, "lines": len(lines), "labels": len(labels)},
        "dims": {"pass": dim_sum == dim, "space": dim, "classical_sum": dim_sum},
        "weights": {"pass": weights_ok},
        "t_values": {"pass": t_ok and len(used) == len(labels)},
        "left_multiplicities": _multiplicity_check(space, labels, "left"),
        "right_multiplicities": _multiplicity_check(space, labels, "right"),
    }
    for s in ("left", "right"):
        if side_flavor(space, s) == "i":
            rep = verify_t0_spectrum(space, s)
            checks[f"t0_spectrum_{s}"] = {"pass": rep.passed, "factors": rep.minimal_factors}
    return DecompositionReport(space, summands, checks, observed)


def commutant_accounting(flavor, m: int, n: int, d: int) -> dict:
    """Commutant dimension of each side against the sum of squared classical dimensions."""
    space = Space.make(flavor, m, n, d)
    labels = index_set(flavor, m, n, d)
    out = {}
    for side, other in (("right", "left"), ("left", "right")):
        got = centralizer_dimension(space, side)
        want = sum(_label_dim(l, space, other) ** 2 for l in labels)
        out[side] = {"commutant": got, "expected": want, "pass": got == want}
    return out

"""Quantum coordinate algebra of gl_n and the type B coordinate coalgebras.

Words are tuples of letters ``(i, j)`` standing for ``t_ij``.  Type A words are
straightened into the lexicographic monomial basis t^(A); type B words are read
as ``eps * w`` in the cyclic module generated by ``eps`` and reduced to the basis
t~^(A) whose letters all lie at or after (0, 0).

Actions come in two independent forms:

* ``act_coord``: closed formulas on basis labels;
* ``act_coord_derived``: generators of U_q(gl_N) (and their images for the
  coideal subalgebras) act letter by letter through the coproduct, after which
  the word is reduced again.

``intertwiner_check`` compares the closed formulas, rescaled to the basis <A>,
with the Fock-space action on the transposed label.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .fock import (CheckReport, GeneratorSymbol, ModuleVector, apply_generator, generators)
from .indexsets import Flavor, IndexMatrix, InvalidLabel, Space, e_theta, merge
from .ring import ONE, ZERO, Laurent, Rational, qpow, quantum_double_factorial, \
    quantum_factorial, quantum_integer

Q_MINUS = qpow(1) - qpow(-1)


class CoordError(ValueError):
    pass


# ---------------------------------------------------------------------------
# words

@dataclass(frozen=True)
class CoordWord:
    """``coeff * t_{i1 j1} ... t_{ik jk}``; flavor "A", "Bj" or "Bi"."""
    letters: tuple
    flavor: str = "A"
    coeff: Laurent = ONE

    def __post_init__(self):
        if self.flavor not in ("A", "Bj", "Bi"):
            raise CoordError(f"unknown word flavor {self.flavor!r}")
        for i, j in self.letters:
            if self.flavor == "A" and (i < 1 or j < 1):
                raise CoordError(f"type A letters use indices >= 1, got t[{i},{j}]")
            if self.flavor == "Bi" and (i == 0) != (j == 0):
                raise CoordError(f"letter t[{i},{j}] has exactly one zero index (not allowed for Bi)")

    def __mul__(self, other: "CoordWord") -> "CoordWord":
        if self.flavor != other.flavor:
            raise CoordError("cannot concatenate words of different flavors")
        return CoordWord(self.letters + other.letters, self.flavor, self.coeff * other.coeff)

    def __str__(self):
        body = " ".join(f"t[{i},{j}]" for i, j in self.letters) or "1"
        return body if self.coeff == ONE else f"({self.coeff}) {body}"


_LETTER = re.compile(r"t\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_word(text: str, flavor: str = "A") -> CoordWord:
    """Parse ``t[1,2] t[2,1]``; anything other than letters and spaces is rejected."""
    letters = tuple((int(a), int(b)) for a, b in _LETTER.findall(text))
    if _LETTER.sub("", text).strip():
        raise CoordError(f"cannot parse word {text!r}")
    return CoordWord(letters, flavor)


def _add(out: dict, key, c) -> None:
    if not c:
        return
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# ---------------------------------------------------------------------------
# type A straightening

def _swap_terms(x: tuple, y: tuple) -> list:
    """Rewrite t_x t_y with x > y as a combination of words with y first or sorted pairs."""
    a, b = x
    c, d = y
    if a == c or b == d:
        return [((y, x), qpow(-1))]
    if b < d:
        return [((y, x), ONE)]
    return [((y, x), ONE), (((c, b), (a, d)), -Q_MINUS)]


@lru_cache(maxsize=200_000)
def _normal(word: tuple, strategy: str) -> tuple:
    inv = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
    if not inv:
        return ((word, ONE),)
    p = inv[0] if strategy == "left" else inv[-1]
    out: dict = {}
    for pair, c in _swap_terms(word[p], word[p + 1]):
        for w, c2 in _normal(word[:p] + pair + word[p + 2:], strategy):
            _add(out, w, c * c2)
    return tuple(sorted(out.items()))


def normal_order_words(letters: tuple, strategy: str = "left") -> dict:
    """{sorted word: coefficient} equal to the given word in the coordinate algebra."""
    if strategy not in ("left", "right"):
        raise ValueError("strategy is 'left' or 'right'")
    return dict(_normal(tuple(letters), strategy))


def word_to_matrix(letters: tuple, m: int, n: int) -> IndexMatrix:
    rows = [[0] * n for _ in range(m)]
    for i, j in letters:
        if not (1 <= i <= m and 1 <= j <= n):
            raise CoordError(f"letter t[{i},{j}] outside a {m}x{n} label")
        rows[i - 1][j - 1] += 1
    return IndexMatrix("A", m, n, rows)


def monomial_word(A: IndexMatrix) -> tuple:
    """Letters of t^(A) in lexicographic order."""
    out = []
    for i in A.row_indices():
        for j in A.col_indices():
            out += [(i, j)] * A[i, j]
    return tuple(out)


def primed_word(A: IndexMatrix) -> tuple:
    """Letters of t'^(A): column-major order."""
    out = []
    for j in A.col_indices():
        for i in A.row_indices():
            out += [(i, j)] * A[i, j]
    return tuple(out)


def _dims(letters, m, n):
    if m is None:
        m = max((i for i, _ in letters), default=1)
    if n is None:
        n = max((j for _, j in letters), default=1)
    return m, n


def normal_order(w: CoordWord | tuple, m: int | None = None, n: int | None = None,
                 strategy: str = "left") -> ModuleVector:
    """A type A word in the monomial basis {t^(A)}, as a vector over m x n labels."""
    if isinstance(w, CoordWord):
        if w.flavor != "A":
            raise CoordError("normal_order takes type A words; use reduce_b for type B")
        letters, coeff = w.letters, w.coeff
    else:
        letters, coeff = tuple(w), ONE
    m, n = _dims(letters, m, n)
    space = Space.make("A", m, n, len(letters))
    terms = {word_to_matrix(sw, m, n): c * coeff for sw, c in normal_order_words(letters, strategy).items()}
    return ModuleVector(space, terms)


# ---------------------------------------------------------------------------
# type B reduction

def _domain(letter: tuple) -> bool:
    return letter >= (0, 0)


def _fold(letter: tuple) -> list:
    """Rewrite a leading letter before (0, 0) by the quotient relations."""
    i, j = letter
    a = -i
    if i < 0 and j < 0:
        return [((a, -j), ONE), ((a, j), -Q_MINUS)]
    if i < 0 and j > 0:
        return [((a, -j), ONE)]
    if i < 0:
        return [((a, 0), qpow(-1))]
    if i == 0 and j < 0:
        return [((0, -j), qpow(-1))]
    raise AssertionError("letter already in the fundamental domain")


@lru_cache(maxsize=200_000)
def _reduce(word: tuple) -> tuple:
    out: dict = {}
    for sw, c in _normal(word, "left"):
        if not sw or _domain(sw[0]):
            _add(out, sw, c)
            continue
        for letter, c2 in _fold(sw[0]):
            for w, c3 in _reduce((letter,) + sw[1:]):
                _add(out, w, c * c2 * c3)
    return tuple(sorted(out.items()))


def reduce_words(letters: tuple) -> dict:
    """{sorted domain word: coefficient} equal to eps * word."""
    return dict(_reduce(tuple(letters)))


def domain_word_to_matrix(letters: tuple, flavor, m: int, n: int) -> IndexMatrix:
    """The label A with a#_ij = number of letters (i, j), all letters at or after (0, 0)."""
    size_r, size_c = 2 * m + 1, 2 * n + 1
    rows = [[0] * size_c for _ in range(size_r)]
    rows[m][n] = 1
    for i, j in letters:
        if not _domain((i, j)) or abs(i) > m or abs(j) > n:
            raise CoordError(f"letter t[{i},{j}] is not a basis letter for m={m}, n={n}")
        if (i, j) == (0, 0):
            rows[m][n] += 2
        else:
            rows[m + i][n + j] += 1
            rows[m - i][n - j] += 1
    return IndexMatrix(flavor, m, n, rows)


def tilde_word(A: IndexMatrix) -> tuple:
    """Letters of t~^(A): (i, j) >= (0, 0) in lexicographic order with multiplicity a#_ij."""
    if A.flavor.kind != "B":
        raise CoordError("tilde_word needs a type B label")
    out = []
    for i in A.row_indices():
        for j in A.col_indices():
            if (i, j) < (0, 0):
                continue
            k = A.sharp(i, j) if (i, j) == (0, 0) else A[i, j]
            out += [(i, j)] * k
    return tuple(out)


def reduce_b(w: CoordWord | tuple, m: int | None = None, n: int | None = None,
             flavor: str | None = None) -> ModuleVector:
    """eps * w in the basis {t~^(A)}."""
    if isinstance(w, CoordWord):
        if w.flavor == "A":
            raise CoordError("reduce_b takes type B words")
        letters, coeff, wf = w.letters, w.coeff, w.flavor
    else:
        letters, coeff, wf = tuple(w), ONE, "Bj"
    if wf == "Bi":
        # t_00 restricts to the unit of the iota coalgebra
        letters = tuple(x for x in letters if x != (0, 0))
    if m is None:
        m = max((abs(i) for i, _ in letters), default=1) or 1
    if n is None:
        n = max((abs(j) for _, j in letters), default=1) or 1
    fl = flavor or ("Bii" if wf == "Bi" else "Bjj")
    space = Space.make(fl, m, n, len(letters))
    terms: dict = {}
    for sw, c in reduce_words(letters).items():
        A = domain_word_to_matrix(sw, fl, m, n)
        if not A.is_valid():
            raise CoordError(f"reduction produced {A.short()}, which is not a {fl} label")
        _add(terms, A, c * coeff)
    return ModuleVector(space, terms)


# ---------------------------------------------------------------------------
# closed formulas

def _qi(k: int) -> Laurent:
    return quantum_integer(k)


def _q(k: int) -> Laurent:
    return qpow(k)


def coord_side(space: Space, side: str) -> tuple:
    """(flavor letter, rank) of the algebra acting on a side: left on columns, right on rows."""
    f = space.flavor
    if side == "left":
        return ("A" if f.kind == "A" else f.col), space.n
    return ("A" if f.kind == "A" else f.row), space.m


def coord_generators(space: Space, side: str, diagonal: bool = True) -> list:
    return generators(space.transposed(), side, diagonal)


def _closed_a(g: GeneratorSymbol, A: IndexMatrix) -> dict:
    out: dict = {}
    i, k = g.index, g.kind
    R, C = list(A.row_indices()), list(A.col_indices())
    if g.side == "left":
        if k == "E":
            for j in R:
                if A[j, i + 1] > 0:
                    e = sum(A[r, i + 1] - A[r, i] for r in R if r > j)
                    _add(out, A.with_changes({(j, i): 1, (j, i + 1): -1}), _q(e) * _qi(A[j, i + 1]))
        elif k == "F":
            for j in R:
                if A[j, i] > 0:
                    e = sum(A[r, i] - A[r, i + 1] for r in R if r < j)
                    _add(out, A.with_changes({(j, i + 1): 1, (j, i): -1}), _q(e) * _qi(A[j, i]))
        else:
            _add(out, A, _q(_diag_a(k, i, A.co_at)))
    else:
        if k == "E":
            for j in C:
                if A[i, j] > 0:
                    e = sum(A[i + 1, c] - A[i, c] for c in C if c >= j) + 1
                    _add(out, A.with_changes({(i + 1, j): 1, (i, j): -1}), _q(e) * _qi(A[i, j]))
        elif k == "F":
            for j in C:
                if A[i + 1, j] > 0:
                    e = sum(A[i, c] - A[i + 1, c] for c in C if c <= j) + 1
                    _add(out, A.with_changes({(i, j): 1, (i + 1, j): -1}), _q(e) * _qi(A[i + 1, j]))
        else:
            _add(out, A, _q(_diag_a(k, i, A.ro_at)))
    return out


def _diag_a(kind: str, i: int, weight) -> int:
    if kind in ("D", "Dinv"):
        e = weight(i)
    else:
        e = weight(i) - weight(i + 1)
    return e if kind in ("D", "K") else -e


def _diag_b(g: GeneratorSymbol, weight) -> int:
    k, i = g.kind, g.index

    def dexp(j):
        return (weight(0) - 1) // 2 if (g.flavor == "j" and j == 0) else weight(j)
    if k in ("d", "dinv"):
        e = dexp(i)
    elif g.flavor == "j" and i == 0:
        e = 2 * dexp(0) - dexp(1)
    else:
        e = dexp(i) - dexp(i + 1)
    return e if k in ("d", "k") else -e


def _closed_b(g: GeneratorSymbol, A: IndexMatrix) -> dict:
    out: dict = {}
    i, k = g.index, g.kind
    R, C = list(A.row_indices()), list(A.col_indices())
    d0i = 1 if i == 0 else 0
    if g.side == "left":
        # columns
        if k == "e":
            for j in R:
                if A[j, i + 1] > 0:
                    e = sum(A[r, i + 1] - A[r, i] for r in R if r > j)
                    B = A.with_changes(merge(e_theta(j, i), e_theta(j, i + 1), sign=(1, -1)))
                    _add(out, B, _q(e) * _qi(A[j, i + 1]))
        elif k == "f":
            for j in R:
                e = sum(A[r, i] - A[r, i + 1] for r in R if r < j)
                if j <= 0:
                    avail = A.sharp(j, i) if (j, i) == (0, 0) else A[j, i]
                    coef = _qi(A[j, i] - (1 if (i == 0 and j == 0) else 0))
                else:
                    avail = A[j, i]
                    e -= d0i
                    coef = _qi(A[j, i])
                if avail > 0:
                    B = A.with_changes(merge(e_theta(j, i + 1), e_theta(j, i), sign=(1, -1)))
                    _add(out, B, _q(e) * coef)
        elif k == "t":
            e0 = sum(A[j, 1] - A[j, -1] for j in R if j > 0) + A[0, 1]
            _add(out, A, _q(e0))
            for j in R:
                if A[j, 1] > 0:
                    e = sum(A[r, 1] - A[r, -1] for r in R if r > j) - A[j, 0] + (1 if j < 0 else 0)
                    B = A.with_changes(merge(e_theta(j, -1), e_theta(j, 1), sign=(1, -1)))
                    _add(out, B, _q(e) * _qi(A[j, 1]))
        else:
            _add(out, A, _q(_diag_b(g, A.co_at)))
    else:
        # rows
        if k == "e":
            for j in C:
                e = sum(A[i + 1, c] - A[i, c] for c in C if c >= j) + 1
                if j <= 0:
                    avail = A.sharp(i, j) if (i, j) == (0, 0) else A[i, j]
                    e += d0i
                    coef = _qi(A[i, j] - (1 if (i == 0 and j == 0) else 0))
                else:
                    avail = A[i, j]
                    coef = _qi(A[i, j])
                if avail > 0:
                    B = A.with_changes(merge(e_theta(i + 1, j), e_theta(i, j), sign=(1, -1)))
                    _add(out, B, _q(e) * coef)
        elif k == "f":
            for j in C:
                if A[i + 1, j] > 0:
                    e = sum(A[i, c] - A[i + 1, c] for c in C if c <= j) + 1
                    B = A.with_changes(merge(e_theta(i, j), e_theta(i + 1, j), sign=(1, -1)))
                    _add(out, B, _q(e) * _qi(A[i + 1, j]))
        elif k == "t":
            e0 = sum(A[1, j] - A[-1, j] for j in C if j > 0) + A[1, 0]
            _add(out, A, _q(e0))
            for j in C:
                if A[1, j] > 0:
                    e = sum(A[1, c] - A[-1, c] for c in C if c > j) - A[0, j] + (1 if j < 0 else 0)
                    B = A.with_changes(merge(e_theta(-1, j), e_theta(1, j), sign=(1, -1)))
                    _add(out, B, _q(e) * _qi(A[1, j]))
        else:
            _add(out, A, _q(_diag_b(g, A.ro_at)))
    return out


def _check_coord(g: GeneratorSymbol, space: Space) -> None:
    fl, rank = coord_side(space, g.side)
    if g.flavor != fl:
        raise CoordError(f"generator {g} does not act on the coordinate space {space}")
    g.check_range(rank)
    if space.flavor.kind not in "AB":
        raise CoordError("coordinate actions are defined for types A and B")


@lru_cache(maxsize=200_000)
def _closed(g: GeneratorSymbol, A: IndexMatrix) -> tuple:
    out = _closed_a(g, A) if A.flavor.kind == "A" else _closed_b(g, A)
    return tuple(sorted(out.items(), key=lambda kv: kv[0].rows))


def act_coord(g: GeneratorSymbol, x: ModuleVector) -> ModuleVector:
    """Closed-formula action on the monomial basis t^(A) (type A) or t~^(A) (type B)."""
    _check_coord(g, x.space)
    out: dict = {}
    for A, c in x.terms.items():
        for B, y in _closed(g, A):
            _add(out, B, c * y)
    return ModuleVector(x.space, out)


# ---------------------------------------------------------------------------
# derived action: U_q(gl_N) letter rules through the coproduct

# An element of U_q(gl_N) is a list of (coeff, factors); a factor is
# ("E", a, b), ("F", a, b) with b the successor of a, or ("D", c, power).

def _K(a, b, s: int) -> list:
    return [("D", a, s), ("D", b, -s)]


def _embedding(g: GeneratorSymbol, labels: list | None = None) -> list:
    """Image of a generator in U_q(gl_N) over the ordered index ``labels``."""
    k, i = g.kind, g.index
    if g.flavor == "A":
        if k == "E":
            return [(ONE, [("E", i, i + 1)])]
        if k == "F":
            return [(ONE, [("F", i, i + 1)])]
        if k in ("D", "Dinv"):
            return [(ONE, [("D", i, 1 if k == "D" else -1)])]
        s = 1 if k == "K" else -1
        return [(ONE, _K(i, i + 1, s))]
    # with the iota labels (no 0) the pairs below are still consecutive for i > 0
    up, low = (i, i + 1), (-i - 1, -i)
    if k == "e":
        return [(ONE, [("E",) + up]), (ONE, _K(*up, -1) + [("F",) + low])]
    if k == "f":
        return [(ONE, [("E",) + low]), (ONE, [("F",) + up] + _K(*low, -1))]
    if k == "t":
        mid = (-1, 1)
        return [(ONE, [("E",) + mid]), (qpow(1), [("F",) + mid] + _K(*mid, -1)),
                (ONE, _K(*mid, -1))]
    # diagonal
    def d(j, s):
        if g.flavor == "j" and j == 0:
            return [("D", 0, s)]
        return [("D", j, s), ("D", -j, s)]
    if k in ("d", "dinv"):
        return [(ONE, d(i, 1 if k == "d" else -1))]
    s = 1 if k == "k" else -1
    if g.flavor == "j" and i == 0:
        return [(ONE, d(0, 2 * s) + d(1, -s))]
    return [(ONE, d(i, s) + d(i + 1, -s))]


def _letter_image(factor: tuple, letter: tuple, side: str):
    """(new letter or None, scalar exponent) for one generator on one letter."""
    r, c = letter
    pos = c if side == "left" else r
    kind = factor[0]
    if kind == "D":
        _, lab, s = factor
        return letter, s * (1 if pos == lab else 0)
    _, a, b = factor
    # left: E moves column b -> a, F moves a -> b; right: E moves row a -> b, F moves b -> a
    if side == "left":
        src, dst = (b, a) if kind == "E" else (a, b)
        if pos != src:
            return None, 0
        return (r, dst), 0
    src, dst = (a, b) if kind == "E" else (b, a)
    if pos != src:
        return None, 0
    return (dst, c), 0


def _diag_exp(factor_list: list, letters: tuple, side: str) -> int:
    e = 0
    for f in factor_list:
        for let in letters:
            e += _letter_image(f, let, side)[1]
    return e


def _apply_factor(factor: tuple, vec: dict, side: str) -> dict:
    """One Chevalley generator on a combination of words (module-algebra rule)."""
    out: dict = {}
    kind = factor[0]
    for w, c in vec.items():
        if kind == "D":
            _add(out, w, c * qpow(_diag_exp([factor], w, side)))
            continue
        _, a, b = factor
        # Delta(E) = E x K^-1 + 1 x E ; Delta(F) = F x 1 + K x F
        for p, let in enumerate(w):
            new, _ = _letter_image(factor, let, side)
            if new is None:
                continue
            if kind == "E":
                e = _diag_exp(_K(a, b, -1), w[p + 1:], side)
            else:
                e = _diag_exp(_K(a, b, 1), w[:p], side)
            _add(out, w[:p] + (new,) + w[p + 1:], c * qpow(e))
    return out


def act_on_words(element: list, vec: dict, side: str) -> dict:
    """An element of U_q(gl_N) on word combinations (left: rightmost factor first)."""
    out: dict = {}
    for coeff, factors in element:
        cur = dict(vec)
        order = reversed(factors) if side == "left" else factors
        for f in order:
            cur = _apply_factor(f, cur, side)
            if not cur:
                break
        for w, c in cur.items():
            _add(out, w, c * coeff)
    return out


def _side_labels(space: Space, side: str) -> list:
    fl, rank = coord_side(space, side)
    if fl == "A":
        return list(range(1, rank + 1))
    if fl == "j":
        return list(range(-rank, rank + 1))
    return [k for k in range(-rank, rank + 1) if k != 0]


def act_coord_derived(g: GeneratorSymbol, x: ModuleVector) -> ModuleVector:
    """The same action obtained from letter rules and the coproduct, then re-reduced."""
    _check_coord(g, x.space)
    space = x.space
    element = _embedding(g, _side_labels(space, g.side))
    out: dict = {}
    for A, c in x.terms.items():
        if space.flavor.kind == "A":
            vec = act_on_words(element, {monomial_word(A): ONE}, g.side)
            for w, y in vec.items():
                for sw, z in normal_order_words(w).items():
                    _add(out, word_to_matrix(sw, space.m, space.n), c * y * z)
        else:
            vec = act_on_words(element, {tilde_word(A): ONE}, g.side)
            for w, y in vec.items():
                for sw, z in reduce_words(w).items():
                    B = domain_word_to_matrix(sw, space.flavor, space.m, space.n)
                    _add(out, B, c * y * z)
    return ModuleVector(space, out)


# ---------------------------------------------------------------------------
# rescaled basis <A>

def rescale(A: IndexMatrix) -> tuple:
    """(c, A) with <A> = c * t^(A) (type A) or c * t~^(A) (type B); c is a Rational."""
    kind = A.flavor.kind
    if kind == "A":
        e2 = sum(r * (r + 1) for r in A.ro())
        den = ONE
        for row in A.rows:
            for a in row:
                den = den * quantum_factorial(a)
        return Rational.from_laurent(qpow(e2 // 2)) / Rational.from_laurent(den), A
    if kind != "B":
        raise CoordError("rescale is defined for types A and B")
    r0 = A.ro_at(0)
    if r0 % 2 == 0:
        raise InvalidLabel("centre row sum must be odd")
    num4 = (r0 - 1) * (r0 + 1)
    if num4 % 4:
        raise InvalidLabel("non-integral rescaling exponent")
    e = num4 // 4 + sum(A.ro_at(i) * (A.ro_at(i) + 1) // 2 for i in range(1, A.m + 1))
    den = quantum_double_factorial(A[0, 0] - 1)
    for i in A.row_indices():
        for j in A.col_indices():
            if (i, j) > (0, 0):
                den = den * quantum_factorial(A[i, j])
    return Rational.from_laurent(qpow(e)) / Rational.from_laurent(den), A


def to_angle_basis(v: ModuleVector) -> dict:
    """Coefficients of a t-basis vector in the basis <A>; values must be Laurent."""
    out = {}
    for A, c in v.terms.items():
        f, _ = rescale(A)
        x = Rational.coerce(c) / f
        lau = x.to_laurent()
        if lau is None:
            raise ArithmeticError(f"coefficient {x} of <{A.short()}> is not a Laurent polynomial")
        if lau:
            out[A] = lau
    return out


def act_angle(g: GeneratorSymbol, A: IndexMatrix) -> dict:
    """g acting on <A>, expressed in the basis <B>."""
    space = Space.make(A.flavor, A.m, A.n, A.d)
    f, _ = rescale(A)
    image = act_coord(g, ModuleVector.basis(space, A))
    out = {}
    for B, c in image.terms.items():
        fb, _ = rescale(B)
        x = f * Rational.coerce(c) / fb
        lau = x.to_laurent()
        if lau is None:
            raise ArithmeticError(f"non-Laurent coefficient {x} in the <A> basis")
        out[B] = lau
    return out


def intertwiner_check(flavor, m: int, n: int, d: int) -> CheckReport:
    """<A> -> [A^T] intertwines every generator action between coordinate and Fock spaces."""
    space = Space.make(flavor, m, n, d)
    fock_space = space.transposed()
    rep = CheckReport("intertwiner", str(space))
    for side in ("left", "right"):
        for g in coord_generators(space, side):
            for A in space.basis():
                rep.checked += 1
                try:
                    mine = {B.transpose(): c for B, c in act_angle(g, A).items()}
                except ArithmeticError as exc:
                    rep.failures.append({"generator": str(g), "label": A.short(), "error": str(exc)})
                    continue
                theirs = apply_generator(g, ModuleVector.basis(fock_space, A.transpose()))
                if ModuleVector(fock_space, mine) != theirs:
                    rep.failures.append({"generator": str(g), "label": A.short(),
                                         "coord": str(ModuleVector(fock_space, mine)),
                                         "fock": str(theirs)})
    return rep


def derived_check(flavor, m: int, n: int, d: int) -> CheckReport:
    """Closed formulas against the coproduct-derived action on every basis label."""
    space = Space.make(flavor, m, n, d)
    rep = CheckReport("closed-vs-derived", str(space))
    for side in ("left", "right"):
        for g in coord_generators(space, side):
            for A in space.basis():
                rep.checked += 1
                v = ModuleVector.basis(space, A)
                a, b = act_coord(g, v), act_coord_derived(g, v)
                if a != b:
                    rep.failures.append({"generator": str(g), "label": A.short(),
                                         "closed": str(a), "derived": str(b)})
    return rep


# ---------------------------------------------------------------------------
# tensor-representation oracle

def tensor_action(element: list, vec: dict) -> dict:
    """An element of U_q(gl_N) on the tensor power of the natural module.

    Tensors are index tuples; the action of a Chevalley generator through the
    coproduct is the left letter action on columns, so the word machinery is reused
    with letters (position, index).
    """
    words = {tuple((p, k) for p, k in enumerate(t)): c for t, c in vec.items()}
    out = act_on_words(element, words, "left")
    return {tuple(k for _, k in w): c for w, c in out.items()}


def matrix_coefficient(letters: tuple, element: list) -> Laurent:
    """<t_{i1 j1} ... t_{id jd}, x>: coefficient of v_I in x . v_J."""
    I = tuple(i for i, _ in letters)
    J = tuple(j for _, j in letters)
    return tensor_action(element, {J: ONE}).get(I, ZERO)


def generator_words(gens: list, max_len: int) -> list:
    """All products of up to ``max_len`` elements from ``gens`` (elements as lists)."""
    out = [[(ONE, [])]]
    frontier = [[(ONE, [])]]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in gens:
                nxt.append([(c1 * c2, f1 + f2) for c1, f1 in w for c2, f2 in g])
        out += nxt
        frontier = nxt
    return out


def type_a_relations(n: int) -> list:
    """The quadratic relations, each as {word: coeff} that must vanish."""
    rels = []
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for j in range(1, n + 1):
                rels.append({((i, j), (k, j)): ONE, ((k, j), (i, j)): -qpow(1)})
                rels.append({((j, i), (j, k)): ONE, ((j, k), (j, i)): -qpow(1)})
                for l in range(j + 1, n + 1):
                    rels.append({((i, l), (k, j)): ONE, ((k, j), (i, l)): -ONE})
                    rels.append({((i, j), (k, l)): ONE, ((k, l), (i, j)): -ONE,
                                 ((i, l), (k, j)): -Q_MINUS})
    return rels


def type_b_relations(n: int) -> list:
    """The quotient relations of the iota-restriction (degree one)."""
    rels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rels.append({((i, j),): ONE, ((-i, -j),): -ONE, ((i, -j),): -Q_MINUS})
            rels.append({((i, -j),): ONE, ((-i, j),): -ONE})
        rels.append({((i, 0),): ONE, ((-i, 0),): -qpow(1)})
        rels.append({((0, i),): ONE, ((0, -i),): -qpow(1)})
    return rels


def _gl_gens(labels: list) -> list:
    gens = []
    for a, b in zip(labels, labels[1:]):
        gens += [[(ONE, [("E", a, b)])], [(ONE, [("F", a, b)])]]
    for c in labels:
        gens.append([(ONE, [("D", c, 1)])])
    return gens


def _coideal_gens(flavor: str, n: int) -> list:
    labels = list(range(-n, n + 1)) if flavor == "j" else [k for k in range(-n, n + 1) if k]
    out = []
    lo = 0 if flavor == "j" else 1
    for i in range(lo, n):
        for kind in ("e", "f"):
            out.append(_embedding(GeneratorSymbol("left", flavor, kind, i), labels))
    if flavor == "i":
        out.append(_embedding(GeneratorSymbol("left", "i", "t", 0), labels))
    for j in range(lo, n + 1):
        out.append(_embedding(GeneratorSymbol("left", flavor, "d", j), labels))
    return out


def tensor_oracle_check(n: int, d: int, kind: str = "A", flavor: str = "j") -> CheckReport:
    """Relations evaluated as matrix coefficients on words of generators vanish.

    Type A: every quadratic relation, padded by letters to total degree <= d, paired
    with all words of length <= 2d in E, F, D.  Type B: each degree-one quotient
    relation times letters, paired with words of the coideal generators.
    """
    rep = CheckReport("tensor-oracle", f"{kind}{flavor if kind == 'B' else ''} n={n} d={d}")
    if kind == "A":
        labels = list(range(1, n + 1))
        rels = type_a_relations(n)
        gens = _gl_gens(labels)
        base = 2
    else:
        labels = list(range(-n, n + 1)) if flavor == "j" else [k for k in range(-n, n + 1) if k]
        rels = [r for r in type_b_relations(n)
                if flavor == "j" or all(0 not in (a, b) for w in r for a, b in w)]
        gens = _coideal_gens(flavor, n)
        base = 1
    if d < base:
        return rep
    letters = [(a, b) for a in labels for b in labels]
    xs = generator_words(gens, min(2 * d, 3 if kind == "B" else 2 * d))
    pads = [()] + [(x,) for x in letters] if d > base else [()]
    for r in rels:
        for pad in pads:
            for x in xs:
                rep.checked += 1
                total = ZERO
                for w, c in r.items():
                    total = total + c * matrix_coefficient(w + pad, x)
                if total:
                    rep.failures.append({"relation": str(sorted(r.items())), "pad": str(pad), "value": str(total)})
                    if len(rep.failures) > 20:
                        return rep
    return rep

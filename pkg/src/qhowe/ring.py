"""Exact arithmetic in Z[q, q^-1] and Q(q).

``Laurent`` is the coefficient ring for every basis expansion in the package.
``Rational`` is the field of fractions, used only for linear algebra.
Integer polynomials in q are plain tuples of coefficients, lowest degree
first, with no trailing zeros; the empty tuple is the zero polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence


class Laurent:
    """Integer Laurent polynomial in q, stored as {exponent: nonzero coefficient}.

    Instances are immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Laurent":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def mono(cls, k: int, c: int = 1) -> "Laurent":
        return cls._raw({int(k): int(c)} if c else {})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def as_int(self) -> int | None:
        if not self._terms:
            return 0
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        return None

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** k for k, c in self._terms.items()), Fraction(0))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Laurent | None":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, int):
            return Laurent.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        t = dict(self._terms)
        for k, c in o._terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Laurent._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Laurent._raw({})
            return Laurent._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Laurent._raw({})
        if len(b) == 1:
            (kb, cb), = b.items()
            return Laurent._raw({k + kb: c * cb for k, c in a.items()})
        if len(a) == 1:
            (ka, ca), = a.items()
            return Laurent._raw({k + ka: c * ca for k, c in b.items()})
        t: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                t[k] = t.get(k, 0) + ca * cb
        return Laurent._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._terms) == 1:
                (k, c), = self._terms.items()
                if c in (1, -1):
                    return Laurent._raw({-k * (-e): c ** (-e)})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        out = Laurent.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by q^k."""
        if not k:
            return self
        return Laurent._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "Laurent":
        return Laurent._raw({-k: c for k, c in self._terms.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Laurent({to_text(self)!r})"


q = Laurent.mono(1)
ZERO = Laurent.const(0)
ONE = Laurent.const(1)


def qpow(k: int) -> Laurent:
    return Laurent.mono(k)


def bar(x: Laurent) -> Laurent:
    return x.bar()


# --------------------------------------------------------------------------
# quantum numbers

@lru_cache(maxsize=None)
def quantum_integer(n: int) -> Laurent:
    """[n] = (q^n - q^-n)/(q - q^-1); [-n] = -[n]."""
    if n < 0:
        return -quantum_integer(-n)
    return Laurent._raw({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial(n: int) -> Laurent:
    if n < 0:
        raise ValueError(f"quantum factorial of negative integer {n}")
    out = ONE
    for k in range(2, n + 1):
        out = out * quantum_integer(k)
    return out


@lru_cache(maxsize=None)
def quantum_double_factorial(n: int) -> Laurent:
    """[n]!! = [n][n-2]...[2] for even n >= 0, with [0]!! = 1."""
    if n < 0 or n % 2:
        raise ValueError(f"double factorial needs an even nonnegative integer, got {n}")
    out = ONE
    for k in range(2, n + 1, 2):
        out = out * quantum_integer(k)
    return out


# --------------------------------------------------------------------------
# text forms

def _fmt_term(k: int, c: int) -> str:
    if k == 0:
        return str(abs(c))
    mag = abs(c)
    body = "q" if k == 1 else f"q^{k}"
    return body if mag == 1 else f"{mag}*{body}"


def to_text(x: Laurent) -> str:
    """Canonical text, increasing exponents: ``q^-2 + 1 + q^2``."""
    items = x.items()
    if not items:
        return "0"
    out = []
    for idx, (k, c) in enumerate(items):
        term = _fmt_term(k, c)
        if idx == 0:
            out.append(term if c > 0 else "-" + term)
        else:
            out.append((" + " if c > 0 else " - ") + term)
    return "".join(out)


_TERM = re.compile(r"^(\d+)?(\*)?(q(?:\^(-?\d+))?)?$")


def parse_laurent(text: str) -> Laurent:
    """Inverse of ``to_text``; also accepts ``q`` alone and missing spaces."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Laurent polynomial text")
    terms: dict = {}
    # split before every sign that is not part of an exponent
    for raw in re.split(r"(?<!\^)(?=[+-])", s):
        if not raw:
            continue
        sign = -1 if raw[0] == "-" else 1
        body = raw.lstrip("+-")
        m = _TERM.match(body)
        if not body or not m or (m.group(1) is None and m.group(3) is None) \
                or (m.group(2) and (m.group(1) is None or m.group(3) is None)):
            raise ValueError(f"cannot parse term {raw!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(3) is None:
            k = 0
        else:
            k = int(m.group(4)) if m.group(4) is not None else 1
        terms[k] = terms.get(k, 0) + sign * c
    return Laurent(terms)


def to_machine(x: Laurent) -> list:
    return [[k, str(c)] for k, c in x.items()]


def from_machine(data: Iterable) -> Laurent:
    return Laurent({int(k): int(c) for k, c in data})


# --------------------------------------------------------------------------
# integer polynomials (tuples, low degree first)

Poly = tuple


def _trim(a: list) -> tuple:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pscale(a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pcontent(a: Poly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def pprimitive(a: Poly) -> Poly:
    if not a:
        return a
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def pdivmod_exact(a: Poly, b: Poly) -> Poly:
    """a / b in Z[q]; raises if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(rem) - 1 < db:
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return ()
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[i - db] = qc
        for j, bc in enumerate(b):
            rem[i - db + j] -= qc * bc
    if any(rem[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quo)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [x * lb for x in rem]
        for j, bc in enumerate(b):
            rem[shift + j] -= c * bc
        rem = list(_trim(rem))
    return tuple(rem)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor in Z[q], normalized with positive leading coefficient."""
    if not a:
        return pprimitive(b) if not b else _norm_gcd(b)
    if not b:
        return _norm_gcd(a)
    # strip common powers of q first: cheap and very common here
    za = next(i for i, c in enumerate(a) if c)
    zb = next(i for i, c in enumerate(b) if c)
    z = min(za, zb)
    a, b = a[za:], b[zb:]
    cont = gcd(pcontent(a), pcontent(b))
    a, b = pprimitive(a), pprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(a, b)
        a, b = b, (pprimitive(r) if r else ())
    if b:  # nonzero constant: coprime primitive parts
        g: Poly = (1,)
    else:
        g = pprimitive(a)
    return tuple([0] * z) + pscale(g, cont)


def _norm_gcd(a: Poly) -> Poly:
    return a if a[-1] > 0 else pneg(a)


def laurent_to_poly(x: Laurent) -> tuple[Poly, int]:
    """Return (p, s) with x = q^s * p and p(0) != 0 (p empty for x = 0)."""
    if x.is_zero():
        return (), 0
    lo, hi = x.min_exp(), x.max_exp()
    t = x._terms
    return tuple(t.get(k, 0) for k in range(lo, hi + 1)), lo


def poly_to_laurent(p: Poly, shift: int = 0) -> Laurent:
    return Laurent._raw({i + shift: c for i, c in enumerate(p) if c})


# --------------------------------------------------------------------------
# rational functions

class Rational:
    """Reduced fraction num/den of integer polynomials in q; den has positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = (1,), _reduced: bool = False):
        num, den = tuple(num), tuple(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_laurent(cls, x: Laurent) -> "Rational":
        if isinstance(x, int):
            x = Laurent.const(x)
        p, s = laurent_to_poly(x)
        if not p:
            return RZERO
        if s >= 0:
            return cls(tuple([0] * s) + p, (1,), _reduced=True)
        return cls(p, tuple([0] * (-s)) + (1,), _reduced=True)

    @classmethod
    def coerce(cls, x) -> "Rational":
        if isinstance(x, Rational):
            return x
        if isinstance(x, (Laurent, int)):
            return cls.from_laurent(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Rational")

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def to_laurent(self) -> Laurent | None:
        """The Laurent polynomial equal to self, or None if there is none."""
        d = self.den
        if all(c == 0 for c in d[:-1]) and d[-1] == 1:
            return poly_to_laurent(self.num, -(len(d) - 1))
        return None

    def __add__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return Rational(padd(self.num, o.num), self.den)
        return Rational(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Rational(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RZERO
        return Rational(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "Rational":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Rational(self.den, self.num)

    def __truediv__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = _rcoerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        num = sum((c * x ** i for i, c in enumerate(self.num)), Fraction(0))
        den = sum((c * x ** i for i, c in enumerate(self.den)), Fraction(0))
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at q = {x}")
        return num / den

    def __str__(self):
        lau = self.to_laurent()
        if lau is not None:
            return to_text(lau)
        return f"({to_text(poly_to_laurent(self.num))})/({to_text(poly_to_laurent(self.den))})"

    def __repr__(self):
        return f"Rational({self})"


def _rcoerce(x) -> Rational | None:
    if isinstance(x, Rational):
        return x
    if isinstance(x, (Laurent, int)):
        return Rational.from_laurent(x)
    return None


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num, den = _trim(list(num)), _trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    g = pgcd(num, den)
    if g != (1,):
        num, den = pdivmod_exact(num, g), pdivmod_exact(den, g)
    if den[-1] < 0:
        num, den = pneg(num), pneg(den)
    return num, den


RZERO = Rational((), (1,), _reduced=True)
RONE = Rational((1,), (1,), _reduced=True)


# --------------------------------------------------------------------------
# linear algebra over Q(q)

@dataclass
class LinearSolution:
    rank: int
    solvable: bool
    particular: list | None
    kernel: list = field(default_factory=list)
    pivots: tuple = ()


def _row_to_polys(row: Mapping[int, Rational]) -> dict:
    """Clear denominators of a sparse row; returns {col: Poly} (primitive)."""
    items = [(c, Rational.coerce(v)) for c, v in row.items()]
    items = [(c, v) for c, v in items if v.num]
    if not items:
        return {}
    den: Poly = (1,)
    for _, v in items:
        if v.den != (1,) and v.den != den:
            g = pgcd(den, v.den)
            den = pmul(den, pdivmod_exact(v.den, g))
    out = {c: pmul(v.num, pdivmod_exact(den, v.den)) for c, v in items}
    return _primitive_row(out)


def _primitive_row(row: dict) -> dict:
    if not row:
        return row
    g: Poly = ()
    for v in row.values():
        g = pgcd(g, v) if g else _norm_gcd(v)
        if g == (1,):
            return row
    if g == (1,):
        return row
    return {c: pdivmod_exact(v, g) for c, v in row.items()}


def _poly_size(p: Poly) -> tuple:
    return (len(p), sum(1 for c in p if c), max(abs(c) for c in p))


def echelonize(rows: Sequence[Mapping[int, object]], ncols: int):
    """Fraction-free Gauss-Jordan elimination on sparse rows over Z[q].

    Returns (pivot_rows, pivot_cols): each pivot row is a dict {col: Poly},
    reduced so that every pivot column is zero in all other pivot rows.
    """
    work = []
    for r in rows:
        pr = _row_to_polys(r)
        if pr:
            work.append(pr)
    pivots: list[tuple[int, dict]] = []
    for col in range(ncols):
        cands = [i for i, r in enumerate(work) if col in r]
        if not cands:
            continue
        best = min(cands, key=lambda i: (_poly_size(work[i][col]), len(work[i])))
        prow = work.pop(best)
        p = prow[col]
        nxt = []
        for r in work:
            if col in r:
                r = _eliminate(r, prow, col, p)
                if r:
                    nxt.append(r)
            else:
                nxt.append(r)
        work = nxt
        pivots.append((col, prow))
    # back substitution to reduce above the pivots
    for k in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[k]
        p = prow[col]
        for j in range(k):
            cj, rj = pivots[j]
            if col in rj:
                pivots[j] = (cj, _eliminate(rj, prow, col, p))
    return [r for _, r in pivots], [c for c, _ in pivots]


def _eliminate(r: dict, prow: dict, col: int, p: Poly) -> dict:
    e = r[col]
    g = pgcd(p, e)
    a = pdivmod_exact(p, g)
    b = pdivmod_exact(e, g)
    out: dict = {}
    for c, v in r.items():
        out[c] = pmul(a, v)
    for c, v in prow.items():
        w = psub(out.get(c, ()), pmul(b, v))
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    out.pop(col, None)
    return _primitive_row(out)


def solve_linear(system: Sequence[Sequence], rhs: Sequence | None = None) -> LinearSolution:
    """Solve system * x = rhs exactly over Q(q).

    ``system`` is a dense list of rows (entries Laurent, Rational or int).
    Returns rank, kernel basis, a particular solution (or None) and a
    solvability flag. With ``rhs=None`` the homogeneous system is solved.
    """
    nrows = len(system)
    ncols = len(system[0]) if nrows else 0
    if rhs is not None and len(rhs) != nrows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {nrows}")
    sparse = []
    for i, row in enumerate(system):
        if len(row) != ncols:
            raise ValueError("ragged system matrix")
        d = {j: Rational.coerce(v) for j, v in enumerate(row) if _nonzero(v)}
        if rhs is not None and _nonzero(rhs[i]):
            d[ncols] = Rational.coerce(rhs[i])
        sparse.append(d)
    return solve_sparse(sparse, ncols, with_rhs=rhs is not None)


def _nonzero(v) -> bool:
    if isinstance(v, int):
        return v != 0
    return not v.is_zero()


def solve_sparse(rows: Sequence[Mapping[int, object]], ncols: int, with_rhs: bool = False) -> LinearSolution:
    """Sparse variant of ``solve_linear``; column ``ncols`` holds the rhs when ``with_rhs``."""
    total = ncols + 1 if with_rhs else ncols
    prows, pcols = echelonize(rows, total)
    solvable = True
    if with_rhs and ncols in pcols:
        solvable = False
        k = pcols.index(ncols)
        prows = prows[:k] + prows[k + 1:]
        pcols = pcols[:k] + pcols[k + 1:]
    rank = len(pcols)
    pivot_of = dict(zip(pcols, prows))
    free = [c for c in range(ncols) if c not in pivot_of]
    kernel = []
    for f in free:
        vec = [RZERO] * ncols
        vec[f] = RONE
        for c, r in pivot_of.items():
            if f in r:
                vec[c] = Rational(pneg(r[f]), r[c])
        kernel.append(vec)
    particular = None
    if solvable:
        particular = [RZERO] * ncols
        if with_rhs:
            for c, r in pivot_of.items():
                if ncols in r:
                    particular[c] = Rational(r[ncols], r[c])
    return LinearSolution(rank, solvable, particular, kernel, tuple(pcols))


def matrix_rank(rows: Sequence[Mapping[int, object]], ncols: int) -> int:
    return len(echelonize(rows, ncols)[1])

"""Fock spaces: free Laurent modules on index matrices with two commuting actions.

The label [A] stands for the normalized basis element q^e(A) * chi_A, where
chi_A is the characteristic function of an orbit of flag pairs and e(A) is
``normalization_exponent(A)``.  The left action is by the Schur algebra on the
row side (rows of A), the right action by the Schur algebra on the column side.
Generators act through the closed formulas below; arbitrary Schur-algebra
products are only available through ``qhowe.oracle``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .indexsets import (Flavor, IndexMatrix, InvalidLabel, Space, c_shift, c_unshift,
                        e_theta, merge)
from .ring import ONE, ZERO, Laurent, Rational, qpow, quantum_integer, to_text


# ---------------------------------------------------------------------------
# normalization

def normalization_exponent(A: IndexMatrix) -> int:
    """Exponent e with [A] = q^e chi_A."""
    rows = list(A.row_indices())
    cols = list(A.col_indices())
    # sum over i >= k, j < l of a_ij a_kl, via suffix sums over rows <= i and cols > j
    s = 0
    for i in rows:
        for j in cols:
            a = A[i, j]
            if not a:
                continue
            tail = 0
            for k in rows:
                if k > i:
                    break
                for l in cols:
                    if l > j:
                        tail += A[k, l]
            s += a * tail
    kind = A.flavor.kind
    if kind == "A":
        return s
    corner = sum(A[i, j] for i in rows if i >= 0 for j in cols if j < 0)
    twice = s - corner if kind == "B" else s + corner
    if twice % 2:
        raise InvalidLabel(f"half-integral normalization exponent for {A!r}")
    return twice // 2


# ---------------------------------------------------------------------------
# generators

TYPE_A_KINDS = ("E", "F", "D", "Dinv", "K", "Kinv")
TYPE_B_KINDS = ("e", "f", "d", "dinv", "t", "k", "kinv")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    side: str      # "left" or "right"
    flavor: str    # "A", "j" or "i"
    kind: str
    index: int

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be left or right, got {self.side!r}")
        kinds = TYPE_A_KINDS if self.flavor == "A" else TYPE_B_KINDS
        if self.flavor not in ("A", "i", "j") or self.kind not in kinds:
            raise ValueError(f"unknown generator {self.kind} for flavor {self.flavor}")

    def check_range(self, rank: int) -> None:
        i, k = self.index, self.kind
        if self.flavor == "A":
            ok = 1 <= i < rank if k in ("E", "F", "K", "Kinv") else 1 <= i <= rank
        elif self.flavor == "j":
            if k in ("e", "f", "k", "kinv"):
                ok = 0 <= i < rank
            elif k in ("d", "dinv"):
                ok = 0 <= i <= rank
            else:
                ok = False
        else:
            if k in ("e", "f", "k", "kinv"):
                ok = 0 < i < rank
            elif k in ("d", "dinv"):
                ok = 1 <= i <= rank
            else:
                ok = i == 0
        if not ok:
            raise ValueError(f"index {i} out of range for {k} ({self.flavor}, rank {rank})")

    @property
    def label(self) -> str:
        k = {"Dinv": "D^-1", "Kinv": "K^-1", "dinv": "d^-1", "kinv": "k^-1"}.get(self.kind, self.kind)
        return f"{k}{self.index}"

    def __str__(self):
        return f"{self.side}:{self.label}"

    @classmethod
    def parse(cls, text: str, side: str, flavor: str) -> "GeneratorSymbol":
        t = text.strip().replace("^-1", "inv").replace("_", "")
        if t.startswith("t"):
            return cls(side, flavor, "t", int(t[1:] or 0))
        for kind in sorted(TYPE_A_KINDS + TYPE_B_KINDS, key=len, reverse=True):
            if t.startswith(kind) and t[len(kind):].lstrip("-").isdigit():
                return cls(side, flavor, kind, int(t[len(kind):]))
        raise ValueError(f"cannot parse generator {text!r}")


def side_flavor(space: Space, side: str) -> str:
    f = space.flavor
    return "A" if f.kind == "A" else f.side(side)


def side_rank(space: Space, side: str) -> int:
    return space.m if side == "left" else space.n


def generators(space: Space, side: str, diagonal: bool = True) -> list:
    """Chevalley-type generators of one side (plus diagonal ones when asked)."""
    fl = side_flavor(space, side)
    r = side_rank(space, side)
    out = []
    if fl == "A":
        for i in range(1, r):
            out += [GeneratorSymbol(side, fl, "E", i), GeneratorSymbol(side, fl, "F", i)]
        if diagonal:
            for a in range(1, r + 1):
                out += [GeneratorSymbol(side, fl, "D", a), GeneratorSymbol(side, fl, "Dinv", a)]
        return out
    lo = 0 if fl == "j" else 1
    for i in range(lo, r):
        out += [GeneratorSymbol(side, fl, "e", i), GeneratorSymbol(side, fl, "f", i)]
    if fl == "i" and r >= 1:
        out.append(GeneratorSymbol(side, fl, "t", 0))
    if diagonal:
        for j in range(lo, r + 1):
            out += [GeneratorSymbol(side, fl, "d", j), GeneratorSymbol(side, fl, "dinv", j)]
    return out


def raising_generators(space: Space, side: str) -> list:
    """Generators killing a highest weight vector: E/e on the left, F/f on the right."""
    fl = side_flavor(space, side)
    want = ("E" if fl == "A" else "e") if side == "left" else ("F" if fl == "A" else "f")
    return [g for g in generators(space, side, diagonal=False) if g.kind == want]


# ---------------------------------------------------------------------------
# module vectors

class ModuleVector:
    """Finite Laurent combination of basis labels of one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: Mapping | None = None):
        self.space = space
        self.terms = {A: c for A, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, space: Space, A: IndexMatrix) -> "ModuleVector":
        return cls(space, {A: ONE})

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        t = dict(self.terms)
        for A, c in other.terms.items():
            t[A] = t.get(A, ZERO) + c
        return ModuleVector(self.space, t)

    def __neg__(self):
        return ModuleVector(self.space, {A: -c for A, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModuleVector":
        return ModuleVector(self.space, {A: c * x for A, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, A: IndexMatrix):
        return self.terms.get(A, ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0].rows)

    def to_json(self) -> dict:
        return {"space": self.space.to_json(),
                "terms": [{"matrix": [list(r) for r in A.rows], "coeff": str(c)}
                          for A, c in self.sorted_terms()]}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{A.short()}]" for A, c in self.sorted_terms())

    def __repr__(self):
        return f"ModuleVector({self.space}, {self})"


# ---------------------------------------------------------------------------
# generator actions on single labels

def _q(k: int) -> Laurent:
    return Laurent.mono(k)


def _qi(n: int) -> Laurent:
    return quantum_integer(n)


def _accumulate(out: dict, A: IndexMatrix | None, c: Laurent) -> None:
    if A is None or not c:
        return
    v = out.get(A)
    v = c if v is None else v + c
    if v:
        out[A] = v
    else:
        out.pop(A, None)


def _type_a_left(kind: str, i: int, A: IndexMatrix) -> dict:
    out: dict = {}
    cols = range(1, A.n + 1)
    if kind == "E":
        for j in cols:
            if A[i + 1, j] > 0:
                e = sum(A[i + 1, k] - A[i, k] for k in cols if k > j)
                _accumulate(out, A.with_changes({(i, j): 1, (i + 1, j): -1}), _q(e) * _qi(A[i, j] + 1))
    elif kind == "F":
        for j in cols:
            if A[i, j] > 0:
                e = sum(A[i, k] - A[i + 1, k] for k in cols if k < j)
                _accumulate(out, A.with_changes({(i + 1, j): 1, (i, j): -1}), _q(e) * _qi(A[i + 1, j] + 1))
    else:
        out[A] = _q(_diag_a(kind, i, A.ro_at))
    return out


def _type_a_right(kind: str, i: int, A: IndexMatrix) -> dict:
    out: dict = {}
    rows = range(1, A.m + 1)
    if kind == "E":
        for j in rows:
            if A[j, i] > 0:
                e = sum(A[k, i] - A[k, i + 1] for k in rows if k < j)
                _accumulate(out, A.with_changes({(j, i + 1): 1, (j, i): -1}), _q(e) * _qi(A[j, i + 1] + 1))
    elif kind == "F":
        for j in rows:
            if A[j, i + 1] > 0:
                e = sum(A[k, i + 1] - A[k, i] for k in rows if k > j)
                _accumulate(out, A.with_changes({(j, i): 1, (j, i + 1): -1}), _q(e) * _qi(A[j, i] + 1))
    else:
        out[A] = _q(_diag_a(kind, i, A.co_at))
    return out


def _diag_a(kind: str, a: int, weight) -> int:
    if kind == "D":
        return weight(a)
    if kind == "Dinv":
        return -weight(a)
    if kind == "K":
        return weight(a) - weight(a + 1)
    if kind == "Kinv":
        return weight(a + 1) - weight(a)
    raise ValueError(kind)


def _d_exponent(fl: str, j: int, weight) -> int:
    """Exponent of the scalar by which d_j acts on a label of the given side weight."""
    if fl == "j" and j == 0:
        w = weight(0)
        if w % 2 == 0:
            raise InvalidLabel("centre weight must be odd")
        return (w - 1) // 2
    return weight(j)


def _diag_b(fl: str, kind: str, i: int, weight) -> int:
    if kind == "d":
        return _d_exponent(fl, i, weight)
    if kind == "dinv":
        return -_d_exponent(fl, i, weight)
    if fl == "j" and i == 0:
        k = 2 * _d_exponent(fl, 0, weight) - _d_exponent(fl, 1, weight)
    else:
        k = _d_exponent(fl, i, weight) - _d_exponent(fl, i + 1, weight)
    return k if kind == "k" else -k


def _type_b_left(fl: str, kind: str, i: int, A: IndexMatrix) -> dict:
    out: dict = {}
    n = A.n
    cols = range(-n, n + 1)
    if kind == "e":
        for j in cols:
            if A[i + 1, j] > 0:
                e = sum(A[i + 1, k] - A[i, k] for k in cols if k > j)
                B = A.with_changes(merge(e_theta(i, j), e_theta(i + 1, j), sign=(1, -1)))
                _accumulate(out, B, _q(e) * _qi(A[i, j] + 1))
    elif kind == "f":
        for j in cols:
            avail = A.sharp(i, j) if (i, j) == (0, 0) else A[i, j]
            if avail <= 0:
                continue
            e = sum(A[i, k] - A[i + 1, k] for k in cols if k < j)
            if j > 0 and i == 0:
                e -= 1
            B = A.with_changes(merge(e_theta(i + 1, j), e_theta(i, j), sign=(1, -1)))
            _accumulate(out, B, _q(e) * _qi(A[i + 1, j] + 1))
    elif kind == "t":
        _accumulate(out, A, _t0_left_diagonal(A))
        for j in cols:
            if A[1, j] > 0:
                e = sum(A[1, k] - A[-1, k] for k in cols if k > j) - A[0, j] + (1 if j < 0 else 0)
                B = A.with_changes(merge(e_theta(-1, j), e_theta(1, j), sign=(1, -1)))
                _accumulate(out, B, _q(e) * _qi(A[-1, j] + 1 - (1 if j == 0 else 0)))
    else:
        out[A] = _q(_diag_b(fl, kind, i, A.ro_at))
    return out


def _t0_left_diagonal(A: IndexMatrix) -> Laurent:
    cols = A.col_indices()
    pos = sum(A[1, j] for j in cols if j >= 0)
    neg = sum(A[1, j] for j in cols if j < 0)
    # [D][A] diagonal part plus the q^{z_11}[Z] summand of t0
    return _q(pos - neg) - _q(pos + neg) + _q(A.ro_at(1))


def _type_b_right(fl: str, kind: str, i: int, A: IndexMatrix) -> dict:
    out: dict = {}
    m = A.m
    rows = range(-m, m + 1)
    if kind == "e":
        for j in rows:
            avail = A.sharp(j, i) if (j, i) == (0, 0) else A[j, i]
            if avail <= 0:
                continue
            e = sum(A[k, i] - A[k, i + 1] for k in rows if k < j)
            if j > 0 and i == 0:
                e -= 1
            B = A.with_changes(merge(e_theta(j, i + 1), e_theta(j, i), sign=(1, -1)))
            _accumulate(out, B, _q(e) * _qi(A[j, i + 1] + 1))
    elif kind == "f":
        for j in rows:
            if A[j, i + 1] > 0:
                e = sum(A[k, i + 1] - A[k, i] for k in rows if k > j)
                B = A.with_changes(merge(e_theta(j, i), e_theta(j, i + 1), sign=(1, -1)))
                _accumulate(out, B, _q(e) * _qi(A[j, i] + 1))
    elif kind == "t":
        pos = sum(A[j, 1] for j in rows if j >= 0)
        neg = sum(A[j, 1] for j in rows if j < 0)
        _accumulate(out, A, _q(pos - neg) - _q(pos + neg) + _q(A.co_at(1)))
        for j in rows:
            if A[j, 1] > 0:
                e = sum(A[k, 1] - A[k, -1] for k in rows if k > j) - A[j, 0] + (1 if j < 0 else 0)
                B = A.with_changes(merge(e_theta(j, -1), e_theta(j, 1), sign=(1, -1)))
                _accumulate(out, B, _q(e) * _qi(A[j, -1] + 1 - (1 if j == 0 else 0)))
    else:
        out[A] = _q(_diag_b(fl, kind, i, A.co_at))
    return out


@lru_cache(maxsize=500_000)
def generator_action(g: GeneratorSymbol, A: IndexMatrix) -> tuple:
    """The action of one generator on one label, as a sorted tuple of (label, coeff)."""
    kind = A.flavor.kind
    if kind == "A":
        fn = _type_a_left if g.side == "left" else _type_a_right
        out = fn(g.kind, g.index, A)
    elif kind == "B":
        fn = _type_b_left if g.side == "left" else _type_b_right
        out = fn(g.flavor, g.kind, g.index, A)
    else:
        # type C: transport through [A] -> [A + E00]
        shifted = generator_action(g, c_shift(A))
        out = {c_unshift(B): c for B, c in shifted}
    return tuple(sorted(out.items(), key=lambda kv: kv[0].rows))


def _check(g: GeneratorSymbol, space: Space) -> None:
    if g.flavor != side_flavor(space, g.side):
        raise ValueError(f"generator {g} does not act on {space}")
    g.check_range(side_rank(space, g.side))


def apply_generator(g: GeneratorSymbol, v: ModuleVector) -> ModuleVector:
    _check(g, v.space)
    out: dict = {}
    for A, c in v.terms.items():
        for B, x in generator_action(g, A):
            _accumulate(out, B, c * x)
    return ModuleVector(v.space, out)


# ---------------------------------------------------------------------------
# words

@dataclass(frozen=True)
class GeneratorWord:
    """A monomial ``coeff * x_1 x_2 ... x_k`` in algebra order."""
    symbols: tuple
    coeff: object = ONE      # Laurent or Rational

    def __post_init__(self):
        if self.symbols:
            s0 = self.symbols[0]
            if any((s.side, s.flavor) != (s0.side, s0.flavor) for s in self.symbols):
                raise ValueError("all symbols of a word must share side and flavor")

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.symbols + other.symbols, _cmul(self.coeff, other.coeff))

    def scaled(self, c) -> "GeneratorWord":
        return GeneratorWord(self.symbols, _cmul(self.coeff, c))

    def __str__(self):
        body = " ".join(s.label for s in self.symbols) or "1"
        return f"({self.coeff})*{body}"


def _cmul(a, b):
    if isinstance(a, Rational) or isinstance(b, Rational):
        return Rational.coerce(a) * Rational.coerce(b)
    return a * b


WordSum = tuple  # tuple of GeneratorWord


def word(*symbols: GeneratorSymbol, coeff=ONE) -> GeneratorWord:
    return GeneratorWord(tuple(symbols), coeff)


def sum_mul(x: Iterable[GeneratorWord], y: Iterable[GeneratorWord]) -> WordSum:
    return tuple(a * b for a in x for b in y)


def sum_scale(x: Iterable[GeneratorWord], c) -> WordSum:
    return tuple(a.scaled(c) for a in x)


def apply_word(w, v: ModuleVector) -> ModuleVector:
    """Evaluate a word (or a tuple of words) on v, composing as the algebra acts."""
    words = (w,) if isinstance(w, GeneratorWord) else tuple(w)
    acc: dict = {}
    rational = False
    for wd in words:
        syms = wd.symbols
        order = reversed(syms) if (syms and syms[0].side == "left") else syms
        cur = v
        for s in order:
            cur = apply_generator(s, cur)
            if cur.is_zero():
                break
        if cur.is_zero():
            continue
        c = wd.coeff
        if isinstance(c, Rational):
            rational = True
        for A, x in cur.terms.items():
            term = _cmul(c, x)
            prev = acc.get(A)
            acc[A] = term if prev is None else _cadd(prev, term)
    if rational:
        out = {}
        for A, x in acc.items():
            x = Rational.coerce(x)
            if x.is_zero():
                continue
            lau = x.to_laurent()
            if lau is None:
                raise ArithmeticError(f"word evaluation left a non-Laurent coefficient {x}")
            out[A] = lau
        return ModuleVector(v.space, out)
    return ModuleVector(v.space, acc)


def _cadd(a, b):
    if isinstance(a, Rational) or isinstance(b, Rational):
        return Rational.coerce(a) + Rational.coerce(b)
    return a + b


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckReport:
    name: str
    space: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.name, "space": self.space, "checked": self.checked,
                "failures": self.failures[:20], "n_failures": len(self.failures),
                "pass": self.passed}


def check_commuting_actions(flavor, m: int, n: int, d: int) -> CheckReport:
    """Every left generator commutes with every right generator on every label."""
    space = Space.make(flavor, m, n, d)
    rep = CheckReport("commuting", str(space))
    lefts = generators(space, "left")
    rights = generators(space, "right")
    for A in space.basis():
        v = ModuleVector.basis(space, A)
        left_imgs = {g: apply_generator(g, v) for g in lefts}
        for h in rights:
            hv = apply_generator(h, v)
            for g in lefts:
                rep.checked += 1
                if apply_generator(g, hv) != apply_generator(h, left_imgs[g]):
                    rep.failures.append({"label": A.short(), "left": g.label, "right": h.label})
    return rep


def _gl_relations(space: Space, side: str) -> list:
    """(family, lhs words, rhs words) for the defining relations of U_q(gl_r)."""
    r = side_rank(space, side)
    S = lambda kind, i: GeneratorSymbol(side, "A", kind, i)  # noqa: E731
    W = lambda *syms, c=ONE: GeneratorWord(tuple(syms), c)  # noqa: E731
    rels = []
    idx = range(1, r + 1)
    edges = range(1, r)
    for a in idx:
        rels.append(("D D^-1 = 1", (W(S("D", a), S("Dinv", a)),), (W(),)))
        rels.append(("D D^-1 = 1", (W(S("Dinv", a), S("D", a)),), (W(),)))
    for a in idx:
        for b in idx:
            for x in ("D", "Dinv"):
                for y in ("D", "Dinv"):
                    rels.append(("D commute", (W(S(x, a), S(y, b)),), (W(S(y, b), S(x, a)),)))
    for a in idx:
        for i in edges:
            k = (1 if a == i else 0) - (1 if a == i + 1 else 0)
            rels.append(("D E D^-1", (W(S("D", a), S("E", i), S("Dinv", a)),), (W(S("E", i), c=_q(k)),)))
            rels.append(("D F D^-1", (W(S("D", a), S("F", i), S("Dinv", a)),), (W(S("F", i), c=_q(-k)),)))
    inv = Rational.coerce(_q(1) - _q(-1)).inverse()
    for i in edges:
        for j in edges:
            lhs = (W(S("E", i), S("F", j)), W(S("F", j), S("E", i), c=-ONE))
            if i == j:
                rhs = (W(S("D", i), S("Dinv", i + 1), c=inv), W(S("Dinv", i), S("D", i + 1), c=-inv))
            else:
                rhs = ()
            rels.append(("[E, F]", lhs, rhs))
    for i in edges:
        for j in edges:
            if abs(i - j) > 1:
                rels.append(("E E commute", (W(S("E", i), S("E", j)),), (W(S("E", j), S("E", i)),)))
                rels.append(("F F commute", (W(S("F", i), S("F", j)),), (W(S("F", j), S("F", i)),)))
            if abs(i - j) == 1:
                for X in ("E", "F"):
                    lhs = (W(S(X, i), S(X, i), S(X, j)), W(S(X, j), S(X, i), S(X, i)))
                    rhs = (W(S(X, i), S(X, j), S(X, i), c=_qi(2)),)
                    rels.append((f"Serre {X}", lhs, rhs))
    return rels


def check_relations(m: int, n: int, d: int, sides=("left", "right")) -> CheckReport:
    """Defining relations of U_q(gl) as operator identities on the type A Fock space."""
    space = Space.make("A", m, n, d)
    rep = CheckReport("relations", str(space))
    basis = space.basis()
    for side in sides:
        for fam, lhs, rhs in _gl_relations(space, side):
            for A in basis:
                v = ModuleVector.basis(space, A)
                rep.checked += 1
                if apply_word(lhs, v) != apply_word(rhs, v):
                    rep.failures.append({"side": side, "family": fam,
                                         "lhs": [str(w) for w in lhs], "label": A.short()})
    return rep


def c_identification_check(flavor, m: int, n: int, d: int) -> CheckReport:
    """Exponent identity e_B(A + E00) = e_C(A) on a type C space."""
    space = Space.make(flavor, m, n, d)
    rep = CheckReport("c-exponent", str(space))
    for A in space.basis():
        rep.checked += 1
        if normalization_exponent(c_shift(A)) != normalization_exponent(A):
            rep.failures.append({"label": A.short()})
    return rep


def c_transport_check(flavor, m: int, n: int, d: int) -> CheckReport:
    """[A] -> [A + E00] intertwines every generator between a type C space and its B partner.

    Besides the equality of images, the B-side images must stay inside the
    shifted labels (centre entry at least one) and unshift into the C basis.
    """
    space = Space.make(flavor, m, n, d)
    rep = CheckReport("c-transport", str(space))
    basis = set(space.basis())
    for side in ("left", "right"):
        for g in generators(space, side):
            for A in space.basis():
                rep.checked += 1
                B = c_shift(A)
                img_b = {}
                for X, c in generator_action(g, B):
                    if X[0, 0] < 1:
                        rep.failures.append({"generator": str(g), "label": A.short(),
                                             "escaped": X.short()})
                        continue
                    img_b[c_unshift(X)] = c
                if any(Y not in basis for Y in img_b):
                    rep.failures.append({"generator": str(g), "label": A.short(), "error": "left basis"})
                    continue
                if ModuleVector(space, img_b) != apply_generator(g, ModuleVector.basis(space, A)):
                    rep.failures.append({"generator": str(g), "label": A.short()})
    return rep

"""Characters: the group ring Z[L], direct characters from matrices and closed formulas.

L is the group of rational functions taking the value 1 at infinity.  A
character is a finite integer combination of elements of L.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable

from .errors import InexactDivision, TheoremViolation
from .hw import DrinfeldPolynomial, _as_drinfeld
from .representation import YModule
from .scalar import ONE, ZERO, Polynomial, Q, Rational, RationalFunction, fmt_q, is_integer, pade_reconstruct, rational_roots
from .spectrum import joint_eigenspaces
from .strings import string_counts

MAX_DIVISION_STEPS = 100_000
_UNKNOWN = object()


class LElement:
    """e(f) for f in L, stored as a reduced quotient of monic polynomials of equal degree."""

    __slots__ = ("f", "_psums", "_exps")

    def __init__(self, f: RationalFunction, exps=_UNKNOWN):
        if not f.in_L():
            raise ValueError(f"{f} is not 1 at infinity")
        self.f = f
        self._psums: list = []
        self._exps = exps

    @classmethod
    def one(cls) -> "LElement":
        return _ONE

    @classmethod
    def of(cls, num: Polynomial, den: Polynomial) -> "LElement":
        return cls(RationalFunction(num, den))

    @property
    def num(self) -> Polynomial:
        return self.f.num

    @property
    def den(self) -> Polynomial:
        return self.f.den

    @property
    def degree(self) -> int:
        return self.f.num.degree

    def is_one(self) -> bool:
        return self.degree == 0

    def __mul__(self, other: "LElement") -> "LElement":
        return LElement(self.f * other.f, _combine(self._exps, other._exps, 1))

    def inverse(self) -> "LElement":
        e = self._exps
        if isinstance(e, dict):
            e = {r: -k for r, k in e.items()}
        return LElement(RationalFunction(self.f.den, self.f.num), e)

    def __truediv__(self, other: "LElement") -> "LElement":
        return LElement(self.f / other.f, _combine(self._exps, other._exps, -1))

    def exponents(self) -> dict | None:
        """{root: exponent} with f = prod (u - root)^exponent, or None if f
        does not split over Q."""
        if self._exps is _UNKNOWN:
            num, den = rational_roots_or_none(self.num), rational_roots_or_none(self.den)
            if num is None or den is None:
                self._exps = None
            else:
                e = dict(num)
                for r, k in den.items():
                    e[r] = e.get(r, 0) - k
                self._exps = {r: k for r, k in e.items() if k}
        return self._exps

    def __pow__(self, n: int) -> "LElement":
        base = self if n >= 0 else self.inverse()
        out = _ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        return isinstance(other, LElement) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def residue(self) -> Rational:
        """d_0: the coefficient of 1/u in the expansion at infinity."""
        m = self.degree
        if m == 0:
            return ZERO
        return self.num.coeffs[m - 1] - self.den.coeffs[m - 1]

    def sort_key(self) -> tuple:
        return (self.degree, self.num.coeffs, self.den.coeffs)

    def power_sums(self, M: int) -> tuple:
        """p_k(roots of num) - p_k(roots of den) for k = 1..M.

        This is an injective group homomorphism L -> Q^M on any subgroup
        generated by at most M+1 roots, so lex order on it is a total,
        translation-invariant order there.
        """
        if len(self._psums) < M:
            a, b = _newton(self.num, M), _newton(self.den, M)
            self._psums = [x - y for x, y in zip(a, b)]
        return tuple(self._psums[:M])

    def __repr__(self):
        return f"e({self.f})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def rational_roots_or_none(p: Polynomial):
    if p.degree < 1:
        return {}
    roots = rational_roots(p)
    return roots if sum(roots.values()) == p.degree else None


def _combine(a, b, sign: int):
    if not (isinstance(a, dict) and isinstance(b, dict)):
        return _UNKNOWN
    out = dict(a)
    for r, k in b.items():
        v = out.get(r, 0) + sign * k
        if v:
            out[r] = v
        else:
            out.pop(r, None)
    return out


def _newton(p: Polynomial, M: int) -> list:
    """Power sums p_1..p_M of the roots of a monic polynomial."""
    n = p.degree
    e = [ONE] + [(-1) ** i * p.coeffs[n - i] for i in range(1, n + 1)]
    ps: list = []
    for k in range(1, M + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= n else ZERO
        for i in range(1, min(k - 1, n) + 1):
            acc += (-1) ** (i - 1) * e[i] * ps[k - i - 1]
        ps.append(acc)
    return ps


_ONE = LElement(RationalFunction.one(), {})


class CharacterElement:
    """Finite combination sum_f c_f e(f) with nonzero integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | Iterable = ()):
        c: Counter = Counter()
        items = terms.items() if isinstance(terms, dict) else terms
        for e, m in items:
            c[e] += m
        self.terms = {e: int(m) for e, m in c.items() if m}

    @classmethod
    def one(cls) -> "CharacterElement":
        return cls({_ONE: 1})

    @classmethod
    def of(cls, e: LElement, mult: int = 1) -> "CharacterElement":
        return cls({e: mult})

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        return CharacterElement(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return CharacterElement({e: -m for e, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CharacterElement({e: m * other for e, m in self.terms.items()})
        if isinstance(other, LElement):
            return CharacterElement({e * other: m for e, m in self.terms.items()})
        out: Counter = Counter()
        for e1, m1 in self.terms.items():
            for e2, m2 in other.terms.items():
                out[e1 * e2] += m1 * m2
        return CharacterElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CharacterElement":
        if n < 0:
            raise ValueError("negative powers need exact division")
        out = CharacterElement.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, CharacterElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def to_json(self) -> list:
        return [dict(e.to_json(), mult=m) for e, m in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "CharacterElement":
        return cls(
            {LElement.of(Polynomial.from_json(d["num"]), Polynomial.from_json(d["den"])): int(d["mult"]) for d in data}
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*{e!r}" if m != 1 else repr(e) for e, m in self.sorted_terms())

    def exact_div(self, other: "CharacterElement") -> "CharacterElement":
        """The unique Q with Q * other == self, or InexactDivision.

        Leading-term elimination under a translation-invariant total order
        on the subgroup of L generated by every root that appears: lex order
        on exponent vectors when all roots are rational, otherwise lex order
        on power sums.  Any quotient lives in that subgroup.  In the
        exponent case Newton polytopes add, so each quotient exponent is
        confined to a finite box and the loop always terminates.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero character")
        if self.is_zero():
            return CharacterElement()
        elems = list(self.terms) + list(other.terms)
        exps = [e.exponents() for e in elems]
        box = None
        if all(x is not None for x in exps):
            roots = sorted({r for x in exps for r in x})

            def key(e):
                x = e.exponents()
                return tuple(x.get(r, 0) for r in roots)

            ka, kb = [key(e) for e in self.terms], [key(e) for e in other.terms]
            box = [(min(c) - min(d), max(c) - max(d)) for c, d in zip(zip(*ka), zip(*kb))]
        else:
            M = 1 + sum(e.num.degree + e.den.degree for e in elems)

            def key(e):
                return e.power_sums(M)

        b_lead = max(other.terms, key=key)
        b_low = min(other.terms, key=key)
        b_lc = other.terms[b_lead]
        floor = key(min(self.terms, key=key) / b_low)
        rem = dict(self.terms)
        quot: Counter = Counter()
        for _ in range(MAX_DIVISION_STEPS):
            if not rem:
                return CharacterElement(quot)
            lead = max(rem, key=key)
            q, r = divmod(rem[lead], b_lc)
            if r:
                raise InexactDivision("leading coefficient does not divide")
            qe = lead / b_lead
            kq = key(qe)
            if kq < floor:
                raise InexactDivision("remainder left below the lowest possible quotient term")
            if box is not None and any(not lo <= x <= hi for x, (lo, hi) in zip(kq, box)):
                raise InexactDivision("quotient term outside the Newton polytope bound")
            quot[qe] += q
            for e, m in other.terms.items():
                t = qe * e
                v = rem.get(t, 0) - q * m
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        raise InexactDivision("division did not terminate")

    def __truediv__(self, other):
        return self.exact_div(other)


class Sl2Character:
    """Finite sum of e(n) over integer weights n; also the ring Z[Z] of Laurent polynomials."""

    __slots__ = ("weights",)

    def __init__(self, weights: dict | Iterable = ()):
        c: Counter = Counter()
        items = weights.items() if isinstance(weights, dict) else weights
        for w, m in items:
            c[int(w)] += m
        self.weights = {w: m for w, m in c.items() if m}

    @classmethod
    def e(cls, n: int) -> "Sl2Character":
        return cls({n: 1})

    def __add__(self, other):
        return Sl2Character(list(self.weights.items()) + list(other.weights.items()))

    def __sub__(self, other):
        return self + Sl2Character({w: -m for w, m in other.weights.items()})

    def __mul__(self, other):
        out: Counter = Counter()
        for w1, m1 in self.weights.items():
            for w2, m2 in other.weights.items():
                out[w1 + w2] += m1 * m2
        return Sl2Character(out)

    def __pow__(self, n: int):
        out = Sl2Character.e(0)
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, other: "Sl2Character") -> "Sl2Character":
        if not other.weights:
            raise ZeroDivisionError("division by zero")
        rem = dict(self.weights)
        top_b = max(other.weights)
        lc = other.weights[top_b]
        low = min(self.weights, default=0) - min(other.weights)
        quot: Counter = Counter()
        while rem:
            top = max(rem)
            q, r = divmod(rem[top], lc)
            if r or top - top_b < low:
                raise InexactDivision("Laurent polynomial division is not exact")
            quot[top - top_b] += q
            for w, m in other.weights.items():
                v = rem.get(top - top_b + w, 0) - q * m
                if v:
                    rem[top - top_b + w] = v
                else:
                    rem.pop(top - top_b + w, None)
        return Sl2Character(quot)

    def __eq__(self, other):
        return isinstance(other, Sl2Character) and self.weights == other.weights

    def __hash__(self):
        return hash(frozenset(self.weights.items()))

    def dimension(self) -> int:
        return sum(self.weights.values())

    def to_json(self) -> list:
        return [{"weight": w, "mult": m} for w, m in sorted(self.weights.items(), reverse=True)]

    def __repr__(self):
        return " + ".join(f"{m}*e({w})" for w, m in sorted(self.weights.items(), reverse=True)) or "0"


# --- characters of modules ------------------------------------------------

def block_element(values, max_deg: int) -> LElement:
    return LElement(pade_reconstruct(values, max_deg))


def direct_character(V: YModule, K: int | None = None) -> CharacterElement:
    """Sum over joint generalized eigenspaces of H_0..H_K of dim * e(f_d).

    Each eigenvalue sequence is turned into f_d by Pade reconstruction with
    degree bound dim V, which needs 2 dim V + 1 terms, so K defaults to 2 dim V.
    """
    n = V.dim
    K = 2 * n if K is None else K
    blocks = joint_eigenspaces(lambda k: V.gen("H", k), K, n)
    out: Counter = Counter()
    for b in blocks:
        out[block_element(b.values, n)] += b.dim
    return CharacterElement(out)


def h0_character(V: YModule) -> Sl2Character:
    """sl2 character read from the H_0 matrix alone."""
    blocks = joint_eigenspaces(lambda k: V.gen("H", 0), 0, V.dim)
    out: Counter = Counter()
    for b in blocks:
        w = b.values[0]
        if not is_integer(w):
            raise TheoremViolation(f"non-integer H_0 eigenvalue {fmt_q(w)}")
        out[int(w)] += b.dim
    return Sl2Character(out)


# --- closed forms -----------------------------------------------------------

def e_of(P) -> LElement:
    """e(P(u+1)/P(u))."""
    p = P.poly if isinstance(P, DrinfeldPolynomial) else P
    return LElement(RationalFunction(p.shift(1), p))


@lru_cache(maxsize=None)
def x_element(b) -> LElement:
    """x_b = e((u-b+1)/(u-b))."""
    b = Q(b)
    return LElement.of(Polynomial((1 - b, 1)), Polynomial((-b, 1)))


def _pair(c) -> LElement:
    # x_{c-1}^{-1} x_c^{-1}
    return (x_element(c - 1) * x_element(c)).inverse()


def y_element(r: int, a, reading: str = "product") -> CharacterElement:
    """y_{r,a}; 1 when r <= 0.

    ``reading="product"`` is sum_{s=0}^r prod_{t=1}^s x_{a+r-t}^{-1} x_{a+r-t+1}^{-1}.
    ``reading="sum"`` replaces the inner product by a sum, which is the
    literal printed form; it does not give module characters.
    """
    a = Q(a)
    if r <= 0:
        return CharacterElement.one()
    if reading == "product":
        terms = [_ONE]
        acc = _ONE
        for t in range(1, r + 1):
            acc = acc * _pair(a + r - t + 1)
            terms.append(acc)
        return CharacterElement(Counter(terms))
    if reading == "sum":
        out: Counter = Counter({_ONE: 1})
        for s in range(1, r + 1):
            for t in range(1, s + 1):
                out[_pair(a + r - t + 1)] += 1
        return CharacterElement(out)
    raise ValueError(f"unknown reading {reading!r}")


def _p_string(r: int, a) -> Polynomial:
    a = Q(a)
    return Polynomial.from_roots([a + i for i in range(r)])


def char_w(r: int, a, reading: str = "product") -> CharacterElement:
    """Closed-form character of W_r(a)."""
    if r < 1:
        raise ValueError("r >= 1")
    return y_element(r, a, reading) * e_of(_p_string(r, a))


def chi(b) -> CharacterElement:
    return char_w(1, b)


def formula_exponents(P) -> dict:
    """Net exponents of y_{r,a} (r >= 1) in the product formula, zeros dropped."""
    P = _as_drinfeld(P)
    m = string_counts(P.roots).m
    exps: Counter = Counter()
    for (r, a), mult in m.items():
        exps[(r, a)] += mult
        exps[(r - 2, a + 1)] += mult
        exps[(r - 1, a)] -= mult
        exps[(r - 1, a + 1)] -= mult
    return {k: v for k, v in sorted(exps.items()) if v and k[0] >= 1}


def char_formula(P) -> CharacterElement:
    """e(P) prod_{r,a} (y_{r,a} y_{r-2,a+1} / (y_{r-1,a} y_{r-1,a+1}))^{m_{r,a}(P)}."""
    P = _as_drinfeld(P)
    num = CharacterElement.one()
    den = CharacterElement.one()
    for (r, a), v in formula_exponents(P).items():
        if v > 0:
            num = num * y_element(r, a) ** v
        else:
            den = den * y_element(r, a) ** (-v)
    return num.exact_div(den) * e_of(P)


def char_strings(P) -> CharacterElement:
    """e(P) prod y_{r,a}^{N_{r,a}(P)} over the canonical strings."""
    P = _as_drinfeld(P)
    out = CharacterElement.one()
    for s in P.decomposition.strings():
        out = out * y_element(s.length, s.start)
    return out * e_of(P)


def alternating_patterns(r: int, s: int) -> list:
    """Tuples r > t_1 > ... > t_{r-2s} >= 0 with t_j = r - j mod 2."""
    L = r - 2 * s
    out = []

    def rec(prefix, j, upper):
        if j > L:
            out.append(tuple(prefix))
            return
        for t in range(upper - 1, -1, -1):
            if (t - (r - j)) % 2 == 0:
                rec(prefix + [t], j + 1, t)

    rec([], 1, r)
    return out


def char_alternating(r: int, a) -> CharacterElement:
    """sum_s (-1)^s sum over admissible patterns of prod_j chi_{a+t_j}."""
    if r < 1:
        raise ValueError("r >= 1")
    a = Q(a)
    out = CharacterElement()
    for s in range(r // 2 + 1):
        for pat in alternating_patterns(r, s):
            term = CharacterElement.one()
            for t in pat:
                term = term * chi(a + t)
            out = out + (term if s % 2 == 0 else -term)
    return out


def res_character(c: CharacterElement) -> Sl2Character:
    out: Counter = Counter()
    for e, m in c.terms.items():
        d0 = e.residue()
        if not is_integer(d0):
            raise ValueError(f"non-integer residue {fmt_q(d0)}")
        out[int(d0)] += m
    return Sl2Character(out)


def z_element(r: int) -> Sl2Character:
    """z_r = sum_{s=0}^r e(-2s); z_r = 0 for r < 0."""
    return Sl2Character({-2 * s: 1 for s in range(r + 1)})


def _m_aggregate(P: DrinfeldPolynomial) -> dict:
    return string_counts(P.roots).m_r


def res_closed_form(P) -> Sl2Character:
    """e(deg P) z_1^deg prod_{r>=2} (z_r z_{r-2} / z_{r-1}^2)^{m_r}."""
    P = _as_drinfeld(P)
    num = Sl2Character.e(P.degree) * z_element(1) ** P.degree
    den = Sl2Character.e(0)
    for r, mr in _m_aggregate(P).items():
        num = num * (z_element(r) * z_element(r - 2)) ** mr
        den = den * z_element(r - 1) ** (2 * mr)
    return num.exact_div(den)


def dimension_formula(P) -> int:
    """2^deg prod_{r>=2} ((r^2 - 1)/r^2)^{m_r}, required to be a positive integer."""
    P = _as_drinfeld(P)
    d = Q(2) ** P.degree
    for r, mr in _m_aggregate(P).items():
        d *= (Q(r * r - 1) / (r * r)) ** mr
    if not is_integer(d) or d <= 0:
        raise TheoremViolation(f"dimension formula gives {fmt_q(d)} for {P.poly}")
    return int(d)


def augmentation(c: CharacterElement) -> int:
    return c.augmentation()


__all__ = [
    "LElement",
    "CharacterElement",
    "Sl2Character",
    "direct_character",
    "h0_character",
    "e_of",
    "x_element",
    "y_element",
    "char_w",
    "chi",
    "formula_exponents",
    "char_formula",
    "char_strings",
    "alternating_patterns",
    "char_alternating",
    "res_character",
    "z_element",
    "res_closed_form",
    "dimension_formula",
    "augmentation",
]

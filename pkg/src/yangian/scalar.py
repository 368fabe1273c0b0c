"""Exact scalars, dense univariate polynomials over Q and rational functions.

Rationals are ``gmpy2.mpq`` values: always reduced, positive denominator.
Polynomials store coefficients lowest degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import mpmath
from gmpy2 import mpq

from .errors import PadeError, ParseError

Rational = type(mpq())
_MPZ = type(gmpy2.mpz())

ZERO = mpq(0)
ONE = mpq(1)

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def Q(x) -> Rational:
    """Coerce ints, strings like ``"-3/4"``, Fractions and mpq to a Rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, Fraction, _MPZ)):
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if s.startswith("+"):
            s = s[1:]
        try:
            return mpq(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fmt_q(x) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Q(x))


def is_integer(x) -> bool:
    return Q(x).denominator == 1


class Polynomial:
    """Immutable dense polynomial in ``u`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def u(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls((1,))
        for b in roots:
            p = p * cls((-Q(b), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = 1 / self.lead
        return Polynomial(c * inv for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(fmt_q(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                cs = fmt_q(c)
                if mono and "/" in cs:
                    cs = f"({cs})"
                term = cs + mono
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Polynomial()
            out = [ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    out[i + j] += x * y
            return Polynomial(out)
        try:
            c = Q(other)
        except TypeError:
            return NotImplemented
        return Polynomial(x * c for x in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Polynomial((1,)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c == 0:
                continue
            quot[k - dq] = c
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] -= c * y
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, c) -> "Polynomial":
        """``P(u + c)``."""
        c = Q(c)
        lin = Polynomial((c, 1))
        out = Polynomial()
        for coeff in reversed(self.coeffs):
            out = out * lin + coeff
        return out

    def root_multiplicity(self, a) -> int:
        """Largest n with (u-a)^n dividing self."""
        if self.is_zero():
            raise ValueError("every power of (u - a) divides the zero polynomial")
        a = Q(a)
        n, p = 0, self
        lin = Polynomial((-a, 1))
        while True:
            q, r = divmod(p, lin)
            if not r.is_zero():
                return n
            n, p = n + 1, q

    def to_json(self) -> list:
        return [fmt_q(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls(Q(c) for c in data)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    try:
        return Polynomial.constant(Q(x))
    except TypeError:
        return NotImplemented


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_shift(p: Polynomial, c) -> Polynomial:
    return p.shift(c)


class RationalFunction:
    """``num/den`` with coprime parts and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial((1,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if not num.is_zero() and g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero():
            den = Polynomial((1,))
        inv = 1 / den.lead
        self.num = num * inv
        self.den = den * inv

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(Polynomial((1,)))

    def in_L(self) -> bool:
        """True when the value at infinity is 1 (equal degrees, monic numerator)."""
        return self.num.degree == self.den.degree and self.num.is_monic()

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RationalFunction":
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def laurent_expand(f: RationalFunction, K: int) -> list:
    """Coefficients d_0..d_K with f = 1 + sum_k d_k u^(-k-1) about u = infinity."""
    if not f.in_L():
        raise ValueError(f"{f} does not take the value 1 at infinity")
    m = f.den.degree
    nrev = [f.num.coeffs[m - i] for i in range(m + 1)]
    drev = [f.den.coeffs[m - i] for i in range(m + 1)]
    c = []
    for j in range(K + 2):
        acc = nrev[j] if j <= m else ZERO
        for i in range(1, min(j, m) + 1):
            acc -= drev[i] * c[j - i]
        c.append(acc)
    return c[1:]


def pade_reconstruct(series: Sequence, max_deg: int) -> RationalFunction:
    """Recover the element 1 + sum_k d_k u^(-k-1) of degree <= max_deg from d_0, d_1, ...

    Degrees are tried upward from 0; the candidate must reproduce every
    supplied coefficient.
    """
    from .linalg import solve

    d = [Q(x) for x in series]
    L = len(d)
    if L < 2 * max_deg + 1:
        raise ValueError(f"need at least {2 * max_deg + 1} coefficients, got {L}")
    c = [ONE] + d
    for m in range(max_deg + 1):
        if m == 0:
            q = [ONE]
        else:
            rows = [[c[j - i] for i in range(1, m + 1)] for j in range(m + 1, 2 * m + 1)]
            rhs = [-c[j] for j in range(m + 1, 2 * m + 1)]
            sol = solve(rows, rhs, unique=True)
            if sol is None:
                continue
            q = [ONE] + list(sol)
        nrev = [sum((q[i] * c[j - i] for i in range(min(j, m) + 1)), ZERO) for j in range(m + 1)]
        f = RationalFunction(Polynomial(reversed(nrev)), Polynomial(reversed(q)))
        if laurent_expand(f, L - 1) == d:
            return f
    raise PadeError(f"no rational function of degree <= {max_deg} matches the series")


def squarefree_decomposition(p: Polynomial) -> list:
    """Yun's algorithm: pairs (s_i, i) with p = lead * prod s_i^i, s_i monic squarefree."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    b = poly_gcd(p, dp)
    c = p.exact_div(b)
    d = dp.exact_div(b) - c.derivative()
    out, i = [], 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        i += 1
    return out


def _integer_form(p: Polynomial) -> list:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints]


def _simple_rational_roots(p: Polynomial) -> list:
    """Rational roots of a squarefree polynomial with p(0) != 0.

    Every rational root is k/lead for an integer k once the polynomial has
    primitive integer coefficients; approximate roots propose k and exact
    evaluation decides.
    """
    ints = _integer_form(p)
    lead = abs(ints[-1])
    bound = 1 + max(abs(Fraction(x, ints[-1])) for x in ints[:-1])
    digits = len(str(int(bound) * lead)) + 25
    with mpmath.workdps(digits):
        try:
            approx = mpmath.polyroots(list(reversed(ints)), maxsteps=200, extraprec=4 * digits)
        except mpmath.libmp.NoConvergence:
            approx = mpmath.polyroots(list(reversed(ints)), maxsteps=2000, extraprec=16 * digits)
        found = []
        for z in approx:
            if abs(mpmath.im(z)) * lead > 1:
                continue
            k0 = int(mpmath.nint(mpmath.re(z) * lead))
            for k in (k0, k0 - 1, k0 + 1):
                cand = mpq(k, lead)
                if cand not in found and p(cand) == 0:
                    found.append(cand)
                    break
    return found


def rational_roots(p: Polynomial) -> dict:
    """Map each rational root of ``p`` to its multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    roots = {}
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    if k:
        roots[ZERO] = k
        p = Polynomial(p.coeffs[k:])
    for s, mult in squarefree_decomposition(p):
        for r in _simple_rational_roots(s):
            roots[r] = roots.get(r, 0) + mult
    return roots


def split_roots(p: Polynomial) -> list | None:
    """Roots with repetition if ``p`` splits over Q, else None."""
    roots = rational_roots(p)
    if sum(roots.values()) != p.degree:
        return None
    out = []
    for r in sorted(roots):
        out.extend([r] * roots[r])
    return out


__all__ = [
    "Q",
    "Rational",
    "fmt_q",
    "is_integer",
    "Polynomial",
    "RationalFunction",
    "poly_gcd",
    "poly_shift",
    "laurent_expand",
    "pade_reconstruct",
    "rational_roots",
    "split_roots",
    "squarefree_decomposition",
    "ZERO_DEGREE",
]

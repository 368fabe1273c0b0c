"""Strings of roots, canonical decompositions and the counting functions N, n, m.

A string ``S_r(a)`` is ``{a, a+1, ..., a+r-1}``.  Two strings are in special
position when their union is a string strictly longer than both.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import TheoremViolation
from .scalar import Polynomial, Q, Rational, fmt_q


@dataclass(frozen=True, order=True)
class StringRange:
    start: Rational
    length: int

    def __post_init__(self):
        object.__setattr__(self, "start", Q(self.start))
        if self.length < 1:
            raise ValueError("a string has length >= 1")

    @property
    def end(self) -> Rational:
        return self.start + self.length - 1

    def elements(self) -> list:
        return [self.start + i for i in range(self.length)]

    def __contains__(self, x) -> bool:
        d = Q(x) - self.start
        return d.denominator == 1 and 0 <= d < self.length

    def shifted(self, c) -> "StringRange":
        return StringRange(self.start + c, self.length)

    def issubset(self, other: "StringRange") -> bool:
        return self.start in other and self.end in other

    def __str__(self):
        return f"S_{self.length}({fmt_q(self.start)})"


def _is_string(points: set) -> bool:
    lo = min(points)
    return all(lo + i in points for i in range(len(points)))


def _offset_criterion(s: StringRange, t: StringRange) -> bool:
    """General position via containment or separation by a gap."""
    if s.issubset(t) or t.issubset(s):
        return True
    ts = set(t.elements())
    return not any(
        x in ts for shift in (0, 1, -1) for x in s.shifted(shift).elements()
    )


def in_general_position(s: StringRange, t: StringRange) -> bool:
    union = set(s.elements()) | set(t.elements())
    special = _is_string(union) and len(union) > max(s.length, t.length)
    verdict = not special
    if verdict != _offset_criterion(s, t):
        raise TheoremViolation(f"general-position criteria disagree on {s}, {t}")
    return verdict


class RootMultiset:
    """Finite multiset of rational roots."""

    __slots__ = ("_mult",)

    def __init__(self, roots: Iterable = (), mult: dict | None = None):
        c: Counter = Counter()
        for r in roots:
            c[Q(r)] += 1
        if mult:
            for r, m in mult.items():
                if m < 0:
                    raise ValueError("negative multiplicity")
                c[Q(r)] += m
        self._mult = {r: m for r, m in c.items() if m > 0}

    @classmethod
    def of_polynomial(cls, roots: Iterable) -> "RootMultiset":
        return cls(roots)

    def __getitem__(self, r) -> int:
        return self._mult.get(Q(r), 0)

    def __len__(self) -> int:
        return sum(self._mult.values())

    @property
    def degree(self) -> int:
        return len(self)

    def support(self) -> list:
        return sorted(self._mult)

    def items(self):
        return sorted(self._mult.items())

    def elements(self) -> list:
        return [r for r, m in self.items() for _ in range(m)]

    def polynomial(self) -> Polynomial:
        return Polynomial.from_roots(self.elements())

    def __add__(self, other: "RootMultiset") -> "RootMultiset":
        return RootMultiset(mult=dict(Counter(self._mult) + Counter(other._mult)))

    def __eq__(self, other):
        return isinstance(other, RootMultiset) and self._mult == other._mult

    def __hash__(self):
        return hash(frozenset(self._mult.items()))

    def __repr__(self):
        return f"RootMultiset({{{', '.join(f'{fmt_q(r)}: {m}' for r, m in self.items())}}})"

    def to_json(self) -> list:
        return [{"root": fmt_q(r), "mult": m} for r, m in self.items()]

    @classmethod
    def from_json(cls, data) -> "RootMultiset":
        return cls(mult={Q(d["root"]): int(d["mult"]) for d in data})


@dataclass(frozen=True)
class StringDecomposition:
    """Strings with multiplicities, sorted by (start, length)."""

    parts: tuple = field(default=())

    def strings(self) -> Iterator[StringRange]:
        for s, m in self.parts:
            for _ in range(m):
                yield s

    def __len__(self) -> int:
        return sum(m for _, m in self.parts)

    def union(self) -> RootMultiset:
        return RootMultiset(x for s in self.strings() for x in s.elements())

    def to_json(self) -> list:
        return [{"start": fmt_q(s.start), "len": s.length, "mult": m} for s, m in self.parts]

    @classmethod
    def from_json(cls, data) -> "StringDecomposition":
        return cls(tuple((StringRange(Q(d["start"]), int(d["len"])), int(d["mult"])) for d in data))

    @classmethod
    def from_strings(cls, strings: Iterable[StringRange]) -> "StringDecomposition":
        c = Counter(strings)
        return cls(tuple(sorted(c.items())))

    def __str__(self):
        return " + ".join(str(s) if m == 1 else f"{m}*{s}" for s, m in self.parts) or "(empty)"


def coset_key(x: Rational) -> Rational:
    """Representative of x + Z in [0, 1)."""
    return x - math.floor(x)


def canonical_decomposition(M: RootMultiset) -> StringDecomposition:
    """Layer algorithm: within each Z-coset, layer j is the set of points of
    multiplicity >= j, and every maximal run of consecutive points in a layer
    is one string."""
    cosets: dict = {}
    for r, m in M.items():
        cosets.setdefault(coset_key(r), {})[r] = m
    strings = []
    for profile in cosets.values():
        top = max(profile.values())
        for j in range(1, top + 1):
            layer = sorted(x for x, m in profile.items() if m >= j)
            start = prev = layer[0]
            for x in layer[1:]:
                if x != prev + 1:
                    strings.append(StringRange(start, int(prev - start) + 1))
                    start = x
                prev = x
            strings.append(StringRange(start, int(prev - start) + 1))
    return StringDecomposition.from_strings(strings)


@dataclass
class CountingTable:
    """Sparse tables keyed by (r, a); only nonzero entries are stored."""

    N: dict
    n: dict
    m: dict
    m_r: dict

    def to_json(self) -> dict:
        def enc(t):
            return [{"r": r, "a": fmt_q(a), "value": v} for (r, a), v in sorted(t.items())]

        return {
            "N": enc(self.N),
            "n": enc(self.n),
            "m": enc(self.m),
            "m_r": {str(r): v for r, v in sorted(self.m_r.items())},
        }


def m_divisibility(M: RootMultiset, r: int, a) -> int:
    """max n such that (u-a)^n, ..., (u-a-r+1)^n all divide P."""
    a = Q(a)
    return min(M[a + i] for i in range(r))


def string_counts(M: RootMultiset) -> CountingTable:
    dec = canonical_decomposition(M)
    N: dict = {}
    n: dict = {}
    for s, mult in dec.parts:
        N[(s.length, s.start)] = N.get((s.length, s.start), 0) + mult
        # every substring S_r(a) of s
        for r in range(1, s.length + 1):
            for off in range(s.length - r + 1):
                key = (r, s.start + off)
                n[key] = n.get(key, 0) + mult
    m: dict = {}
    support = M.support()
    for a in support:
        r = 1
        while M[a + r - 1] > 0:
            m[(r, a)] = m_divisibility(M, r, a)
            r += 1
    m_r: dict = {}
    for (r, a), v in m.items():
        if r >= 2:
            m_r[r] = m_r.get(r, 0) + v
    for r in range(1, M.degree + 1):
        for a in support:
            rhs = (
                n.get((r, a), 0)
                - n.get((r + 1, a), 0)
                - n.get((r + 1, a - 1), 0)
                + n.get((r + 2, a - 1), 0)
            )
            if N.get((r, a), 0) != rhs:
                raise TheoremViolation(f"N/n inversion fails at r={r}, a={fmt_q(a)}")
    return CountingTable(N=N, n=n, m=m, m_r=m_r)


def yangian_derivative(P: Polynomial) -> Polynomial:
    """P(u+1) - P(u)."""
    return P.shift(1) - P


def m_by_derivatives(P: Polynomial, r: int, a) -> int:
    """Multiplicity of a as a common root of P, D P, ..., D^(r-1) P."""
    best = None
    q = P
    for _ in range(r):
        if not q.is_zero():
            k = q.root_multiplicity(a)
            best = k if best is None else min(best, k)
        q = yangian_derivative(q)
    if best is None:
        raise ValueError("all derivatives vanish; multiplicity is unbounded")
    return best


__all__ = [
    "StringRange",
    "RootMultiset",
    "StringDecomposition",
    "CountingTable",
    "in_general_position",
    "canonical_decomposition",
    "string_counts",
    "m_divisibility",
    "yangian_derivative",
    "m_by_derivatives",
    "coset_key",
]

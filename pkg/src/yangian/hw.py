"""Highest weight vectors, Drinfel'd polynomials and the construction of V(P)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import InconsistentEigenvalues, NotHighestWeight, TheoremViolation
from .linalg import normalize_first, nullspace, rref
from .representation import YModule, dual, evaluation_module, submodule, tensor_all, trivial_module
from .scalar import ONE, ZERO, Polynomial, Q, RationalFunction, fmt_q, is_integer, laurent_expand
from .spectrum import joint_eigenspaces
from .strings import RootMultiset, StringDecomposition, canonical_decomposition, coset_key


@dataclass(frozen=True)
class HighestWeightVector:
    vector: tuple
    eigenvalues: tuple

    @property
    def sl2_weight(self) -> int:
        return int(self.eigenvalues[0])

    def to_json(self) -> dict:
        return {"vector": [fmt_q(x) for x in self.vector], "eigenvalues": [fmt_q(x) for x in self.eigenvalues]}


class DrinfeldPolynomial:
    """Monic polynomial with its roots and canonical string decomposition."""

    __slots__ = ("poly", "roots", "decomposition")

    def __init__(self, roots: RootMultiset):
        self.roots = roots
        self.poly = roots.polynomial()
        self.decomposition: StringDecomposition = canonical_decomposition(roots)

    @classmethod
    def from_roots(cls, roots) -> "DrinfeldPolynomial":
        return cls(roots if isinstance(roots, RootMultiset) else RootMultiset(roots))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "DrinfeldPolynomial":
        from .scalar import split_roots

        if not p.is_monic():
            raise ValueError("Drinfel'd polynomials are monic")
        roots = split_roots(p)
        if roots is None:
            raise ValueError(f"{p} does not split over Q")
        return cls(RootMultiset(roots))

    @property
    def degree(self) -> int:
        return self.roots.degree

    def __eq__(self, other):
        return isinstance(other, DrinfeldPolynomial) and self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return f"DrinfeldPolynomial({self.poly})"

    def to_json(self) -> dict:
        return {
            "coeffs": self.poly.to_json(),
            "roots": self.roots.to_json(),
            "strings": self.decomposition.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DrinfeldPolynomial":
        out = cls(RootMultiset.from_json(data["roots"]))
        if out.poly != Polynomial.from_json(data["coeffs"]):
            raise ValueError("coefficients do not match roots")
        return out


# --- eigenvalue sequences ---------------------------------------------------

def drinfeld_from_eigenvalues(d: Sequence) -> DrinfeldPolynomial:
    """Monic P with P(u+1)/P(u) = 1 + sum_k d_k u^(-k-1), checked against every d_k."""
    d = [Q(x) for x in d]
    if not d:
        raise InconsistentEigenvalues("empty eigenvalue sequence")
    if not is_integer(d[0]) or d[0] < 0:
        raise InconsistentEigenvalues(f"d_0 = {fmt_q(d[0])} is not a non-negative integer")
    n = int(d[0])
    if len(d) < n + 1:
        raise ValueError(f"need at least {n + 1} eigenvalues, got {len(d)}")
    # P(u+1) - P(u) = P(u) * sum_k d_k u^(-k-1); compare the u^(n-1-j) coefficients
    p = [ZERO] * (n + 1)
    p[n] = ONE
    for j in range(1, n + 1):
        acc = ZERO
        for i in range(n - j + 1, n + 1):
            b = comb(i, n - 1 - j) if j < n else 0
            acc += p[i] * (b - d[i - n + j])
        p[n - j] = acc / j
    P = Polynomial(p)
    if eigenvalue_expansion_poly(P, len(d) - 1) != d:
        raise InconsistentEigenvalues("eigenvalue sequence is not P(u+1)/P(u) for any polynomial")
    return DrinfeldPolynomial.from_polynomial(P) if n else DrinfeldPolynomial(RootMultiset())


def eigenvalue_expansion_poly(P: Polynomial, K: int) -> list:
    return laurent_expand(RationalFunction(P.shift(1), P), K)


def eigenvalue_expansion(P: DrinfeldPolynomial, K: int) -> list:
    """d_0..d_K of P(u+1)/P(u)."""
    return eigenvalue_expansion_poly(P.poly, K)


# --- highest weight analysis ----------------------------------------------

def _annihilator_kernel(V: YModule, K: int) -> list:
    rows: list = []
    for k in range(K + 1):
        rows = rref(rows + V.gen("X+", k).to_dense())[0]
        if len(rows) == V.dim:
            return []
    return nullspace(rows, V.dim)


def hw_vectors(V: YModule, K: int | None = None) -> list:
    """Joint eigenvectors of H_0..H_K killed by X_0^+..X_K^+ (K = dim V by default)."""
    K = V.dim if K is None else K
    ker = _annihilator_kernel(V, K)
    if not ker:
        return []
    blocks = joint_eigenspaces(lambda k: V.gen("H", k), K, V.dim, start=ker, generalized=False)
    out = []
    for b in blocks:
        for v in b.basis:
            out.append(HighestWeightVector(normalize_first(v), tuple(b.values)))
    return out


def _eigen_sequence(V: YModule, v: tuple, K: int) -> tuple:
    p = next(i for i, x in enumerate(v) if x)
    vals = []
    for k in range(K + 1):
        w = V.gen("H", k).apply(v)
        lam = w[p] / v[p]
        if any(wi != lam * vi for wi, vi in zip(w, v)):
            raise NotHighestWeight(f"vector is not an eigenvector of H_{k}")
        vals.append(lam)
    return tuple(vals)


def is_highest_weight(V: YModule) -> tuple:
    """(True, witness) if V = Y.v for a highest weight vector v, else (False, None).

    A generating highest weight vector must span the top H_0 weight space,
    since Y.v only has weights at most that of v.
    """
    H0 = V.gen("H", 0)
    if not H0.is_diagonal():
        blocks = joint_eigenspaces(lambda k: H0, 0, V.dim)
        top = blocks[-1]
        if top.dim != 1:
            return False, None
        v = top.basis[0]
    else:
        diag = H0.diagonal()
        top_w = max(diag)
        idx = [i for i, x in enumerate(diag) if x == top_w]
        if len(idx) != 1:
            return False, None
        v = tuple(ONE if i == idx[0] else ZERO for i in range(V.dim))
    for k in range(V.dim + 1):
        if any(V.gen("X+", k).apply(v)):
            return False, None
    if len(submodule(V, [v])) != V.dim:
        return False, None
    v = normalize_first(v)
    return True, HighestWeightVector(v, _eigen_sequence(V, v, V.dim))


def is_irreducible(V: YModule) -> bool:
    return is_highest_weight(V)[0] and is_highest_weight(dual(V, "left"))[0]


def drinfeld_polynomial(V: YModule) -> DrinfeldPolynomial:
    ok, w = is_highest_weight(V)
    if not ok:
        raise NotHighestWeight(f"{V.provenance} is not a highest weight module")
    return drinfeld_from_eigenvalues(w.eigenvalues)


# --- constructions --------------------------------------------------------

def _as_drinfeld(P) -> DrinfeldPolynomial:
    if isinstance(P, DrinfeldPolynomial):
        return P
    if isinstance(P, Polynomial):
        return DrinfeldPolynomial.from_polynomial(P)
    return DrinfeldPolynomial.from_roots(P)


def build_irreducible(P, check: bool = True) -> YModule:
    """Tensor product of W_r(a) over the canonical strings of P, asserted irreducible."""
    P = _as_drinfeld(P)
    factors = [evaluation_module(s.length, s.start) for s in P.decomposition.strings()]
    V = tensor_all(factors) if factors else trivial_module()
    if check:
        if not is_irreducible(V):
            raise TheoremViolation(f"tensor product for {P.poly} is not irreducible")
        got = drinfeld_polynomial(V)
        if got != P:
            raise TheoremViolation(f"tensor product for {P.poly} has Drinfel'd polynomial {got.poly}")
    return V


def w1_chain_order(roots: RootMultiset) -> list:
    """Roots ordered so that a_j - a_i != 1 whenever i < j."""
    return sorted(roots.elements(), key=lambda x: (coset_key(x), -x))


def build_w1_chain(P, check: bool = True) -> YModule:
    P = _as_drinfeld(P)
    if P.degree < 1:
        raise ValueError("need deg P >= 1")
    V = tensor_all([evaluation_module(1, a) for a in w1_chain_order(P.roots)])
    if check and not is_highest_weight(V)[0]:
        raise TheoremViolation(f"W_1 chain for {P.poly} is not highest weight")
    return V


__all__ = [
    "HighestWeightVector",
    "DrinfeldPolynomial",
    "drinfeld_from_eigenvalues",
    "eigenvalue_expansion",
    "hw_vectors",
    "is_highest_weight",
    "is_irreducible",
    "drinfeld_polynomial",
    "build_irreducible",
    "build_w1_chain",
    "w1_chain_order",
]

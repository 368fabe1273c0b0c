"""Finite-dimensional Y(sl2)-modules as exact matrices.

A module is defined by six matrices: H_0, H_1, X_0^+, X_0^-, X_1^+, X_1^-.
Higher levels come from the recursion

    X_{l+1}^± = ±1/2 [H_1, X_l^±] - 1/2 (H_0 X_l^± + X_l^± H_0)
    H_k       = [X_k^+, X_0^-]

and are cached per level.  Matrices act on column coordinates.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import SubspaceNotInvariant
from .linalg import (
    QMatrix,
    anticommutator,
    commutator,
    in_span,
    nullspace,
    reduce_vector,
    rref,
)
from .scalar import Q, fmt_q

GENERATOR_NAMES = ("H0", "H1", "X0+", "X0-", "X1+", "X1-")
_KINDS = ("H", "X+", "X-")
HALF = Q("1/2")
QUARTER = Q("1/4")


def _kind(which: str) -> str:
    aliases = {"H": "H", "X+": "X+", "X-": "X-", "Xp": "X+", "Xm": "X-", "X⁺": "X+", "X⁻": "X-"}
    try:
        return aliases[which]
    except KeyError:
        raise ValueError(f"unknown generator family {which!r}") from None


class YModule:
    """A Y(sl2)-module given by its level-0 and level-1 generator matrices."""

    def __init__(self, H0, H1, Xp0, Xm0, Xp1, Xm1, provenance: str = "module", check: bool = True):
        mats = (H0, H1, Xp0, Xm0, Xp1, Xm1)
        n = H0.shape[0]
        for m in mats:
            if m.shape != (n, n):
                raise ValueError("generator matrices must be square and of equal size")
        if check and not commutator(H0, H1).is_zero():
            raise ValueError("H_0 and H_1 do not commute")
        self.dim = n
        self.provenance = provenance
        self._levels = {"H": [H0, H1], "X+": [Xp0, Xp1], "X-": [Xm0, Xm1]}
        self._lock = threading.RLock()

    @property
    def generators(self) -> dict:
        lv = self._levels
        return {
            "H0": lv["H"][0],
            "H1": lv["H"][1],
            "X0+": lv["X+"][0],
            "X0-": lv["X-"][0],
            "X1+": lv["X+"][1],
            "X1-": lv["X-"][1],
        }

    def gen(self, which: str, k: int) -> QMatrix:
        """Matrix of H_k, X_k^+ or X_k^- (``which`` in {"H", "X+", "X-"})."""
        kind = _kind(which)
        if k < 0:
            raise ValueError("generator level must be >= 0")
        cache = self._levels[kind]
        if k < len(cache):
            return cache[k]
        with self._lock:
            if kind == "H":
                while len(cache) <= k:
                    j = len(cache)
                    cache.append(commutator(self.gen("X+", j), self._levels["X-"][0]))
            else:
                sign = HALF if kind == "X+" else -HALF
                H0, H1 = self._levels["H"][0], self._levels["H"][1]
                while len(cache) <= k:
                    x = cache[-1]
                    cache.append(commutator(H1, x) * sign - anticommutator(H0, x) * HALF)
        return cache[k]

    def cached_levels(self) -> dict:
        return {kind: len(v) for kind, v in self._levels.items()}

    def __repr__(self):
        return f"YModule(dim={self.dim}, {self.provenance})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": {k: m.to_json() for k, m in self.generators.items()}}

    @classmethod
    def from_json(cls, data: dict, provenance: str = "json") -> "YModule":
        g = data["generators"]
        mats = [QMatrix.from_json(g[name]) for name in GENERATOR_NAMES]
        if any(m.shape != (data["dim"], data["dim"]) for m in mats):
            raise ValueError("declared dim does not match the matrices")
        return cls(*mats, provenance=provenance)


def generator_matrix(V: YModule, which: str, k: int) -> QMatrix:
    return V.gen(which, k)


def same_generators(V: YModule, W: YModule) -> bool:
    a, b = V.generators, W.generators
    return V.dim == W.dim and all(a[n] == b[n] for n in GENERATOR_NAMES)


# --- constructors ---------------------------------------------------------

def evaluation_matrix(r: int, a, which: str, k: int) -> QMatrix:
    """Closed-form action on the basis w_0..w_r of W_r(a)."""
    a = Q(a)
    kind = _kind(which)
    entries = {}
    for s in range(r + 1):
        if kind == "X+" and s < r:
            entries[(s + 1, s)] = (s + a) ** k * (s + 1)
        elif kind == "X-" and s > 0:
            entries[(s - 1, s)] = (s + a - 1) ** k * (r - s + 1)
        elif kind == "H":
            entries[(s, s)] = (s + a - 1) ** k * s * (r - s + 1) - (s + a) ** k * (s + 1) * (r - s)
    return QMatrix.from_entries((r + 1, r + 1), entries)


def evaluation_module(r: int, a) -> YModule:
    """W_r(a): dimension r+1, basis w_0 (weight -r) .. w_r (weight r)."""
    if r < 1:
        raise ValueError("evaluation modules need r >= 1; use trivial_module() for r = 0")
    a = Q(a)
    mats = [evaluation_matrix(r, a, kind, k) for kind, k in
            (("H", 0), ("H", 1), ("X+", 0), ("X-", 0), ("X+", 1), ("X-", 1))]
    return YModule(*mats, provenance=f"W_{r}({fmt_q(a)})")


def trivial_module() -> YModule:
    z = QMatrix.zeros(1)
    return YModule(z, z, z, z, z, z, provenance="trivial")


def _J(V: YModule) -> tuple:
    """J(H), J(X+), J(X-) on V through the isomorphism between presentations."""
    g = V.generators
    H0, Xp, Xm = g["H0"], g["X0+"], g["X0-"]
    JH = g["H1"] + (Xp @ Xm + Xm @ Xp - H0 @ H0) * HALF
    JXp = g["X1+"] - anticommutator(Xp, H0) * QUARTER
    JXm = g["X1-"] - anticommutator(Xm, H0) * QUARTER
    return JH, JXp, JXm


def _from_J(H0, Xp, Xm, JH, JXp, JXm, provenance: str) -> YModule:
    H1 = JH - (Xp @ Xm + Xm @ Xp - H0 @ H0) * HALF
    Xp1 = JXp + anticommutator(Xp, H0) * QUARTER
    Xm1 = JXm + anticommutator(Xm, H0) * QUARTER
    return YModule(H0, H1, Xp, Xm, Xp1, Xm1, provenance=provenance)


def tensor(V: YModule, W: YModule) -> YModule:
    """V ⊗ W via the coproduct; basis index (i, j) -> i * dim W + j."""
    gv, gw = V.generators, W.generators
    Iv, Iw = QMatrix.identity(V.dim), QMatrix.identity(W.dim)

    def prim(name):
        return gv[name].kron(Iw) + Iv.kron(gw[name])

    H0, Xp, Xm = prim("H0"), prim("X0+"), prim("X0-")
    JHv, JXpv, JXmv = _J(V)
    JHw, JXpw, JXmw = _J(W)
    hv, xpv, xmv = gv["H0"], gv["X0+"], gv["X0-"]
    hw, xpw, xmw = gw["H0"], gw["X0+"], gw["X0-"]
    # 1/2 [x ⊗ 1, Ω] with Ω = 1/2 H⊗H + X+⊗X- + X-⊗X+
    JH = JHv.kron(Iw) + Iv.kron(JHw) + xpv.kron(xmw) - xmv.kron(xpw)
    JXp = JXpv.kron(Iw) + Iv.kron(JXpw) + (hv.kron(xpw) - xpv.kron(hw)) * HALF
    JXm = JXmv.kron(Iw) + Iv.kron(JXmw) + (xmv.kron(hw) - hv.kron(xmw)) * HALF
    return _from_J(H0, Xp, Xm, JH, JXp, JXm, provenance=f"({V.provenance} ⊗ {W.provenance})")


def tensor_all(mods: Sequence[YModule]) -> YModule:
    if not mods:
        return trivial_module()
    out = mods[0]
    for m in mods[1:]:
        out = tensor(out, m)
    return out


def twist(V: YModule, b) -> YModule:
    """Pull back through the shift automorphism: H_1 -> H_1 + b H_0, X_1 -> X_1 + b X_0."""
    b = Q(b)
    g = V.generators
    return YModule(
        g["H0"],
        g["H1"] + g["H0"] * b,
        g["X0+"],
        g["X0-"],
        g["X1+"] + g["X0+"] * b,
        g["X1-"] + g["X0-"] * b,
        provenance=f"{V.provenance}({fmt_q(b)})",
    )


def antipode_images(V: YModule, inverse: bool = False) -> dict:
    """Matrices of S(g) (or S^-1(g)) on V for the six defining generators.

    From S(x) = -x, S(J(x)) = -J(x) + x (S^-1(J(x)) = -J(x) - x) and the
    anti-automorphism property:
        S(H_1)    = -H_1 ± H_0 - (X+X- + X-X+ - H_0^2)
        S(X_1^±)  = -X_1^± ± X_0^± + 1/2 (X_0^± H_0 + H_0 X_0^±)
    with + for S and - for S^-1.
    """
    g = V.generators
    H0, Xp, Xm = g["H0"], g["X0+"], g["X0-"]
    e = -1 if inverse else 1
    quad = Xp @ Xm + Xm @ Xp - H0 @ H0
    return {
        "H0": -H0,
        "X0+": -Xp,
        "X0-": -Xm,
        "H1": -g["H1"] + H0 * e - quad,
        "X1+": -g["X1+"] + Xp * e + anticommutator(Xp, H0) * HALF,
        "X1-": -g["X1-"] + Xm * e + anticommutator(Xm, H0) * HALF,
    }


def dual(V: YModule, side: str = "left") -> YModule:
    """Left dual (action f -> f∘S(y)) or right dual (f -> f∘S^-1(y)) on the dual basis."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    imgs = antipode_images(V, inverse=(side == "right"))
    mats = [imgs[name].T for name in GENERATOR_NAMES]
    tag = f"ᵗ{V.provenance}" if side == "left" else f"{V.provenance}ᵗ"
    return YModule(*mats, provenance=tag)


# --- subspaces ---------------------------------------------------------------

def submodule(V: YModule, seeds: Sequence[Sequence]) -> list:
    """Rref basis of the smallest invariant subspace containing ``seeds``.

    Invariance under the six defining generators suffices because levels 0
    and 1 generate the algebra.
    """
    mats = list(V.generators.values())
    basis, pivots = rref([tuple(Q(x) for x in s) for s in seeds])
    if not basis:
        raise ValueError("seeds span the zero subspace")
    frontier = list(basis)
    while frontier:
        new = []
        for v in frontier:
            for m in mats:
                w = m.apply(v)
                res = reduce_vector(w, basis, pivots)
                if any(res):
                    basis, pivots = rref(basis + [res])
                    new.append(res)
        frontier = new
    return basis


def is_invariant(V: YModule, basis: Sequence[Sequence]) -> bool:
    if not basis:
        return True
    red, piv = rref(basis)
    return all(in_span(m.apply(v), red, piv) for m in V.generators.values() for v in red)


def quotient(V: YModule, basis: Sequence[Sequence]) -> YModule:
    """Induced action on V / span(basis); the complement is spanned by the
    standard vectors at the non-pivot coordinates of the echelon basis."""
    red, piv = rref(basis) if basis else ([], [])
    if not is_invariant(V, red):
        raise SubspaceNotInvariant("subspace not invariant")
    keep = [c for c in range(V.dim) if c not in set(piv)]
    index = {c: i for i, c in enumerate(keep)}
    k = len(keep)
    mats = []
    for name in GENERATOR_NAMES:
        m = V.generators[name]
        cols = []
        for c in keep:
            col = [Q(0)] * V.dim
            col[c] = Q(1)
            img = reduce_vector(m.apply(col), red, piv)
            cols.append([img[j] for j in keep])
        mats.append(QMatrix.from_columns(cols, k))
    del index
    return YModule(*mats, provenance=f"{V.provenance}/<{len(red)}>")


def restrict_module(V: YModule, basis: Sequence[Sequence]) -> YModule:
    """The submodule spanned by an invariant rref basis, in that basis."""
    red, piv = rref(basis)
    if not is_invariant(V, red):
        raise SubspaceNotInvariant("subspace not invariant")
    mats = []
    for name in GENERATOR_NAMES:
        m = V.generators[name]
        cols = [[m.apply(b)[p] for p in piv] for b in red]
        mats.append(QMatrix.from_columns(cols, len(red)))
    return YModule(*mats, provenance=f"<{len(red)}>⊂{V.provenance}")


def intertwiners(V: YModule, W: YModule) -> list:
    """Basis of Hom(V, W): matrices T (dim W x dim V) with T g_V = g_W T for the six generators."""
    n, m = V.dim, W.dim
    rows = []
    for name in GENERATOR_NAMES:
        A, B = V.generators[name], W.generators[name]
        # (B T - T A)[i, j] = sum_k B[i,k] T[k,j] - sum_k T[i,k] A[k,j]; T[i,j] is unknown i*n + j
        eqs: dict = {}
        for (i, k), b in B.items():
            for j in range(n):
                eqs.setdefault((i, j), {})
                e = eqs[(i, j)]
                e[k * n + j] = e.get(k * n + j, 0) + b
        for (k, j), a in A.items():
            for i in range(m):
                eqs.setdefault((i, j), {})
                e = eqs[(i, j)]
                e[i * n + k] = e.get(i * n + k, 0) - a
        for e in eqs.values():
            row = [Q(0)] * (n * m)
            for c, x in e.items():
                row[c] = Q(x)
            if any(row):
                rows.append(row)
    ker = nullspace(rows, n * m) if rows else [
        tuple(Q(1) if c == j else Q(0) for c in range(n * m)) for j in range(n * m)
    ]
    return [QMatrix.from_dense([list(v[i * n:(i + 1) * n]) for i in range(m)]) for v in ker]


def is_isomorphic(V: YModule, W: YModule) -> bool:
    """True if a generic combination of intertwiners is invertible."""
    if V.dim != W.dim:
        return False
    basis = intertwiners(V, W)
    if not basis:
        return False
    T = QMatrix.zeros(V.dim)
    for i, b in enumerate(basis):
        T = T + b * (i * i + 1)
    return len(rref(T.to_dense())[0]) == V.dim


def perturbed(V: YModule, name: str, i: int, j: int, delta=1) -> YModule:
    """Copy of V with one entry of one defining matrix shifted by ``delta``."""
    g = dict(V.generators)
    g[name] = g[name] + QMatrix.from_entries(g[name].shape, {(i, j): Q(delta)})
    return YModule(*(g[n] for n in GENERATOR_NAMES), provenance=f"perturbed({V.provenance})", check=False)


# --- relations ---------------------------------------------------------------

REL_HH = "[H_k,H_l]=0"
REL_H0X = "[H_0,X_k]=±2X_k"
REL_XX = "[X_k+,X_l-]=H_(k+l)"
REL_HX = "[H_(k+1),X_l]-[H_k,X_(l+1)]=±{H_k,X_l}"
REL_XXpm = "[X_(k+1),X_l]-[X_k,X_(l+1)]=±{X_k,X_l}"


@dataclass(frozen=True)
class Violation:
    relation: str
    sign: str
    k: int
    l: int

    def __str__(self):
        return f"{self.relation} sign={self.sign} k={self.k} l={self.l}"


@dataclass
class RelationReport:
    K: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed_relations(self) -> set:
        return {v.relation for v in self.violations}

    def __bool__(self):
        return self.ok


def verify_relations(V: YModule, K: int) -> RelationReport:
    """Check every defining relation with k + l <= K as an exact matrix identity."""
    rep = RelationReport(K=K)

    def check(ok, relation, sign, k, l):
        rep.checked += 1
        if not ok:
            rep.violations.append(Violation(relation, sign, k, l))

    H = lambda k: V.gen("H", k)  # noqa: E731
    X = lambda s, k: V.gen("X" + s, k)  # noqa: E731
    for k in range(K + 1):
        for l in range(k + 1, K - k + 1):
            check(commutator(H(k), H(l)).is_zero(), REL_HH, "", k, l)
        for s, c in (("+", 2), ("-", -2)):
            check(commutator(H(0), X(s, k)) == X(s, k) * c, REL_H0X, s, k, 0)
    for k in range(K + 1):
        for l in range(K - k + 1):
            check(commutator(X("+", k), X("-", l)) == H(k + l), REL_XX, "", k, l)
            for s, c in (("+", 1), ("-", -1)):
                lhs = commutator(H(k + 1), X(s, l)) - commutator(H(k), X(s, l + 1))
                check(lhs == anticommutator(H(k), X(s, l)) * c, REL_HX, s, k, l)
                lhs = commutator(X(s, k + 1), X(s, l)) - commutator(X(s, k), X(s, l + 1))
                check(lhs == anticommutator(X(s, k), X(s, l)) * c, REL_XXpm, s, k, l)
    return rep


def twist_level(V: YModule, b, which: str, k: int) -> QMatrix:
    """Binomial formula for the twisted level-k generator: sum_j C(k,j) b^(k-j) g_j."""
    b = Q(b)
    out = QMatrix.zeros(V.dim)
    for j in range(k + 1):
        out = out + V.gen(which, j) * (comb(k, j) * b ** (k - j))
    return out


__all__ = [
    "GENERATOR_NAMES",
    "YModule",
    "generator_matrix",
    "same_generators",
    "evaluation_matrix",
    "evaluation_module",
    "trivial_module",
    "tensor",
    "tensor_all",
    "twist",
    "twist_level",
    "antipode_images",
    "dual",
    "submodule",
    "is_invariant",
    "quotient",
    "restrict_module",
    "perturbed",
    "intertwiners",
    "is_isomorphic",
    "verify_relations",
    "RelationReport",
    "Violation",
]

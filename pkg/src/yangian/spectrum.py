"""Simultaneous eigenspaces of a commuting family of exact matrices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NonRationalSpectrum, SubspaceNotInvariant
from .linalg import QMatrix, charpoly, dense_matmul, is_upper_or_lower_triangular, nullspace, reduce_vector, rref, unit_vector
from .scalar import ZERO, Polynomial, rational_roots


@dataclass
class Block:
    """An invariant subspace (rref basis) on which H_0..H_k act with single eigenvalues."""

    basis: list
    pivots: list
    values: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def _restrict(m: QMatrix, basis, pivots) -> list:
    k = len(basis)
    cols = []
    for b in basis:
        img = m.apply(b)
        if any(reduce_vector(img, basis, pivots)):
            raise SubspaceNotInvariant("block is not invariant under the family")
        cols.append([img[p] for p in pivots])
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def eigenvalues(A: Sequence[Sequence]) -> list:
    """Sorted (eigenvalue, algebraic multiplicity) pairs of a dense rational matrix."""
    m = len(A)
    if m == 1:
        return [(A[0][0], 1)]
    if is_upper_or_lower_triangular(A):
        return sorted(Counter(A[i][i] for i in range(m)).items())
    t = sum((A[i][i] for i in range(m)), ZERO) / m
    p = charpoly(A)
    if p == Polynomial.from_roots([t] * m):
        return [(t, m)]
    roots = rational_roots(p)
    if sum(roots.values()) != m:
        raise NonRationalSpectrum(f"characteristic polynomial {p} does not split over Q")
    return sorted(roots.items())


def _shifted(A, lam) -> list:
    return [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]


def _power(A, e: int) -> list:
    out = A
    for _ in range(e - 1):
        out = dense_matmul(out, A)
    return out


def _lift(coeffs: Sequence, basis: Sequence[Sequence], n: int) -> tuple:
    v = [ZERO] * n
    for c, b in zip(coeffs, basis):
        if c:
            for j, x in enumerate(b):
                if x:
                    v[j] += c * x
    return tuple(v)


def _split(block: Block, m: QMatrix, generalized: bool) -> list:
    n = m.shape[0]
    A = _restrict(m, block.basis, block.pivots)
    k = len(A)
    if k > 1 and all(not A[i][j] for i in range(k) for j in range(k) if i != j):
        # diagonal in the block basis
        groups: dict = {}
        for i in range(k):
            groups.setdefault(A[i][i], []).append(block.basis[i])
        return [
            Block(*rref(vs), block.values + [lam]) for lam, vs in sorted(groups.items())
        ]
    spec = eigenvalues(A)
    if len(spec) == 1 and (generalized or all(
        not x for i, row in enumerate(_shifted(A, spec[0][0])) for x in row
    )):
        return [Block(block.basis, block.pivots, block.values + [spec[0][0]])]
    out = []
    for lam, mu in spec:
        N = _shifted(A, lam)
        ker = nullspace(_power(N, mu) if generalized else N, k)
        if not ker:
            continue
        vecs = [_lift(c, block.basis, n) for c in ker]
        basis, pivots = rref(vecs)
        out.append(Block(basis, pivots, block.values + [lam]))
    return out


def joint_eigenspaces(
    family: Callable[[int], QMatrix],
    K: int,
    n: int,
    start: Sequence[Sequence] | None = None,
    generalized: bool = True,
) -> list:
    """Refine ``start`` (default: the whole space) by family(0), ..., family(K).

    Generalized mode returns the joint generalized eigenspaces, which cover the
    space.  Exact mode keeps only joint eigenvectors.  Blocks are ordered by
    their eigenvalue sequences.
    """
    if start is None:
        start = [unit_vector(n, i) for i in range(n)]
    basis, pivots = rref(start)
    blocks = [Block(basis, pivots, [])] if basis else []
    for k in range(K + 1):
        m = family(k)
        nxt = []
        for b in blocks:
            nxt.extend(_split(b, m, generalized))
        blocks = nxt
    return sorted(blocks, key=lambda b: (b.values, b.pivots))


__all__ = ["Block", "eigenvalues", "joint_eigenspaces"]

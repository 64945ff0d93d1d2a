"""Concrete operators on the triple tensor space C^n (x) C^d (x) C^n.

Index convention, fixed for every builder here and referenced nowhere
else: the basis vector labeled (i, s, k), with i and k in {0..n-1} and s
in {0..d-1}, sits at flat index (i*d + s)*n + k. Left representations act
on the (i, s) legs, right representations on the (s, k) legs, and the
flip exchanges the two outer legs.

The builders materialize dense matrices: at desk scale (n*d*n up to a few
hundred) that makes every identity checkable as a matrix equation. For
larger sizes the ``apply_*`` functions give matrix-free actions on
vectors; they are cross-checked against the dense path in the tests.

Entry formulas, with row label (i, s, k) and column label (j, t, l):

    build_lambda(A)[(i,s,k), (j,t,l)] = A_ij[s, t] * delta(k, l)
    build_rho(A)   [(i,s,k), (j,t,l)] = delta(i, j) * A_kl[s, t]
    build_sigma(A) [(i,s,k), (j,t,l)] = A_ij[s, t] * delta(i, k) * delta(j, l)
    build_flip(n,d)[(i,s,k), (j,t,l)] = delta(i, l) * delta(k, j) * delta(s, t)
    build_isometry(n,d)[(i,s,k), (j,t)] = delta(i, j) * delta(k, j) * delta(s, t)

lambda and rho are unital *-homomorphisms; sigma is a *-homomorphism that
is unital only for n = 1, with sigma(identity) the orthogonal projection Q
onto the span of the (j, s, j) basis vectors. The isometry V satisfies
V*V = I, VV* = Q, FV = V and sigma(A)V = V flatten(A), and the Schur block
product factors as

    flatten(A [] B) = V* lambda(A) F lambda(B) V = V* lambda(A) rho(B) V.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import BlockMatrix, _check_same_shape, flatten
from .errors import ShapeError


def triple_dim(n: int, d: int) -> int:
    return n * d * n


def build_lambda(a: BlockMatrix) -> np.ndarray:
    """Left representation: flatten(a) acting on the first two legs."""
    return np.kron(flatten(a), np.eye(a.n))


def build_rho(a: BlockMatrix) -> np.ndarray:
    """Right representation: blocks of a acting on the (s, k) legs."""
    n, d = a.n, a.d
    six = np.einsum("ij,klst->iskjtl", np.eye(n), a.blocks)
    return six.reshape(triple_dim(n, d), triple_dim(n, d))


def build_sigma(a: BlockMatrix) -> np.ndarray:
    """Diagonal mix: block (i, j) lands at row group (i,*,i), column group (j,*,j)."""
    n, d = a.n, a.d
    six = np.zeros((n, d, n, n, d, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            six[i, :, i, j, :, j] = a.blocks[i, j]
    return six.reshape(triple_dim(n, d), triple_dim(n, d))


def build_flip(n: int, d: int) -> np.ndarray:
    """Self-adjoint unitary permutation exchanging the two outer tensor legs."""
    six = np.einsum("il,st,kj->iskjtl", np.eye(n), np.eye(d), np.eye(n))
    return six.reshape(triple_dim(n, d), triple_dim(n, d))


def build_isometry(n: int, d: int) -> np.ndarray:
    """Isometry duplicating the outer index: (j, t) goes to (j, t, j)."""
    v = np.zeros((n, d, n, n, d), dtype=np.complex128)
    for j in range(n):
        v[j, :, j, j, :] = np.eye(d)
    return v.reshape(triple_dim(n, d), n * d)


def kronecker_block_product(a: BlockMatrix, b: BlockMatrix) -> np.ndarray:
    """lambda(a) @ rho(b); entry ((i,s,k),(j,t,l)) is (a_ij b_kl)[s, t].

    For d = 1 this is exactly the classical Kronecker product of the two
    scalar matrices under the (i, k) row grouping.
    """
    _check_same_shape(a, b)
    return build_lambda(a) @ build_rho(b)


@dataclass(frozen=True)
class StinespringSystem:
    """The fixed operators V, F, Q for one (n, d).

    Invariants (all exact for these 0/1 matrices): V*V = I, VV* = Q,
    F = F* = F^-1, FV = V, and Q = build_sigma(block_identity(n, d)).
    """

    n: int
    d: int
    V: np.ndarray
    F: np.ndarray
    Q: np.ndarray

    @classmethod
    def build(cls, n: int, d: int) -> "StinespringSystem":
        if n < 1 or d < 1:
            raise ShapeError(f"n and d must be positive, got n={n}, d={d}")
        v = build_isometry(n, d)
        f = build_flip(n, d)
        q = v @ v.conj().T
        for arr in (v, f, q):
            arr.setflags(write=False)
        return cls(n=n, d=d, V=v, F=f, Q=q)


# ---------------------------------------------------------------------------
# Matrix-free actions, for sizes where dense n*d*n matrices get heavy
# ---------------------------------------------------------------------------


def _as_triple(vec, n: int, d: int) -> np.ndarray:
    v = np.asarray(vec, dtype=np.complex128)
    if v.shape != (triple_dim(n, d),):
        raise ShapeError(
            f"expected a vector of length {triple_dim(n, d)}, got shape {v.shape}"
        )
    return v.reshape(n, d, n)


def apply_lambda(a: BlockMatrix, vec) -> np.ndarray:
    """build_lambda(a) @ vec without materializing the matrix."""
    v = _as_triple(vec, a.n, a.d)
    return np.einsum("ijst,jtk->isk", a.blocks, v).reshape(-1)


def apply_rho(a: BlockMatrix, vec) -> np.ndarray:
    """build_rho(a) @ vec without materializing the matrix."""
    v = _as_triple(vec, a.n, a.d)
    return np.einsum("klst,itl->isk", a.blocks, v).reshape(-1)


def apply_flip(vec, n: int, d: int) -> np.ndarray:
    """build_flip(n, d) @ vec: swap the outer legs."""
    return _as_triple(vec, n, d).transpose(2, 1, 0).reshape(-1)


def apply_isometry(vec, n: int, d: int) -> np.ndarray:
    """build_isometry(n, d) @ vec for vec of length n*d."""
    x = np.asarray(vec, dtype=np.complex128)
    if x.shape != (n * d,):
        raise ShapeError(f"expected a vector of length {n * d}, got shape {x.shape}")
    x = x.reshape(n, d)
    out = np.zeros((n, d, n), dtype=np.complex128)
    for j in range(n):
        out[j, :, j] = x[j]
    return out.reshape(-1)


def apply_isometry_adjoint(vec, n: int, d: int) -> np.ndarray:
    """build_isometry(n, d).conj().T @ vec for vec of length n*d*n."""
    v = _as_triple(vec, n, d)
    out = np.zeros((n, d), dtype=np.complex128)
    for j in range(n):
        out[j] = v[j, :, j]
    return out.reshape(-1)

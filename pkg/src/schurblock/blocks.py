"""Block matrices with operator entries and the Schur block product.

A BlockMatrix is an n-by-n grid of d-by-d complex blocks, stored as one
(n, n, d, d) array. ``flatten`` identifies it with the (n*d)-by-(n*d)
operator whose ((i*d + s), (j*d + t)) entry is blocks[i, j, s, t]; this
bijection is the only index convention in the module.

The Schur block product A [] B multiplies blocks slotwise,
(A [] B)_ij = a_ij b_ij, which for d >= 2 is associative but not
commutative. Its unit is ``schur_unit`` (every block the d-by-d identity),
distinct from ``block_identity`` (the ordinary matrix unit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, ShapeError
from .linalg import spectral_norm


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """Square matrix of square operator blocks.

    Attributes
    ----------
    n : int
        Number of block rows/columns (the finite index set is {0..n-1}).
    d : int
        Dimension of each block.
    blocks : numpy.ndarray
        Read-only (n, n, d, d) complex128 array; blocks[i, j] is the
        operator in slot (i, j).
    """

    n: int
    d: int
    blocks: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.blocks, dtype=np.complex128)
        if a.shape != (self.n, self.n, self.d, self.d):
            raise ShapeError(
                f"blocks array has shape {a.shape}, expected "
                f"{(self.n, self.n, self.d, self.d)}"
            )
        if self.n < 1 or self.d < 1:
            raise ShapeError(f"n and d must be positive, got n={self.n}, d={self.d}")
        if not np.isfinite(a).all():
            raise ContractError("block entries must be finite (no NaN/Inf)")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "blocks", a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and np.array_equal(
            self.blocks, other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.d, self.blocks.tobytes()))


def block_matrix(blocks) -> BlockMatrix:
    """Build a BlockMatrix from an (n, n, d, d) array or nested block lists."""
    try:
        a = np.asarray(blocks, dtype=np.complex128)
    except ValueError as exc:
        raise ShapeError(f"ragged block structure: {exc}") from exc
    if a.ndim != 4:
        raise ShapeError(f"expected an (n, n, d, d) block array, got ndim={a.ndim}")
    n, m, d, e = a.shape
    if n != m or d != e:
        raise ShapeError(f"grid and blocks must be square, got shape {a.shape}")
    return BlockMatrix(n=n, d=d, blocks=a)


def unflatten(x, n: int, d: int) -> BlockMatrix:
    """Inverse of ``flatten``: carve an (n*d, n*d) matrix into d-by-d blocks."""
    a = np.asarray(x, dtype=np.complex128)
    if a.shape != (n * d, n * d):
        raise ShapeError(f"expected shape {(n * d, n * d)}, got {a.shape}")
    return BlockMatrix(n=n, d=d, blocks=a.reshape(n, d, n, d).transpose(0, 2, 1, 3))


def flatten(a: BlockMatrix) -> np.ndarray:
    """The (n*d, n*d) operator with entry ((i*d + s), (j*d + t)) = blocks[i, j, s, t]."""
    return a.blocks.transpose(0, 2, 1, 3).reshape(a.n * a.d, a.n * a.d)


def block_identity(n: int, d: int) -> BlockMatrix:
    """Ordinary identity: I_d on the diagonal slots, zero elsewhere."""
    b = np.zeros((n, n, d, d), dtype=np.complex128)
    for i in range(n):
        b[i, i] = np.eye(d)
    return BlockMatrix(n=n, d=d, blocks=b)


def schur_unit(n: int, d: int) -> BlockMatrix:
    """Unit of the Schur block product: every slot holds I_d."""
    b = np.zeros((n, n, d, d), dtype=np.complex128)
    b[:, :] = np.eye(d)
    return BlockMatrix(n=n, d=d, blocks=b)


def zero_block_matrix(n: int, d: int) -> BlockMatrix:
    return BlockMatrix(n=n, d=d, blocks=np.zeros((n, n, d, d), dtype=np.complex128))


def _check_same_shape(a: BlockMatrix, b: BlockMatrix):
    if (a.n, a.d) != (b.n, b.d):
        raise ShapeError(
            f"block shapes differ: (n={a.n}, d={a.d}) vs (n={b.n}, d={b.d})"
        )


def adjoint_block(a: BlockMatrix) -> BlockMatrix:
    """Adjoint of the whole matrix: slot (i, j) becomes blocks[j, i]*."""
    return BlockMatrix(n=a.n, d=a.d, blocks=np.conj(a.blocks.transpose(1, 0, 3, 2)))


def schur_block_product(a: BlockMatrix, b: BlockMatrix) -> BlockMatrix:
    """Slotwise operator product: result block (i, j) = a_ij @ b_ij."""
    _check_same_shape(a, b)
    return BlockMatrix(n=a.n, d=a.d, blocks=np.matmul(a.blocks, b.blocks))


def block_matmul(a: BlockMatrix, b: BlockMatrix) -> BlockMatrix:
    """Ordinary matrix product; flatten(block_matmul(a, b)) == flatten(a) @ flatten(b)."""
    _check_same_shape(a, b)
    return unflatten(flatten(a) @ flatten(b), a.n, a.d)


def diag_block(a: BlockMatrix) -> BlockMatrix:
    """Zero the off-diagonal slots, keep the diagonal ones. Idempotent."""
    b = np.zeros_like(a.blocks)
    for i in range(a.n):
        b[i, i] = a.blocks[i, i]
    return BlockMatrix(n=a.n, d=a.d, blocks=b)


def row_norm(a: BlockMatrix, tol: float = 1e-10) -> float:
    """max over i of || sum_j a_ij a_ij* ||^(1/2)."""
    grams = np.matmul(a.blocks, np.conj(a.blocks.transpose(0, 1, 3, 2))).sum(axis=1)
    return float(max(np.sqrt(spectral_norm(g, tol)) for g in grams))


def col_norm(a: BlockMatrix, tol: float = 1e-10) -> float:
    """max over j of || sum_i a_ij* a_ij ||^(1/2)."""
    grams = np.matmul(np.conj(a.blocks.transpose(0, 1, 3, 2)), a.blocks).sum(axis=0)
    return float(max(np.sqrt(spectral_norm(g, tol)) for g in grams))


# ---------------------------------------------------------------------------
# Level-k lifts
# ---------------------------------------------------------------------------

Lift = list  # k-by-k nested list of BlockMatrix


def _check_lift(xs, name: str) -> tuple[int, int, int]:
    """Validate a k-by-k grid of uniformly shaped BlockMatrix; return (k, n, d)."""
    if not xs or not all(isinstance(row, (list, tuple)) for row in xs):
        raise ShapeError(f"{name} must be a non-empty list of rows")
    k = len(xs)
    if any(len(row) != k for row in xs):
        raise ShapeError(f"{name} must be a square {k}-by-{k} grid")
    first = xs[0][0]
    if not isinstance(first, BlockMatrix):
        raise ShapeError(f"{name} entries must be BlockMatrix values")
    n, d = first.n, first.d
    for row in xs:
        for x in row:
            if not isinstance(x, BlockMatrix) or (x.n, x.d) != (n, d):
                raise ShapeError(
                    f"{name} entries must all be BlockMatrix of shape (n={n}, d={d})"
                )
    return k, n, d


def lift_schur_k(a: Lift, b: Lift) -> Lift:
    """Level-k lift of the Schur block product.

    Entry (i, j) of the result is sum_l a[i][l] [] b[l][j], with the sum
    taken in the fixed order l = 0..k-1. For k = 1 this is the plain
    Schur block product.
    """
    k, n, d = _check_lift(a, "a")
    kb, nb, db = _check_lift(b, "b")
    if (k, n, d) != (kb, nb, db):
        raise ShapeError(
            f"lift shapes differ: (k={k}, n={n}, d={d}) vs (k={kb}, n={nb}, d={db})"
        )
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = np.zeros((n, n, d, d), dtype=np.complex128)
            for l in range(k):
                acc += np.matmul(a[i][l].blocks, b[l][j].blocks)
            row.append(BlockMatrix(n=n, d=d, blocks=acc))
        out.append(row)
    return out


def flatten_lift(xs: Lift) -> np.ndarray:
    """Assemble a lift into one (k*n*d)-square operator, nesting order (grid, i, s)."""
    _check_lift(xs, "lift")
    return np.block([[flatten(x) for x in row] for row in xs])


def lift_identity(k: int, n: int, d: int) -> Lift:
    """Unit of the lifted product: schur_unit on the grid diagonal, zero off it."""
    zero = zero_block_matrix(n, d)
    unit = schur_unit(n, d)
    return [[unit if i == j else zero for j in range(k)] for i in range(k)]


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------
# Schema: {"n": int, "d": int, "blocks": B} with B[i][j][s][t] == [re, im].


def operator_to_json(x) -> list:
    """Encode a matrix as nested lists of [re, im] pairs."""
    a = np.asarray(x, dtype=np.complex128)
    return [[[float(v.real), float(v.imag)] for v in row] for row in a]


def operator_from_json(obj, field: str = "matrix") -> np.ndarray:
    try:
        a = np.asarray(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{field}: entries must be [re, im] number pairs") from exc
    if a.ndim != 3 or a.shape[2] != 2:
        raise ValueError(
            f"{field}: expected a 2-D grid of [re, im] pairs, got shape {a.shape}"
        )
    return a[..., 0] + 1j * a[..., 1]


def vector_to_json(x) -> list:
    v = np.asarray(x, dtype=np.complex128)
    return [[float(c.real), float(c.imag)] for c in v]


def vector_from_json(obj, field: str = "vector") -> np.ndarray:
    try:
        a = np.asarray(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{field}: entries must be [re, im] number pairs") from exc
    if a.ndim != 2 or a.shape[1] != 2:
        raise ValueError(f"{field}: expected a list of [re, im] pairs")
    return a[:, 0] + 1j * a[:, 1]


def block_matrix_to_json(a: BlockMatrix) -> dict:
    return {
        "n": a.n,
        "d": a.d,
        "blocks": [
            [operator_to_json(a.blocks[i, j]) for j in range(a.n)] for i in range(a.n)
        ],
    }


def block_matrix_from_json(obj, field: str = "block matrix") -> BlockMatrix:
    if not isinstance(obj, dict):
        raise ValueError(f"{field}: expected an object with n, d, blocks")
    for key in ("n", "d", "blocks"):
        if key not in obj:
            raise ValueError(f"{field}: missing field '{key}'")
    n, d = obj["n"], obj["d"]
    if not (isinstance(n, int) and isinstance(d, int) and n >= 1 and d >= 1):
        raise ValueError(f"{field}: n and d must be positive integers")
    rows = obj["blocks"]
    if not isinstance(rows, list) or len(rows) != n or any(
        not isinstance(r, list) or len(r) != n for r in rows
    ):
        raise ValueError(f"{field}: blocks must be an {n}-by-{n} grid")
    blocks = np.zeros((n, n, d, d), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            block = operator_from_json(rows[i][j], field=f"{field}.blocks[{i}][{j}]")
            if block.shape != (d, d):
                raise ValueError(
                    f"{field}.blocks[{i}][{j}]: expected {d}x{d}, got {block.shape}"
                )
            blocks[i, j] = block
    return BlockMatrix(n=n, d=d, blocks=blocks)

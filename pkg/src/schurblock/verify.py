"""Checkers for the identities and inequalities obeyed by the Schur block product.

Each checker runs one instance and returns a PropertyResult with trials=1.
Residuals are relative with an absolute floor of 1e-12: identity checks
divide the deviation norm by max(1, ||reference||), inequality checks
divide the violation by the right-hand side. A result passes when its
residual is at or below the tolerance, and ``merge_results`` folds
per-trial results into suite aggregates (sums of counts, max of
residuals), which is order-independent.

One irregularity, flagged where it happens: the lifted-product checker
stores the norm ratio ||lift(A,B)|| / (||A|| ||B||) itself as the
residual, with threshold 1 + tol, so the aggregated worst residual doubles
as the best observed lower witness for the lifted operator norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import (
    BlockMatrix,
    Lift,
    _check_lift,
    _check_same_shape,
    adjoint_block,
    block_identity,
    block_matmul,
    col_norm,
    diag_block,
    flatten,
    flatten_lift,
    lift_schur_k,
    row_norm,
    schur_block_product,
)
from .errors import ShapeError
from .linalg import ABS_FLOOR, hermitian_min_eig, psd_sqrt, spectral_norm
from .stinespring import (
    StinespringSystem,
    build_lambda,
    build_rho,
    build_sigma,
)

PROPERTY_IDS = (
    "factorization",
    "structure",
    "livshits",
    "sharpness",
    "sandwich",
    "cauchy_schwarz",
    "decomposition",
    "norm_lemmas",
    "cb_level",
)

DEFAULT_TOLERANCES = {
    "factorization": 1e-10,
    "structure": 1e-12,
    "livshits": 1e-8,
    "sharpness": 1e-8,
    "sandwich": 1e-10,
    "cauchy_schwarz": 1e-8,
    "decomposition": 1e-10,
    "norm_lemmas": 1e-8,
    "cb_level": 1e-8,
}

# the two right-hand-side routes in the Cauchy-Schwarz checker must agree
# to this relative tolerance regardless of the inequality tolerance
RHS_AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of running one property over one or more trials."""

    property_id: str
    trials: int
    failures: int
    worst_residual: float
    worst_seed: int
    tolerance_used: float

    def __post_init__(self):
        if self.failures > self.trials:
            raise ValueError("failures cannot exceed trials")
        if self.worst_residual < 0:
            raise ValueError("worst_residual must be nonnegative")
        if self.trials > 0 and (self.failures == 0) != (
            self.worst_residual <= self.tolerance_used
        ):
            raise ValueError(
                "inconsistent result: failures == 0 must match "
                "worst_residual <= tolerance_used"
            )

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        return {
            "property_id": self.property_id,
            "trials": self.trials,
            "failures": self.failures,
            "worst_residual": self.worst_residual,
            "worst_seed": self.worst_seed,
            "tolerance_used": self.tolerance_used,
        }


def merge_results(results) -> PropertyResult:
    """Fold per-trial results for one property into a single aggregate."""
    results = list(results)
    if not results:
        raise ValueError("nothing to merge")
    pid = results[0].property_id
    tol = results[0].tolerance_used
    if any(r.property_id != pid or r.tolerance_used != tol for r in results):
        raise ValueError("can only merge results of one property at one tolerance")
    worst = max(results, key=lambda r: r.worst_residual)
    return PropertyResult(
        property_id=pid,
        trials=sum(r.trials for r in results),
        failures=sum(r.failures for r in results),
        worst_residual=worst.worst_residual,
        worst_seed=worst.worst_seed,
        tolerance_used=tol,
    )


def _single(pid: str, residual: float, tol: float, seed: int) -> PropertyResult:
    return PropertyResult(
        property_id=pid,
        trials=1,
        failures=0 if residual <= tol else 1,
        worst_residual=float(residual),
        worst_seed=seed,
        tolerance_used=tol,
    )


def _system_for(a: BlockMatrix, system: StinespringSystem | None) -> StinespringSystem:
    if system is None:
        return StinespringSystem.build(a.n, a.d)
    if (system.n, system.d) != (a.n, a.d):
        raise ShapeError(
            f"system built for (n={system.n}, d={system.d}) does not match "
            f"instance (n={a.n}, d={a.d})"
        )
    return system


def _identity_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return spectral_norm(lhs - rhs) / max(1.0, spectral_norm(rhs))


def verify_factorization(a: BlockMatrix, b: BlockMatrix,
                         tol: float = DEFAULT_TOLERANCES["factorization"], *,
                         system: StinespringSystem | None = None,
                         seed: int = 0) -> PropertyResult:
    """flatten(A [] B) = V* lambda(A) F lambda(B) V, and the rho form."""
    _check_same_shape(a, b)
    sys_ = _system_for(a, system)
    target = flatten(schur_block_product(a, b))
    la, lb = build_lambda(a), build_lambda(b)
    vh = sys_.V.conj().T
    via_flip = vh @ la @ sys_.F @ lb @ sys_.V
    via_rho = vh @ la @ build_rho(b) @ sys_.V
    denom = max(1.0, spectral_norm(target))
    residual = max(
        spectral_norm(target - via_flip) / denom,
        spectral_norm(target - via_rho) / denom,
    )
    return _single("factorization", residual, tol, seed)


def verify_structure(a: BlockMatrix, b: BlockMatrix,
                     tol: float = DEFAULT_TOLERANCES["structure"], *,
                     system: StinespringSystem | None = None,
                     seed: int = 0) -> PropertyResult:
    """Exactness of the fixed operators and the representation identities.

    Covers V*V = I, VV* = Q, F self-adjoint and involutive, FV = V,
    sigma(I) = Q, F lambda(A) F = rho(A), sigma(A) V = V flatten(A),
    Q lambda(A) rho(B) Q = sigma(A [] B), and the diagonal compression
    flatten(diag(A)) = V* lambda(A) V.
    """
    _check_same_shape(a, b)
    sys_ = _system_for(a, system)
    n, d = a.n, a.d
    v, f, q = sys_.V, sys_.F, sys_.Q
    vh = v.conj().T
    la = build_lambda(a)
    eye_nd = np.eye(n * d)
    eye_big = np.eye(n * d * n)
    residuals = [
        _identity_residual(vh @ v, eye_nd),
        _identity_residual(v @ vh, q),
        _identity_residual(f, f.conj().T),
        _identity_residual(f @ f, eye_big),
        _identity_residual(f @ v, v),
        _identity_residual(build_sigma(block_identity(n, d)), q),
        _identity_residual(f @ la @ f, build_rho(a)),
        _identity_residual(build_sigma(a) @ v, v @ flatten(a)),
        _identity_residual(
            q @ (la @ build_rho(b)) @ q, build_sigma(schur_block_product(a, b))
        ),
        _identity_residual(flatten(diag_block(a)), vh @ la @ v),
    ]
    return _single("structure", max(residuals), tol, seed)


def verify_livshits(a: BlockMatrix, b: BlockMatrix,
                    tol: float = DEFAULT_TOLERANCES["livshits"], *,
                    seed: int = 0) -> PropertyResult:
    """||A [] B|| <= row_norm(A) * col_norm(B)."""
    _check_same_shape(a, b)
    lhs = spectral_norm(flatten(schur_block_product(a, b)))
    rhs = row_norm(a) * col_norm(b)
    residual = max(0.0, lhs - rhs) / max(rhs, ABS_FLOOR)
    return _single("livshits", residual, tol, seed)


def row_norm_via_schur(x: BlockMatrix, k: int, tol: float = 1e-10) -> float:
    """Norm of block row k of X, recovered through the Schur block product.

    Multiplies X slotwise by the indicator matrix whose row k holds I_d and
    which vanishes elsewhere; the operator norm of the result is exactly
    the norm of the k-th block row, and the max over k is row_norm(X).
    """
    if not 0 <= k < x.n:
        raise IndexError(f"row index {k} out of range for n={x.n}")
    y = np.zeros((x.n, x.n, x.d, x.d), dtype=np.complex128)
    y[k, :] = np.eye(x.d)
    indicator = BlockMatrix(n=x.n, d=x.d, blocks=y)
    return spectral_norm(flatten(schur_block_product(x, indicator)), tol)


def _block_row_norm(x: BlockMatrix, k: int) -> float:
    """Direct oracle: spectral norm of the d-by-(n*d) strip of row k."""
    strip = x.blocks[k].transpose(1, 0, 2).reshape(x.d, x.n * x.d)
    return spectral_norm(strip)


def verify_sharpness(x: BlockMatrix,
                     tol: float = DEFAULT_TOLERANCES["sharpness"], *,
                     seed: int = 0) -> PropertyResult:
    """Row norms recovered through [] match direct block-row norms, every row."""
    residual = 0.0
    recovered = []
    for k in range(x.n):
        via = row_norm_via_schur(x, k)
        direct = _block_row_norm(x, k)
        recovered.append(via)
        residual = max(residual, abs(via - direct) / max(direct, ABS_FLOOR))
    rn = row_norm(x)
    residual = max(residual, abs(max(recovered) - rn) / max(rn, ABS_FLOOR))
    return _single("sharpness", residual, tol, seed)


def verify_sandwich(a: BlockMatrix,
                    tol: float = DEFAULT_TOLERANCES["sandwich"], *,
                    seed: int = 0) -> PropertyResult:
    """-diag(A*A) <= A* [] A <= diag(A*A) in the PSD order."""
    star = adjoint_block(a)
    s = flatten(schur_block_product(star, a))
    dmat = flatten(diag_block(block_matmul(star, a)))
    # both gaps are Hermitian up to rounding by the adjoint law; the
    # min-eig routine gates on that and symmetrizes
    lo = hermitian_min_eig(dmat - s, tol=1e-8)
    hi = hermitian_min_eig(dmat + s, tol=1e-8)
    deficit = max(0.0, -lo, -hi)
    residual = deficit / max(spectral_norm(dmat), ABS_FLOOR)
    return _single("sandwich", residual, tol, seed)


def cauchy_schwarz_rhs_routes(a: BlockMatrix, b: BlockMatrix,
                              xi: np.ndarray, gamma: np.ndarray,
                              psd_tol: float = 1e-10) -> tuple[float, float]:
    """The bound's right-hand side computed two independent ways.

    Route one applies per-block PSD square roots of diag(B*B) and diag(AA*)
    to the vectors; route two accumulates sum ||b_ij xi_j||^2 and
    sum ||a_ij* gamma_i||^2 directly.
    """
    n, d = a.n, a.d
    xi = np.asarray(xi, dtype=np.complex128).reshape(n, d)
    gamma = np.asarray(gamma, dtype=np.complex128).reshape(n, d)

    bsb = block_matmul(adjoint_block(b), b)
    aas = block_matmul(a, adjoint_block(a))
    left_sq = sum(
        float(np.linalg.norm(psd_sqrt(bsb.blocks[j, j], psd_tol) @ xi[j]) ** 2)
        for j in range(n)
    )
    right_sq = sum(
        float(np.linalg.norm(psd_sqrt(aas.blocks[i, i], psd_tol) @ gamma[i]) ** 2)
        for i in range(n)
    )
    rhs_diag = float(np.sqrt(left_sq) * np.sqrt(right_sq))

    sum_b = sum(
        float(np.linalg.norm(b.blocks[i, j] @ xi[j]) ** 2)
        for i in range(n) for j in range(n)
    )
    sum_a = sum(
        float(np.linalg.norm(a.blocks[i, j].conj().T @ gamma[i]) ** 2)
        for i in range(n) for j in range(n)
    )
    rhs_sum = float(np.sqrt(sum_b) * np.sqrt(sum_a))
    return rhs_diag, rhs_sum


def verify_cauchy_schwarz(a: BlockMatrix, b: BlockMatrix, xi, gamma,
                          tol: float = DEFAULT_TOLERANCES["cauchy_schwarz"], *,
                          seed: int = 0) -> PropertyResult:
    """|<(A [] B) xi, gamma>| <= ||diag(B*B)^(1/2) xi|| ||diag(AA*)^(1/2) gamma||.

    Also recomputes the right-hand side by direct summation and requires
    the two routes to agree to RHS_AGREEMENT_TOL; that sub-residual is
    scaled into the same pass threshold, so the result fails whenever
    either the inequality or the route agreement does.
    """
    _check_same_shape(a, b)
    dim = a.n * a.d
    xi = np.asarray(xi, dtype=np.complex128)
    gamma = np.asarray(gamma, dtype=np.complex128)
    if xi.shape != (dim,) or gamma.shape != (dim,):
        raise ShapeError(
            f"vectors must have length n*d = {dim}, got {xi.shape} and {gamma.shape}"
        )
    lhs = abs(np.vdot(gamma, flatten(schur_block_product(a, b)) @ xi))
    rhs_diag, rhs_sum = cauchy_schwarz_rhs_routes(a, b, xi, gamma)
    ineq_residual = max(0.0, lhs - rhs_diag) / (1.0 + rhs_diag)
    route_gap = abs(rhs_diag - rhs_sum) / max(rhs_diag, ABS_FLOOR)
    residual = max(ineq_residual, route_gap * (tol / RHS_AGREEMENT_TOL))
    return _single("cauchy_schwarz", residual, tol, seed)


def verify_decomposition(a: BlockMatrix, b: BlockMatrix,
                         tol: float = DEFAULT_TOLERANCES["decomposition"], *,
                         system: StinespringSystem | None = None,
                         seed: int = 0) -> PropertyResult:
    """Difference-of-positive-parts form and the absolute-value identity.

    With P = (F + I)/2: P is an orthogonal projection (exactly, in floating
    point), flatten(A [] B) equals V* lambda(A) P lambda(B) V minus
    V* lambda(A) (I - P) lambda(B) V, and V* lambda(AB) V equals
    flatten(diag(AB)).
    """
    _check_same_shape(a, b)
    sys_ = _system_for(a, system)
    big = a.n * a.d * a.n
    p = (sys_.F + np.eye(big)) / 2
    vh = sys_.V.conj().T
    la, lb = build_lambda(a), build_lambda(b)

    target = flatten(schur_block_product(a, b))
    plus = vh @ la @ p @ lb @ sys_.V
    minus = vh @ la @ (np.eye(big) - p) @ lb @ sys_.V
    prod = block_matmul(a, b)
    residuals = [
        _identity_residual(p @ p, p),
        _identity_residual(p, p.conj().T),
        _identity_residual(plus - minus, target),
        _identity_residual(vh @ build_lambda(prod) @ sys_.V,
                           flatten(diag_block(prod))),
    ]
    return _single("decomposition", max(residuals), tol, seed)


def verify_norm_lemmas(a: BlockMatrix,
                       tol: float = DEFAULT_TOLERANCES["norm_lemmas"], *,
                       system: StinespringSystem | None = None,
                       seed: int = 0) -> PropertyResult:
    """col_norm(A) = ||lambda(A) V|| and row_norm(A) = ||V* lambda(A)||."""
    sys_ = _system_for(a, system)
    la = build_lambda(a)
    cn, rn = col_norm(a), row_norm(a)
    residual = max(
        abs(cn - spectral_norm(la @ sys_.V)) / max(cn, ABS_FLOOR),
        abs(rn - spectral_norm(sys_.V.conj().T @ la)) / max(rn, ABS_FLOOR),
    )
    return _single("norm_lemmas", residual, tol, seed)


def lift_norm_ratio(a: Lift, b: Lift) -> float:
    """||flatten_lift(lift(A, B))|| / (||flatten_lift(A)|| ||flatten_lift(B)||)."""
    lhs = spectral_norm(flatten_lift(lift_schur_k(a, b)))
    rhs = spectral_norm(flatten_lift(a)) * spectral_norm(flatten_lift(b))
    if rhs == 0.0:
        return 0.0 if lhs == 0.0 else float("inf")
    return lhs / rhs


def verify_cb_level(a: Lift, b: Lift, k: int,
                    tol: float = DEFAULT_TOLERANCES["cb_level"], *,
                    seed: int = 0) -> PropertyResult:
    """Contractivity of the level-k lift: ||lift(A, B)|| <= ||A|| ||B|| (1 + tol).

    The residual IS the norm ratio (threshold 1 + tol), so aggregated
    worst residuals record the largest lower witness seen for the lifted
    operator norm.
    """
    ka, _, _ = _check_lift(a, "a")
    if ka != k:
        raise ShapeError(f"lift has k={ka}, expected k={k}")
    ratio = lift_norm_ratio(a, b)
    return _single("cb_level", ratio, 1.0 + tol, seed)


# ---------------------------------------------------------------------------
# Dispatch used by the suite runner and replay
# ---------------------------------------------------------------------------


def run_property(property_id: str, *, a=None, b=None, xi=None, gamma=None,
                 lift_a=None, lift_b=None, k: int = 1,
                 tol: float | None = None,
                 system: StinespringSystem | None = None,
                 seed: int = 0) -> PropertyResult:
    """Run one named property on the supplied pieces of an instance."""
    if property_id not in PROPERTY_IDS:
        raise ValueError(f"unknown property {property_id!r}")
    if tol is None:
        tol = DEFAULT_TOLERANCES[property_id]

    def need(value, what):
        if value is None:
            raise ValueError(f"property {property_id!r} needs {what}")
        return value

    if property_id == "factorization":
        return verify_factorization(need(a, "A"), need(b, "B"), tol,
                                    system=system, seed=seed)
    if property_id == "structure":
        return verify_structure(need(a, "A"), need(b, "B"), tol,
                                system=system, seed=seed)
    if property_id == "livshits":
        return verify_livshits(need(a, "A"), need(b, "B"), tol, seed=seed)
    if property_id == "sharpness":
        return verify_sharpness(need(a, "A"), tol, seed=seed)
    if property_id == "sandwich":
        return verify_sandwich(need(a, "A"), tol, seed=seed)
    if property_id == "cauchy_schwarz":
        return verify_cauchy_schwarz(need(a, "A"), need(b, "B"),
                                     need(xi, "xi"), need(gamma, "gamma"),
                                     tol, seed=seed)
    if property_id == "decomposition":
        return verify_decomposition(need(a, "A"), need(b, "B"), tol,
                                    system=system, seed=seed)
    if property_id == "norm_lemmas":
        return verify_norm_lemmas(need(a, "A"), tol, system=system, seed=seed)
    # cb_level: fall back to the k=1 lift of (A, B) when no lift is given
    if lift_a is None or lift_b is None:
        lift_a, lift_b, k = [[need(a, "A")]], [[need(b, "B")]], 1
    return verify_cb_level(lift_a, lift_b, k, tol, seed=seed)

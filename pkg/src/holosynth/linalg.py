"""Dense complex linear algebra: validated unitary eigendecomposition,
skew-Hermitian matrix exponentials and polar unitarization.

Matrices are plain complex numpy arrays. Validation helpers raise typed
exceptions from :mod:`holosynth.errors`, so callers can rely on inputs
having been checked exactly once at the operation boundary.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    ConvergenceFailure,
    DimensionError,
    NonSkewInput,
    NonUnitaryInput,
    SingularInput,
)

TWO_PI = 2.0 * np.pi


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise DimensionError("matrix contains non-finite entries")
    return a


def unitarity_defect(u: np.ndarray) -> float:
    """||U^H U - I||_F."""
    u = np.asarray(u)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[1])))


def skewness_defect(a: np.ndarray) -> float:
    """||A + A^H||_F."""
    a = np.asarray(a)
    return float(np.linalg.norm(a + a.conj().T))


def check_unitary(u, tol: Tolerances = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    u = as_complex_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {u.shape}")
    defect = unitarity_defect(u)
    if defect > tol.unitarity:
        raise NonUnitaryInput(
            f"{what} fails unitarity: ||U^H U - I||_F = {defect:.3e} > {tol.unitarity:.1e}"
        )
    return u


def check_skew(a, tol: Tolerances = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")
    defect = skewness_defect(a)
    if defect > tol.skewness:
        raise NonSkewInput(
            f"{what} fails skew-Hermiticity: ||A + A^H||_F = {defect:.3e} > {tol.skewness:.1e}"
        )
    return a


def _canonical_phase(column: np.ndarray) -> np.ndarray:
    """Rotate a column's global phase so its largest-magnitude entry is
    real positive; magnitude ties resolved toward the lowest row index."""
    mags = np.abs(column)
    pivot = int(np.argmax(mags > mags.max() - 1e-12))
    phase = column[pivot] / abs(column[pivot])
    return column * np.conj(phase)


def eig_unitary(
    u, tol: Tolerances = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecompose a unitary matrix into phases and a unitary diagonalizer.

    Returns `(r, gammas)` with `r^H @ u @ r = diag(exp(1j * gammas))`.
    The phases live in [0, 2*pi), sorted ascending; phases within
    `tol.phase_snap` of 0 or 2*pi are snapped to exactly 0, which keeps
    downstream square roots of the form sqrt(gamma * (2n*pi - gamma))
    exact on degenerate channels.

    Eigenvectors come from a complex Schur decomposition, so `r` is unitary
    to machine precision even inside degenerate clusters. Clusters (phase
    gap below `tol.cluster_gap`) are re-orthonormalized by QR and every
    column's global phase is fixed by :func:`_canonical_phase`, making the
    output deterministic for a given platform.

    Raises:
        NonUnitaryInput: input fails the unitarity tolerance.
        ConvergenceFailure: the Schur iteration failed, or the
            reconstruction check exceeded `tol.reconstruction`.
    """
    u = check_unitary(u, tol, what="eig_unitary input")
    try:
        t, z = scipy.linalg.schur(u, output="complex")
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise ConvergenceFailure(f"Schur decomposition failed: {exc}") from exc

    gammas = np.angle(np.diag(t)) % TWO_PI
    gammas = np.where(np.abs(gammas - TWO_PI) <= tol.phase_snap, 0.0, gammas)
    gammas = np.where(np.abs(gammas) <= tol.phase_snap, 0.0, gammas)

    order = np.argsort(gammas, kind="stable")
    gammas = gammas[order]
    r = z[:, order].copy()

    k = len(gammas)
    start = 0
    while start < k:
        stop = start
        while stop + 1 < k and gammas[stop + 1] - gammas[stop] < tol.cluster_gap:
            stop += 1
        block = r[:, start : stop + 1]
        if stop > start:
            block, _ = np.linalg.qr(block)
        for c in range(block.shape[1]):
            block[:, c] = _canonical_phase(block[:, c])
        r[:, start : stop + 1] = block
        start = stop + 1

    recon = float(np.linalg.norm(r @ np.diag(np.exp(1j * gammas)) @ r.conj().T - u))
    if recon > tol.reconstruction:
        raise ConvergenceFailure(
            f"eigendecomposition reconstruction defect {recon:.3e} exceeds "
            f"{tol.reconstruction:.1e}"
        )
    return r, gammas


def expm_skew(a, t: float = 1.0, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Exponential exp(t*A) of a skew-Hermitian matrix A.

    Writes A = i*H with H Hermitian and exponentiates the eigenvalues of H,
    so the result is unitary up to roundoff for any step t with no scaling
    heuristics involved.
    """
    a = check_skew(a, tol, what="expm_skew input")
    w, q = np.linalg.eigh(-1j * a)
    return (q * np.exp(1j * t * w)) @ q.conj().T


def polar_unitary(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Unitary factor Q of the polar decomposition M = Q H.

    Q is the closest unitary to M in the Frobenius norm. Refuses inputs
    whose smallest singular value is at or below `tol.singular`, since the
    unitary factor is then ill-determined.
    """
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"polar_unitary needs a square matrix, got {m.shape}")
    u, s, vh = np.linalg.svd(m)
    if s[-1] <= tol.singular:
        raise SingularInput(
            f"smallest singular value {s[-1]:.3e} at or below {tol.singular:.1e}"
        )
    return u @ vh


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary: QR of a complex Gaussian matrix
    with the R diagonal's phases folded back into Q."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))

"""Closed-form horizontal extremal curves and their holonomy.

A controller is the constant skew-Hermitian generator

    X = [[Omega, W], [-W^H, 0]]

acting on C^n, with Omega (k x k, skew-Hermitian) and W (k x (n-k)). The
curve V(t) = exp(t X) V0 exp(-t Omega) through the standard base frame V0
is a horizontal lift whose projected loop, when it closes at t = T, picks
up the holonomy

    Gamma = V0^H exp(T X) V0 exp(-T Omega).

The projected curve length is tr(W^H W) * T, independent of Omega. The
public API normalizes the traversal time to T = 1; the analytic operations
keep an explicit T argument so composition and consistency laws remain
testable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionError, NonUnitaryHolonomy, OpenLoop
from .linalg import as_complex_matrix, check_skew, check_unitary, unitarity_defect
from .bundle import standard_base_frame


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Controller:
    """Constant generator of a horizontal extremal curve.

    Attributes:
        omega: k x k skew-Hermitian block; the constant fiber rotation,
            equal to V0^H X V0 at the standard base frame.
        coupling: k x (n-k) block tying the working subspace to its
            complement; its squared Frobenius norm is the loop length
            per unit time. The lower-right block of X is identically zero.
    """

    omega: np.ndarray
    coupling: np.ndarray

    def __post_init__(self):
        omega = check_skew(self.omega, what="controller omega block")
        coupling = as_complex_matrix(self.coupling)
        if coupling.shape[0] != omega.shape[0]:
            raise DimensionError(
                f"coupling rows {coupling.shape[0]} != omega dim {omega.shape[0]}"
            )
        if coupling.shape[1] < 1:
            raise DimensionError("coupling block needs at least one column (n > k)")
        object.__setattr__(self, "omega", _frozen(omega))
        object.__setattr__(self, "coupling", _frozen(coupling))

    @property
    def k(self) -> int:
        return self.omega.shape[0]

    @property
    def n(self) -> int:
        return self.omega.shape[0] + self.coupling.shape[1]

    @property
    def matrix(self) -> np.ndarray:
        """The assembled n x n generator; skew-Hermitian by construction."""
        k, n = self.k, self.n
        x = np.zeros((n, n), dtype=complex)
        x[:k, :k] = self.omega
        x[:k, k:] = self.coupling
        x[k:, :k] = -self.coupling.conj().T
        return x

    def base_frame(self) -> np.ndarray:
        return standard_base_frame(self.n, self.k)


def _spectral(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-data (w, q) of a skew-Hermitian matrix, a = q diag(i w) q^H."""
    w, q = np.linalg.eigh(-1j * a)
    return w, q


def curve_point(ctrl: Controller, t: float) -> np.ndarray:
    """Frame V(t) = exp(t X) V0 exp(-t Omega) of the extremal curve."""
    return curve_samples(ctrl, np.asarray([t], dtype=float))[0]


def curve_samples(ctrl: Controller, times) -> np.ndarray:
    """Frames of the extremal curve at many times, shape (len(times), n, k).

    One eigendecomposition of X and one of Omega serve every sample, so
    dense sampling costs a pair of batched matrix products per point.
    """
    times = np.asarray(times, dtype=float)
    v0 = ctrl.base_frame()
    wx, qx = _spectral(ctrl.matrix)
    wo, qo = _spectral(ctrl.omega)
    left_seed = qx.conj().T @ v0
    phases_x = np.exp(1j * np.outer(times, wx))
    left = np.einsum("ij,mj,jk->mik", qx, phases_x, left_seed)
    phases_o = np.exp(-1j * np.outer(times, wo))
    right = np.einsum("ij,mj,jk->mik", qo, phases_o, qo.conj().T)
    return np.einsum("mij,mjk->mik", left, right)


def loop_closure_defect(ctrl: Controller, t_final: float = 1.0) -> float:
    """||exp(T X) P0 exp(-T X) - P0||_F with P0 the base projector."""
    v0 = ctrl.base_frame()
    p0 = v0 @ v0.conj().T
    wx, qx = _spectral(ctrl.matrix)
    g = (qx * np.exp(1j * t_final * wx)) @ qx.conj().T
    return float(np.linalg.norm(g @ p0 @ g.conj().T - p0))


def holonomy_analytic(
    ctrl: Controller, t_final: float = 1.0, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    """Holonomy Gamma = V0^H exp(T X) V0 exp(-T Omega) of the closed loop.

    Raises:
        OpenLoop: the projected curve misses its start point at t = T, in
            which case the product below would not be unitary and the
            boundary-value problem is simply unsolved for this (X, T).
        NonUnitaryHolonomy: closure passed but the product still failed
            the unitarity tolerance (an open loop at a looser scale).
    """
    defect = loop_closure_defect(ctrl, t_final)
    if defect > tol.closure:
        raise OpenLoop(
            f"loop closure defect {defect:.3e} exceeds {tol.closure:.1e} "
            f"at T={t_final}"
        )
    v0 = ctrl.base_frame()
    wx, qx = _spectral(ctrl.matrix)
    g = (qx * np.exp(1j * t_final * wx)) @ qx.conj().T
    wo, qo = _spectral(ctrl.omega)
    unwind = (qo * np.exp(-1j * t_final * wo)) @ qo.conj().T
    gamma = v0.conj().T @ g @ v0 @ unwind
    if unitarity_defect(gamma) > tol.unitarity:
        raise NonUnitaryHolonomy(
            f"holonomy product fails unitarity with defect "
            f"{unitarity_defect(gamma):.3e}"
        )
    return gamma


def length_analytic(ctrl: Controller, t_final: float = 1.0) -> float:
    """Loop length tr(W^H W) * T of the projected extremal curve."""
    w = ctrl.coupling
    return float(np.trace(w.conj().T @ w).real * t_final)


def transform_controller(
    ctrl: Controller, h1, h2, tol: Tolerances = DEFAULT_TOL
) -> Controller:
    """Conjugate a controller by block unitaries (h1, h2).

    Returns the controller with omega' = h1 omega h1^H and
    coupling' = h1 W h2^H. When h1 additionally commutes with the target
    gate (see :func:`gate_commutes`), the transformed controller produces
    the same holonomy, so (h1, h2) sweep out an equivalence class of
    solutions of identical length.
    """
    h1 = check_unitary(h1, tol, what="h1")
    h2 = check_unitary(h2, tol, what="h2")
    if h1.shape[0] != ctrl.k:
        raise DimensionError(f"h1 must be {ctrl.k} x {ctrl.k}, got {h1.shape}")
    if h2.shape[0] != ctrl.n - ctrl.k:
        raise DimensionError(
            f"h2 must be {ctrl.n - ctrl.k} x {ctrl.n - ctrl.k}, got {h2.shape}"
        )
    return Controller(
        omega=h1 @ ctrl.omega @ h1.conj().T,
        coupling=h1 @ ctrl.coupling @ h2.conj().T,
    )


def gate_commutes(h1, gate) -> float:
    """Commutation defect ||h1 gate h1^H - gate||_F."""
    h1 = as_complex_matrix(h1)
    gate = as_complex_matrix(gate)
    if h1.shape != gate.shape or h1.shape[0] != h1.shape[1]:
        raise DimensionError(
            f"shape mismatch: h1 {h1.shape} vs gate {gate.shape}"
        )
    return float(np.linalg.norm(h1 @ gate @ h1.conj().T - gate))


@dataclass(frozen=True)
class HolonomyReport:
    """Analytic verification summary for a controller against a target."""

    gamma_matrix: np.ndarray
    target: np.ndarray
    holonomy_error: float
    loop_defect: float
    length_analytic: float = field(default=0.0)


def evaluate_controller(
    ctrl: Controller, target, t_final: float = 1.0, tol: Tolerances = DEFAULT_TOL
) -> HolonomyReport:
    """Holonomy, closure and length of a controller versus a target gate."""
    target = check_unitary(target, tol, what="target gate")
    gamma = holonomy_analytic(ctrl, t_final, tol)
    return HolonomyReport(
        gamma_matrix=gamma,
        target=target,
        holonomy_error=float(np.linalg.norm(gamma - target)),
        loop_defect=loop_closure_defect(ctrl, t_final),
        length_analytic=length_analytic(ctrl, t_final),
    )

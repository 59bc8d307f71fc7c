"""Floating-point checks of exact verdicts on concrete semi-negative systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .polynomial import StabilityPolynomial

STABLE_SLACK = 1e-12
VIOLATION_SLACK = 1e-9
_SEMINEG_TOL = 1e-10


class InvalidSystemError(ValueError):
    pass


def _h_factor(H: np.ndarray) -> np.ndarray:
    """Upper-triangular C with H = C^T C."""
    try:
        return np.linalg.cholesky(H).T
    except np.linalg.LinAlgError as exc:
        raise InvalidSystemError("H is not symmetric positive definite") from exc


@dataclass(frozen=True, eq=False)
class SemiNegativeSystem:
    """u' = L u with L^T H + H L negative semi-definite and H SPD.

    Semi-negativity is checked at construction: the largest eigenvalue of
    ``L^T H + H L`` may exceed zero by at most 1e-10 of its Frobenius norm,
    floored at 1e-10 * |L|_F |H|_F so exactly conserving systems survive
    the round-off in forming ``L``.
    """

    L: np.ndarray
    H: np.ndarray
    label: str = ""

    def __post_init__(self):
        L = np.array(self.L, dtype=float)
        H = np.array(self.H, dtype=float)
        if L.ndim != 2 or L.shape[0] != L.shape[1] or H.shape != L.shape:
            raise InvalidSystemError("L and H must be square matrices of equal size")
        if not np.allclose(H, H.T, rtol=0, atol=1e-14 * np.abs(H).max()):
            raise InvalidSystemError("H is not symmetric")
        H = 0.5 * (H + H.T)
        _h_factor(H)
        K = self._form(L, H)
        top = np.linalg.eigvalsh(K).max()
        scale = max(np.linalg.norm(K), np.linalg.norm(L) * np.linalg.norm(H))
        if top > _SEMINEG_TOL * scale:
            raise InvalidSystemError(f"L is not semi-negative in H: largest eigenvalue {top:.3e}")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "H", H)

    @staticmethod
    def _form(L, H):
        K = L.T @ H + H @ L
        return 0.5 * (K + K.T)

    @property
    def dissipation_form(self) -> np.ndarray:
        """L^T H + H L."""
        return self._form(self.L, self.H)

    @property
    def n(self) -> int:
        return self.L.shape[0]

    def is_conserving(self, tol: float = 1e-10) -> bool:
        scale = np.linalg.norm(self.L) * np.linalg.norm(self.H)
        return np.linalg.norm(self.dissipation_form) <= tol * scale

    def h_norm(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(np.sqrt(u @ self.H @ u))

    def operator_h_norm(self) -> float:
        C = _h_factor(self.H)
        M = C @ scipy.linalg.solve_triangular(C, self.L.T, trans="T", lower=False).T
        return float(np.linalg.norm(M, 2))


def make_random_semi_negative(n: int, seed: int, dissipation: float = 0.0, *,
                              rank: int | None = None, identity_weight: bool = False,
                              normalize: bool = True) -> SemiNegativeSystem:
    """Random L = H^-1 (S - D) with S skew, D = dissipation * B^T B, H = C^T C + 0.1 I.

    ``B`` has ``rank`` rows (default ``n // 2``) so the dissipation misses part
    of the space, as it does for upwind or jump penalties. With
    ``normalize`` the result is rescaled to ``|L|_H = 1``.
    """
    if n < 2:
        raise InvalidSystemError("dimension must be >= 2")
    if dissipation < 0:
        raise InvalidSystemError("dissipation must be >= 0")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n))
    S = G - G.T
    B = rng.standard_normal((rank if rank is not None else max(1, n // 2), n))
    D = dissipation * (B.T @ B)
    if identity_weight:
        H = np.eye(n)
    else:
        C = rng.standard_normal((n, n))
        H = C.T @ C + 0.1 * np.eye(n)
    L = np.linalg.solve(H, S - D)
    label = f"random(n={n}, seed={seed}, dissipation={dissipation:g})"
    sys = SemiNegativeSystem(L, H, label)
    if normalize:
        sys = SemiNegativeSystem(L / sys.operator_h_norm(), H, label)
    return sys


def make_upwind_advection(n: int) -> SemiNegativeSystem:
    """Periodic first-order upwind for u_t + u_x = 0 on n cells of width 1/n."""
    if n < 3:
        raise InvalidSystemError("upwind grid needs n >= 3")
    L = -n * np.eye(n)
    idx = np.arange(n)
    L[idx, (idx - 1) % n] = n
    return SemiNegativeSystem(L, np.eye(n) / n, f"upwind(n={n})")


def counterexample_rk4() -> SemiNegativeSystem:
    L = -np.array([[1.0, 2.0, 2.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]])
    return SemiNegativeSystem(L, np.eye(3), "rk4-counterexample")


def _step_matrix(r: StabilityPolynomial, K: np.ndarray) -> np.ndarray:
    n = K.shape[0]
    R = float(r.alpha[-1]) * np.eye(n)
    for a in reversed(r.alpha[:-1]):
        R = R @ K
        R[np.diag_indices(n)] += float(a)
    return R


def step_operator(r: StabilityPolynomial, sys: SemiNegativeSystem, tau: float) -> np.ndarray:
    """R(tau L) as a dense matrix."""
    return _step_matrix(r, tau * sys.L)


def h_operator_norm(r: StabilityPolynomial, sys: SemiNegativeSystem, tau: float) -> float:
    """|R(tau L)|_H, via the similarity C R C^-1 with H = C^T C."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    C = _h_factor(sys.H)
    # K = C (tau L) C^-1, computed as (C^-T (tau L)^T C^T)^T
    K = (C @ scipy.linalg.solve_triangular(C, (tau * sys.L).T, trans="T", lower=False).T)
    M = _step_matrix(r, K)
    return float(np.linalg.norm(M, 2))


@dataclass(frozen=True)
class SweepReport:
    tau_grid: tuple[float, ...]
    h_norms: tuple[float, ...]
    max_stable_tau: float | None

    @property
    def max_norm(self) -> float:
        return max(self.h_norms)

    def violations(self, slack: float = VIOLATION_SLACK) -> list[float]:
        return [t for t, v in zip(self.tau_grid, self.h_norms) if v > 1 + slack]

    def to_dict(self) -> dict:
        return {
            "tau_grid": list(self.tau_grid),
            "h_norms": list(self.h_norms),
            "max_stable_tau": self.max_stable_tau,
        }


def sweep_over(r: StabilityPolynomial, sys: SemiNegativeSystem, taus) -> SweepReport:
    taus = tuple(float(t) for t in taus)
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise ValueError("tau grid must be strictly increasing")
    norms = tuple(h_operator_norm(r, sys, t) for t in taus)
    best = None
    for t, v in zip(taus, norms):
        if v > 1 + STABLE_SLACK:
            break
        best = t
    return SweepReport(taus, norms, best)


def stability_sweep(r: StabilityPolynomial, sys: SemiNegativeSystem, tau_min: float,
                    tau_max: float, points: int) -> SweepReport:
    """|R(tau L)|_H on a geometric grid; ``max_stable_tau`` ends the stable prefix."""
    if not (0 < tau_min < tau_max) or points < 2:
        raise ValueError("need 0 < tau_min < tau_max and points >= 2")
    return sweep_over(r, sys, np.geomspace(tau_min, tau_max, points))


@dataclass(frozen=True)
class DecayFit:
    taus: tuple[float, ...]
    deficits: tuple[float, ...]
    slope: float
    energy_grows: bool


def energy_decay_order(r: StabilityPolynomial, seed: int = 0, tau_list=None, *,
                       n: int = 8, final_time: float = 1.0,
                       system: SemiNegativeSystem | None = None) -> DecayFit:
    """Fit the order of the energy error at ``final_time`` on a conserving system.

    The deficit is ``|u0|_H^2 - |u_N|_H^2`` after ``N = final_time / tau``
    steps; the slope is fitted to ``log |deficit|`` against ``log tau`` and
    ``energy_grows`` records a negative deficit.
    """
    if tau_list is None:
        tau_list = [0.2 / 2**k for k in range(5)]
    taus = tuple(float(t) for t in tau_list)
    if len(taus) < 4:
        raise ValueError("need at least 4 step sizes")
    if system is None:
        system = make_random_semi_negative(n, seed, dissipation=0.0)
    elif not system.is_conserving():
        raise InvalidSystemError("energy decay order needs a conserving system (L^T H + H L = 0)")

    rng = np.random.default_rng(seed + 1)
    u0 = rng.standard_normal(system.n)
    e0 = system.h_norm(u0) ** 2
    deficits = []
    for tau in taus:
        steps = round(final_time / tau)
        if abs(steps * tau - final_time) > 1e-9 * final_time:
            raise ValueError(f"tau={tau} does not divide the final time {final_time}")
        R = step_operator(r, system, tau)
        u = u0
        for _ in range(steps):
            u = R @ u
        deficits.append(e0 - system.h_norm(u) ** 2)
    d = np.array(deficits)
    if np.any(d == 0):
        raise ValueError("energy deficit vanished to round-off; use larger steps")
    slope = float(np.polyfit(np.log(taus), np.log(np.abs(d)), 1)[0])
    return DecayFit(taus, tuple(deficits), slope, bool(np.all(d < 0)))


def search_counterexample(r: StabilityPolynomial, systems, tau_min: float = 1e-4,
                          tau_max: float = 1e-1, points: int = 40):
    """First system (with its sweep) on which some grid step expands the H-norm."""
    for sys in systems:
        rep = stability_sweep(r, sys, tau_min, tau_max, points)
        if rep.violations():
            return sys, rep
    return None

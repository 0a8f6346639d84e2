"""Independent numerical oracles.

Contour-shifted Fourier coefficients of the propagator Wigner function,
Dirichlet-kernel window integrals, radial phase-space integrals, and the
one-dimensional stationary-phase leading term.  These validate the exact
Laguerre formulas and each other; none of them shares code with the paths
they check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .oscillator import OscillatorConfig, PhasePoint, level_index

__all__ = [
    "ContourSpec",
    "OracleConvergenceError",
    "fourier_coefficient_wigner",
    "dirichlet_weyl_oracle",
    "radial_phase_space_integral",
    "stationary_phase_leading",
]


class OracleConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Imaginary shift and resolution for the periodic contour integrals.

    ``epsilon`` is in normalized units: the actual shift is
    epsilon / (N + d/2), so the amplification factor of the Fourier weight
    is exactly e^epsilon, uniformly in N.  ``points`` (power of two >= 256)
    overrides the automatic grid size.
    """

    epsilon: float = 1.0
    points: Optional[int] = None

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 2.0):
            raise ValueError("epsilon must lie in (0, 2]")
        if self.points is not None:
            m = self.points
            if m < 256 or (m & (m - 1)) != 0:
                raise ValueError("points must be a power of two >= 256")


def _auto_points(n_top: int, d: int) -> int:
    m = 256
    target = 64 * (n_top + d)
    while m < target:
        m *= 2
    return m


def _propagator_grid(cfg: OscillatorConfig, H: float, w: np.ndarray) -> np.ndarray:
    """(2 pi hbar cos(w/2))^{-d} exp(-2 i H tan(w/2)/hbar) on complex nodes."""
    c = np.cos(0.5 * w)
    amp = (2.0 * np.pi * cfg.hbar * c) ** (-cfg.d)
    return amp * np.exp(-2.0j * H * np.tan(0.5 * w) / cfg.hbar)


def _converged_trapezoid(
    integrand: Callable[[np.ndarray], np.ndarray],
    m0: int,
    rel_tol: float,
    abs_floor: float,
    m_max: int = 1 << 22,
) -> complex:
    """Mean of a 2*pi-periodic integrand over [-pi, pi), doubling the grid
    until the value plateaus (spectral convergence on the shifted contour).

    The plateau test carries an absolute floor: once the change between
    doublings is below it, the quadrature has hit its roundoff-limited
    resolution and further refinement is meaningless (this happens whenever
    the true value is exponentially below the integrand scale, e.g. deep in
    the forbidden region).
    """
    prev = None
    m = m0
    while m <= m_max:
        t = -np.pi + 2.0 * np.pi * np.arange(m) / m
        val = complex(np.mean(integrand(t)))
        if prev is not None and abs(val - prev) <= max(rel_tol * abs(val), abs_floor):
            return val
        prev = val
        m *= 2
    raise OracleConvergenceError(f"no trapezoid plateau reached by M={m_max}")


def fourier_coefficient_wigner(
    cfg: OscillatorConfig, N: int, p: PhasePoint, c: ContourSpec = ContourSpec()
) -> float:
    """W_N recovered as a Fourier coefficient of the propagator Wigner
    function on the contour t - i eps:

        W_N = (1/2 pi) int_{-pi}^{pi} e^{i (t - i eps) E_N / hbar}
                                      U(t - i eps) dt.

    The integrand is 2*pi-periodic (the sign flips of cos(t/2)^{-d} and of
    e^{i t d/2} cancel), so the trapezoid rule converges spectrally in the
    grid size; the grid is doubled until the value plateaus.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    nu = N + 0.5 * cfg.d  # E_N / hbar
    eps = c.epsilon / nu if nu > 0 else c.epsilon
    if math.exp(c.epsilon) > 1e12:
        raise ValueError("contour shift amplification exceeds guard")
    H = p.H

    def integrand(t: np.ndarray) -> np.ndarray:
        w = t - 1j * eps
        return np.exp(1j * w * nu) * _propagator_grid(cfg, H, w)

    m0 = c.points if c.points is not None else _auto_points(N, cfg.d)
    scale = (2.0 * math.pi * cfg.hbar) ** (-cfg.d)
    val = _converged_trapezoid(integrand, m0, 1e-12, 1e-13 * scale)
    if abs(val.imag) > 1e-9 * max(abs(val), scale):
        raise OracleConvergenceError(
            f"imaginary residue {val.imag:.3e} too large for W_{N} at H={H}"
        )
    return val.real


def _dirichlet_factor(w: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """(e^{i n2 w} - e^{i n1 w}) / (e^{i w} - 1), stably.

    Near the pole (|Re w| < 0.1) the quotient cancels catastrophically for
    large n2, so it is evaluated as the partial geometric sum it represents;
    elsewhere the sine-ratio identity keeps it stable.
    """
    out = np.empty(w.shape, dtype=np.complex128)
    small = np.abs(w.real) < 0.1
    if np.any(small):
        ks = np.arange(n1, n2)
        ws = w[small]
        out[small] = np.exp(1j * np.outer(ws, ks)).sum(axis=1)
    big = ~small
    if np.any(big):
        wb = w[big]
        m = n2 - n1
        out[big] = (
            np.exp(1j * wb * (n1 + 0.5 * (m - 1)))
            * np.sin(0.5 * m * wb)
            / np.sin(0.5 * wb)
        )
    return out


def dirichlet_weyl_oracle(
    cfg: OscillatorConfig,
    e1: float,
    e2: float,
    p: PhasePoint,
    c: ContourSpec = ContourSpec(),
) -> float:
    """Sharp window sum over E_1 <= E_N < E_2 as a contour integral against
    the Dirichlet kernel; independent check of the direct summation path."""
    n1 = level_index(cfg, e1) if e1 > 0.5 * cfg.d * cfg.hbar else 0
    n2 = level_index(cfg, e2)
    if n2 < n1:
        raise ValueError("window must satisfy E1 < E2 on the spectrum")
    if n2 == n1:
        return 0.0
    nu = n2 + 0.5 * cfg.d
    eps = c.epsilon / nu
    H = p.H

    def integrand(t: np.ndarray) -> np.ndarray:
        w = t - 1j * eps
        return (
            _dirichlet_factor(w, n1, n2)
            * np.exp(1j * w * 0.5 * cfg.d)
            * _propagator_grid(cfg, H, w)
        )

    m0 = c.points if c.points is not None else _auto_points(n2, cfg.d)
    scale = (2.0 * math.pi * cfg.hbar) ** (-cfg.d)
    val = _converged_trapezoid(integrand, m0, 1e-10, 1e-12 * scale)
    return val.real


def radial_phase_space_integral(
    g: Callable[[np.ndarray], np.ndarray],
    d: int,
    h_max: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 0.0,
    max_panels: int = 1 << 15,
) -> float:
    """Integral of a radial function g(H) over phase space T*R^d,

        int g(H(x, xi)) dx dxi = 2 pi^d / Gamma(d) * int_0^inf g(rho^2/2) rho^{2d-1} drho,

    by panel Gauss-Legendre in the phase-space radius rho (the kernels'
    Bessel-regime oscillation is uniform in rho but unboundedly dense in H
    near the origin), doubling panels until the relative change drops below
    ``rel_tol``.  The caller asserts decay beyond ``h_max``.
    """
    if h_max <= 0:
        raise ValueError("h_max must be positive")
    nodes, weights = np.polynomial.legendre.leggauss(32)
    pref = 2.0 * math.pi**d / math.gamma(d)
    rho_max = math.sqrt(2.0 * h_max)

    def value(panels: int) -> float:
        edges = np.linspace(0.0, rho_max, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
        half = 0.5 * (edges[1] - edges[0])
        rho = (mid + half * nodes[None, :]).ravel()
        vals = np.asarray(g(0.5 * rho * rho), dtype=np.float64) * rho ** (2 * d - 1)
        return pref * half * float(np.sum(vals.reshape(-1, 32) * weights[None, :]))

    panels = 8
    prev = value(panels)
    while panels <= max_panels:
        panels *= 2
        cur = value(panels)
        if abs(cur - prev) <= max(rel_tol * abs(cur), abs_tol):
            return cur
        prev = cur
    raise OracleConvergenceError(
        f"radial quadrature did not converge by {max_panels} panels"
    )


def stationary_phase_leading(
    S: Callable[[float], float],
    a: Callable[[float], float],
    t0: float,
    h: float,
    second_deriv: Optional[float] = None,
) -> complex:
    """Leading term of I(h) = (2 pi h)^{-1/2} int e^{i S(t)/h} a(t) dt at a
    non-degenerate critical point t0:

        e^{i S(t0)/h} e^{i (pi/4) sgn S''(t0)} |S''(t0)|^{-1/2} a(t0).
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if second_deriv is None:
        step = 1e-3 * max(1.0, abs(t0))
        second_deriv = (
            -S(t0 + 2 * step)
            + 16 * S(t0 + step)
            - 30 * S(t0)
            + 16 * S(t0 - step)
            - S(t0 - 2 * step)
        ) / (12.0 * step * step)
    if abs(second_deriv) < 1e-6:
        raise ValueError(f"degenerate Hessian S''(t0)={second_deriv:.3e}")
    sgn = 1.0 if second_deriv > 0 else -1.0
    return (
        cmath.exp(1j * S(t0) / h)
        * cmath.exp(1j * 0.25 * math.pi * sgn)
        * a(t0)
        / math.sqrt(abs(second_deriv))
    )

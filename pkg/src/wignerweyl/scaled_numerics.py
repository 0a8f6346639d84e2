"""Overflow-safe arithmetic and the special functions used everywhere else.

The oscillator Wigner formula is the product of an exponentially small factor
``exp(-x/2)`` and an exponentially large Laguerre polynomial ``L_N(x)``.  For
semiclassical parameters below ~1e-3 the two factors separately leave the
range of IEEE doubles while their product stays moderate, so the weighted
recurrence here is carried in a mantissa/exponent representation
(:class:`ScaledReal`, and a vectorised twin :func:`weighted_laguerre_scan`).

The Airy evaluator is branch-based: a Maclaurin series for moderate argument
and the standard exponential/oscillatory expansions for large argument, with
an overlap band on which the branches are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Tuple

import mpmath
import numpy as np

__all__ = [
    "ScaledReal",
    "LaguerreParams",
    "weighted_laguerre",
    "weighted_laguerre_scan",
    "airy_ai",
    "airy_tail",
    "log_binomial",
    "AIRY_SWITCH",
    "AIRY_OVERLAP_BAND",
]

_LN2 = math.log(2.0)

# Exponent magnitudes beyond this indicate a runaway recurrence, not a
# legitimate value; at desk scale |e| stays below a few thousand.
_EXPONENT_LIMIT = 1 << 31


class ScaledReal:
    """A real number ``sign * m * 2**e`` with ``m in [1, 2)`` and integer ``e``.

    The exponent is a Python integer, so products and sums of wildly scaled
    quantities never overflow; only the final collapse to ``float`` can
    underflow (to a signed zero) or overflow (raises).
    """

    __slots__ = ("m", "e")

    def __init__(self, mantissa: float, exponent: int):
        self.m = mantissa
        self.e = exponent

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "ScaledReal":
        return cls(0.0, 0)

    @classmethod
    def from_float(cls, x: float) -> "ScaledReal":
        if x == 0.0:
            return cls.zero()
        if not math.isfinite(x):
            raise ValueError(f"cannot represent non-finite value {x!r}")
        m, e = math.frexp(x)  # m in [0.5, 1)
        return cls(2.0 * m, e - 1)

    @classmethod
    def exp2(cls, y: float) -> "ScaledReal":
        """Return 2**y without intermediate overflow/underflow."""
        e = math.floor(y)
        return cls(2.0 ** (y - e), int(e))

    @classmethod
    def exp(cls, y: float) -> "ScaledReal":
        """Return e**y for arbitrary real y."""
        return cls.exp2(y / _LN2)

    # -- helpers -------------------------------------------------------------

    def _normalized(self) -> "ScaledReal":
        if self.m == 0.0:
            return ScaledReal.zero()
        m, e = math.frexp(self.m)
        out = ScaledReal(2.0 * m, self.e + e - 1)
        if abs(out.e) > _EXPONENT_LIMIT:
            raise OverflowError(f"ScaledReal exponent overflow: e={out.e}")
        return out

    @property
    def is_zero(self) -> bool:
        return self.m == 0.0

    def sign(self) -> int:
        return 0 if self.m == 0.0 else (1 if self.m > 0 else -1)

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other) -> "ScaledReal":
        if isinstance(other, ScaledReal):
            if self.m == 0.0 or other.m == 0.0:
                return ScaledReal.zero()
            return ScaledReal(self.m * other.m, self.e + other.e)._normalized()
        return self * ScaledReal.from_float(float(other))

    __rmul__ = __mul__

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.m, self.e)

    def __add__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(float(other))
        if self.m == 0.0:
            return other._normalized()
        if other.m == 0.0:
            return self._normalized()
        hi, lo = (self, other) if self.e >= other.e else (other, self)
        shift = hi.e - lo.e
        if shift > 60:  # lo is below 1 ulp of hi
            return hi._normalized()
        return ScaledReal(hi.m + math.ldexp(lo.m, -shift), hi.e)._normalized()

    def __sub__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(float(other))
        return self + (-other)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.m), self.e)

    # -- conversions ---------------------------------------------------------

    def to_float(self) -> float:
        """Collapse to an ordinary double; deep underflow returns signed 0."""
        if self.m == 0.0:
            return 0.0
        if self.e > 1100:
            raise OverflowError(f"ScaledReal too large for float: 2**{self.e}")
        return math.ldexp(self.m, self.e)

    def log2_abs(self) -> float:
        if self.m == 0.0:
            raise ValueError("log2 of zero")
        return math.log2(abs(self.m)) + self.e

    def __repr__(self) -> str:
        return f"ScaledReal({self.m!r}, {self.e})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledReal):
            return NotImplemented
        a, b = self._normalized(), other._normalized()
        return a.m == b.m and a.e == b.e


# ---------------------------------------------------------------------------
# Weighted Laguerre recurrence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaguerreParams:
    """Degree, type and argument of a weighted Laguerre value
    ``exp(-x/2) * L_N^{(alpha)}(x)``."""

    degree: int
    alpha: int
    x: float

    def __post_init__(self):
        if self.degree < 0 or self.alpha < 0:
            raise ValueError("degree and alpha must be nonnegative")
        if not (self.x >= 0.0):
            raise ValueError(f"argument must be nonnegative, got {self.x}")


def weighted_laguerre(p: LaguerreParams) -> ScaledReal:
    """Evaluate ``exp(-x/2) * L_N^{(alpha)}(x)`` in scaled arithmetic.

    Forward three-term recurrence with the exponential damping folded into
    the initial conditions, so every intermediate stays within ScaledReal
    range:

        (N+1) l_{N+1} = (2N + alpha + 1 - x) l_N - (N + alpha) l_{N-1},
        l_0 = exp(-x/2),   l_1 = (alpha + 1 - x) exp(-x/2).
    """
    x, alpha, n = p.x, p.alpha, p.degree
    l0 = ScaledReal.exp(-0.5 * x)
    if n == 0:
        return l0
    l1 = l0 * (alpha + 1.0 - x)
    if n == 1:
        return l1
    prev, cur = l0, l1
    for k in range(1, n):
        nxt = (cur * (2.0 * k + alpha + 1.0 - x) - prev * (k + alpha)) * (
            1.0 / (k + 1.0)
        )
        prev, cur = cur, nxt
    return cur


def weighted_laguerre_scan(
    alpha: int, x: np.ndarray, n_max: int
) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield ``(N, exp(-x/2) L_N^{(alpha)}(x))`` for N = 0..n_max, vectorised.

    Same recurrence as :func:`weighted_laguerre`, carried as mantissa arrays
    with a shared per-point binary exponent so the scan over a phase-space
    grid runs at numpy speed.  Yielded values are collapsed to float64;
    entries whose exponent is below the double range collapse to 0.0, which
    is the documented behaviour in the deep forbidden region.
    """
    x = np.asarray(x, dtype=np.float64)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    y = -0.5 * x / _LN2
    e = np.floor(y)
    m_cur = np.exp2(y - e)  # l_0 mantissa, in [1, 2)
    e = e.astype(np.int64)
    m_prev = np.zeros_like(m_cur)

    def collapse(m, e):
        with np.errstate(under="ignore", over="ignore"):
            out = np.ldexp(m, np.clip(e, -1500, 1500))
        return out

    yield 0, collapse(m_cur, e)
    if n_max == 0:
        return
    m_prev, m_cur = m_cur, (alpha + 1.0 - x) * m_cur
    m_prev, m_cur, e = _renorm(m_prev, m_cur, e)
    yield 1, collapse(m_cur, e)
    for k in range(1, n_max):
        a = (2.0 * k + alpha + 1.0 - x) / (k + 1.0)
        b = -(k + alpha) / (k + 1.0)
        m_prev, m_cur = m_cur, a * m_cur + b * m_prev
        m_prev, m_cur, e = _renorm(m_prev, m_cur, e)
        yield k + 1, collapse(m_cur, e)


def _renorm(m_prev, m_cur, e):
    """Rescale the recurrence pair so the larger mantissa is in [1, 2)."""
    s = np.maximum(np.abs(m_cur), np.abs(m_prev))
    _, k = np.frexp(s)  # s = f * 2**k with f in [0.5, 1); k = 0 for s = 0
    k = k.astype(np.int64)
    shift = np.where(s > 0.0, 1 - k, 0).astype(np.int64)
    m_cur = np.ldexp(m_cur, shift)
    m_prev = np.ldexp(m_prev, shift)
    return m_prev, m_cur, e - shift


def log_binomial(n: int, k: int) -> float:
    """Natural log of binomial(n, k) via log-gamma."""
    if k < 0 or n < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


# ---------------------------------------------------------------------------
# Airy function
# ---------------------------------------------------------------------------

#: Branch switch point between the Maclaurin series and the asymptotic
#: expansions.  At 8.5 the optimally truncated asymptotic series is good to
#: ~1e-13 relative; below it the series branch (extended precision in the
#: cancellation band) carries full double accuracy.
AIRY_SWITCH = 8.5

#: Band on which both branches are evaluated and compared by the test suite.
AIRY_OVERLAP_BAND = (8.0, 9.5)

_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)  # Ai(0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)  # Ai'(0)

# Maclaurin series in float80 loses ~e^{2 zeta} (e^{zeta} for z < 0) digits to
# cancellation; these edges keep that loss below ~1e-13.
_SERIES_FAST_POS = 4.0
_SERIES_FAST_NEG = -7.0
_MP_DPS = 40

# u_k coefficients of the asymptotic expansions (DLMF 9.7.1/9.7.2).
_N_UK = 24
_UK = [1.0]
for _k in range(1, _N_UK):
    _UK.append(_UK[-1] * (6 * _k - 5) * (6 * _k - 3) * (6 * _k - 1) / (216.0 * _k * (2 * _k - 1)))
_VK = [1.0] + [(6 * _k + 1) / (1.0 - 6 * _k) * _UK[_k] for _k in range(1, _N_UK)]


def _airy_series_ld(z: float) -> float:
    """Maclaurin series for Ai in 80-bit extended precision."""
    zl = np.longdouble(z)
    z3 = zl * zl * zl
    f_term = np.longdouble(1.0)
    g_term = zl
    f_sum = f_term
    g_sum = g_term
    for k in range(1, 90):
        f_term = f_term * z3 / np.longdouble((3 * k) * (3 * k - 1))
        g_term = g_term * z3 / np.longdouble((3 * k + 1) * (3 * k))
        f_sum += f_term
        g_sum += g_term
        if abs(f_term) < 1e-24 * abs(f_sum) and abs(g_term) < 1e-24 * max(
            abs(g_sum), np.longdouble(1e-30)
        ):
            break
    return float(np.longdouble(_AI0) * f_sum + np.longdouble(_AIP0) * g_sum)


def _airy_series_mp(z: float) -> float:
    """Maclaurin series for Ai at working precision high enough to absorb
    the cancellation between the two entire series."""
    with mpmath.workdps(_MP_DPS):
        zm = mpmath.mpf(z)
        z3 = zm**3
        f_term = mpmath.mpf(1)
        g_term = zm
        f_sum = f_term
        g_sum = g_term
        for k in range(1, 200):
            f_term = f_term * z3 / ((3 * k) * (3 * k - 1))
            g_term = g_term * z3 / ((3 * k + 1) * (3 * k))
            f_sum += f_term
            g_sum += g_term
            if abs(f_term) < mpmath.mpf("1e-45") * (abs(f_sum) + 1):
                break
        ai0 = mpmath.mpf(3) ** mpmath.mpf("-2/3") / mpmath.gamma(mpmath.mpf("2/3"))
        aip0 = -(mpmath.mpf(3) ** mpmath.mpf("-1/3")) / mpmath.gamma(mpmath.mpf("1/3"))
        return float(ai0 * f_sum + aip0 * g_sum)


def _airy_series(z: float) -> float:
    if _SERIES_FAST_NEG <= z <= _SERIES_FAST_POS:
        return _airy_series_ld(z)
    return _airy_series_mp(z)


def _asym_sum(zeta: float, coeffs, signs_alternate: bool = True) -> float:
    """Optimally truncated sum of c_k / zeta^k."""
    total = 0.0
    term = 1.0
    prev = math.inf
    for k, c in enumerate(coeffs):
        t = c * term
        if abs(t) > prev:
            break
        total += -t if (signs_alternate and k % 2 == 1) else t
        prev = abs(t)
        term /= zeta
    return total


def _airy_pos_asym(z: float) -> float:
    zeta = (2.0 / 3.0) * z * math.sqrt(z)
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * z**0.25)
    return pref * _asym_sum(zeta, _UK)


def _airy_prime_pos_asym(z: float) -> float:
    zeta = (2.0 / 3.0) * z * math.sqrt(z)
    pref = -(z**0.25) * math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    return pref * _asym_sum(zeta, _VK)


def _airy_neg_asym(z: float) -> float:
    """DLMF 9.7.9 for Ai(-x), x = -z > 0."""
    x = -z
    zeta = (2.0 / 3.0) * x * math.sqrt(x)
    c = math.cos(zeta - 0.25 * math.pi)
    s = math.sin(zeta - 0.25 * math.pi)
    even = _asym_sum(zeta * zeta, [_UK[2 * k] for k in range(_N_UK // 2)])
    odd = _asym_sum(zeta * zeta, [_UK[2 * k + 1] for k in range(_N_UK // 2)])
    return (c * even + s * odd / zeta) / (math.sqrt(math.pi) * x**0.25)


def airy_ai(z: float, branch: str = "auto") -> float:
    """The Airy function Ai on the real line.

    Relative accuracy is ~1e-13 wherever |Ai| is representable; the series
    and asymptotic branches agree to better than 1e-11 on the overlap band
    around the switch point (enforced by the unit suite).

    ``branch`` forces "series" or "asymptotic" evaluation for cross-checks.
    """
    z = float(z)
    if not math.isfinite(z):
        raise ValueError("airy_ai requires finite argument")
    if branch == "series":
        return _airy_series(z)
    if branch == "asymptotic":
        return _airy_pos_asym(z) if z > 0 else _airy_neg_asym(z)
    if abs(z) <= AIRY_SWITCH:
        return _airy_series(z)
    return _airy_pos_asym(z) if z > 0 else _airy_neg_asym(z)


@lru_cache(maxsize=1 << 18)
def _airy_cached(z: float) -> float:
    return airy_ai(z)


# Tail integral: quadrature up to the cut, closed form beyond.  The closed
# form comes from integrating Ai'' = z Ai by parts twice; its remainder is
# 40 * tail / X^6 < 1e-14 at the cut.
_TAIL_CUT = 9.0
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _airy_tail_closed(x: float) -> float:
    ai = _airy_pos_asym(x)
    aip = _airy_prime_pos_asym(x)
    return -aip / x - ai / x**2 - 2.0 * aip / x**4 - 8.0 * ai / x**5


def _panel_integral(a: float, b: float, cached: bool) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fn = _airy_cached if cached else airy_ai
    acc = 0.0
    for node, w in zip(_GL_NODES, _GL_WEIGHTS):
        acc += w * fn(mid + half * node)
    return acc * half


def airy_tail(x: float) -> float:
    """The integral of Ai from x to +infinity, absolute error below ~1e-10.

    Gauss-Legendre panels on [x, 9] (aligned to a fixed half-unit lattice so
    node values are shared between calls) plus the closed asymptotic tail
    beyond the cut.  Panels shrink where the oscillation of Ai on the
    negative axis tightens.
    """
    x = float(x)
    if x >= _TAIL_CUT:
        return _airy_tail_closed(x)
    total = _airy_tail_closed(_TAIL_CUT)
    # Panel width 1/2 resolves the oscillation comfortably down to z ~ -60;
    # below that, split each lattice cell by the local frequency sqrt(|z|).
    left = x
    k_start = math.floor(2.0 * left)
    edges = [left]
    first_edge = (k_start + 1) * 0.5
    if first_edge < _TAIL_CUT:
        edges.append(first_edge)
        k = k_start + 1
        while (k + 1) * 0.5 < _TAIL_CUT:
            edges.append((k + 1) * 0.5)
            k += 1
    edges.append(_TAIL_CUT)
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        nsub = 1
        zmag = max(abs(a), abs(b))
        if zmag > 60.0:
            nsub = int(math.ceil(math.sqrt(zmag) / math.sqrt(60.0)))
        aligned = a in (first_edge,) or (a * 2.0) == math.floor(a * 2.0)
        for j in range(nsub):
            aa = a + (b - a) * j / nsub
            bb = a + (b - a) * (j + 1) / nsub
            total += _panel_integral(aa, bb, cached=aligned and nsub == 1)
    return total

"""Closed-form asymptotics for partition counts and their error machinery.

Everything here is floating point.  Quantities that overflow doubles (the
partition function grows like e^{pi sqrt(2n/3)}) are handled in log space;
the plain-value entry points raise OverflowError where the math module does.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class AsymptoticConstants:
    """Constants of the sqrt(n) scaling of a random diagram."""

    c: float = math.pi / math.sqrt(6.0)
    b: float = 2.0 * math.pi / math.sqrt(6.0)
    alpha: float = 2.0 / math.pi**2


CONSTANTS = AsymptoticConstants()
C = CONSTANTS.c

# Error-band multiplier used by the accuracy checks pairing exact counts with
# the closed forms below.  The analytic error terms come with unspecified
# constants; 5 is an empirical calibration with comfortable slack at the
# smallest n we test (n=100), and the checks also assert decay in n, so a
# larger constant would not mask a regression.
BAND_CONSTANT = 5.0

# Default wedge half-aperture for the Euler-product expansion: |Im u| may be
# at most this fraction of Re u.
FREIMAN_WEDGE_RATIO = 0.1


def log_of_count(x: int) -> float:
    """Natural log of a positive big integer, safe beyond float range."""
    if x <= 0:
        raise ValueError("x must be positive")
    shift = x.bit_length() - 53
    if shift <= 0:
        return math.log(x)
    return math.log(x >> shift) + shift * math.log(2.0)


def slant_bounds(n: int, h: float, w: float, rounding: str = "floor") -> tuple[int, int]:
    """Map tail levels (h, w) to integer part/count bounds (r, s).

    r is the rounding of (sqrt(n)/c) * log((sqrt(n)/c) / h), and s the same
    with w.  The floor form belongs to the restricted-count asymptotic, the
    ceiling form to exact tail probabilities.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if h <= 0 or w <= 0:
        raise ValueError("h and w must be positive")
    scale = math.sqrt(n) / C
    op = {"floor": math.floor, "ceil": math.ceil}[rounding]
    r = op(scale * math.log(scale / h))
    s = op(scale * math.log(scale / w))
    return int(r), int(s)


def hardy_ramanujan_log(n: int) -> float:
    """log of the leading-order partition count e^{pi sqrt(2n/3)} / (4 sqrt(3) n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.pi * math.sqrt(2.0 * n / 3.0) - math.log(4.0 * math.sqrt(3.0) * n)


def hardy_ramanujan(n: int) -> float:
    """Leading-order approximation to p(n); overflows doubles past n ~ 7.6e4."""
    return math.exp(hardy_ramanujan_log(n))


def restricted_asymptotic_log(n: int, h: float, w: float) -> float:
    """log of the leading term for doubly-restricted counts at slant levels (h, w).

    Valid when h and w grow slower than n^{1/4}; enforced loosely as
    h, w <= n^{0.24}.  Callers pair the value with the exact count at
    (r, s) = slant_bounds(n, h, w, "floor").
    """
    if h <= 0 or w <= 0:
        raise ValueError("h and w must be positive")
    cap = n ** 0.24
    if h > cap or w > cap:
        raise ValueError(f"h, w must be <= n^0.24 = {cap:.3g}")
    return hardy_ramanujan_log(n) - h - w


def restricted_asymptotic(n: int, h: float, w: float) -> float:
    return math.exp(restricted_asymptotic_log(n, h, w))


def _euler_terms_needed(re_u: float, tail: float = 1e-14) -> int:
    # geometric tail e^{-(T+1)x} / (1 - e^{-x}) < tail
    x = re_u
    t = math.log((1.0 - math.exp(-x)) * tail) / (-x) - 1.0
    return max(int(math.ceil(t)), 1)


def freiman_lhs(u: complex, terms: int | None = None,
                wedge_ratio: float = FREIMAN_WEDGE_RATIO) -> complex:
    """log of the Euler product at q = e^{-u}, truncated to machine accuracy.

    u must lie in the wedge Re u > 0, |Im u| <= wedge_ratio * Re u.  With
    terms=None the truncation point is chosen so the dropped tail is below
    1e-14; an explicit terms value that leaves a larger tail raises.
    """
    u = complex(u)
    if u.real <= 0:
        raise ValueError("Re u must be positive")
    if abs(u.imag) > wedge_ratio * u.real:
        raise ValueError("u outside the wedge |Im u| <= ratio * Re u")
    needed = _euler_terms_needed(u.real)
    if terms is None:
        terms = needed
    elif terms < needed:
        raise ValueError(f"insufficient terms: need {needed} for a 1e-14 tail")
    total = 0.0 + 0.0j
    for k in range(1, terms + 1):
        total -= cmath.log(1.0 - cmath.exp(-k * u))
    return total


def freiman_main_term(u: complex) -> complex:
    """pi^2/(6u) + (1/2) Log(u / 2 pi), the closed-form core of the expansion."""
    u = complex(u)
    return math.pi**2 / (6.0 * u) + 0.5 * cmath.log(u / (2.0 * math.pi))


def freiman_remainder(u: complex, terms: int | None = None) -> complex:
    """Difference between the truncated log-product and its closed-form core."""
    return freiman_lhs(u, terms) - freiman_main_term(u)


def lemma1_bound_check(r: float, theta: float) -> tuple[float, float]:
    """Log-magnitude of the Euler product on |q| = r against its decay bound.

    Returns (lhs, rhs) with lhs = log|product at re^{i theta}| and
    rhs = log(product at r) - alpha r theta^2 / ((1-r)((1-r)^2 + 2 r alpha theta^2)).
    The inequality lhs <= rhs is what callers assert.  Values are logs because
    the product itself overflows doubles as r -> 1.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    terms = max(int(math.ceil(math.log(1e-16 * (1.0 - r)) / math.log(r))), 1)
    log_p_r = 0.0
    log_abs_pq = 0.0
    for k in range(1, terms + 1):
        rk = r**k
        log_p_r -= math.log1p(-rk)
        log_abs_pq -= math.log(abs(1.0 - rk * cmath.exp(1j * k * theta)))
    alpha = CONSTANTS.alpha
    decay = alpha * r * theta**2 / ((1.0 - r) * ((1.0 - r) ** 2 + 2.0 * r * alpha * theta**2))
    return log_abs_pq, log_p_r - decay


def headline_bound(n: int, constant: float = 0.11) -> float:
    """exp(-constant * log n / log log n), the slow-decay probability bound."""
    if n < 16:
        raise ValueError("n must be at least 16 so that log log n exceeds 1")
    return math.exp(-constant * math.log(n) / math.log(math.log(n)))


def rousseau_ali_lower(k: int) -> float:
    """Central binomial lower bound 2^{-2k} C(2k, k), asymptotic to (pi k)^{-1/2}."""
    if k < 1:
        raise ValueError("k must be positive")
    log_value = math.lgamma(2 * k + 1) - 2.0 * math.lgamma(k + 1) - 2 * k * math.log(2.0)
    return math.exp(log_value)

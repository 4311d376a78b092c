"""Normality testing: Shapiro-Wilk, Anderson-Darling, and QQ-plot data.

Both tests follow the standard published approximations so results are
reproducible against mainstream statistics software:

* Shapiro-Wilk per Royston's AS R94 algorithm (valid for 3 <= n <= 5000),
  with normal scores from a high-accuracy rational quantile approximation.
* Anderson-Darling for the both-parameters-estimated normal case, with the
  d'Agostino-Stephens small-sample adjustment
  A*^2 = A^2 (1 + 0.75/n + 2.25/n^2) and the matching piecewise
  exponential p-value curve.

The quantile function is Acklam's rational approximation polished by one
Halley step against the erfc-based CDF, giving ~1e-15 absolute error --
fixed coefficients, bit-stable across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


class DegenerateSampleError(ValueError):
    """Sample has zero spread, so the statistic is undefined."""


@dataclass(frozen=True)
class SampleVector:
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.values) < 3:
            raise ValueError("need at least 3 observations")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("all values must be finite")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TestResult:
    test: str
    statistic: float
    p_value: float
    n: int
    small_sample_warning: bool = False

    def verdict(self, alpha: float = 0.05) -> str:
        if self.p_value < alpha:
            return f"reject at alpha = {alpha:g}"
        return f"fail to reject at alpha = {alpha:g}"

    def to_dict(self) -> dict:
        out = {
            "test": self.test,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "n": self.n,
            "verdict": self.verdict(),
        }
        if self.small_sample_warning:
            out["small_sample_warning"] = True
        return out


def _values(sample: SampleVector | Sequence[float]) -> list[float]:
    if isinstance(sample, SampleVector):
        return list(sample.values)
    vals = [float(v) for v in sample]
    if len(vals) < 3:
        raise ValueError("need at least 3 observations")
    if not all(math.isfinite(v) for v in vals):
        raise ValueError("all values must be finite")
    return vals


# Acklam's coefficients for the inverse normal CDF.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF (Acklam + one Halley refinement)."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
             / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        s = q * q
        x = ((((((_A[0] * s + _A[1]) * s + _A[2]) * s + _A[3]) * s + _A[4]) * s + _A[5]) * q
             / (((((_B[0] * s + _B[1]) * s + _B[2]) * s + _B[3]) * s + _B[4]) * s + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
              / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    err = normal_cdf(x) - p
    u = err * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)


def normalize_point(x_bar: float, mu: float, n_trials: int, s: float) -> float:
    """Standardized deviation (x_bar - mu) sqrt(n) / s of an experimental mean."""
    if n_trials < 2:
        raise ValueError("need at least 2 trials")
    if s <= 0.0:
        raise DegenerateSampleError("standard deviation must be positive")
    return (x_bar - mu) * math.sqrt(n_trials) / s


def shapiro_wilk(sample: SampleVector | Sequence[float]) -> TestResult:
    """Shapiro-Wilk W and p-value (Royston's AS R94, 3 <= n <= 5000)."""
    x = sorted(_values(sample))
    n = len(x)
    if not 3 <= n <= 5000:
        raise ValueError("Shapiro-Wilk supported for 3 <= n <= 5000")
    if x[0] == x[-1]:
        raise DegenerateSampleError("constant sample")

    m = [normal_quantile((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)]
    ssq = sum(v * v for v in m)
    a = [0.0] * n
    u = 1.0 / math.sqrt(n)
    if n == 3:
        a[0] = -math.sqrt(0.5)
        a[2] = math.sqrt(0.5)
    else:
        an = (-2.706056 * u**5 + 4.434685 * u**4 - 2.071190 * u**3
              - 0.147981 * u**2 + 0.221157 * u + m[-1] / math.sqrt(ssq))
        if n > 5:
            an1 = (-3.582633 * u**5 + 5.682633 * u**4 - 1.752461 * u**3
                   - 0.293762 * u**2 + 0.042981 * u + m[-2] / math.sqrt(ssq))
            phi = (ssq - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2) / (1.0 - 2.0 * an**2 - 2.0 * an1**2)
            a[-1], a[-2], a[0], a[1] = an, an1, -an, -an1
            root = math.sqrt(phi)
            for i in range(2, n - 2):
                a[i] = m[i] / root
        else:
            phi = (ssq - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * an**2)
            a[-1], a[0] = an, -an
            root = math.sqrt(phi)
            for i in range(1, n - 1):
                a[i] = m[i] / root

    xbar = math.fsum(x) / n
    sse = math.fsum((v - xbar) ** 2 for v in x)
    w_num = math.fsum(ai * xi for ai, xi in zip(a, x))
    W = min(w_num * w_num / sse, 1.0)  # exact W <= 1; clip float spill
    return TestResult("shapiro_wilk", W, sw_pvalue(W, n), n)


def sw_pvalue(W: float, n: int) -> float:
    """Royston's p-value transform for the W statistic."""
    if W >= 1.0:
        return 1.0
    if n == 3:
        p = 6.0 / math.pi * (math.asin(math.sqrt(W)) - math.asin(math.sqrt(0.75)))
        return min(max(p, 0.0), 1.0)
    if n <= 11:
        gamma = -2.273 + 0.459 * n
        wt = -math.log(gamma - math.log(1.0 - W))
        mu = 0.5440 - 0.39978 * n + 0.025054 * n**2 - 0.0006714 * n**3
        sigma = math.exp(1.3822 - 0.77857 * n + 0.062767 * n**2 - 0.0020322 * n**3)
    else:
        y = math.log(n)
        wt = math.log(1.0 - W)
        mu = -1.5861 - 0.31082 * y - 0.083751 * y**2 + 0.0038915 * y**3
        sigma = math.exp(-0.4803 - 0.082676 * y + 0.0030302 * y**2)
    z = (wt - mu) / sigma
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def anderson_darling(sample: SampleVector | Sequence[float]) -> TestResult:
    """Anderson-Darling A^2 and p-value, mean and variance from the sample."""
    x = sorted(_values(sample))
    n = len(x)
    if x[0] == x[-1]:
        raise DegenerateSampleError("constant sample")
    xbar = math.fsum(x) / n
    s = math.sqrt(math.fsum((v - xbar) ** 2 for v in x) / (n - 1))
    y = [(v - xbar) / s for v in x]

    total = 0.0
    for i in range(1, n + 1):
        lo = min(max(normal_cdf(y[i - 1]), 1e-300), 1.0 - 1e-16)
        hi = min(max(normal_cdf(y[n - i]), 1e-300), 1.0 - 1e-16)
        total += (2 * i - 1) * (math.log(lo) + math.log1p(-hi))
    a2 = -n - total / n
    a2s = a2 * (1.0 + 0.75 / n + 2.25 / n**2)
    return TestResult("anderson_darling", a2, ad_pvalue(a2s), n, small_sample_warning=n < 8)


def ad_pvalue(a2_star: float) -> float:
    """Piecewise-exponential p-value for the adjusted A*^2 statistic."""
    if a2_star >= 0.6:
        p = math.exp(1.2937 - 5.709 * a2_star + 0.0186 * a2_star**2)
    elif a2_star > 0.34:
        p = math.exp(0.9177 - 4.279 * a2_star - 1.38 * a2_star**2)
    elif a2_star > 0.2:
        p = 1.0 - math.exp(-8.318 + 42.796 * a2_star - 59.938 * a2_star**2)
    else:
        p = 1.0 - math.exp(-13.436 + 101.14 * a2_star - 223.73 * a2_star**2)
    return min(max(p, 0.0), 1.0)


def qq_points(sample: SampleVector | Sequence[float]) -> list[tuple[float, float]]:
    """(theoretical normal quantile, observed value) pairs for a QQ plot.

    Plotting positions are (i - 3/8) / (n + 1/4).
    """
    x = sorted(_values(sample))
    n = len(x)
    return [(normal_quantile((i - 0.375) / (n + 0.25)), x[i - 1]) for i in range(1, n + 1)]

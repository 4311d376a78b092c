"""Closed-form statistics of random binary functional graphs.

All quantities are expressed through Gamma functions at integer and
half-integer arguments.  The exact path clears every sqrt(pi) with
Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!), which turns each formula into
a ratio of big integers; the float path reduces everything to the single
ratio Gamma(k+1)/Gamma(k+1/2), evaluated exactly below a cutoff and by an
asymptotic series above it, so exact and float agree to ~1e-15 relative
wherever both exist.

Sizes n are even: a binary functional graph needs equal numbers of
in-degree-0 and in-degree-2 nodes, so odd sizes admit no graphs at all.
Odd n raises instead of returning 0 to surface caller bugs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Below the cutoff Gamma(k+1)/Gamma(k+1/2) comes from exact big-int
# arithmetic; above it a 6-term asymptotic series is already below one ulp
# (relative error ~3e-24 at k = 2048).
_RATIO_CUTOFF = 2048

# Exact rationals are attached automatically up to this size; callers can
# force them beyond it.  Above ~1e5 the Fraction normalizations (gcd on
# hundred-thousand-digit integers) start costing whole seconds.
_EXACT_LIMIT = 10_000


@dataclass(frozen=True)
class TheoryValue:
    """A closed-form statistic: exact rational (when available) plus float."""

    kind: str
    n: int
    approx: float
    exact: Fraction | None = None
    r: int | None = None

    def __float__(self) -> float:
        return self.approx


def _require_even(n: int) -> int:
    if n < 2 or n % 2 != 0:
        raise ValueError(f"binary functional graphs exist only for even n >= 2, got {n}")
    return n // 2


def _gamma_ratio_float(k: int) -> float:
    """Gamma(k+1)/Gamma(k+1/2) as a float, good to ~1e-15 relative."""
    if k <= _RATIO_CUTOFF:
        # 4^k (k!)^2 / ((2k)! sqrt(pi))
        return float(Fraction(4**k, math.comb(2 * k, k))) / math.sqrt(math.pi)
    z = float(k)
    series = (
        1.0
        + 1.0 / (8.0 * z)
        + 1.0 / (128.0 * z * z)
        - 5.0 / (1024.0 * z**3)
        - 21.0 / (32768.0 * z**4)
        + 399.0 / (262144.0 * z**5)
    )
    return math.sqrt(z) * series


def _want_exact(n: int, exact: bool | None) -> bool:
    if exact is None:
        return n <= _EXACT_LIMIT
    return exact


def rho_total_coefficient(k: int) -> Fraction:
    """Taylor coefficient [z^(2k)] of the total-rho generating function.

    Closed form of the order-3 recurrence the series satisfies:
    2^k (1 + 2k) minus a central-binomial term
    (2k+2)! / (2^(k+1) (k+1)! k!) = (k+1) C(2k+2, k+1) / 2^(k+1).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    binom_term = Fraction((k + 1) * math.comb(2 * k + 2, k + 1), 2 ** (k + 1))
    return Fraction(2**k * (1 + 2 * k)) - binom_term


def rho_square_total_coefficient(k: int) -> Fraction:
    """Taylor coefficient [z^(2k)] of the total-rho-squared generating function."""
    if k < 0:
        raise ValueError("k must be >= 0")
    binom_term = Fraction((4 * k + 5) * (k + 1) * math.comb(2 * k + 2, k + 1), 2 ** (k + 1))
    return Fraction(-(2**k) * (5 + 6 * k)) + binom_term


def scaled_graph_count(n: int, exact: bool | None = None) -> TheoryValue:
    """Number of binary functional graphs of size n, divided by n!.

    Exactly C(2k, k) / 2^k at n = 2k; n! times this is always an integer.
    """
    k = _require_even(n)
    ex = Fraction(math.comb(2 * k, k), 2**k)
    # float via the same ratio machinery: g(n) = sqrt(pi)^-1 * 2^k / ratio ... see below
    # g(2k) = C(2k,k)/2^k = 4^k / (2^k * ratio * sqrt(pi))  with ratio = G(k+1)/G(k+1/2)
    approx = (
        float(ex)
        if k <= _RATIO_CUTOFF
        else math.exp(
            k * math.log(2.0) - 0.5 * math.log(math.pi) - math.log(_gamma_ratio_float(k))
        )
    )
    return TheoryValue("g", n, approx, ex if _want_exact(n, exact) else None)


def binary_graph_count(n: int) -> int:
    """n! times scaled_graph_count(n): the number of binary graphs of size n."""
    k = _require_even(n)
    num = math.factorial(n) * math.comb(2 * k, k)
    den = 2**k
    assert num % den == 0
    return num // den


def scaled_graph_count_asymptotic(n: int) -> TheoryValue:
    """The asymptotic companion 2^(n/2) sqrt(2) / sqrt(pi n) (float only)."""
    _require_even(n)
    approx = 2.0 ** (n / 2) * math.sqrt(2.0) / math.sqrt(math.pi * n)
    return TheoryValue("g_star", n, approx)


def graph_count_ratio(n: int) -> float:
    """scaled_graph_count(n) / scaled_graph_count_asymptotic(n), overflow-safe."""
    k = _require_even(n)
    # log g = k ln2 + lgamma(k+1/2) - ln sqrt(pi) - lgamma(k+1)
    # log g* = k ln2 + 0.5 ln 2 - 0.5 ln(2 pi k)
    log_ratio = (
        -math.log(_gamma_ratio_float(k)) - 0.5 * math.log(math.pi)
        - 0.5 * math.log(2.0) + 0.5 * math.log(2 * math.pi * k)
    )
    return math.exp(log_ratio)


def expected_rho(n: int, exact: bool | None = None) -> TheoryValue:
    """Expected rho length seen from a random node of a random binary graph."""
    k = _require_even(n)
    ratio = _gamma_ratio_float(k)
    approx = (2 * k + 1) * (math.sqrt(math.pi) * ratio - 1.0) / (2.0 * k)
    ex = None
    if _want_exact(n, exact):
        ex = rho_total_coefficient(k) / (n * Fraction(math.comb(2 * k, k), 2**k))
    return TheoryValue("mean_rho", n, approx, ex)


def expected_cycle(n: int, exact: bool | None = None) -> TheoryValue:
    """Expected cycle length seen from a random node."""
    k = _require_even(n)
    approx = math.sqrt(math.pi) * _gamma_ratio_float(k) / 2.0
    ex = Fraction(4**k, 2 * math.comb(2 * k, k)) if _want_exact(n, exact) else None
    return TheoryValue("mean_cycle", n, approx, ex)


def expected_tail(n: int, exact: bool | None = None) -> TheoryValue:
    """Expected tail length seen from a random node."""
    k = _require_even(n)
    ratio = _gamma_ratio_float(k)
    approx = (math.sqrt(math.pi) * (k + 1) * ratio - (2 * k + 1)) / (2.0 * k)
    ex = None
    if _want_exact(n, exact):
        # sqrt(pi) Gamma(k+2) / Gamma(k+1/2) = 4^k (k+1) / C(2k, k)
        ex = (Fraction(4**k * (k + 1), math.comb(2 * k, k)) - (2 * k + 1)) / (2 * k)
    return TheoryValue("mean_tail", n, approx, ex)


def rho_second_moment(n: int, exact: bool | None = None) -> TheoryValue:
    """E[rho^2] over random nodes of random binary graphs."""
    k = _require_even(n)
    ratio = _gamma_ratio_float(k)
    approx = (-(5 + 6 * k) * math.sqrt(math.pi) * ratio + 8.0 * (k + 0.5) * (k + 1.25)) / (2.0 * k)
    ex = None
    if _want_exact(n, exact):
        ex = rho_square_total_coefficient(k) / (n * Fraction(math.comb(2 * k, k), 2**k))
    return TheoryValue("rho_sq", n, approx, ex)


def rho_variance(n: int, exact: bool | None = None) -> TheoryValue:
    """Variance of the rho length: E[rho^2] - E[rho]^2."""
    m2 = rho_second_moment(n, exact)
    m1 = expected_rho(n, exact)
    approx = m2.approx - m1.approx**2
    ex = None
    if m2.exact is not None and m1.exact is not None:
        ex = m2.exact - m1.exact**2
    return TheoryValue("var_rho", n, approx, ex)


_ASYM_KINDS = ("cycle", "tail", "rho")


def asymptotic_level_mean(kind: str, n: int, r: int) -> TheoryValue:
    """Asymptotic expected count of nodes seeing length exactly r.

    cycle: sqrt(pi n / 2) - r;  tail: sqrt(pi n / 2) - r + 1;  rho: r
    (exact and independent of n).
    """
    if kind not in _ASYM_KINDS:
        raise ValueError(f"kind must be one of {_ASYM_KINDS}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if kind == "rho":
        return TheoryValue("asym_rho", n, float(r), Fraction(r), r)
    base = math.sqrt(math.pi * n / 2.0)
    if kind == "cycle":
        return TheoryValue("asym_cycle", n, base - r, None, r)
    return TheoryValue("asym_tail", n, base - r + 1, None, r)


def rho_variance_displayed_form(n: int) -> Fraction:
    """The two-fraction Gamma expression for the rho variance, evaluated exactly.

    Independent of rho_variance(): every Gamma product reduces to a rational
    multiple of pi, which cancels between numerators and denominators.  Used
    as a cross-check that the display and the recurrence route agree.
    """
    k = _require_even(n)
    # building blocks, all divided by pi:
    # A = Gamma(k)^2 * pi / pi = Gamma(k)^2           (enters as pi*Gamma(k)^2)
    # B = sqrt(pi)*Gamma(k)*Gamma(k+1/2) / pi
    # C = Gamma(k+1/2)^2 / pi
    gk = Fraction(math.factorial(k - 1))
    ghalf = Fraction(math.factorial(2 * k), 4**k * math.factorial(k))  # Gamma(k+1/2)/sqrt(pi)
    A = gk * gk
    B = gk * ghalf
    C = ghalf * ghalf
    nn = Fraction(n)
    first_num = nn**4 * A + 2 * nn**3 * A + 2 * nn**3 * B + nn**2 * A + 2 * nn**2 * B
    first = -first_num / (4 * nn**2 * C)
    second_num = -2 * nn**3 * C - nn * B - 6 * nn**2 * C - 3 * nn * C + C
    second = -second_num / (nn**2 * C)
    return first + second


_KIND_FUNCS = {
    "mean_rho": expected_rho,
    "mean_cycle": expected_cycle,
    "mean_tail": expected_tail,
    "var_rho": rho_variance,
    "g": scaled_graph_count,
    "g_star": lambda n, exact=None: scaled_graph_count_asymptotic(n),
}


def theory_table(n: int, rs: tuple[int, ...] = (1, 2, 3)) -> list[TheoryValue]:
    """All closed-form statistics for one size n (plus asymptotics at each r)."""
    rows = [fn(n) for fn in _KIND_FUNCS.values()]
    for r in rs:
        for kind in _ASYM_KINDS:
            rows.append(asymptotic_level_mean(kind, n, r))
    return rows

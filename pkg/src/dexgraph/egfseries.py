"""Exact-rational truncated power series and the graph generating functions.

Series are plain coefficient tuples a_0..a_N over Fraction, representing
sum a_i z^i.  On top of the ring operations this module builds the three
base series for binary functional graphs,

    tree:      b(z) = (1 - sqrt(1 - 2 z^2)) / z      (binary trees)
    component: c(z) = -(1/2) log(1 - 2 z^2)          (components)
    graph:     f(z) = (1 - 2 z^2)^(-1/2) = e^c       (whole graphs)

and the marked series for rho statistics.  Marking a node inserts a
variable u; differentiating at u = 1 extracts totals.  Instead of a
general bivariate engine, u is carried as a degree-2 jet u = 1 + eps with
eps^3 = 0: the eps^1 component of an expression is its u-derivative at 1,
and the eps^2 component is half the second derivative, which covers both
the single marking (total rho) and the mark-differentiate-remark pattern
(total rho squared).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from dexgraph.closedform import rho_square_total_coefficient, rho_total_coefficient


class SeriesDomainError(ArithmeticError):
    """Operation not defined for this series (bad constant term, etc.)."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series sum_{i<=order} coeffs[i] z^i with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> "RationalSeries":
        cs = [_frac(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def identity(cls, order: int) -> "RationalSeries":
        """The series z."""
        return cls.from_coeffs([0, 1], order)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def _check_same_order(self, other: "RationalSeries") -> None:
        if self.order != other.order:
            raise SeriesDomainError("series orders differ")

    def __add__(self, other):
        if isinstance(other, RationalSeries):
            self._check_same_order(other)
            return RationalSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return self + RationalSeries.from_coeffs([other], self.order)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalSeries) else -_frac(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            self._check_same_order(other)
            n = self.order
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j in range(n + 1 - i):
                        b = other.coeffs[j]
                        if b:
                            out[i + j] += a * b
            return RationalSeries(tuple(out))
        c = _frac(other)
        return RationalSeries(tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RationalSeries):
            return self * other.inverse()
        c = _frac(other)
        if c == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self) -> "RationalSeries":
        if self.coeffs[0] == 0:
            raise SeriesDomainError("inverse needs a nonzero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for m in range(1, n + 1):
            s = sum(self.coeffs[k] * out[m - k] for k in range(1, m + 1))
            out[m] = -s / self.coeffs[0]
        return RationalSeries(tuple(out))

    def sqrt(self) -> "RationalSeries":
        if self.coeffs[0] != 1:
            raise SeriesDomainError("sqrt needs constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for m in range(1, n + 1):
            s = sum(out[k] * out[m - k] for k in range(1, m))
            out[m] = (self.coeffs[m] - s) / 2
        return RationalSeries(tuple(out))

    def derivative(self) -> "RationalSeries":
        n = self.order
        out = [self.coeffs[i + 1] * (i + 1) for i in range(n)] + [Fraction(0)]
        return RationalSeries(tuple(out))

    def integral(self) -> "RationalSeries":
        n = self.order
        out = [Fraction(0)] + [self.coeffs[i] / (i + 1) for i in range(n)]
        return RationalSeries(tuple(out))

    def log(self) -> "RationalSeries":
        if self.coeffs[0] != 1:
            raise SeriesDomainError("log needs constant term 1")
        return (self.derivative() * self.inverse()).integral()

    def exp(self) -> "RationalSeries":
        if self.coeffs[0] != 0:
            raise SeriesDomainError("exp needs constant term 0")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        # E' = E * f'  =>  m e_m = sum_{k=1..m} k f_k e_{m-k}
        for m in range(1, n + 1):
            s = sum(k * self.coeffs[k] * out[m - k] for k in range(1, m + 1))
            out[m] = s / m
        return RationalSeries(tuple(out))

    def shift_up(self, k: int = 1) -> "RationalSeries":
        """Multiply by z^k (truncating at the order)."""
        return RationalSeries(tuple([Fraction(0)] * k + list(self.coeffs[: self.order + 1 - k])))

    def shift_down(self, k: int = 1) -> "RationalSeries":
        """Divide by z^k; the low coefficients must vanish.

        The top k coefficients are unknowable after the shift, so the
        result is padded with zeros and those positions must not be
        trusted; callers here only ever use shift_down on series built
        with enough headroom.
        """
        if any(self.coeffs[i] != 0 for i in range(k)):
            raise SeriesDomainError("shift_down needs vanishing low-order coefficients")
        return RationalSeries(tuple(list(self.coeffs[k:]) + [Fraction(0)] * k))


@dataclass(frozen=True)
class UJet:
    """A series-valued quadratic jet in eps where u = 1 + eps and eps^3 = 0.

    d1 is the u-derivative at u = 1; d2 is half the second u-derivative.
    """

    const: RationalSeries
    d1: RationalSeries
    d2: RationalSeries

    @classmethod
    def of(cls, series: RationalSeries) -> "UJet":
        z = RationalSeries.zero(series.order)
        return cls(series, z, z)

    @classmethod
    def marker(cls, order: int) -> "UJet":
        """The marking variable u = 1 + eps."""
        return cls(RationalSeries.one(order), RationalSeries.one(order), RationalSeries.zero(order))

    def __add__(self, other: "UJet") -> "UJet":
        return UJet(self.const + other.const, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: "UJet") -> "UJet":
        return UJet(self.const - other.const, self.d1 - other.d1, self.d2 - other.d2)

    def __mul__(self, other: "UJet") -> "UJet":
        return UJet(
            self.const * other.const,
            self.const * other.d1 + self.d1 * other.const,
            self.const * other.d2 + self.d1 * other.d1 + self.d2 * other.const,
        )

    def inverse(self) -> "UJet":
        b0 = self.const.inverse()
        b0sq = b0 * b0
        b1 = -(self.d1 * b0sq)
        b2 = (self.d1 * self.d1 - self.d2 * self.const) * (b0sq * b0)
        return UJet(b0, b1, b2)

    def first_derivative(self) -> RationalSeries:
        """d/du at u = 1."""
        return self.d1

    def second_derivative(self) -> RationalSeries:
        """d^2/du^2 at u = 1."""
        return self.d2 * 2


def binary_tree_series(order: int) -> RationalSeries:
    """b(z): EGF of binary trees, from the closed radical form."""
    if order < 2:
        raise ValueError("order must be >= 2")
    # work one order higher so the division by z loses nothing
    pad = order + 1
    z2 = RationalSeries.from_coeffs([0, 0, -2], pad) + 1  # 1 - 2 z^2
    numer = RationalSeries.one(pad) - z2.sqrt()
    b = numer.shift_down(1)
    return RationalSeries.from_coeffs(b.coeffs, order)


def component_series(order: int) -> RationalSeries:
    """c(z) = -(1/2) log(1 - 2 z^2): EGF of graph components."""
    if order < 2:
        raise ValueError("order must be >= 2")
    z2 = RationalSeries.from_coeffs([0, 0, -2], order) + 1
    return z2.log() * Fraction(-1, 2)


def graph_series(order: int) -> RationalSeries:
    """f(z) = (1 - 2 z^2)^(-1/2): EGF of binary functional graphs."""
    if order < 2:
        raise ValueError("order must be >= 2")
    z2 = RationalSeries.from_coeffs([0, 0, -2], order) + 1
    return z2.sqrt().inverse()


def check_tree_equation(order: int, b: RationalSeries | None = None) -> bool:
    """True iff b satisfies its defining equation b = z + (1/2) z b^2."""
    if b is None:
        b = binary_tree_series(order)
    rhs = RationalSeries.identity(b.order) + (b * b).shift_up(1) * Fraction(1, 2)
    return b.coeffs == rhs.coeffs


def _marked_rho_jet(order: int) -> UJet:
    """The u-marked generating function for rho lengths as a jet at u = 1.

    Structure: unmarked components, times the marked component expanded as
    unmarked trees around its cycle, the node where the tail meets the
    cycle (marked, weight uz), and the marked tail path ending in an
    unmarked tree -- every node on the marked node's rho path carries u.
    """
    b = binary_tree_series(order)
    w = b.shift_up(1)  # z b(z)
    one = RationalSeries.one(order)
    f = (one - w).inverse()
    u = UJet.marker(order)
    jw = UJet.of(w)
    jb = UJet.of(b)
    jz = UJet.of(RationalSeries.identity(order))
    inv_marked = (UJet.of(one) - u * jw).inverse()
    tailpath = u * jb * inv_marked + jb
    return UJet.of(f) * inv_marked * (u * jz) * tailpath


def total_rho_series(order: int) -> RationalSeries:
    """Generating function for the total rho length over all binary graphs."""
    if order < 2:
        raise ValueError("order must be >= 2")
    return _marked_rho_jet(order).first_derivative()


def total_rho_square_series(order: int) -> RationalSeries:
    """Generating function for the total squared rho length.

    Mark, differentiate in u, multiply by u, differentiate again, set
    u = 1; in jet components that is d1 + 2 d2.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    jet = _marked_rho_jet(order)
    return jet.d1 + jet.d2 * 2


def rho_level_series(order: int, r: int) -> RationalSeries:
    """Generating function counting nodes of rho length exactly r.

    The marker enters linearly, so the u-derivative at 1 collapses to the
    closed form ((r-1) (zb)^(r-1) + (zb)^r) / (1 - zb).  This single
    1/(1-zb) factor is the one that satisfies the conservation laws
    sum_r delta_r = z f' and sum_r r delta_r = total rho (verified in the
    tests against brute-force enumeration), and it reproduces the
    asymptotic count r after normalization.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if r < 1:
        raise ValueError("r must be >= 1")
    b = binary_tree_series(order)
    w = b.shift_up(1)
    one = RationalSeries.one(order)
    return (one - w).inverse() * (w ** (r - 1) * (r - 1) + w**r)


def rho_level_series_batch(order: int, r_max: int) -> dict[int, RationalSeries]:
    """rho_level_series for every r in 1..r_max, sharing the tree series work."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    b = binary_tree_series(order)
    w = b.shift_up(1)
    inv = (RationalSeries.one(order) - w).inverse()
    out: dict[int, RationalSeries] = {}
    w_prev = RationalSeries.one(order)  # w^(r-1)
    for r in range(1, r_max + 1):
        w_r = w_prev * w
        out[r] = inv * (w_prev * (r - 1) + w_r)
        w_prev = w_r
    return out


def closed_form_coefficient(kind: str, k: int) -> Fraction:
    """Closed forms for [z^(2k)] of the rho and rho-squared total series."""
    if kind == "rho":
        return rho_total_coefficient(k)
    if kind == "rho_sq":
        return rho_square_total_coefficient(k)
    raise ValueError("kind must be 'rho' or 'rho_sq'")


def check_recurrence(
    coeffs: Sequence[Fraction],
    relation: Sequence[Sequence],
    initials: dict[int, Fraction],
    stride: int = 1,
    min_shifts: int = 10,
) -> bool:
    """Verify a linear recurrence with polynomial coefficients.

    ``relation`` lists one coefficient polynomial per term, ascending
    powers: relation[j] multiplies coeffs[t + j*stride], and the sum must
    vanish for every testable shift t.  ``initials`` are required starting
    values.  Raises if fewer than ``min_shifts`` shifts can be tested.
    """
    span = stride * (len(relation) - 1)
    testable = len(coeffs) - span
    if testable < min_shifts:
        raise ValueError(f"need at least {min_shifts} testable shifts, have {max(testable, 0)}")
    for idx, val in initials.items():
        if _frac(coeffs[idx]) != _frac(val):
            return False
    polys = [tuple(_frac(c) for c in poly) for poly in relation]
    for t in range(testable):
        total = Fraction(0)
        for j, poly in enumerate(polys):
            pv = Fraction(0)
            for e, c in enumerate(poly):
                pv += c * t**e
            total += pv * _frac(coeffs[t + j * stride])
        if total != 0:
            return False
    return True


# The recurrences satisfied by the coefficient sequences, in both the
# size-indexed (stride 2) and half-size-indexed (stride 1) forms.
RHO_RECURRENCE_N = ((24, 8), (-48, -12), (30, 6), (-6, -1))
RHO_RECURRENCE_K = ((24, 16), (-48, -24), (30, 12), (-6, -2))
RHO_SQ_RECURRENCE_N = ((48, 16), (200, 16), (-396, -48), (222, 28), (-40, -5))
RHO_SQ_RECURRENCE_K = ((48, 32), (200, 32), (-396, -96), (222, 56), (-40, -10))

RHO_INITIALS_N = {0: Fraction(0), 1: Fraction(0), 2: Fraction(3), 3: Fraction(0), 4: Fraction(25, 2), 5: Fraction(0)}
RHO_INITIALS_K = {0: Fraction(0), 1: Fraction(3), 2: Fraction(25, 2)}
RHO_SQ_INITIALS_N = {
    0: Fraction(0),
    1: Fraction(0),
    2: Fraction(5),
    3: Fraction(0),
    4: Fraction(59, 2),
    5: Fraction(0),
    6: Fraction(227, 2),
    7: Fraction(0),
}
RHO_SQ_INITIALS_K = {0: Fraction(0), 1: Fraction(5), 2: Fraction(59, 2), 3: Fraction(227, 2)}

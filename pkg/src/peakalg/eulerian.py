"""Counting polynomials for enriched maps, and the peak-number subalgebra.

For a window p, the number of enriched maps into the signed alphabet with 2k
letters extends to a degree-n polynomial in k; it depends only on the number
of interior peaks of p.  Packaging the half-argument polynomials of all
windows into a single generating polynomial with group-algebra coefficients
yields coefficients that are mutually orthogonal idempotents; their span is
the span of the peak-number class sums.

The battery at the bottom sweeps the statistics whose class sums do NOT span
a convolution-closed subspace, recording a concrete witness at the smallest
group rank where closure breaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .alphabets import Alphabet
from .enriched import epp_count
from .group_algebra import (
    AlgebraElement,
    class_sums,
    closure_check,
    multiplicative_closure,
    sorted_keys,
    stat_classes,
)
from .linalg import Span
from .permutations import enumerate_group, peak_set


@dataclass(frozen=True)
class RationalPolynomial:
    """Exact univariate polynomial, coefficients ascending, trailing nonzero."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls(())

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def coefficient(self, d: int) -> Fraction:
        if 0 <= d < len(self.coefficients):
            return self.coefficients[d]
        return Fraction(0)

    def evaluate(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for c in reversed(self.coefficients):
            out = out * x + c
        return out

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(
            tuple(self.coefficient(d) + other.coefficient(d) for d in range(size))
        )

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "RationalPolynomial":
        c = Fraction(c)
        return RationalPolynomial(tuple(c * v for v in self.coefficients))

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not self.coefficients or not other.coefficients:
            return RationalPolynomial.zero()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    def substitute_scaled(self, factor: Fraction | int) -> "RationalPolynomial":
        """p(factor * x) as a polynomial in x."""
        factor = Fraction(factor)
        return RationalPolynomial(
            tuple(c * factor**d for d, c in enumerate(self.coefficients))
        )

    @classmethod
    def interpolate(cls, points: Sequence[tuple[int, int | Fraction]]) -> "RationalPolynomial":
        """The unique polynomial of degree < len(points) through the points
        (Lagrange form, exact arithmetic)."""
        xs = [Fraction(x) for x, _ in points]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        total = cls.zero()
        for i, (_, y) in enumerate(points):
            term = cls((Fraction(y),))
            for j, xj in enumerate(xs):
                if j == i:
                    continue
                scale = Fraction(1, xs[i] - xj)
                term = term * cls((-xj * scale, scale))
            total = total + term
        return total


@dataclass(frozen=True)
class AlgebraPolynomial:
    """Polynomial with group-algebra coefficients, ascending degree."""

    coefficients: tuple[AlgebraElement, ...]

    def __post_init__(self) -> None:
        shapes = {(c.n, c.kind) for c in self.coefficients}
        if len(shapes) > 1:
            raise ValueError("coefficients live in different group algebras")

    def coefficient(self, d: int) -> AlgebraElement:
        return self.coefficients[d]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def nonzero_degrees(self) -> list[int]:
        return [d for d, c in enumerate(self.coefficients) if not c.is_zero()]


# ---------------------------------------------------------------------------
# Order polynomials


def realized_peak_counts(n: int, kind: str = "A", flavor: str = "interiorPeak") -> list[int]:
    return sorted(stat_classes(n, kind, flavor, mode="number"))


def order_polynomial(peaks: int, n: int) -> RationalPolynomial:
    """The degree-n polynomial whose value at each k >= 0 counts enriched maps
    of any n-window with the given number of interior peaks into the signed
    alphabet on 2k letters.  Built by interpolation at k = 0..n."""
    if n < 1:
        raise ValueError("window size must be at least 1")
    if not 0 <= peaks <= (n - 1) // 2:
        raise ValueError(f"no window of size {n} has {peaks} interior peaks")
    representative = next(
        p for p in enumerate_group(n, "A") if len(peak_set(p, "interiorPeak").members) == peaks
    )
    points = [(k, epp_count(representative, Alphabet.prime(k))) for k in range(n + 1)]
    return RationalPolynomial.interpolate(points)


# ---------------------------------------------------------------------------
# The generating polynomial and its idempotent coefficients


def rho(n: int) -> AlgebraPolynomial:
    """Sum over all n-windows of the half-argument order polynomial times the
    window, collected by degree in the formal variable."""
    polys = {i: order_polynomial(i, n).substitute_scaled(Fraction(1, 2)) for i in realized_peak_counts(n)}
    degree_maps: list[dict[int, Fraction]] = [{} for _ in range(n + 1)]
    for index, p in enumerate(enumerate_group(n, "A")):
        poly = polys[len(peak_set(p, "interiorPeak").members)]
        for d in range(poly.degree + 1):
            value = poly.coefficient(d)
            if value:
                degree_maps[d][index] = degree_maps[d].get(index, Fraction(0)) + value
    coefficients = tuple(AlgebraElement(n, "A", m) for m in degree_maps)
    return AlgebraPolynomial(coefficients)


def parity_degrees(n: int) -> list[int]:
    """The degrees allowed to carry nonzero coefficients: even degrees 2i for
    even n, odd degrees 2i-1 for odd n, i = 1..floor((n+1)/2)."""
    if n % 2 == 0:
        return [2 * i for i in range(1, n // 2 + 1)]
    return [2 * i - 1 for i in range(1, (n + 1) // 2 + 1)]


def rho_idempotents(n: int) -> list[AlgebraElement]:
    """The coefficients of rho at the allowed-parity degrees, ascending."""
    poly = rho(n)
    return [poly.coefficient(d) for d in parity_degrees(n)]


def idempotent_for_index(n: int, i: int) -> AlgebraElement:
    """1-based index along the allowed-parity degrees."""
    items = rho_idempotents(n)
    if not 1 <= i <= len(items):
        raise ValueError(f"index {i} out of range 1..{len(items)}")
    return items[i - 1]


def idempotent_for_peak_count(n: int, count: int) -> AlgebraElement:
    """Same list keyed by interior peak count (index minus one)."""
    return idempotent_for_index(n, count + 1)


def _integer_scaled(element: AlgebraElement) -> tuple[AlgebraElement, int]:
    scale = math.lcm(*(v.denominator for v in element.coeffs.values())) if element.coeffs else 1
    return element.scale(scale), scale


def verify_rho_multiplicativity(n: int) -> dict:
    """Expand the product of two copies of rho in independent variables and
    compare coefficientwise with rho at the product variable: the (a,b)
    coefficient must be the degree-a coefficient when a=b and zero otherwise.
    Equivalently the nonzero coefficients are orthogonal idempotents.
    Products are checked on integer rescalings, which is exact."""
    poly = rho(n)
    degrees = poly.nonzero_degrees()
    allowed = parity_degrees(n)
    parity_ok = all(d in allowed for d in degrees)
    scaled = {d: _integer_scaled(poly.coefficient(d)) for d in degrees}
    mismatches = []
    for a in degrees:
        ua, da = scaled[a]
        for b in degrees:
            ub, db = scaled[b]
            product = ua.convolve(ub)
            expected = ua.scale(da) if a == b else AlgebraElement.zero(n, "A")
            if product != expected:
                mismatches.append((a, b))
    total = AlgebraElement.zero(n, "A")
    for d in degrees:
        total = total + poly.coefficient(d)
    return {
        "n": n,
        "multiplicative": parity_ok and not mismatches,
        "parity_ok": parity_ok,
        "degrees": degrees,
        "mismatches": mismatches,
        "sum_equals_identity": total == AlgebraElement.identity(n, "A"),
    }


# ---------------------------------------------------------------------------
# Peak-number class sums


_BASIS_FLAVORS = {
    "interior": "interiorPeak",
    "left": "leftPeak",
    "typeB": "typeBPeak",
    "rightNumber": "rightPeak",
    "exteriorNumber": "exteriorPeak",
}


def eulerian_basis(n: int, kind: str, flavor: str) -> list[AlgebraElement]:
    """Class sums of windows sharing a peak count, ascending by count."""
    if flavor not in _BASIS_FLAVORS:
        raise ValueError(f"unknown basis flavor: {flavor}")
    sums = class_sums(n, kind, _BASIS_FLAVORS[flavor], mode="number")
    return [sums[key] for key in sorted_keys(sums)]


def spans_agree(first: Sequence[AlgebraElement], second: Sequence[AlgebraElement]) -> bool:
    a, b = Span(), Span()
    for element in first:
        a.add(element.to_vector())
    for element in second:
        b.add(element.to_vector())
    return a.equals(b)


def commutes_pairwise(elements: Sequence[AlgebraElement]) -> bool:
    return all(
        u.convolve(w) == w.convolve(u)
        for i, u in enumerate(elements)
        for w in elements[i + 1 :]
    )


# ---------------------------------------------------------------------------
# The battery of non-closing statistics


#: (kind, statistic flavor, set-or-number mode) for every statistic whose
#: class-sum span fails convolution closure; leftPeak on signed windows reads
#: positions 1..n-1, i.e. peaks strictly inside the window with 0 ignored.
BATTERY_STATISTICS: tuple[tuple[str, str, str], ...] = (
    ("A", "rightPeak", "set"),
    ("A", "exteriorPeak", "set"),
    ("B", "leftPeak", "set"),
    ("B", "leftPeak", "number"),
    ("B", "exteriorPeak", "set"),
    ("B", "exteriorPeak", "number"),
)

#: per-kind default search bounds for the battery sweep
BATTERY_CAPS = {"A": 6, "B": 5}


def negative_battery(n_max: int = 6) -> list[dict]:
    """Sweep each battery statistic from n=1 upward and record the first size
    where the class-sum span is not closed, with the witness certificate and
    the dimension the span grows to under products.  A statistic that stays
    closed through its bound is flagged, since every one of them is expected
    to fail.  The ordinary interior statistic is appended as a closed control.
    """
    reports = []
    for kind, flavor, mode in BATTERY_STATISTICS:
        bound = min(n_max, BATTERY_CAPS[kind])
        report = {
            "statistic": f"{kind}:{flavor}:{mode}",
            "kind": kind,
            "flavor": flavor,
            "mode": mode,
            "control": False,
            "n": bound,
            "closed": True,
        }
        for n in range(1, bound + 1):
            check = closure_check(n, kind, flavor, mode)
            if not check["closed"]:
                grown = multiplicative_closure(
                    list(class_sums(n, kind, flavor, mode).values())
                )
                report.update(
                    {
                        "n": n,
                        "closed": False,
                        "witness": check["certificate"],
                        "spanDim": check["dim"],
                        "closureDim": grown["dim_closure"],
                    }
                )
                break
        if report["closed"]:
            report["flag"] = "closure unexpectedly held through the bound"
        reports.append(report)

    control_bound = min(n_max, 5)
    control = {
        "statistic": "A:interiorPeak:set",
        "kind": "A",
        "flavor": "interiorPeak",
        "mode": "set",
        "control": True,
        "n": control_bound,
        "closed": all(
            closure_check(n, "A", "interiorPeak")["closed"] for n in range(1, control_bound + 1)
        ),
    }
    reports.append(control)
    return reports

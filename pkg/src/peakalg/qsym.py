"""Quasisymmetric functions with exact coefficients, in the monomial (M) and
fundamental (F) bases, for both the ordinary and the signed (typeB) theory.

Keys are compositions of n (typeB: pseudo-compositions, whose first part may
be zero and exponentiates the extra variable x_0).  Refinement is computed
through the subset dictionary: alpha refines beta iff the partial-sum set of
beta is contained in that of alpha.

The peak functions below expand the census generating functions of windows
with a prescribed peak set; their truncated evaluations match the chain
censuses of the enriched module, which is what the test suite checks.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import Span
from .permutations import Composition, StatSet

Coeffs = dict[Composition, Fraction]


class QSymElement:
    """A finitely supported exact-coefficient element in the M or F basis."""

    def __init__(self, basis: str, typeB: bool, coeffs: Mapping[Composition, Fraction | int] | None = None):
        if basis not in ("M", "F"):
            raise ValueError(f"unknown basis: {basis}")
        self.basis = basis
        self.typeB = typeB
        self.coeffs: Coeffs = {}
        for key, value in (coeffs or {}).items():
            if key.typeB != typeB:
                raise ValueError("composition kind does not match element kind")
            value = Fraction(value)
            if value:
                self.coeffs[key] = value

    @classmethod
    def monomial(cls, parts: Iterable[int], typeB: bool = False) -> "QSymElement":
        return cls("M", typeB, {Composition(tuple(parts), typeB): Fraction(1)})

    @classmethod
    def fundamental(cls, parts: Iterable[int], typeB: bool = False) -> "QSymElement":
        return cls("F", typeB, {Composition(tuple(parts), typeB): Fraction(1)})

    @classmethod
    def zero(cls, basis: str = "M", typeB: bool = False) -> "QSymElement":
        return cls(basis, typeB)

    @classmethod
    def one(cls, basis: str = "M", typeB: bool = False) -> "QSymElement":
        return cls(basis, typeB, {Composition((), typeB): Fraction(1)})

    def _compatible(self, other: "QSymElement") -> None:
        if self.basis != other.basis or self.typeB != other.typeB:
            raise ValueError("elements live in different bases or kinds")

    def __add__(self, other: "QSymElement") -> "QSymElement":
        self._compatible(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + value
        return QSymElement(self.basis, self.typeB, out)

    def __sub__(self, other: "QSymElement") -> "QSymElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "QSymElement":
        c = Fraction(c)
        return QSymElement(self.basis, self.typeB, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QSymElement)
            and self.basis == other.basis
            and self.typeB == other.typeB
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.basis, self.typeB, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {key.degree for key in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degrees = self.degrees()
        if len(degrees) != 1:
            raise ValueError("element is zero or inhomogeneous")
        return degrees.pop()

    def integer_coefficients(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: (kv[0].degree, kv[0].parts))
        bits = []
        for key, value in terms:
            basis = self.basis + ("B" if self.typeB else "")
            bits.append(f"{value}*{basis}{key}")
        return " + ".join(bits)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        terms = [
            {"parts": list(key.parts), "coeff": str(value)}
            for key, value in sorted(self.coeffs.items(), key=lambda kv: (kv[0].degree, kv[0].parts))
        ]
        return json.dumps({"basis": self.basis, "typeB": self.typeB, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "QSymElement":
        data = json.loads(text)
        coeffs = {
            Composition(tuple(term["parts"]), data["typeB"]): Fraction(term["coeff"])
            for term in data["terms"]
        }
        return cls(data["basis"], data["typeB"], coeffs)


# ---------------------------------------------------------------------------
# Basis change: F_alpha = sum over refinements beta of M_beta, and its
# inclusion-exclusion inverse.


def _refinements(key: Composition) -> list[tuple[Composition, int]]:
    """(beta, extra) for every refinement beta of key, where extra is the
    number of added split points."""
    n = key.degree
    lo = 0 if key.typeB else 1
    base = key.to_subset()
    free = [i for i in range(lo, n) if i not in base]
    out = []
    for size in range(len(free) + 1):
        for added in itertools.combinations(free, size):
            beta = Composition.from_subset(base | set(added), n, key.typeB)
            out.append((beta, size))
    return out


def f_to_m(element: QSymElement) -> QSymElement:
    """Rewrite an F-basis element in the M basis."""
    if element.basis != "F":
        raise ValueError("f_to_m expects the F basis")
    out: Coeffs = {}
    for key, value in element.coeffs.items():
        for beta, _ in _refinements(key):
            out[beta] = out.get(beta, Fraction(0)) + value
    return QSymElement("M", element.typeB, out)


def m_to_f(element: QSymElement) -> QSymElement:
    """Rewrite an M-basis element in the F basis (inclusion-exclusion)."""
    if element.basis != "M":
        raise ValueError("m_to_f expects the M basis")
    out: Coeffs = {}
    for key, value in element.coeffs.items():
        for beta, extra in _refinements(key):
            sign = -1 if extra % 2 else 1
            out[beta] = out.get(beta, Fraction(0)) + sign * value
    return QSymElement("F", element.typeB, out)


# ---------------------------------------------------------------------------
# Peak functions


def _validated_members(members: Iterable[int], n: int, flavor: str) -> frozenset[int]:
    return StatSet.of(flavor, n, members).members


def peak_function(members: Iterable[int], n: int) -> QSymElement:
    """M-basis expansion of the census series shared by all windows with the
    given interior peak set: sum over E inside [1, n-1] containing the peak
    set in E union (E+1), with coefficient 2^(|E|+1)."""
    peaks = _validated_members(members, n, "interiorPeak")
    out: Coeffs = {}
    for size in range(n):
        for chosen in itertools.combinations(range(1, n), size):
            cover = set(chosen) | {i + 1 for i in chosen}
            if peaks <= cover:
                key = Composition.from_subset(chosen, n)
                out[key] = Fraction(2 ** (size + 1))
    return QSymElement("M", False, out)


def peak_function_F(members: Iterable[int], n: int) -> QSymElement:
    """F-basis form: 2^(|peaks|+1) times the sum of F_D over D whose boundary
    D symmetric-difference (D+1) covers the peak set."""
    peaks = _validated_members(members, n, "interiorPeak")
    out: Coeffs = {}
    for size in range(n):
        for chosen in itertools.combinations(range(1, n), size):
            boundary = set(chosen) ^ {i + 1 for i in chosen}
            if peaks <= boundary:
                key = Composition.from_subset(chosen, n)
                out[key] = Fraction(2 ** (len(peaks) + 1))
    return QSymElement("F", False, out)


def peak_function_b(members: Iterable[int], n: int) -> QSymElement:
    """Signed analogue over pseudo-compositions: E ranges inside [0, n-1]
    and the coefficient is 2^|E|.  Sets avoiding 0 are exactly the series of
    windows whose leftmost-anchored peak set has no peak at 0."""
    peaks = _validated_members(members, n, "typeBPeak")
    out: Coeffs = {}
    for size in range(n + 1):
        for chosen in itertools.combinations(range(0, n), size):
            cover = set(chosen) | {i + 1 for i in chosen}
            if peaks <= cover:
                key = Composition.from_subset(chosen, n, typeB=True)
                out[key] = Fraction(2 ** size)
    return QSymElement("M", True, out)


def peak_function_b_F(members: Iterable[int], n: int) -> QSymElement:
    """F-basis form of peak_function_b, coefficient 2^|peaks| on qualifying D."""
    peaks = _validated_members(members, n, "typeBPeak")
    out: Coeffs = {}
    for size in range(n + 1):
        for chosen in itertools.combinations(range(0, n), size):
            boundary = set(chosen) ^ {i + 1 for i in chosen}
            if peaks <= boundary:
                key = Composition.from_subset(chosen, n, typeB=True)
                out[key] = Fraction(2 ** len(peaks))
    return QSymElement("F", True, out)


# ---------------------------------------------------------------------------
# Quasi-shuffle product (M basis)


def _quasi_shuffles(a: tuple[int, ...], b: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: dict[tuple[int, ...], int] = {}

    def absorb(head: int, tails: dict[tuple[int, ...], int]) -> None:
        for tail, count in tails.items():
            key = (head,) + tail
            out[key] = out.get(key, 0) + count

    absorb(a[0], _quasi_shuffles(a[1:], b))
    absorb(b[0], _quasi_shuffles(a, b[1:]))
    absorb(a[0] + b[0], _quasi_shuffles(a[1:], b[1:]))
    return out


def quasi_shuffle(x: QSymElement, y: QSymElement) -> QSymElement:
    """The M-basis product.  For the signed kind the mandatory first parts
    (the x_0 exponents) add, and the remaining parts quasi-shuffle."""
    x._compatible(y)
    if x.basis != "M":
        raise ValueError("quasi_shuffle works in the M basis")
    out: Coeffs = {}
    for ka, va in x.coeffs.items():
        for kb, vb in y.coeffs.items():
            value = va * vb
            if x.typeB:
                first_a = ka.parts[0] if ka.parts else 0
                first_b = kb.parts[0] if kb.parts else 0
                shuffles = _quasi_shuffles(ka.parts[1:] if ka.parts else (), kb.parts[1:] if kb.parts else ())
                for tail, count in shuffles.items():
                    key = Composition((first_a + first_b,) + tail, True)
                    out[key] = out.get(key, Fraction(0)) + value * count
            else:
                for parts, count in _quasi_shuffles(ka.parts, kb.parts).items():
                    key = Composition(parts, False)
                    out[key] = out.get(key, Fraction(0)) + value * count
    return QSymElement("M", x.typeB, out)


# ---------------------------------------------------------------------------
# Rank computation and truncated evaluation


def _column_keys(elements: Iterable[QSymElement]) -> list[Composition]:
    keys = set()
    for element in elements:
        keys.update(element.coeffs)
    return sorted(keys, key=lambda c: (c.degree, c.length, c.parts))


def rank_of_span(elements: Iterable[QSymElement]) -> int:
    """Exact rank over the rationals of the coefficient matrix."""
    elements = list(elements)
    if not elements:
        return 0
    basis = {(e.basis, e.typeB) for e in elements}
    if len(basis) > 1:
        raise ValueError("elements live in different bases or kinds")
    keys = _column_keys(elements)
    position = {key: i for i, key in enumerate(keys)}
    span = Span()
    for element in elements:
        row = [Fraction(0)] * len(keys)
        for key, value in element.coeffs.items():
            row[position[key]] = value
        span.add(row)
    return span.dim


def evaluate(element: QSymElement, k: int) -> dict[tuple[int, ...], Fraction]:
    """Truncated polynomial evaluation in k positive variables (plus x_0 for
    the signed kind).  Keys are exponent tuples indexed 0..k, matching the
    census keys of the enriched module."""
    if element.basis != "M":
        element = f_to_m(element)
    out: dict[tuple[int, ...], Fraction] = {}
    for key, value in element.coeffs.items():
        parts = key.parts
        if element.typeB:
            head, tail = (parts[0], parts[1:]) if parts else (0, ())
        else:
            head, tail = 0, parts
        for support in itertools.combinations(range(1, k + 1), len(tail)):
            exponents = [0] * (k + 1)
            exponents[0] = head
            for variable, power in zip(support, tail):
                exponents[variable] = power
            key_out = tuple(exponents)
            out[key_out] = out.get(key_out, Fraction(0)) + value
    return {key: value for key, value in out.items() if value}


def evaluate_at_zero(element: QSymElement, k: int) -> dict[tuple[int, ...], Fraction]:
    """Truncated evaluation with the extra signed variable x_0 set to zero."""
    return {key: value for key, value in evaluate(element, k).items() if key[0] == 0}


def polynomial_product(
    p: Mapping[tuple[int, ...], Fraction | int], q: Mapping[tuple[int, ...], Fraction | int]
) -> dict[tuple[int, ...], Fraction]:
    """Product of two truncated evaluations (exponent-keyed polynomials)."""
    out: dict[tuple[int, ...], Fraction] = {}
    for ka, va in p.items():
        for kb, vb in q.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, Fraction(0)) + Fraction(va) * Fraction(vb)
    return {key: value for key, value in out.items() if value}

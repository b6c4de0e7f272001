"""Exact rational group-algebra arithmetic for the two window groups.

Elements are sparse vectors indexed by the stable rank of a window.  The
product is convolution against the fixed composition convention of the
permutations module: (u * w)(p) sums u(t) * w(s) over all ordered
factorizations s . t = p.

The module also builds class sums for any window statistic, tabulates
structure constants from class representatives, and runs span/closure/ideal
checks with exact arithmetic.  Closure failures come with an explicit
certificate so downstream reports can show a witness instead of a bare flag.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .linalg import Span
from .permutations import (
    GroupElement,
    SignedPermutation,
    compose,
    enumerate_group,
    group_order,
    rank,
    stat_set,
)

FORMAT_VERSION = 1

# Composition tables are precomputed below this group order; larger groups
# fall back to composing windows on the fly.
_TABLE_LIMIT = 1000


@lru_cache(maxsize=None)
def _elements(n: int, kind: str) -> tuple[GroupElement, ...]:
    return tuple(enumerate_group(n, kind))


@lru_cache(maxsize=None)
def _inverse_ranks(n: int, kind: str) -> tuple[int, ...]:
    return tuple(rank(p.inverse()) for p in _elements(n, kind))


@lru_cache(maxsize=None)
def _compose_table(n: int, kind: str) -> tuple[tuple[int, ...], ...] | None:
    """table[i][j] = rank of elements[i] composed with elements[j]."""
    elements = _elements(n, kind)
    if len(elements) > _TABLE_LIMIT:
        return None
    rows = []
    for a in elements:
        rows.append(tuple(rank(compose(a, b)) for b in elements))
    return tuple(rows)


class AlgebraElement:
    """A finitely supported rational combination of group elements."""

    __slots__ = ("n", "kind", "coeffs")

    def __init__(self, n: int, kind: str, coeffs: Mapping[int, Fraction | int] | None = None):
        self.n = n
        self.kind = kind
        self.coeffs: dict[int, Fraction] = {}
        order = group_order(n, kind)
        for key, value in (coeffs or {}).items():
            if not 0 <= key < order:
                raise ValueError(f"rank {key} out of range for {kind} n={n}")
            value = Fraction(value)
            if value:
                self.coeffs[key] = value

    @classmethod
    def zero(cls, n: int, kind: str) -> "AlgebraElement":
        return cls(n, kind)

    @classmethod
    def delta(cls, element: GroupElement) -> "AlgebraElement":
        kind = "B" if isinstance(element, SignedPermutation) else "A"
        return cls(element.n, kind, {rank(element): Fraction(1)})

    @classmethod
    def identity(cls, n: int, kind: str) -> "AlgebraElement":
        element = _elements(n, kind)[0]
        return cls.delta(type(element).identity(n))

    @classmethod
    def from_vector(cls, n: int, kind: str, vector: Sequence[Fraction | int]) -> "AlgebraElement":
        return cls(n, kind, {i: v for i, v in enumerate(vector) if v})

    def to_vector(self) -> list[Fraction]:
        out = [Fraction(0)] * group_order(self.n, self.kind)
        for key, value in self.coeffs.items():
            out[key] = value
        return out

    def _compatible(self, other: "AlgebraElement") -> None:
        if self.n != other.n or self.kind != other.kind:
            raise ValueError("elements live in different group algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._compatible(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + value
        return AlgebraElement(self.n, self.kind, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.n, self.kind, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.n == other.n
            and self.kind == other.kind
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.kind, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[GroupElement]:
        elements = _elements(self.n, self.kind)
        return [elements[i] for i in sorted(self.coeffs)]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        elements = _elements(self.n, self.kind)
        bits = [f"{value}*[{elements[key]}]" for key, value in sorted(self.coeffs.items())]
        return " + ".join(bits)

    def convolve(self, other: "AlgebraElement") -> "AlgebraElement":
        """(u * w)(p) = sum of u(t) * w(s) over ordered factorizations s.t=p,
        so this element plays the role of u and the argument the role of w."""
        self._compatible(other)
        n, kind = self.n, self.kind
        table = _compose_table(n, kind)
        out: dict[int, Fraction] = {}
        integral = (
            all(v.denominator == 1 for v in self.coeffs.values())
            and all(v.denominator == 1 for v in other.coeffs.values())
        )
        u_items = [(k, int(v) if integral else v) for k, v in self.coeffs.items()]
        w_items = [(k, int(v) if integral else v) for k, v in other.coeffs.items()]
        if table is not None:
            for rs, cs in w_items:
                row = table[rs]
                for rt, ct in u_items:
                    key = row[rt]
                    out[key] = out.get(key, 0) + ct * cs
        else:
            elements = _elements(n, kind)
            for rs, cs in w_items:
                s = elements[rs]
                for rt, ct in u_items:
                    key = rank(compose(s, elements[rt]))
                    out[key] = out.get(key, 0) + ct * cs
        return AlgebraElement(n, kind, out)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.convolve(other)


def convolve(u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
    return u.convolve(w)


# ---------------------------------------------------------------------------
# Statistic classes and class sums


StatKey = frozenset[int] | int


def _stat_key(p: GroupElement, flavor: str, mode: str) -> StatKey:
    members = stat_set(p, flavor).members
    return len(members) if mode == "number" else members


def stat_classes(n: int, kind: str, flavor: str, mode: str = "set") -> dict[StatKey, list[int]]:
    """Group element ranks by the value of the statistic (the set itself, or
    its cardinality when mode="number")."""
    if mode not in ("set", "number"):
        raise ValueError(f"unknown mode: {mode}")
    out: dict[StatKey, list[int]] = {}
    for index, p in enumerate(_elements(n, kind)):
        out.setdefault(_stat_key(p, flavor, mode), []).append(index)
    return out


def class_sums(n: int, kind: str, flavor: str, mode: str = "set") -> dict[StatKey, AlgebraElement]:
    return {
        key: AlgebraElement(n, kind, {i: Fraction(1) for i in ranks})
        for key, ranks in stat_classes(n, kind, flavor, mode).items()
    }


def _sort_key(key: StatKey):
    if isinstance(key, int):
        return (key,)
    return (len(key), tuple(sorted(key)))


def sorted_keys(keys: Iterable[StatKey]) -> list[StatKey]:
    return sorted(keys, key=_sort_key)


# ---------------------------------------------------------------------------
# Structure constants


@dataclass(frozen=True)
class StructureTable:
    """Counts of ordered factorizations s.t = representative(C) with the
    statistic of t equal to A and the statistic of s equal to B."""

    n: int
    kind: str
    flavor: str
    mode: str
    keys: tuple[StatKey, ...]
    counts: dict[tuple[StatKey, StatKey, StatKey], int]

    def count(self, a: StatKey, b: StatKey, c: StatKey) -> int:
        return self.counts.get((_freeze(a), _freeze(b), _freeze(c)), 0)

    def to_json(self) -> str:
        entries = [
            {"A": _key_json(a), "B": _key_json(b), "C": _key_json(c), "count": v}
            for (a, b, c), v in sorted(self.counts.items(), key=lambda kv: tuple(map(_sort_key, kv[0])))
            if v
        ]
        payload = {
            "format_version": FORMAT_VERSION,
            "flavor": self.flavor,
            "kind": self.kind,
            "mode": self.mode,
            "n": self.n,
            "entries": entries,
        }
        return json.dumps(payload, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "StructureTable":
        data = json.loads(text)
        if data.get("format_version") != FORMAT_VERSION:
            raise ValueError("unsupported structure table format")
        mode = data["mode"]
        counts = {}
        keys = set()
        for entry in data["entries"]:
            a, b, c = (_key_from_json(entry[name], mode) for name in ("A", "B", "C"))
            keys.update((a, b, c))
            counts[(a, b, c)] = int(entry["count"])
        return cls(
            n=int(data["n"]),
            kind=data["kind"],
            flavor=data["flavor"],
            mode=mode,
            keys=tuple(sorted_keys(keys)),
            counts=counts,
        )


def _freeze(key) -> StatKey:
    return key if isinstance(key, int) else frozenset(key)


def _key_json(key: StatKey):
    return key if isinstance(key, int) else sorted(key)


def _key_from_json(raw, mode: str) -> StatKey:
    return int(raw) if mode == "number" else frozenset(raw)


def factorization_counts(
    target: GroupElement, flavor: str, mode: str = "set"
) -> dict[tuple[StatKey, StatKey], int]:
    """For one target window, count ordered factorizations s.t = target by the
    statistic pair (statistic of t, statistic of s)."""
    kind = "B" if isinstance(target, SignedPermutation) else "A"
    n = target.n
    elements = _elements(n, kind)
    inverses = _inverse_ranks(n, kind)
    keys = [_stat_key(p, flavor, mode) for p in elements]
    out: dict[tuple[StatKey, StatKey], int] = {}
    for rt in range(len(elements)):
        s = compose(target, elements[inverses[rt]])
        pair = (keys[rt], keys[rank(s)])
        out[pair] = out.get(pair, 0) + 1
    return out


def structure_table(n: int, kind: str, flavor: str, mode: str = "set") -> StructureTable:
    """Tabulate all structure constants from the minimal-rank representative
    of each statistic class."""
    classes = stat_classes(n, kind, flavor, mode)
    elements = _elements(n, kind)
    keys = tuple(sorted_keys(classes))
    counts: dict[tuple[StatKey, StatKey, StatKey], int] = {}
    for key_c, ranks in classes.items():
        representative = elements[min(ranks)]
        for (key_a, key_b), value in factorization_counts(representative, flavor, mode).items():
            counts[(key_a, key_b, key_c)] = value
    return StructureTable(n=n, kind=kind, flavor=flavor, mode=mode, keys=keys, counts=counts)


def representative_audit(n: int, kind: str, flavor: str, mode: str = "set") -> dict:
    """Check that factorization counts by statistic pair agree across every
    member of every class, not just the chosen representative.  Returns a
    report with the first disagreeing pair of windows if one exists."""
    classes = stat_classes(n, kind, flavor, mode)
    elements = _elements(n, kind)
    for key_c, ranks in classes.items():
        baseline = None
        base_rank = None
        for r in ranks:
            counts = factorization_counts(elements[r], flavor, mode)
            if baseline is None:
                baseline, base_rank = counts, r
            elif counts != baseline:
                diffs = {
                    pair: (baseline.get(pair, 0), counts.get(pair, 0))
                    for pair in set(baseline) | set(counts)
                    if baseline.get(pair, 0) != counts.get(pair, 0)
                }
                return {
                    "consistent": False,
                    "class": _key_json(key_c),
                    "windows": [str(elements[base_rank]), str(elements[r])],
                    "differences": {
                        str((_key_json(a), _key_json(b))): list(v) for (a, b), v in sorted(
                            diffs.items(), key=lambda kv: tuple(map(_sort_key, kv[0]))
                        )
                    },
                }
        # baseline retained per class; nothing else to record
    return {"consistent": True}


# ---------------------------------------------------------------------------
# Cache layer


def cache_directory(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("PEAKALG_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "peakalg"


def load_structure_table(
    n: int,
    kind: str,
    flavor: str,
    mode: str = "set",
    cache_dir: str | os.PathLike | None = None,
    refresh: bool = False,
) -> StructureTable:
    """Structure table with a JSON disk cache keyed by statistic and size."""
    directory = cache_directory(cache_dir)
    path = directory / f"structure_v{FORMAT_VERSION}_{kind}_{flavor}_{mode}_n{n}.json"
    if not refresh and path.exists():
        try:
            return StructureTable.from_json(path.read_text())
        except (ValueError, KeyError, json.JSONDecodeError):
            pass  # stale or foreign file: recompute below
    table = structure_table(n, kind, flavor, mode)
    directory.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(table.to_json())
    tmp.replace(path)
    return table


# ---------------------------------------------------------------------------
# Span-based checks


def _span_of(elements: Iterable[AlgebraElement]) -> Span:
    span = Span()
    for element in elements:
        span.add(element.to_vector())
    return span


def closure_check(n: int, kind: str, flavor: str, mode: str = "set") -> dict:
    """Is the span of the class sums closed under convolution?  The report
    carries the span dimension and, on failure, the first offending pair with
    the sizes of the mismatch."""
    sums = class_sums(n, kind, flavor, mode)
    keys = sorted_keys(sums)
    span = _span_of(sums.values())
    for key_a in keys:
        for key_b in keys:
            product = sums[key_a].convolve(sums[key_b])
            if not span.contains(product.to_vector()):
                witness = _escape_certificate(sums, keys, key_a, key_b, product)
                return {"closed": False, "dim": span.dim, "certificate": witness}
    return {"closed": True, "dim": span.dim, "certificate": None}


def _escape_certificate(sums, keys, key_a, key_b, product) -> dict:
    """Explain why v_A * v_B escapes the span: exhibit two windows in one
    class where the product takes different values."""
    n, kind = product.n, product.kind
    elements = _elements(n, kind)
    for key in keys:
        ranks = sorted(sums[key].coeffs)
        values = {r: product.coeffs.get(r, Fraction(0)) for r in ranks}
        if len(set(values.values())) > 1:
            items = sorted(values.items(), key=lambda kv: kv[1])
            low, high = items[0], items[-1]
            return {
                "A": _key_json(key_a),
                "B": _key_json(key_b),
                "class": _key_json(key),
                "windows": [str(elements[low[0]]), str(elements[high[0]])],
                "values": [str(low[1]), str(high[1])],
            }
    return {"A": _key_json(key_a), "B": _key_json(key_b), "class": None, "windows": [], "values": []}


def multiplicative_closure(elements: Sequence[AlgebraElement]) -> dict:
    """Dimension of the smallest convolution-closed subspace containing the
    given elements, grown by saturating pairwise products."""
    if not elements:
        return {"dim_start": 0, "dim_closure": 0, "closed": True}
    span = _span_of(elements)
    dim_start = span.dim
    basis = list(elements)
    frontier = list(elements)
    while frontier:
        fresh: list[AlgebraElement] = []
        for u in basis:
            for w in frontier:
                for product in (u.convolve(w), w.convolve(u)):
                    if span.add(product.to_vector()):
                        fresh.append(product)
        basis.extend(fresh)
        frontier = fresh
    return {"dim_start": dim_start, "dim_closure": span.dim, "closed": span.dim == dim_start}


def ideal_check(inner: Sequence[AlgebraElement], outer: Sequence[AlgebraElement]) -> dict:
    """Do products between the outer elements and the inner span stay inside
    the inner span, on both sides?"""
    span = _span_of(inner)
    for u in outer:
        for v in inner:
            for side, product in (("left", u.convolve(v)), ("right", v.convolve(u))):
                if not span.contains(product.to_vector()):
                    return {"ideal": False, "side": side, "witness": repr(product)}
    return {"ideal": True, "side": None, "witness": None}


def span_contains_all(container: Sequence[AlgebraElement], members: Sequence[AlgebraElement]) -> bool:
    span = _span_of(container)
    return all(span.contains(m.to_vector()) for m in members)


def descent_algebra_containment(n: int, kind: str, flavor: str) -> bool:
    """Every peak class sum is a sum of descent class sums, hence lies in the
    span of the descent classes."""
    descent_flavor = "descentB" if kind == "B" else "descentA"
    descent = list(class_sums(n, kind, descent_flavor).values())
    peaks = list(class_sums(n, kind, flavor).values())
    return span_contains_all(descent, peaks)


# ---------------------------------------------------------------------------
# Duality verification (class-sum products against tabulated constants)


def verify_duality(n: int, kind: str, flavor: str, mode: str = "set", table: StructureTable | None = None) -> dict:
    """Compare every convolution v_A * v_B against the tabulated expansion
    sum_C count(A,B,C) v_C.  Mismatches are reported, not raised."""
    if table is None:
        table = structure_table(n, kind, flavor, mode)
    sums = class_sums(n, kind, flavor, mode)
    keys = sorted_keys(sums)
    mismatches = []
    for key_a in keys:
        for key_b in keys:
            lhs = sums[key_a].convolve(sums[key_b])
            rhs = AlgebraElement.zero(n, kind)
            for key_c in keys:
                value = table.count(key_a, key_b, key_c)
                if value:
                    rhs = rhs + sums[key_c].scale(value)
            if lhs != rhs:
                delta = lhs - rhs
                sample_rank = min(delta.coeffs)
                mismatches.append(
                    {
                        "A": _key_json(key_a),
                        "B": _key_json(key_b),
                        "window": str(_elements(n, kind)[sample_rank]),
                        "difference": str(delta.coeffs[sample_rank]),
                    }
                )
    return {"consistent": not mismatches, "mismatches": mismatches}

"""Convolution algebra over window groups: class sums, structure tables,
closure and duality checks, and the on-disk table cache."""

import itertools
import json
from fractions import Fraction

import pytest

from peakalg.group_algebra import (
    AlgebraElement,
    StructureTable,
    cache_directory,
    class_sums,
    closure_check,
    descent_algebra_containment,
    factorization_counts,
    ideal_check,
    load_structure_table,
    multiplicative_closure,
    representative_audit,
    span_contains_all,
    stat_classes,
    structure_table,
    verify_duality,
)
from peakalg.permutations import (
    Permutation,
    SignedPermutation,
    compose,
    enumerate_group,
    fibonacci,
    group_order,
    rank,
    stat_set,
    unrank,
)

F = Fraction


def test_convolution_convention():
    # the left operand supplies the right factor of each product
    for a, b in itertools.product(enumerate_group(3, "A"), repeat=2):
        u, w = AlgebraElement.delta(a), AlgebraElement.delta(b)
        assert u.convolve(w) == AlgebraElement.delta(compose(b, a)), (a, b)
    for a, b in itertools.product(enumerate_group(2, "B"), repeat=2):
        u, w = AlgebraElement.delta(a), AlgebraElement.delta(b)
        assert u.convolve(w) == AlgebraElement.delta(compose(b, a)), (a, b)


def test_convolution_brute_force():
    u = AlgebraElement(3, "A", {0: F(2), 3: F(-1)})
    w = AlgebraElement(3, "A", {1: F(1), 5: F(7, 2)})
    brute = {}
    for rt, ct in u.coeffs.items():
        for rs, cs in w.coeffs.items():
            t, s = unrank(rt, 3, "A"), unrank(rs, 3, "A")
            key = rank(compose(s, t))
            brute[key] = brute.get(key, F(0)) + ct * cs
    assert u.convolve(w).coeffs == {k: v for k, v in brute.items() if v}


def test_identity_is_the_unit():
    one = AlgebraElement.identity(3, "A")
    u = AlgebraElement(3, "A", {0: F(2), 3: F(-1), 4: F(5, 3)})
    assert one.convolve(u) == u and u.convolve(one) == u
    oneB = AlgebraElement.identity(2, "B")
    v = AlgebraElement(2, "B", {i: F(i + 1) for i in range(8)})
    assert oneB.convolve(v) == v and v.convolve(oneB) == v


def test_element_arithmetic():
    u = AlgebraElement.delta(Permutation((2, 1, 3)))
    v = AlgebraElement.delta(Permutation((1, 2, 3)))
    assert (u + v) - v == u
    assert u.scale(0).is_zero()
    assert (u * v) == u.convolve(v)
    vec = (u + v.scale(F(1, 2))).to_vector()
    assert AlgebraElement.from_vector(3, "A", vec) == u + v.scale(F(1, 2))
    assert u.support() == [Permutation((2, 1, 3))]


def test_kind_mixing_is_rejected():
    u = AlgebraElement.identity(2, "A")
    v = AlgebraElement.identity(2, "B")
    with pytest.raises(ValueError):
        u.convolve(v)
    with pytest.raises(ValueError):
        u + v


def test_stat_classes_partition_the_group():
    classes = stat_classes(4, "A", "interiorPeak", mode="set")
    assert sum(len(v) for v in classes.values()) == group_order(4, "A")
    assert set(classes) == {frozenset(), frozenset({2}), frozenset({3})}
    number = stat_classes(4, "A", "interiorPeak", mode="number")
    assert set(number) == {0, 1}
    assert sum(len(v) for v in number.values()) == group_order(4, "A")


def test_frozen_structure_constant():
    table = structure_table(3, "A", "interiorPeak")
    assert table.count(frozenset({2}), frozenset({2}), frozenset()) == 1
    assert table.n == 3 and table.kind == "A" and table.mode == "set"


def test_structure_table_json_round_trip(tmp_path):
    table = structure_table(3, "A", "interiorPeak")
    again = StructureTable.from_json(table.to_json())
    assert again.counts == {k: v for k, v in table.counts.items() if v}
    assert again.n == 3 and again.flavor == "interiorPeak"
    assert again.keys == table.keys
    with pytest.raises(ValueError):
        StructureTable.from_json(json.dumps({"format_version": 999}))


def test_structure_constants_count_factorizations():
    # entry (A, B -> C) counts factorizations of one window per class C
    table = structure_table(3, "A", "interiorPeak")
    for target in enumerate_group(3, "A"):
        if stat_set(target, "interiorPeak").members != frozenset():
            continue
        counts = factorization_counts(target, "interiorPeak")
        pair = (frozenset({2}), frozenset({2}))
        assert counts[pair] == table.count(frozenset({2}), frozenset({2}), frozenset())
        break


def test_duality_holds_for_unsigned_windows():
    for n in (2, 3, 4):
        assert verify_duality(n, "A", "interiorPeak")["consistent"]
        assert verify_duality(n, "A", "leftPeak")["consistent"]
        assert representative_audit(n, "A", "interiorPeak")["consistent"]
        assert representative_audit(n, "A", "leftPeak")["consistent"]


def test_duality_fails_for_signed_windows_at_three():
    assert verify_duality(2, "B", "typeBPeak")["consistent"]
    assert representative_audit(2, "B", "typeBPeak")["consistent"]
    bad = verify_duality(3, "B", "typeBPeak")
    assert not bad["consistent"] and bad["mismatches"]
    audit = representative_audit(3, "B", "typeBPeak")
    assert not audit["consistent"]
    assert audit["windows"]


def test_signed_window_factorization_witness():
    # two windows with the same peak set but different factorization counts
    first = SignedPermutation((1, -2, -3))
    second = SignedPermutation((1, -2, 3))
    assert stat_set(first, "typeBPeak").members == frozenset({1})
    assert stat_set(second, "typeBPeak").members == frozenset({1})
    pair = (frozenset({0}), frozenset({1}))
    assert factorization_counts(first, "typeBPeak")[pair] == 4
    assert factorization_counts(second, "typeBPeak")[pair] == 3


def test_closure_dimensions_are_fibonacci():
    for n in (1, 2, 3, 4):
        report = closure_check(n, "A", "interiorPeak")
        assert report["closed"] and report["dim"] == fibonacci(n - 1)
        report = closure_check(n, "A", "leftPeak")
        assert report["closed"] and report["dim"] == fibonacci(n)
    report = closure_check(2, "B", "typeBPeak")
    assert report["closed"] and report["dim"] == fibonacci(3)


def test_signed_closure_fails_at_three():
    report = closure_check(3, "B", "typeBPeak")
    assert not report["closed"]
    certificate = report["certificate"]
    assert certificate["windows"] and certificate["values"]
    assert len(set(certificate["values"])) == 2
    # the certificate names two same-class windows with different products
    w1, w2 = (SignedPermutation.parse(w) for w in certificate["windows"])
    key = frozenset(certificate["class"])
    assert stat_set(w1, "typeBPeak").members == key
    assert stat_set(w2, "typeBPeak").members == key


def test_descent_algebras_are_closed():
    for n in (2, 3):
        assert closure_check(n, "A", "descentA")["closed"]
        assert closure_check(n, "B", "descentB")["closed"]


def test_descent_algebra_containment():
    for n in (2, 3, 4):
        assert descent_algebra_containment(n, "A", "interiorPeak")
        assert descent_algebra_containment(n, "A", "leftPeak")
        assert descent_algebra_containment(n, "B", "typeBPeak")


def test_interior_classes_form_an_ideal_of_the_left_span():
    for n in (2, 3, 4):
        inner = list(class_sums(n, "A", "interiorPeak").values())
        outer = list(class_sums(n, "A", "leftPeak").values())
        assert span_contains_all(outer, inner)
        assert ideal_check(inner, outer)["ideal"]


def test_interior_classes_are_not_an_ideal_of_everything():
    deltas = [AlgebraElement.delta(p) for p in enumerate_group(3, "A")]
    inner = list(class_sums(3, "A", "interiorPeak").values())
    report = ideal_check(inner, deltas)
    assert not report["ideal"]
    assert report["witness"]


def test_number_mode_closures():
    assert closure_check(3, "A", "interiorPeak", mode="number")["closed"]
    assert closure_check(3, "A", "leftPeak", mode="number")["closed"]
    assert not closure_check(3, "B", "typeBPeak", mode="number")["closed"]


def test_right_count_closure_is_proper_at_four():
    sums = list(class_sums(4, "A", "rightPeak", mode="number").values())
    grown = multiplicative_closure(sums)
    assert grown["dim_start"] == 3
    assert grown["dim_start"] < grown["dim_closure"] < group_order(4, "A")


def test_multiplicative_closure_of_nothing():
    assert multiplicative_closure([]) == {"dim_start": 0, "dim_closure": 0, "closed": True}


def test_cache_cold_and_warm_agree(tmp_path):
    cold = load_structure_table(3, "B", "typeBPeak", cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].name == "structure_v1_B_typeBPeak_set_n3.json"
    warm = load_structure_table(3, "B", "typeBPeak", cache_dir=str(tmp_path))
    assert cold.counts == warm.counts and cold.keys == warm.keys


def test_cache_recovers_from_a_stale_file(tmp_path):
    fresh = load_structure_table(2, "A", "interiorPeak", cache_dir=str(tmp_path))
    path = next(tmp_path.iterdir())
    path.write_text(json.dumps({"format_version": 999}))
    again = load_structure_table(2, "A", "interiorPeak", cache_dir=str(tmp_path))
    assert again.counts == fresh.counts
    # the stale file was replaced by a readable one
    assert StructureTable.from_json(path.read_text()).counts == fresh.counts


def test_cache_directory_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PEAKALG_CACHE_DIR", str(tmp_path / "boxed"))
    assert str(cache_directory()) == str(tmp_path / "boxed")
    assert str(cache_directory(str(tmp_path / "named"))) == str(tmp_path / "named")

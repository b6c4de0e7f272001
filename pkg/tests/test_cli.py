"""Command line entry point: subcommands, formats, exit codes, and bounds."""

import csv
import io
import json

import pytest

from peakalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.rstrip("\n"), captured.err.rstrip("\n")


def test_peaks_signed_example(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "-2,3,4,-5,1", "--flavor", "typeB")
    assert code == 0
    assert out == "{0,3}"


def test_peaks_single_flavor(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "2,1,4,3,5", "--flavor", "interior")
    assert code == 0
    assert out == "{3}"
    code, out, _ = run(capsys, "peaks", "--window", "2,1,4,3,5", "--flavor", "left")
    assert out == "{1,3}"


def test_peaks_all_flavors_json(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "2,1,4,3,5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "A"
    stats = payload["statistics"]
    assert stats["interiorPeak"] == [3]
    assert stats["leftPeak"] == [1, 3]
    assert stats["rightPeak"] == [3, 5]
    assert stats["exteriorPeak"] == [1, 3, 5]
    assert stats["descentA"] == [1, 3]
    assert "typeBPeak" not in stats  # unsigned window


def test_peaks_signed_all_flavors(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "-2,3,4,-5,1", "--format", "json")
    assert code == 0
    stats = json.loads(out)["statistics"]
    assert stats["typeBPeak"] == [0, 3]
    assert stats["descentB"] == [0, 3]


def test_peaks_flavor_forces_signed_parse(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "1,2", "--flavor", "typeB")
    assert code == 0
    assert out == "{}"


def test_peaks_csv(capsys):
    code, out, _ = run(capsys, "peaks", "--window", "2,1,3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["flavor"] == "interiorPeak"
    assert {"flavor", "members"} == set(rows[0])


def test_peaks_invalid_window(capsys):
    code, out, err = run(capsys, "peaks", "--window", "1,1")
    assert code == 2
    assert out == ""
    record = json.loads(err)
    assert record["error"]["code"] == "usage"


def test_unknown_flavor(capsys):
    code, _, err = run(capsys, "peaks", "--window", "1,2", "--flavor", "bogus")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_extensions_from_file(tmp_path, capsys):
    path = tmp_path / "vee.poset"
    path.write_text("# two maxima\n3<1\n3<2\n")
    code, out, _ = run(capsys, "extensions", "--file", str(path))
    assert code == 0
    assert out.splitlines() == ["3,1,2", "3,2,1", "count: 2"] or set(
        out.splitlines()[:-1]
    ) == {"3,1,2", "3,2,1"}


def test_extensions_signed_file(tmp_path, capsys):
    path = tmp_path / "b2.poset"
    path.write_text("1<0\n1<-2\n")
    code, out, _ = run(capsys, "extensions", "--file", str(path), "--signed", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 3
    assert set(payload["extensions"]) == {"2,-1", "-1,-2", "-2,-1"}


def test_extensions_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1<2\n"))
    code, out, _ = run(capsys, "extensions", "--file", "-", "--format", "json")
    assert code == 0
    assert json.loads(out)["count"] == 1


def test_extensions_missing_file(capsys):
    code, _, err = run(capsys, "extensions", "--file", "/no/such/file")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_census_default_alphabet(capsys):
    code, out, _ = run(capsys, "census", "--window", "1", "--k", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["alphabet"] == "prime"
    assert payload["total"] == 6
    assert {tuple(e["exponents"]): e["count"] for e in payload["entries"]} == {
        (0, 1, 0, 0): 2,
        (0, 0, 1, 0): 2,
        (0, 0, 0, 1): 2,
    }


def test_census_signed_window(capsys):
    code, out, _ = run(capsys, "census", "--window", "-1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["alphabet"] == "plusMinus"
    assert payload["total"] == 4


def test_census_mismatched_alphabet(capsys):
    code, _, err = run(capsys, "census", "--window", "-1", "--alphabet", "prime")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_qsym_rank_report(capsys):
    code, out, _ = run(capsys, "qsym", "--report-ranks", "--flavor", "interior", "--n-max", "5")
    assert code == 0
    assert out.endswith("all match: True")


def test_qsym_expansion(capsys):
    code, out, _ = run(
        capsys, "qsym", "--flavor", "typeB", "--n", "1", "--members", "{0}", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["terms"] == [{"parts": [0, 1], "coeff": "2"}]
    assert payload["typeB"] is True


def test_qsym_expansion_fundamental(capsys):
    code, out, _ = run(
        capsys, "qsym", "--flavor", "interior", "--n", "2", "--basis", "F", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["basis"] == "F"
    assert {tuple(t["parts"]): t["coeff"] for t in payload["terms"]} == {
        (2,): "2",
        (1, 1): "2",
    }


def test_qsym_invalid_members(capsys):
    code, _, err = run(capsys, "qsym", "--flavor", "interior", "--n", "3", "--members", "{1}")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_structure_frozen_constant(tmp_path, capsys):
    code, out, _ = run(
        capsys, "structure", "--flavor", "interior", "--n", "3",
        "--cache-dir", str(tmp_path), "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    entry = next(
        e for e in payload["entries"] if e["A"] == [2] and e["B"] == [2] and e["C"] == []
    )
    assert entry["count"] == 1
    assert (tmp_path / "structure_v1_A_interiorPeak_set_n3.json").exists()


def test_structure_cache_warm_run_is_identical(tmp_path, capsys):
    args = ("structure", "--flavor", "typeB", "--n", "2", "--cache-dir", str(tmp_path),
            "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert (code1, out1) == (code2, out2)
    code3, out3, _ = run(capsys, *args, "--refresh-cache")
    assert out3 == out1


def test_closure_signed_failure(capsys):
    code, out, _ = run(capsys, "closure", "--flavor", "typeB", "--n", "3", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["closure"]["closed"] is False
    assert payload["closure"]["certificate"]["windows"]


def test_closure_signed_success_below_three(capsys):
    code, out, _ = run(capsys, "closure", "--flavor", "typeB", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["closure"]["dim"] == 3


def test_closure_with_ideal_and_containment(capsys):
    code, out, _ = run(
        capsys, "closure", "--flavor", "interior", "--n", "3",
        "--ideal-in", "left", "--descent-containment", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["closure"]["closed"] is True
    assert payload["ideal_in"]["ideal"] is True
    assert payload["descent_containment"] is True


def test_orderpoly_frozen(capsys):
    code, out, _ = run(capsys, "orderpoly", "--n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["polynomials"] == [
        {
            "peaks": 0,
            "coefficients": ["0", "0", "2"],
            "values": {"0": "0", "1": "2", "2": "8", "3": "18", "4": "32"},
        }
    ]


def test_orderpoly_unrealizable_count(capsys):
    code, _, err = run(capsys, "orderpoly", "--n", "2", "--peaks", "1")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_idempotents(capsys):
    code, out, _ = run(capsys, "idempotents", "--n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["multiplicative"] is True
    assert [s["peak_count"] for s in payload["idempotents"]] == [0, 1]


def test_negatives_full_battery(capsys):
    code, out, _ = run(capsys, "negatives", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    witnesses = [r for r in payload["reports"] if not r["control"]]
    assert len(witnesses) == 6
    assert all(not r["closed"] for r in witnesses)


def test_negatives_short_sweep_exits_nonzero(capsys):
    # at n <= 2 the unsigned statistics have not failed yet
    code, out, _ = run(capsys, "negatives", "--n-max", "2", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    closed = [r["statistic"] for r in payload["reports"] if not r["control"] and r["closed"]]
    assert "A:rightPeak:set" in closed


def test_verify_small_bound_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "10/10 checks passed"
    assert sum(1 for line in lines if line.startswith("PASS")) == 10


def test_verify_check_subset(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "examples,ranks", "--n-max", "4", "--jobs", "2")
    assert code == 0
    assert out.splitlines()[-1] == "2/2 checks passed"


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--checks", "bogus")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "usage"


def test_size_bounds_enforced(capsys):
    code, _, err = run(capsys, "structure", "--flavor", "interior", "--n", "9")
    assert code == 2
    assert "--allow-large" in json.loads(err)["error"]["message"]
    code, _, err = run(capsys, "closure", "--flavor", "typeB", "--n", "7")
    assert code == 2
    assert "--allow-large" in json.loads(err)["error"]["message"]


def test_cache_dir_environment_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PEAKALG_CACHE_DIR", str(tmp_path))
    code, _, _ = run(capsys, "structure", "--flavor", "typeB", "--n", "2")
    assert code == 0
    assert (tmp_path / "structure_v1_B_typeBPeak_set_n2.json").exists()


def test_argparse_errors_and_help(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["--help"]) == 0
    capsys.readouterr()
    assert main(["peaks"]) == 2  # --window is required
    capsys.readouterr()

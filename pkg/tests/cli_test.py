from __future__ import annotations

import json

import pytest

from opentorus.python import toruscli, torusclassify, toruscorpus, torusinvariants, torusverify


def _run(capsys, main, argv: list[str]) -> tuple[int, dict, str]:
    code = main(argv)
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip().startswith("{") else {}
    return code, payload, captured.err


def test_invariants_hyperbolic(capsys) -> None:
    code, payload, _ = _run(capsys, torusinvariants.main, ["--theta", "2/5", "--matrix", "2,1;1,1"])
    assert code == 0
    assert payload["schema"] == 1
    assert payload["tool"]["name"] == "torusinvariants"
    assert payload["K0"]["group"] == "Z^2"
    assert payload["K1"]["group"] == "Z^2"
    assert payload["K0"]["pairing"] == ["1", "2/5"]
    assert "build_info" in payload
    assert payload["tolerances"]["cocycle"] == 1e-12


def test_invariants_trace_two(capsys) -> None:
    code, payload, _ = _run(capsys, torusinvariants.main, ["--theta", "1/2", "--matrix", "1,3;0,1", "--no-build-info"])
    assert code == 0
    assert payload["K0"]["group"] == "Z^3"
    assert payload["K1"]["group"] == "Z^3 + Z_3"
    assert payload["pv"]["coker"] == "Z + Z_3"
    assert "build_info" not in payload


def test_invariants_finite_order_exits_two(capsys) -> None:
    code, _, err = _run(capsys, torusinvariants.main, ["--theta", "1/2", "--matrix", "0,-1;1,0"])
    assert code == 2
    assert "finite order" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["--theta", "1/0", "--matrix", "2,1;1,1"],
        ["--theta", "1/3", "--matrix", "2,1;1"],
        ["--theta", "1/3", "--matrix", "2,0;0,1"],
    ],
)
def test_invariants_bad_input_exits_one(capsys, argv) -> None:
    code, _, err = _run(capsys, torusinvariants.main, argv)
    assert code in (1, 2)
    assert "torusinvariants: error:" in err


def test_invariants_parse_error_is_exit_one(capsys) -> None:
    code, _, _ = _run(capsys, torusinvariants.main, ["--theta", "x", "--matrix", "2,1;1,1"])
    assert code == 1


def test_missing_required_argument_exits_one(capsys) -> None:
    with pytest.raises(SystemExit) as ex:
        torusinvariants.main(["--theta", "1/3"])
    assert ex.value.code == 1


def test_text_output(capsys) -> None:
    code = torusinvariants.main(["--theta", "2/5", "--matrix", "2,1;1,1", "--output", "text", "--no-build-info"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert "K0.group=Z^2" in out
    assert "K0.pairing=1,2/5" in out
    assert "theta=2/5" in out
    assert "schema=1" in out
    assert "tool.name=torusinvariants" in out
    assert any(line.startswith("tolerances.") for line in out)
    assert not any(line.startswith("build_info") for line in out)


@pytest.mark.parametrize(
    "argv, verdict, reason",
    [
        (["--theta", "1/3", "--matrix", "2,1;1,1", "--theta2", "2/3", "--matrix2", "2,1;1,1"], "NotDistinguished", ""),
        (["--theta", "1/3", "--matrix", "2,1;1,1", "--matrix2", "3,1;2,1"], "Distinguished", "K1"),
        (["--theta", "1/5", "--matrix", "2,1;1,1", "--theta2", "2/5", "--matrix2", "2,1;1,1"], "Distinguished", "angle"),
        (["--theta", "0/1", "--matrix", "1,3;0,1", "--matrix2", "1,0;3,1"], "NotDistinguished", ""),
    ],
)
def test_classify_pair(capsys, argv, verdict, reason) -> None:
    code, payload, _ = _run(capsys, torusclassify.main, argv)
    assert code == 0
    assert (payload["verdict"], payload["reason"]) == (verdict, reason)


def test_classify_pair_certifies_reversor(capsys) -> None:
    argv = ["--theta", "1/3", "--matrix", "2,1;1,1", "--theta2", "2/3", "--matrix2", "2,1;1,1"]
    _, payload, _ = _run(capsys, torusclassify.main, argv)
    assert payload["certified_isomorphic"] is True
    assert payload["left"]["theta"] == "1/3" and payload["right"]["theta"] == "2/3"


def test_classify_pair_finite_order(capsys) -> None:
    code, _, err = _run(capsys, torusclassify.main, ["--theta", "1/3", "--matrix", "0,-1;1,0", "--matrix2", "2,1;1,1"])
    assert code == 2
    assert "hypothesis violated" in err


def test_verify_cocycle(capsys) -> None:
    code, payload, _ = _run(capsys, torusverify.main, ["--suite", "cocycle", "--seed", "7"])
    assert code == 0
    assert payload["passed"] is True
    deviations = [p["max_deviation"] for p in payload["suites"][0]["properties"]]
    assert max(deviations) <= 1e-12


def test_verify_rieffel(capsys) -> None:
    code, payload, _ = _run(capsys, torusverify.main, ["--suite", "rieffel", "--theta", "1/3", "--grid", "4096"])
    assert code == 0
    props = {p["name"]: p for p in payload["suites"][0]["properties"]}
    assert props["rieffel_trace"]["max_deviation"] <= 1e-5
    assert props["projection_defect"]["max_deviation"] <= 1e-9
    report = payload["suites"][0]["report"]
    assert {"theta", "trace_estimate", "error_estimate", "projection_defect"} <= report.keys()
    assert report["theta"] == "1/3"


def test_verify_reversor_none_within_bound(capsys) -> None:
    code, payload, _ = _run(capsys, torusverify.main, ["--suite", "reversor", "--matrix", "4,9;7,16", "--bound", "40"])
    assert code == 0
    assert "none found within bound" in payload["suites"][0]["properties"][0]["detail"]


def test_verify_unknown_suite(capsys) -> None:
    code, _, err = _run(capsys, torusverify.main, ["--suite", "nope"])
    assert code == 1
    assert "unknown suite" in err


def test_verify_is_deterministic(capsys) -> None:
    argv = ["--suite", "representation", "--seed", "3", "--no-build-info"]
    _, first, _ = _run(capsys, torusverify.main, argv)
    _, second, _ = _run(capsys, torusverify.main, argv)
    assert first == second


def test_corpus_shipped(capsys) -> None:
    code, payload, _ = _run(capsys, toruscorpus.main, [])
    assert code == 0
    assert payload["summary"] == {"rows": 6, "pairs": 15, "errors": 0}


def test_corpus_with_bad_line(capsys, tmp_path) -> None:
    path = tmp_path / "corpus.txt"
    path.write_text("1/3;2,1;1,1\n1/3;oops\n1/3;3,1;2,1\n", encoding="utf-8")
    code, payload, err = _run(capsys, toruscorpus.main, [str(path)])
    assert code == 1
    assert payload["summary"] == {"rows": 2, "pairs": 1, "errors": 1}
    assert "line 2" in err


def test_corpus_missing_file(capsys, tmp_path) -> None:
    code, _, err = _run(capsys, toruscorpus.main, [str(tmp_path / "missing.txt")])
    assert code == 1
    assert "cannot read input" in err


def test_dispatcher(capsys) -> None:
    assert toruscli.main(["invariants", "--theta", "2/5", "--matrix", "2,1;1,1"]) == 0
    capsys.readouterr()
    assert toruscli.main(["bogus"]) == 1
    assert "unknown command" in capsys.readouterr().err
    assert toruscli.main([]) == 1


def test_corpus_with_out_of_range_line(capsys, tmp_path) -> None:
    path = tmp_path / "corpus.txt"
    path.write_text("1/3;2,1;1,1\n1/3;4294967296,1;1,4294967296\n1/3;3,1;2,1\n", encoding="utf-8")
    code, payload, err = _run(capsys, toruscorpus.main, [str(path)])
    assert code == 1
    assert payload["summary"] == {"rows": 2, "pairs": 1, "errors": 1}
    assert "line 2" in err


def test_verify_element_from_file(capsys, tmp_path) -> None:
    path = tmp_path / "element.json"
    path.write_text(json.dumps([{"element": [0, 0], "re": 2.0, "im": 0.0}, {"element": [1, -1], "re": 0.5, "im": 0.0}]))
    code, payload, _ = _run(capsys, torusverify.main, ["--suite", "element", "--element", str(path)])
    assert code == 0
    (suite,) = payload["suites"]
    assert suite["passed"]
    assert suite["report"]["source"] == "input"
    assert suite["report"]["trace"] == [2.0, 0.0]


def test_verify_element_with_bad_json(capsys, tmp_path) -> None:
    path = tmp_path / "element.json"
    path.write_text("[{")
    code = torusverify.main(["--suite", "element", "--element", str(path)])
    assert code == 1
    assert "invalid element JSON" in capsys.readouterr().err


def test_tools_package_has_no_reexports() -> None:
    import opentorus.python as tools

    assert not hasattr(tools, "__all__")
    assert not any(name.startswith("cmd_") for name in vars(tools))

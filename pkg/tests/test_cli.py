"""Command-line behaviour: payload shapes, exit codes, determinism, SVG."""

import json
import math

import jsonschema
import pytest

from iet3.cli import main

GOLDEN = "(-1+sqrt(5))/2"
GOLDEN_L = "(1+sqrt(5))/4"


@pytest.fixture(scope="module")
def schema():
    from importlib import resources

    with resources.files("iet3").joinpath("schema.json").open() as handle:
        return json.load(handle)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys, schema):
    code, out, err = run(["--json"] + argv, capsys)
    assert out.count("{") >= 1
    doc = json.loads(out)  # exactly one JSON document
    jsonschema.validate(doc, schema)
    return code, doc, err


# -- generation ---------------------------------------------------------------


def test_gen3iet_prints_the_bare_word(capsys):
    code, out, err = run(
        ["gen3iet", "--epsilon", GOLDEN, "--l", GOLDEN_L, "--c", "0", "--n", "5"],
        capsys,
    )
    assert (code, out, err) == (0, "AACAB\n", "")


def test_gen3iet_with_zero_letters_prints_nothing(capsys):
    code, out, err = run(
        ["gen3iet", "--epsilon", GOLDEN, "--l", GOLDEN_L, "--n", "0"], capsys
    )
    assert (code, out, err) == (0, "", "")


def test_gen3iet_rejects_an_l_below_the_bound(capsys):
    code, out, err = run(
        ["gen3iet", "--epsilon", GOLDEN, "--l", "1/2", "--n", "5"], capsys
    )
    assert code == 1
    assert "l > max(epsilon, 1-epsilon)" in err


def test_gen3iet_json_carries_exact_orbit_points(capsys, schema):
    code, doc, err = run_json(
        ["gen3iet", "--epsilon", GOLDEN, "--l", GOLDEN_L, "--n", "3"], capsys, schema
    )
    assert code == 0
    assert doc["word"] == "AAC"
    assert doc["orbit"][0] == {"exact": "0", "approx": 0.0}
    assert doc["orbit"][1]["exact"] == "(3-sqrt(5))/2"
    assert math.isclose(doc["orbit"][1]["approx"], (3 - 5**0.5) / 2)


def test_gensturm_codes_the_rotation(capsys, schema):
    code, doc, err = run_json(
        ["gensturm", "--epsilon", GOLDEN, "--n", "10"], capsys, schema
    )
    assert code == 0
    assert doc["word"] == "0010010100"


def test_gensturm_validates_the_slope(capsys):
    code, out, err = run(["gensturm", "--epsilon", "3/2", "--n", "4"], capsys)
    assert code == 1 and "epsilon" in err


# -- induction ----------------------------------------------------------------


def test_induce_reports_three_matching_pieces(capsys, schema):
    code, doc, err = run_json(
        ["induce", "--epsilon", GOLDEN, "--l", GOLDEN_L], capsys, schema
    )
    assert code == 0
    assert doc["matches_exchange"] is True
    assert [p["return_time"] for p in doc["pieces"]] == [1, 2, 1]


def test_induce_on_a_chosen_interval_skips_the_comparison(capsys, schema):
    code, doc, err = run_json(
        [
            "induce", "--epsilon", GOLDEN, "--l", GOLDEN_L,
            "--e-lo", "0", "--e-hi", "1/2",
        ],
        capsys,
        schema,
    )
    assert code == 0 and doc["matches_exchange"] is None


def test_induce_needs_both_interval_endpoints(capsys):
    code, out, err = run(
        ["induce", "--epsilon", GOLDEN, "--l", GOLDEN_L, "--e-lo", "0"], capsys
    )
    assert code == 1 and "together" in err


# -- analysis -----------------------------------------------------------------


def test_analyze_runs_all_ternary_checks_by_default(capsys, schema, tmp_path):
    path = tmp_path / "word.txt"
    path.write_text("AACABACABABACABACAAC\n")
    code, doc, err = run_json(["analyze", "--file", str(path)], capsys, schema)
    assert code == 0
    assert doc["alphabet"] == "ternary"
    assert doc["complexity"]["counts"][1] == 3
    assert doc["balance"]["max_imbalance"] >= 1
    assert doc["certificate"]["verdict"] == "consistent-with-3iet"


def test_analyze_on_binary_words_skips_the_certificate(capsys, schema):
    code, doc, err = run_json(["analyze", "--word", "01001010"], capsys, schema)
    assert code == 0
    assert doc["alphabet"] == "binary"
    assert doc["certificate"] is None
    assert doc["complexity"] is not None and doc["balance"] is not None


def test_analyze_rejects_unknown_checks_and_binary_certificates(capsys):
    code, out, err = run(
        ["analyze", "--word", "ABC", "--checks", "entropy"], capsys
    )
    assert code == 1 and "unknown checks" in err
    code, out, err = run(
        ["analyze", "--word", "0101", "--checks", "certificate"], capsys
    )
    assert code == 1 and "ternary" in err


def test_analyze_requires_exactly_one_word_source(capsys):
    code, out, err = run(["analyze"], capsys)
    assert code == 1
    code, out, err = run(
        ["analyze", "--word", "A", "--file", "/nonexistent"], capsys
    )
    assert code == 1


# -- predicates ----------------------------------------------------------------


def test_idoc_distinguishes_the_reference_cases(capsys, schema):
    code, doc, err = run_json(
        ["idoc", "--epsilon", GOLDEN, "--l", GOLDEN_L], capsys, schema
    )
    assert code == 0 and doc["idoc"] is True

    code, doc, err = run_json(
        ["idoc", "--epsilon", GOLDEN, "--l", "3-sqrt(5)"], capsys, schema
    )
    assert code == 0 and doc["idoc"] is False and doc["l_in_z_epsilon"] is True


def test_sturm_verdict_payload(capsys, schema):
    code, doc, err = run_json(["sturm", "--value", "(2-sqrt(2))/4"], capsys, schema)
    assert code == 0
    assert doc["is_sturm"] is False
    assert doc["in_unit_interval"] is True
    assert doc["conjugate_outside_unit_interval"] is False


# -- recovery and audit ----------------------------------------------------------


def test_recover_round_trips_the_golden_parameters(
    capsys, schema, tmp_path, golden_word_100k
):
    path = tmp_path / "u.txt"
    path.write_text(golden_word_100k[:4000].letters + "\n")
    code, doc, err = run_json(
        ["recover", "--file", str(path), "--epsilon", GOLDEN], capsys, schema
    )
    assert code == 0
    assert doc["c_hat"]["exact"] == "0"
    assert doc["match_fraction"] == {"exact": "1", "approx": 1.0}
    assert doc["convention"] == "left-closed"


def test_audit_passes_the_invariant_instance(capsys, schema):
    code, doc, err = run_json(
        ["audit", "--morphism", "A>AB;B>AACA;C>A"], capsys, schema
    )
    assert code == 0
    assert doc["overall"] == "pass"
    assert doc["note"] == "no necessary condition violated"
    assert doc["epsilon"]["exact"] == "1/2*sqrt(2)"
    assert doc["sturm"]["is_sturm"] is True
    assert err == ""


def test_audit_not_applicable_exits_zero(capsys, schema):
    code, doc, err = run_json(
        ["audit", "--morphism", "A>ACA;B>ACA;C>B"], capsys, schema
    )
    assert code == 0
    assert doc["overall"] == "not-applicable"


def test_audit_parse_errors_exit_one(capsys):
    code, out, err = run(["audit", "--morphism", "A>"], capsys)
    assert code == 1 and "error" in err


def test_seed_prefix_length_is_adjustable(capsys, schema):
    code, doc, err = run_json(
        ["--seed-prefix-len", "2000", "audit", "--morphism", "A>AB;B>AACA;C>A"],
        capsys,
        schema,
    )
    assert code == 0 and doc["prefix_length"] == 2000


def test_search_summarises_every_candidate(capsys, schema):
    code, doc, err = run_json(
        ["search", "--max-total-length", "5"], capsys, schema
    )
    assert code == 0
    counts = doc["counts"]
    assert sum(v for k, v in counts.items() if k != "total") == counts["total"]
    assert counts["audit-fail"] == 0


# -- figures -------------------------------------------------------------------


def test_svg_writes_the_figure_and_reports_geometry(capsys, schema, tmp_path):
    out_path = tmp_path / "line.svg"
    code, doc, err = run_json(
        ["svg", "--word", "AACAB", "--out", str(out_path)], capsys, schema
    )
    assert code == 0
    assert doc["segments"] == 5
    text = out_path.read_text()
    assert text.count("<svg") == 1
    assert 'class="stepped"' in text
    assert 'class="corridor-01"' in text and 'class="corridor-10"' in text


def test_svg_of_the_empty_word_is_axes_only(capsys, schema, tmp_path):
    out_path = tmp_path / "empty.svg"
    code, doc, err = run_json(["svg", "--out", str(out_path)], capsys, schema)
    assert code == 0 and doc["segments"] == 0
    text = out_path.read_text()
    assert 'class="axis"' in text and 'class="stepped"' not in text


def test_svg_rejects_binary_words_and_requires_out(capsys, tmp_path):
    code, out, err = run(
        ["svg", "--word", "0101", "--out", str(tmp_path / "x.svg")], capsys
    )
    assert code == 1 and "ternary" in err
    code, out, err = run(["svg", "--word", "ABC"], capsys)
    assert code == 1 and "--out" in err


# -- global behaviour --------------------------------------------------------------


def test_json_output_is_byte_identical_across_runs(capsys):
    argv = ["--json", "audit", "--morphism", "A>AB;B>AACA;C>A"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second


def test_out_duplicates_the_rendered_payload(capsys, tmp_path):
    path = tmp_path / "verdict.json"
    code, out, err = run(
        ["--json", "--out", str(path), "sturm", "--value", "1/2"], capsys
    )
    assert code == 0
    assert path.read_text() == out


def test_flags_are_accepted_on_either_side_of_the_subcommand(capsys):
    before = run(["--json", "sturm", "--value", "1/2"], capsys)
    after = run(["sturm", "--value", "1/2", "--json"], capsys)
    assert before == after


def test_usage_errors_exit_one_and_help_exits_zero(capsys):
    assert run(["no-such-command"], capsys)[0] == 1
    assert run(["sturm"], capsys)[0] == 1
    assert run(["--help"], capsys)[0] == 0
    assert run([], capsys)[0] == 1

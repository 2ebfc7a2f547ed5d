"""Command line behavior: payload shapes, exit codes, determinism."""

import json

import pytest
from click.testing import CliRunner

from sigma2lab.circuits import circuit_to_json, demo_accept_all
from sigma2lab.cli import main

K_PATTERN = "(ac*b+c)*"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke_json(runner, args):
    result = runner.invoke(main, args + ["--json"])
    assert result.exit_code == 0, result.output + str(result.exception)
    return json.loads(result.output)


# ---------------------------------------------------------------------------
# analyze


def test_analyze_block_language(runner):
    payload = invoke_json(runner, ["analyze", K_PATTERN, "--alphabet", "abc"])
    assert payload["description"] == K_PATTERN
    assert payload["alphabet"] == ["a", "b", "c"]
    assert payload["monoid"]["size"] == 6
    assert payload["neutral_letters"] == ["c"]
    assert payload["sigma2_lt"]["holds"] is False
    assert payload["sigma2_lt"]["replay"]["passed"] is True
    assert payload["pi2_lt"]["holds"] is True
    assert payload["delta2_lt"] == {"holds": False, "fails_on": ["sigma2_lt"]}


def test_analyze_full_language(runner):
    payload = invoke_json(runner, ["analyze", "(a+b)*", "--alphabet", "ab"])
    assert payload["sigma2_lt"]["holds"] is True
    assert payload["pi2_lt"]["holds"] is True
    assert payload["delta2_lt"] == {"holds": True}


def test_analyze_is_byte_stable(runner):
    args = ["analyze", K_PATTERN, "--alphabet", "abc", "--json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.output == second.output


def test_analyze_renders_lines_from_same_payload(runner):
    result = runner.invoke(main, ["analyze", K_PATTERN, "--alphabet", "abc"])
    assert result.exit_code == 0
    assert "sigma2_lt" in result.output
    assert "holds" in result.output


def test_analyze_syntax_error_exits_two(runner):
    result = runner.invoke(main, ["analyze", "(ac*b", "--alphabet", "abc"])
    assert result.exit_code == 2
    assert "syntax error" in result.stderr


def test_analyze_unknown_symbol_exits_two(runner):
    result = runner.invoke(main, ["analyze", "ad", "--alphabet", "abc"])
    assert result.exit_code == 2


def test_analyze_monoid_limit_exits_three(runner):
    result = runner.invoke(
        main, ["analyze", K_PATTERN, "--alphabet", "abc", "--monoid-limit", "3"]
    )
    assert result.exit_code == 3
    assert "monoid too large" in result.stderr


# ---------------------------------------------------------------------------
# lab klimit


def test_klimit_good_family(runner):
    payload = invoke_json(runner, ["lab", "klimit", "--u", "abbb", "--k", "1"])
    assert payload["input"] == {
        "u": "abbb",
        "n": 4,
        "k": 1,
        "family": "good",
        "family_size": 4,
    }
    assert payload["verdict"] is True
    assert payload["witness"] is None
    assert payload["verification"] == {"recheck_is_limit": True, "passed": True}


def test_klimit_with_counterexample(runner):
    payload = invoke_json(
        runner, ["lab", "klimit", "--u", "baba", "--family", "abab", "--k", "1"]
    )
    assert payload["verdict"] is False
    assert payload["witness"] == {"unmatched_positions": [1]}
    assert payload["verification"] == {"no_member_matches": True, "passed": True}


def test_klimit_packed_family(runner):
    payload = invoke_json(
        runner,
        ["lab", "klimit", "--u", "bbbbbbbbb", "--n", "9", "--k", "1", "--family", "1,1,1;2,2,2;3,3,3"],
    )
    assert payload["input"]["family_size"] == 3
    assert payload["verdict"] is True


def test_klimit_length_mismatch_exits_two(runner):
    result = runner.invoke(
        main, ["lab", "klimit", "--u", "abab", "--family", "abbbabbba", "--k", "1"]
    )
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# lab flower


def test_flower_over_good_nine(runner):
    payload = invoke_json(runner, ["lab", "flower", "--n", "9", "-p", "2"])
    assert payload["verdict"] is True
    assert payload["witness"] == {"core": [], "petals": [[1, 4, 7], [2, 5, 8]]}
    assert payload["verification"] == {"flower_property": True, "passed": True}


def test_flower_not_found_is_clean(runner):
    payload = invoke_json(
        runner, ["lab", "flower", "--n", "4", "-p", "3", "--family", "abab"]
    )
    assert payload["verdict"] is False
    assert payload["witness"] is None
    assert payload["verification"] == {"passed": True}


def test_flower_sampling_is_seeded(runner):
    args = ["lab", "flower", "--n", "9", "-p", "2", "--sample", "6", "--seed", "3", "--json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.output == second.output
    assert json.loads(first.output)["input"]["family_size"] == 6


def test_flower_oversample_exits_two(runner):
    result = runner.invoke(main, ["lab", "flower", "--n", "4", "-p", "2", "--sample", "99"])
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# lab tangled


def test_tangled_diagonal_family(runner):
    payload = invoke_json(
        runner,
        ["lab", "tangled", "--n", "9", "--k", "1", "--family", "1,1,1;2,2,2;3,3,3"],
    )
    assert payload["verdict"] is True
    assert payload["witness"] is None
    assert payload["verification"] == {
        "distinct_codes": True,
        "within_bound": True,
        "bound": 9,
        "passed": True,
    }


def test_tangled_good_family_gives_limit(runner):
    payload = invoke_json(runner, ["lab", "tangled", "--n", "9", "--k", "1"])
    assert payload["verdict"] is False
    assert payload["witness"] == {
        "member": "1,1,1",
        "position": 1,
        "limit_word": "bbbabbabb",
    }
    assert payload["verification"] == {"not_good": True, "k_limit": True, "passed": True}


def test_tangled_degenerate_k_exits_two(runner):
    result = runner.invoke(main, ["lab", "tangled", "--n", "4", "--k", "3"])
    assert result.exit_code == 2
    assert "needs k constrained positions" in result.stderr


# ---------------------------------------------------------------------------
# lab dichotomy


def test_dichotomy_seeded_run(runner):
    payload = invoke_json(
        runner, ["lab", "dichotomy", "--n", "9", "--k", "1", "--samples", "3", "--seed", "7"]
    )
    assert payload["input"] == {"n": 9, "k": 1, "samples": 3, "seed": 7}
    assert payload["passed"] is True
    verdicts = [(r["input"]["family_size"], r["verdict"]) for r in payload["results"]]
    assert verdicts == [(11, "bad-limit"), (7, "bad-limit"), (18, "bad-limit")]
    assert payload["results"][0]["witness"] == {
        "emptied_block": 1,
        "limit_word": "bbbabbbab",
        "source": "1,1,2",
    }


def test_dichotomy_same_seed_same_bytes(runner):
    args = ["lab", "dichotomy", "--samples", "5", "--k", "1", "--seed", "2", "--json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.output == second.output


# ---------------------------------------------------------------------------
# reduce


def test_expand_good_word(runner):
    payload = invoke_json(runner, ["reduce", "expand", "--word", "abbbabbba"])
    assert payload == {
        "input": {"word": "abbbabbba", "language": K_PATTERN},
        "good": True,
        "expanded": "accbcacbccab",
        "in_language": True,
    }


def test_expand_bad_word(runner):
    payload = invoke_json(runner, ["reduce", "expand", "--word", "abbbbbbab"])
    assert payload["good"] is False
    assert payload["in_language"] is False


def test_expand_non_square_exits_two(runner):
    result = runner.invoke(main, ["reduce", "expand", "--word", "abb"])
    assert result.exit_code == 2


def test_wire_good_word(runner):
    payload = invoke_json(runner, ["reduce", "wire", "--word", "abbbabbba"])
    assert payload["applicable"] is True
    assert payload["good"] is True
    assert payload["x"] == 4
    assert payload["y"] == 1
    assert payload["factors"] == 2
    assert payload["product"] == 4
    assert payload["up_word_accepts"] is True
    assert payload["monoid_word"]["monoid_ref"] == K_PATTERN
    assert len(payload["monoid_word"]["elements"]) == 40


def test_wire_bad_word(runner):
    payload = invoke_json(runner, ["reduce", "wire", "--word", "abbbbbbab"])
    assert payload["good"] is False
    assert payload["product"] == 3  # x y x collapses to the absorbing element
    assert payload["up_word_accepts"] is False


def test_wire_inapplicable_language(runner):
    payload = invoke_json(
        runner, ["reduce", "wire", "--word", "abab", "--lang", "(a+b)*", "--alphabet", "ab"]
    )
    assert payload["applicable"] is False
    assert "reason" in payload


def test_annotate(runner):
    payload = invoke_json(runner, ["reduce", "annotate", "--word", "abcabc", "--moduli", "2,3"])
    assert payload["annotated"] == [
        ["a", []],
        ["b", [2]],
        ["c", [3]],
        ["a", [2]],
        ["b", []],
        ["c", [2, 3]],
    ]


def test_annotate_bad_moduli_exit_two(runner):
    assert runner.invoke(main, ["reduce", "annotate", "--word", "ab", "--moduli", "x,2"]).exit_code == 2
    assert runner.invoke(main, ["reduce", "annotate", "--word", "ab", "--moduli", "0"]).exit_code == 2


# ---------------------------------------------------------------------------
# circuit


def test_circuit_eval_fixture(runner):
    payload = invoke_json(
        runner, ["circuit", "eval", "--word", "abbabbabb", "--fixture", "exact-good"]
    )
    assert payload["accepted"] is True
    assert payload["input"]["k"] == 1
    payload = invoke_json(
        runner, ["circuit", "eval", "--word", "bbbbbbbbb", "--fixture", "exact-good"]
    )
    assert payload["accepted"] is False


def test_circuit_eval_from_file(runner, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(circuit_to_json(demo_accept_all(4)), encoding="utf-8")
    payload = invoke_json(
        runner, ["circuit", "eval", "--word", "abab", "--circuit", str(path)]
    )
    assert payload["accepted"] is True
    assert payload["input"]["circuit"] == str(path)


def test_circuit_source_must_be_unique(runner):
    assert runner.invoke(main, ["circuit", "eval", "--word", "a"]).exit_code == 2
    result = runner.invoke(
        main,
        ["circuit", "eval", "--word", "a", "--fixture", "accept-all", "--circuit", "x.json"],
    )
    assert result.exit_code == 2


def test_circuit_unknown_fixture_exits_two(runner):
    result = runner.invoke(main, ["circuit", "eval", "--word", "a", "--fixture", "nope"])
    assert result.exit_code == 2


def test_adversary_block_selector(runner):
    payload = invoke_json(runner, ["circuit", "adversary", "--fixture", "block-selector"])
    assert payload["status"] == "refuted"
    assert payload["densest_gate"] == 0
    assert payload["gate_family_size"] == 9
    assert payload["word"] == "abbbbbabb"
    assert payload["verification"] == {
        "accepted": True,
        "outside_language": True,
        "k_limit": True,
        "passed": True,
    }


def test_adversary_flower_oracle(runner):
    payload = invoke_json(
        runner,
        ["circuit", "adversary", "--fixture", "block-selector", "--oracle", "flower"],
    )
    assert payload["status"] == "refuted"
    assert payload["word"] == "abbbbbbbb"
    assert payload["verification"]["passed"] is True


def test_adversary_inconclusive(runner):
    payload = invoke_json(runner, ["circuit", "adversary", "--fixture", "exact-good"])
    assert payload["status"] == "hypothesis_not_met"
    assert payload["word"] is None
    assert "verification" not in payload


def test_adversary_fanin_above_k_exits_two(runner):
    result = runner.invoke(
        main, ["circuit", "adversary", "--fixture", "block-selector", "--k", "0"]
    )
    assert result.exit_code == 2

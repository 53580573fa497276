"""
Tests for the bwclusters command-line interface.
"""

import json

import pytest

from src.cli import run, setup_argparse
from src.config import reset_config
from src.domain.models import OrderConditionReport


def output(capsys) -> str:
    return capsys.readouterr().out.strip()


@pytest.mark.unit
class TestWordCommands:
    """Test the word-level commands."""

    def test_bwt(self, capsys):
        """Test the transform in text form."""
        assert run(["bwt", "aab", "--order", "ab"]) == 0
        assert output(capsys) == "baa"

    def test_bwt_json(self, capsys):
        """Test the transform in JSON form."""
        assert run(["--format", "json", "bwt", "abaca", "--order", "acb"]) == 0
        payload = json.loads(output(capsys))
        assert payload == {"word": "abaca", "order": ["a", "c", "b"], "transform": "cbaaa"}

    def test_cluster_true_and_false(self, capsys):
        """Test exit codes follow the verdict."""
        assert run(["cluster", "ba", "--order", "ab"]) == 0
        assert output(capsys) == "order a<b pi a->b,b->a transform ba"
        assert run(["cluster", "baab"]) == 1
        assert output(capsys) == "baab does not cluster"

    def test_cluster_perfect(self, capsys):
        """Test the perfect clustering listing."""
        assert run(["cluster", "bacab", "--perfect"]) == 0
        assert "a<b<c" in output(capsys).splitlines()

    def test_bispecials(self, capsys):
        """Test the empty word is shown explicitly."""
        assert run(["bispecials", "abaa"]) == 0
        lines = output(capsys).splitlines()
        assert lines[0] == "(empty): aa ab ba"
        assert len(lines) == 3

    def test_criterion_json_round_trip(self, capsys):
        """Test the report is emitted as its JSON model."""
        code = run(["--format", "json", "criterion", "baab", "--order", "ab", "--pi", "ba"])

        report = OrderConditionReport.model_validate_json(output(capsys))
        assert code == 1
        assert not report.verdict
        assert report.violations[0].bispecial == ""

    def test_criterion_text(self, capsys):
        """Test the text verdict."""
        assert run(["criterion", "abaa", "--order", "ab", "--pi", "ba"]) == 0
        assert output(capsys) == "verdict: clusters"

    def test_desub(self, capsys):
        """Test the inverse morphism chain."""
        assert run(["desub", "abac"]) == 0
        assert output(capsys).splitlines() == ["tau_a^-1 -> bc", "tau_b^-1 -> c", "letter: c"]
        assert run(["desub", "bacab", "--conjugates"]) == 1
        assert output(capsys) == "false"

    def test_language(self, capsys):
        """Test the circular language profile."""
        assert run(["language", "abc", "--max", "2"]) == 0
        lines = output(capsys).splitlines()
        assert lines[0] == "closed under reversal: false"
        assert lines[1:] == ["0: 1", "1: 3", "2: 3"]


@pytest.mark.unit
class TestLanguageCommands:
    """Test the directive language commands."""

    def test_ar_bound(self, capsys):
        """Test the Tribonacci bound."""
        assert run(["ar", "bound", "--directive", ":abc"]) == 0
        assert output(capsys) == "26"

    def test_ar_longword(self, capsys):
        """Test the Tribonacci long word."""
        assert run(["ar", "longword", "--directive", ":abc"]) == 0
        assert output(capsys) == "abacabaabacabacabaabacaba"

    def test_ar_gen_alias(self, capsys):
        """Test gen and its evolve alias."""
        assert run(["ar", "evolve", "--directive", ":abc", "--stage", "2"]) == 0
        assert output(capsys).splitlines() == ["A_2 = aba", "B_2 = ba", "C_2 = caba", "w_2 = aba"]

    def test_ar_member(self, capsys):
        """Test membership exit codes."""
        assert run(["ar", "member", "abaca", "--directive", ":abc"]) == 0
        assert run(["ar", "member", "bb", "--directive", ":abc"]) == 1

    def test_complexity(self, capsys):
        """Test the Tribonacci complexity listing."""
        assert run(["complexity", "--directive", ":abc", "--max", "3"]) == 0
        assert output(capsys).splitlines() == ["1: 3", "2: 5", "3: 7"]

    def test_epi_check(self, capsys):
        """Test the infinitely many verdict."""
        assert run(["epi", "check", "--directive", "ab:ac"]) == 0
        assert output(capsys).splitlines() == ["infinitely_many", "head: ab tail: ac"]

    def test_multi_bound(self, capsys):
        """Test the 4-Bonacci bounds."""
        assert run(["multi", "bound", "--directive", ":abcd"]) == 0
        assert output(capsys).splitlines() == ["general: 60", "refined: 58"]

    def test_multi_letters_option(self, capsys):
        """Test the alphabet size option."""
        assert run(["multi", "check", "--directive", ":ab", "--letters", "2"]) == 0
        assert output(capsys).splitlines()[0] == "infinitely_many"

    def test_ptb(self, capsys):
        """Test both constructions."""
        assert run(["ptb1", "ac"]) == 0
        assert output(capsys) == "bacab"
        assert run(["ptb2", "a", "bacab"]) == 0
        assert output(capsys) == "abaacaab"

    def test_verify(self, capsys):
        """Test a small suite run."""
        assert run(["verify", "--suite", "car", "--max", "3"]) == 0
        assert "passed" in output(capsys)


# ============================================================================
# Errors and usage
# ============================================================================


def test_domain_error_exits_2(capsys):
    """Test input errors are reported on stderr."""
    assert run(["bwt", "abc", "--order", "ab"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: ")


def test_invalid_directive_exits_2(capsys):
    """Test a malformed directive word."""
    assert run(["ar", "bound", "--directive", "abc"]) == 2
    assert "Invalid directive word" in capsys.readouterr().err


def test_no_finite_bound_exits_2(capsys):
    """Test the episturmian bound error."""
    assert run(["epi", "bound", "--directive", "ab:ac"]) == 2
    assert "no finite bound" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    """Test argparse errors."""
    assert run(["bwt", "aab"]) == 2
    assert run([]) == 2


@pytest.mark.smoke
def test_help_exits_0(capsys):
    """Test --help."""
    assert run(["--help"]) == 0
    assert "Examples:" in capsys.readouterr().out


@pytest.mark.smoke
def test_parser_lists_all_commands():
    """Test the top-level commands."""
    parser = setup_argparse()
    subparsers = next(a for a in parser._actions if a.dest == "command")

    assert set(subparsers.choices) >= {
        "bwt",
        "cluster",
        "bispecials",
        "criterion",
        "desub",
        "language",
        "complexity",
        "ar",
        "epi",
        "multi",
        "sturmian",
        "ptb1",
        "ptb2",
        "verify",
    }


def test_stage_cap_from_config(capsys, monkeypatch):
    """Test that --stage is capped by BWC_MAX_STAGE."""
    monkeypatch.setenv("BWC_MAX_STAGE", "3")

    assert run(["ar", "gen", "--directive", ":abc", "--stage", "4"]) == 2
    assert "stage must be between 0 and 3" in capsys.readouterr().err
    assert run(["multi", "evolve", "--directive", ":abcd", "--stage", "3"]) == 0


def test_witness_scan_uses_stage_cap(capsys, monkeypatch):
    """Test that witness scans stop at the configured stage."""
    assert run(["epi", "witnesses", "--directive", "ab:ac"]) == 0
    assert len(output(capsys).splitlines()) == 5

    monkeypatch.setenv("BWC_MAX_STAGE", "0")
    reset_config()

    assert run(["epi", "witnesses", "--directive", "ab:ac"]) == 1
    assert output(capsys) == ""


def test_app_name_tags_log_events(capsys, monkeypatch):
    """Test that BWC_APP_NAME is the service bound to every event."""
    monkeypatch.setenv("BWC_APP_NAME", "census-lab")

    assert run(["--log-level", "INFO", "verify", "--suite", "car", "--max", "2"]) == 0

    events = [json.loads(line) for line in capsys.readouterr().err.splitlines()]
    assert [event["event"] for event in events] == ["verify.finish"]
    assert events[0]["service"] == "census-lab"

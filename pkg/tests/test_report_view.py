import io
from fractions import Fraction

import pytest

from models.f2_word import F2Word
from models.report import Finding, Report
from models.tree_point import TreePoint
from utils.errors import InputFormatError
from utils.formatters import format_rational, format_token, parse_rational
from views.base_view import BaseView
from views.report_view import ReportView


class TestFormatToken:

    @pytest.mark.parametrize("value, token", [
        (True, "true"),
        (False, "false"),
        (None, "none"),
        (Fraction(3, 4), "3/4"),
        (Fraction(4, 2), "2"),
        ((1, Fraction(1, 2)), "(1,1/2)"),
        ({3, 1, 2}, "{1,2,3}"),
        (frozenset({"b", "a"}), "{a,b}"),
        ("deux mots", "deux_mots"),
        ([1, (2, 3)], "(1,(2,3))"),
    ])
    def test_tokens(self, value, token):
        assert format_token(value) == token

    def test_tokens_never_contain_spaces(self):
        value = {TreePoint.vertex(F2Word.parse("ab")), TreePoint.vertex(F2Word())}
        assert " " not in format_token(value)

    def test_sets_of_words_follow_shortlex(self):
        words = {F2Word.parse("b"), F2Word.parse("aa"), F2Word.parse("a")}
        assert format_token(words) == "{a,b,aa}"


class TestRationals:

    @pytest.mark.parametrize("text, value", [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), (" 2/4 ", Fraction(1, 2))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "1/0", "0.5", "a"])
    def test_parse_invalid(self, text):
        with pytest.raises(InputFormatError):
            parse_rational(text)

    def test_format(self):
        assert format_rational(Fraction(-6, 4)) == "-3/2"
        assert format_rational(5) == "5"


class TestReportView:

    def test_finding_details_sorted_by_key(self):
        finding = Finding("axiom", "fail", {"witness": (0, 2, 1), "axiom": "A2"})
        assert ReportView.format_finding(finding) == "check=axiom status=fail axiom=A2 witness=(0,2,1)"

    def test_findings_sorted_by_check(self):
        report = Report()
        report.add("zeta", "pass")
        report.add("alpha", "info", n=2)
        report.add("zeta", "fail", n=1)
        lines = ReportView.emit_report(report).splitlines()
        assert lines == [
            "check=alpha status=info n=2",
            "check=zeta status=pass",
            "check=zeta status=fail n=1",
            "verdict=fail count=3",
        ]

    def test_header_then_preamble(self):
        report = Report(header=["tree", "v 0"])
        report.check("median", True)
        text = ReportView.emit_report(report, {"radius": 3, "bound": Fraction(1, 2)})
        assert text.splitlines()[:3] == ["tree", "v 0", "bound=1/2 radius=3"]
        assert text.endswith("verdict=pass count=1\n")

    def test_empty_report(self):
        assert ReportView.emit_report(Report()) == "verdict=pass count=0\n"

    def test_inconclusive_does_not_fail(self):
        report = Report()
        report.add("window", "inconclusive")
        assert report.verdict == "pass"

    def test_unknown_status(self):
        with pytest.raises(ValueError):
            Finding("axiom", "maybe")

    def test_write(self):
        stream = io.StringIO()
        ReportView.write("verdict=pass count=0\n", stream)
        assert stream.getvalue() == "verdict=pass count=0\n"


class TestBaseView:

    def test_messages_go_to_configured_stream(self, monkeypatch):
        stream = io.StringIO()
        monkeypatch.setattr(BaseView, "stream", stream)
        BaseView.display_error("fichier absent")
        assert stream.getvalue() == "ERREUR: fichier absent\n"

    def test_default_stream_is_stderr(self, capsys):
        BaseView.display_error("fenêtre épuisée")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "ERREUR: fenêtre épuisée" in captured.err

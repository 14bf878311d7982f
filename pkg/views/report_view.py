from typing import Dict, List, Optional, TextIO

from models.report import Finding, Report
from utils.formatters import format_token

from .base_view import BaseView


class ReportView(BaseView):

    @staticmethod
    def format_finding(finding: Finding) -> str:
        tokens = [f"check={finding.check}", f"status={finding.status}"]
        for key in sorted(finding.details):
            tokens.append(f"{key}={format_token(finding.details[key])}")
        return " ".join(tokens)

    @staticmethod
    def emit_report(report: Report, preamble: Optional[Dict[str, object]] = None) -> str:
        """Rapport `clé=valeur`, trié par vérification; dernière ligne `verdict=... count=...`."""
        lines: List[str] = list(report.header)
        if preamble:
            lines.append(" ".join(f"{key}={format_token(preamble[key])}" for key in sorted(preamble)))
        # tri stable: l'ordre de production est conservé pour une même vérification
        for finding in sorted(report.findings, key=lambda f: f.check):
            lines.append(ReportView.format_finding(finding))
        lines.append(f"verdict={report.verdict} count={len(report.findings)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def write(text: str, stream: TextIO):
        stream.write(text)
        stream.flush()

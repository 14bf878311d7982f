from dataclasses import dataclass, field
from typing import Dict, List

STATUSES = ("pass", "fail", "info", "inconclusive")


@dataclass(frozen=True)
class Finding:
    check: str
    status: str
    details: Dict[str, object] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Statut inconnu: {self.status}")

    @property
    def failed(self) -> bool:
        return self.status == "fail"


@dataclass
class Report:
    findings: List[Finding] = field(default_factory=list)
    # lignes émises avant les constats (ex.: arbre produit par isometrize)
    header: List[str] = field(default_factory=list)

    def add(self, check: str, status: str, **details) -> Finding:
        finding = Finding(check, status, details)
        self.findings.append(finding)
        return finding

    def extend(self, findings) -> None:
        self.findings.extend(findings)

    def check(self, check: str, condition: bool, **details) -> Finding:
        return self.add(check, "pass" if condition else "fail", **details)

    @property
    def passed(self) -> bool:
        return not any(f.failed for f in self.findings)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> List[Finding]:
        return [f for f in self.findings if f.failed]

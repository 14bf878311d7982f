import logging
from typing import Optional

from data.data_manager import DataManager
from models.f2_word import F2Word
from models.report import Report
from models.tree_point import TreePoint
from utils.f2_helpers import F2Helper
from utils.settings import LabSettings

logger = logging.getLogger(__name__)

CHECKS = ("phi2", "identities", "vertex-orbit", "edge-orbit", "even-distance", "all")

# alias acceptés par --check
ALIASES = {"claim1": "vertex-orbit", "claim2": "edge-orbit", "remark35": "even-distance"}

PHI_CHECKS = ("phi-squared", "phi-roundtrip", "phi-parity")

# une clôture médiane sur la boule de rayon r coûte O(|boule|³)
DEFAULT_RADIUS = 3


class F2Controller:
    """Sous-commande f2-demo: le groupe G = <a², b², φ> agissant sur l'arbre de Cayley de F2."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def run(self, check: str = "all", radius: Optional[int] = None, v: Optional[str] = None) -> Report:
        check = ALIASES.get(check, check)
        radius = radius if radius is not None else min(self.settings.window, DEFAULT_RADIUS)
        bound = self.settings.word_bound
        report = Report()
        wanted = CHECKS[:-1] if check == "all" else (check,)

        if "phi2" in wanted or "identities" in wanted:
            for finding in F2Helper.verify_generator_identities(bound):
                is_phi = finding.check in PHI_CHECKS
                if ("phi2" in wanted and is_phi) or ("identities" in wanted and not is_phi):
                    report.findings.append(finding)
        if "vertex-orbit" in wanted:
            origin = F2Helper.parse_point(v) if v and check == "vertex-orbit" else TreePoint.vertex(F2Word())
            report.extend(F2Helper.orbit_findings(F2Helper.orbit_and_closure(origin, bound, radius)))
        if "edge-orbit" in wanted:
            origin = F2Helper.parse_point(v) if v and check == "edge-orbit" else F2Helper.parse_point("1-a")
            report.extend(F2Helper.orbit_findings(F2Helper.orbit_and_closure(origin, bound, radius)))
            report.findings.append(F2Helper.phi_median_check(radius))
        if "even-distance" in wanted:
            report.extend(F2Helper.stabilizer_even_distance(bound, radius))
        return report

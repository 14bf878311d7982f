import logging
from typing import Optional

from data.data_manager import DataManager
from models.metrization import DiscreteMedianClosure
from models.report import Report
from utils.action_helpers import ActionHelper
from utils.metrize_helpers import MetrizeHelper
from utils.settings import LabSettings

logger = logging.getLogger(__name__)


class MetrizeController:
    """Sous-commande isometrize: prétree médian fini -> arbre simplicial à arêtes unité."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def isometrize(self, pretree_path: str, gens_path: str, output: Optional[str] = None) -> Report:
        pretree = self.data_manager.load_pretree(pretree_path)
        generators = self.data_manager.load_generators(gens_path)
        metric = MetrizeHelper.discrete_to_simplicial(DiscreteMedianClosure(pretree, generators))
        report = Report(header=self.data_manager.format_tree(metric.tree))
        if output:
            if not self.data_manager.save_tree(metric.tree, output):
                raise OSError(f"Écriture impossible: {output}")
            report.add("tree-saved", "info", path=output, vertices=len(metric.tree.vertices))
        for certificate in metric.certificates:
            details = {"g": certificate.label, "pairs": certificate.checked_pairs}
            if certificate.witness:
                details["witness"] = certificate.witness
            report.add("isometry", "pass" if certificate.ok else "fail", **details)
        for g in generators:
            verdict = ActionHelper.fixed_point_or_inverted_segment(pretree, g)
            report.add("fixed-or-inverted", "info", g=g.label, kind=verdict.kind)
        return report

import logging
from itertools import combinations
from typing import Optional

from data.data_manager import DataManager
from models.end import CyclicWithGenerator, Dense, End
from models.lazy_tree import F2Tree
from models.line_model import LineModel
from models.metrization import AxisChart
from models.report import Report
from utils.end_helpers import EndHelper
from utils.errors import PreconditionError, WindowExhaustedError
from utils.f2_helpers import F2Helper
from utils.formatters import parse_rational
from utils.metrize_helpers import MetrizeHelper
from utils.settings import LabSettings
from utils.tree_helpers import TreeModelHelper

logger = logging.getLogger(__name__)

# paires comparées pour l'ordre des classes
PAIR_SAMPLE = 40
# cartes d'axe transportées
AXIS_CHARTS = 8


class EndController:
    """Sous-commande ends: G_e, action *_g, ν, ordre des classes, dichotomie dense/cyclique."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def _base_point(self, space, text: Optional[str], tree):
        if isinstance(space, LineModel):
            return parse_rational(text or "0")
        if isinstance(space, F2Tree):
            return F2Helper.parse_point(text or "1")
        if text is None:
            return tree.vertex_points()[0]
        return self.data_manager.parse_point(text, tree)

    def run(self, gens_path: str, a0: Optional[str] = None, axis_of: Optional[str] = None,
            tree_path: Optional[str] = None) -> Report:
        tree = self.data_manager.load_tree(tree_path) if tree_path else None
        generators = self.data_manager.load_generators(gens_path, tree)
        space, _ = TreeModelHelper.space_for(generators, tree, self.settings.window)
        by_label = {g.label: g for g in generators}
        if axis_of is not None and axis_of not in by_label:
            raise PreconditionError(f"Générateur inconnu: {axis_of}")
        g = by_label[axis_of] if axis_of else generators[0]
        end = End(space, g, self._base_point(space, a0, tree))
        if end.translation_length() == 0:
            raise PreconditionError(f"{g.label} fixe a0: pas de bout défini")

        bound = self.settings.word_bound
        probes = EndHelper.probes_for(end)
        elements = EndHelper.enumerate_words(generators, bound, probes)
        stabilizer = [(label, h) for label, h in elements if label == "id" or EndHelper.in_stabilizer(end, h)]
        report = Report()
        report.add("stabilizer-sample", "info", axis=g.label, bound=bound,
                   elements=len(elements), stabilizer=len(stabilizer))

        images = {}
        for label, h in stabilizer:
            try:
                images[label] = EndHelper.nu(end, h)
            except WindowExhaustedError:
                logger.info("ν(%s) hors fenêtre", label)
        self._order_findings(report, end, [(label, h) for label, h in stabilizer if label in images], images)

        coordinates = sorted({EndHelper.axis_coordinate(end, x) for x in images.values()})
        resolution = space.resolution if isinstance(space, LineModel) else 0
        verdict = EndHelper.dense_or_cyclic(coordinates, resolution)
        details = {"kind": verdict.kind, "points": len(coordinates), "bound": bound}
        if isinstance(verdict, CyclicWithGenerator):
            details["step"] = verdict.step
        elif isinstance(verdict, Dense):
            details["resolution"] = verdict.bound
        else:
            details["reason"] = verdict.reason
        report.add("dense-or-cyclic", "info", **details)

        letters = [(label, h) for label, h in stabilizer if label != "id" and "*" not in label]
        for label, h in letters:
            try:
                n = EndHelper.archimedean_witness(end, h)
                report.add("archimedean", "pass", h=label, n=n)
            except WindowExhaustedError as e:
                report.add("archimedean", "inconclusive", h=label, reason=str(e))

        self._chart_findings(report, end, probes, stabilizer)

        contraction = EndHelper.e_contractible_check(end, probes, stabilizer)
        report.check("e-contractible", contraction.passed, points=len(probes),
                     unreached=len(contraction.unreached))
        return report

    @staticmethod
    def _order_findings(report: Report, end: End, stabilizer, images) -> None:
        """≺ sur les classes contre l'ordre <_e des images par ν."""
        sample = stabilizer[:PAIR_SAMPLE]
        mismatches, unstable, compared = [], 0, 0
        for (l1, h1), (l2, h2) in combinations(sample, 2):
            try:
                datum = EndHelper.coset_compare(end, h1, h2)
            except WindowExhaustedError:
                unstable += 1
                continue
            compared += 1
            x, y = images[l1], images[l2]
            expected = "=" if x == y else ("<" if EndHelper.precedes_e(end, x, y) else ">")
            if datum.verdict != expected:
                mismatches.append((l1, l2))
        details = {"pairs": compared, "unstable": unstable}
        if mismatches:
            details["witness"] = mismatches[0]
        report.check("nu-order-preserving", not mismatches, **details)

    @staticmethod
    def _chart_findings(report: Report, end: End, probes, stabilizer) -> None:
        """Carte de L_g transportée par les éléments de G_e: les métriques coïncident sur les recouvrements."""
        base = AxisChart.from_points(end.g.label, end.space, probes)
        charts = [base] + [AxisChart(label, tuple(h(p) for p in probes), base.coordinates)
                           for label, h in stabilizer[:AXIS_CHARTS] if label != "id"]
        results = MetrizeHelper.axis_metric_agreement(charts)
        failed = [found for found in results if found.status == "fail"]
        details = {"charts": len(charts), "compared": sum(found.status != "skipped" for found in results)}
        if failed:
            details["witness"] = (failed[0].first, failed[0].second) + failed[0].witness
        report.check("axis-metric-agreement", not failed, **details)

import logging
from itertools import combinations
from typing import List, Optional, Tuple

from data.data_manager import DataManager
from models.automorphism import TreeAutomorphism
from models.classification import Elliptic, Loxodromic
from models.metric_tree import MetricTree
from models.pretree import WindowPretree
from models.report import Report
from utils.action_helpers import ActionHelper
from utils.errors import PreconditionError, WindowExhaustedError
from utils.pretree_helpers import PretreeHelper
from utils.settings import LabSettings
from utils.tree_helpers import TreeModelHelper

logger = logging.getLogger(__name__)


class ActionController:
    """Sous-commandes classify et non-nesting."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def _load(self, gens_path: str, tree_path: Optional[str]) \
            -> Tuple[Optional[MetricTree], List[TreeAutomorphism], object, list]:
        tree = self.data_manager.load_tree(tree_path) if tree_path else None
        generators = self.data_manager.load_generators(gens_path, tree)
        space, sample = TreeModelHelper.space_for(generators, tree, self.settings.window)
        return tree, generators, space, sample

    def classify(self, gens_path: str, tree_path: Optional[str] = None) -> Report:
        tree, generators, space, sample = self._load(gens_path, tree_path)
        window = None if tree is not None else self.settings.window
        report = Report()
        classified = []
        for g in generators:
            try:
                found = ActionHelper.classify(space, g, sample, window)
            except WindowExhaustedError as e:
                report.add("classify", "inconclusive", g=g.label, reason=str(e), window=window)
                continue
            classified.append((g, found))
            if isinstance(found, Elliptic):
                report.add("classify", "info", g=g.label, kind=found.kind, fixed=len(found.fixed_set), window=window)
                full = PretreeHelper.is_full(WindowPretree(space, sample), found.fixed_set)
                report.check("fixed-set-full", full, g=g.label)
                report.extend([ActionHelper.elliptic_projection_check(space, g, sample, window)])
            else:
                report.add("classify", "info", g=g.label, kind=found.kind,
                           translation=found.translation_length, axis=len(found.axis), window=window)
                criterion = ActionHelper.axis_by_median_criterion(space, g, sample, window)
                report.check("axis-median-criterion", criterion == frozenset(found.axis), g=g.label)
                self._segment_meets_axis(report, space, g, found, window)
            if tree is not None:
                verdict = ActionHelper.fixed_point_or_inverted_segment(
                    TreeModelHelper.as_pretree(tree, tree.vertex_points()), g)
                report.add("fixed-or-inverted", "info", g=g.label, kind=verdict.kind)
        self._pair_findings(report, space, sample, window, classified)
        return report

    @staticmethod
    def _segment_meets_axis(report: Report, space, g: TreeAutomorphism, found: Loxodromic,
                            window: Optional[int]) -> None:
        p = found.axis[len(found.axis) // 2]
        try:
            q, image = ActionHelper.segment_meets_axis(space, g, p, window)
        except (PreconditionError, WindowExhaustedError) as e:
            report.add("segment-meets-axis", "inconclusive", g=g.label, reason=str(e))
            return
        report.check("segment-meets-axis", q in found.axis and space.distance(q, image) == found.translation_length,
                     g=g.label, q=q)

    @staticmethod
    def _pair_findings(report: Report, space, sample, window: Optional[int], classified) -> None:
        """Produits de deux elliptiques et ponts entre axes, pour chaque paire de générateurs."""
        for (g, fg), (h, fh) in combinations(classified, 2):
            try:
                if isinstance(fg, Elliptic) and isinstance(fh, Elliptic):
                    report.extend(ActionHelper.elliptic_product(space, g, h, sample, window))
                elif isinstance(fg, Loxodromic) and isinstance(fh, Loxodromic):
                    report.extend(ActionHelper.bridge_in_third_axis(space, g, h, sample, window))
            except (PreconditionError, WindowExhaustedError) as e:
                report.add("generator-pair", "inconclusive", pair=f"{g.label},{h.label}", reason=str(e))

    def non_nesting(self, gens_path: str, tree_path: Optional[str] = None) -> Report:
        tree, generators, space, sample = self._load(gens_path, tree_path)
        window = None if tree is not None else self.settings.window
        # segments au centre de la fenêtre: leurs images y restent
        core = [p for p in sample if space.in_window(p, None if window is None else window // 2)]
        if tree is not None:
            core = tree.vertex_points()
        segments = list(combinations(sorted(core), 2))
        report = Report()
        for g in generators:
            result = ActionHelper.check_non_nesting(space, g, segments, window)
            details = {"g": g.label, "segments": len(segments), "window": window}
            if result.witness is not None:
                details["witness"] = result.witness
            if result.inconclusive:
                details["outside"] = len(result.inconclusive)
            report.add("non-nesting", result.verdict, **details)
        return report

import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence

from models.metric_tree import MetricTree
from models.metrization import (
    AgreementFinding, AxisChart, DiscreteMedianClosure, EquivariantMetric, IsometryCertificate
)
from utils.errors import StructureError

logger = logging.getLogger(__name__)


class MetrizeHelper:

    @staticmethod
    def covering_pairs(closure: DiscreteMedianClosure) -> List[tuple]:
        """Paires {x, y} avec [x, y] = {x, y}."""
        pretree = closure.pretree
        ordered = pretree.sorted_points()
        return [(x, y) for x, y in combinations(ordered, 2) if not pretree.strictly_between(x, y)]

    @staticmethod
    def check_median(closure: DiscreteMedianClosure) -> None:
        pretree = closure.pretree
        for x, y, z in combinations(pretree.sorted_points(), 3):
            if pretree.median(x, y, z) is None:
                raise StructureError(f"Pas de médiane pour ({x}, {y}, {z})", witness=(x, y, z))

    @staticmethod
    def discrete_to_simplicial(closure: DiscreteMedianClosure) -> EquivariantMetric:
        MetrizeHelper.check_median(closure)
        pretree = closure.pretree
        edges = [(x, y, Fraction(1)) for x, y in MetrizeHelper.covering_pairs(closure)]
        tree = MetricTree(pretree.sorted_points(), edges)

        for x, z in combinations(pretree.sorted_points(), 2):
            inner = set(tree.vertex_path(x, z)[1:-1])
            if inner != set(pretree.strictly_between(x, z)):
                raise StructureError(f"Betweenness non réalisée sur [{x}, {z}]", witness=(x, z))

        certificates = [MetrizeHelper.isometry_certificate(tree, g) for g in closure.generators]
        logger.info("Arbre simplicial: %s sommets, %s arêtes", len(tree.vertices), len(edges))
        return EquivariantMetric(tree, {p: p for p in pretree.points}, certificates)

    @staticmethod
    def isometry_certificate(tree: MetricTree, g) -> IsometryCertificate:
        """d(gx, gy) = d(x, y) sur les paires dont les images restent dans l'arbre."""
        checked = 0
        for x, y in combinations(tree.vertices, 2):
            gx, gy = g(x), g(y)
            if not (tree.has_vertex(gx) and tree.has_vertex(gy)):
                continue
            checked += 1
            if tree.vertex_distance(gx, gy) != tree.vertex_distance(x, y):
                return IsometryCertificate(g.label, False, checked, (x, y))
        return IsometryCertificate(g.label, True, checked)

    @staticmethod
    def axis_metric_agreement(charts: Sequence[AxisChart]) -> List[AgreementFinding]:
        findings = []
        for first, second in combinations(charts, 2):
            findings.append(MetrizeHelper._agreement(first, second))
        return findings

    @staticmethod
    def _agreement(first: AxisChart, second: AxisChart) -> AgreementFinding:
        overlap = sorted(set(first.points) & set(second.points), key=lambda p: first.coordinate_map()[p])
        if len(overlap) < 2:
            return AgreementFinding(first.label, second.label, "skipped", len(overlap))
        for x, y in combinations(overlap, 2):
            if first.metric(x, y) != second.metric(x, y):
                witness = (overlap[0], x, y, overlap[-1])
                logger.info("Métriques %s et %s en désaccord sur (%s, %s)", first.label, second.label, x, y)
                return AgreementFinding(first.label, second.label, "fail", len(overlap), witness)
        return AgreementFinding(first.label, second.label, "pass", len(overlap))

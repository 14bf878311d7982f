import logging
from fractions import Fraction
from itertools import permutations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from models.flow import (
    AtPoint, Cut, DirectedArcSample, FlowRelation, Gap, MinusInfinity, PlusInfinity, Promise
)
from models.lazy_tree import SpiderTree
from models.line_model import LineModel
from models.report import Finding
from models.tree_point import natural_key
from utils.errors import PreconditionError, StructureError, WindowExhaustedError
from utils.tree_helpers import TreeModelHelper

logger = logging.getLogger(__name__)

ANALYTIC_EXTENSION = 16

SAMPLE_ARCS = ("order", "gap", "spider")


class FlowHelper:

    @staticmethod
    def check_flow_axioms(flow: FlowRelation) -> List[Finding]:
        """F1, F2, F3 vérifiés exhaustivement sur la base du flot."""
        base = flow.base
        points = base.sorted_points()
        failures: List[Finding] = []
        for x, y in sorted(flow.r, key=lambda pair: tuple(natural_key(p) for p in pair)):
            if flow.holds(y, x):
                failures.append(Finding("flow", "fail", {"axiom": "F1", "witness": (x, y)}))
            for z in points:
                if z != y and not (base.is_between(y, x, z) or flow.holds(z, y)):
                    failures.append(Finding("flow", "fail", {"axiom": "F3", "witness": (x, y, z)}))
        for x in points:
            for y in points:
                if x == y:
                    continue
                for z in base.strictly_between(x, y):
                    if not (flow.holds(x, z) or flow.holds(y, z)):
                        failures.append(Finding("flow", "fail", {"axiom": "F2", "witness": (z, x, y)}))
        return failures

    @staticmethod
    def arc_relation(space, arc: DirectedArcSample, x, y) -> Optional[bool]:
        """r(x,y) ssi ∃z∈C ∀w>z B(y; x, w); None si le quantificateur reste indécis."""
        if arc.promise is Promise.NONE:
            return None
        points = arc.extended(ANALYTIC_EXTENSION if arc.promise is Promise.ANALYTIC else 0)
        tail = points[len(points) // 2:]
        values = {space.between(y, x, w) for w in tail}
        if len(values) != 1:
            return None
        return values.pop()

    @staticmethod
    def flow_from_arc(space, arc: DirectedArcSample, probes: Iterable[Hashable]) -> FlowRelation:
        probes = sorted(set(probes), key=natural_key)
        base = TreeModelHelper.as_pretree(space, probes)
        related, undecided = set(), set()
        for x, y in permutations(probes, 2):
            value = FlowHelper.arc_relation(space, arc, x, y)
            if value is None:
                undecided.add((x, y))
            elif value:
                related.add((x, y))
        if undecided:
            logger.info("Flot de %s: %s couples indécis", arc.label, len(undecided))
        return FlowRelation(base, frozenset(related), frozenset(undecided))

    @staticmethod
    def line_relation(line: LineModel, arc: DirectedArcSample, coordinates: Sequence[Fraction]) \
            -> Dict[Tuple[Fraction, Fraction], bool]:
        space = line.ambient_space()
        relation = {}
        for x in coordinates:
            for y in coordinates:
                if x == y:
                    continue
                value = FlowHelper.arc_relation(space, arc, line.ambient_point(x), line.ambient_point(y))
                if value is None:
                    raise WindowExhaustedError(f"Couple ({x}, {y}) indécis pour l'arc {arc.label}")
                relation[(x, y)] = value
        return relation

    @staticmethod
    def e_classes(coordinates: Sequence[Fraction], relation: Dict[Tuple, bool]) -> List[List[Fraction]]:
        """Classes de E(x,y) = r(x,y) ∨ r(y,x) ∨ x = y, ordonnées sur la droite."""
        ordered = sorted(set(coordinates))
        parent = {x: x for x in ordered}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in ordered:
            for y in ordered:
                if x != y and (relation.get((x, y)) or relation.get((y, x))):
                    parent[find(x)] = find(y)
        groups: Dict[Fraction, List[Fraction]] = {}
        for x in ordered:
            groups.setdefault(find(x), []).append(x)
        classes = sorted(groups.values(), key=lambda c: c[0])
        for cls in classes:
            span = [x for x in ordered if cls[0] <= x <= cls[-1]]
            if span != cls:
                raise StructureError("Classe E non convexe", witness=tuple(cls))
        return classes

    @staticmethod
    def flow_cut(line: LineModel, arc: DirectedArcSample, coordinates: Sequence[Fraction]) -> Cut:
        ordered = sorted(set(Fraction(c) for c in coordinates))
        if not ordered:
            raise PreconditionError("Aucune coordonnée à sonder")
        # sentinelles hors fenêtre: un maximum de l'échantillon n'est pas un plus grand élément de L
        step = line.resolution or Fraction(1)
        probes = [ordered[0] - step] + ordered + [ordered[-1] + step]
        relation = FlowHelper.line_relation(line, arc, probes)
        for m in ordered:
            if all(relation[(x, m)] for x in probes if x != m):
                return Cut(line, AtPoint(m))
        classes = FlowHelper.e_classes(probes, relation)
        if len(classes) > 2:
            raise StructureError(f"{len(classes)} classes E sur la droite", witness=tuple(c[0] for c in classes))
        if len(classes) == 2:
            return Cut(line, Gap(classes[0][-1], classes[1][0]))
        if relation[(probes[0], probes[-1])]:
            return Cut(line, PlusInfinity())
        return Cut(line, MinusInfinity())

    @staticmethod
    def lies_on(line: LineModel, arc: DirectedArcSample, coordinates: Sequence[Fraction]) -> bool:
        return FlowHelper.flow_cut(line, arc, coordinates).lies_on

    @staticmethod
    def linear_ordering(flow: FlowRelation, points: Sequence[Hashable]) -> Optional[List[Hashable]]:
        """Points rangés par r (x avant y ssi r(x,y)), si r les ordonne linéairement."""
        ordered = sorted(points, key=lambda x: (sum(1 for y in points if flow.holds(y, x)), natural_key(x)))
        for earlier, later in zip(ordered, ordered[1:]):
            if not flow.holds(earlier, later):
                return None
        return ordered

    @staticmethod
    def interval_formula_holds(space, first: DirectedArcSample, second: DirectedArcSample, c, d) -> bool:
        """[c,d] = {a ∈ C : r(c,a)} ∪ {a ∈ D : r(d,a)} ∪ {c, d} pour deux arcs non cofinaux d'un même flot."""
        pool = sorted(set(first.points) | set(second.points), key=natural_key)
        flow = FlowHelper.flow_from_arc(space, first, pool)
        if flow.inconclusive:
            raise WindowExhaustedError(f"Flot de {first.label} indécis sur l'échantillon")
        expected = {a for a in pool if a in (c, d) or space.between(a, c, d)}
        found = {a for a in first.points if a == c or flow.holds(c, a)}
        found |= {a for a in second.points if a == d or flow.holds(d, a)}
        return expected == found

    @staticmethod
    def sample_arc(name: str, length: int = 8) -> Tuple[LineModel, DirectedArcSample, List[Fraction]]:
        """Arcs de démonstration: `order` (1, 2, 3, ...), `gap` (1/2, 3/4, ... -> 1 sur Z), `spider`."""
        if name == "order":
            line = LineModel()
            arc = DirectedArcSample(tuple(Fraction(k + 1) for k in range(length)), Promise.ANALYTIC,
                                    lambda k: Fraction(k + 1), "N")
            return line, arc, line.window_points(2, Fraction(1, 2))
        if name == "gap":
            line = LineModel.integers()
            arc = DirectedArcSample(tuple(1 - Fraction(1, 2 ** (k + 1)) for k in range(length)), Promise.ANALYTIC,
                                    lambda k: 1 - Fraction(1, 2 ** (k + 1)), "1-2^-k")
            return line, arc, [Fraction(k) for k in range(-2, 4)]
        if name == "spider":
            spider = SpiderTree(3)
            # branches 1 et 2 forment la droite, l'arc part sur la branche 3
            line = LineModel(ambient=spider, label="L12",
                             embed=lambda x: spider.leg_point(1, -x) if x < 0 else spider.leg_point(2, x))
            arc = DirectedArcSample(tuple(spider.leg_point(3, k + 1) for k in range(length)), Promise.ANALYTIC,
                                    lambda k: spider.leg_point(3, k + 1), "leg3")
            return line, arc, [Fraction(k) for k in range(-2, 3)]
        raise PreconditionError(f"Arc inconnu: {name} (choix: {', '.join(SAMPLE_ARCS)})")

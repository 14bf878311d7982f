from fractions import Fraction

import pytest

from models.flow import AtPoint, DirectedArcSample, FlowRelation, Gap, MinusInfinity, PlusInfinity, Promise
from models.lazy_tree import SpiderTree
from models.line_model import LineModel
from utils.errors import PreconditionError, StructureError
from utils.flow_helpers import FlowHelper


def axioms_failed(flow):
    return {f.details["axiom"] for f in FlowHelper.check_flow_axioms(flow)}


class TestFlowAxioms:

    def test_directional_flow_passes(self, data_manager):
        assert FlowHelper.check_flow_axioms(data_manager.load_flow("order.flow")) == []

    def test_empty_relation_fails_f2(self, data_manager):
        flow = data_manager.load_flow("empty.flow")
        findings = FlowHelper.check_flow_axioms(flow)
        assert axioms_failed(flow) == {"F2"}
        assert findings[0].details["witness"] == (1, 0, 2)

    def test_symmetric_pair_fails_f1(self, path3):
        flow = FlowRelation(path3, frozenset({(0, 1), (1, 0), (0, 2), (1, 2)}))
        assert "F1" in axioms_failed(flow)

    def test_missing_pull_fails_f3(self, path3):
        # r(1, 2) sans r(0, 2)
        flow = FlowRelation(path3, frozenset({(0, 1), (1, 2)}))
        assert "F3" in axioms_failed(flow)

    def test_unknown_point(self, path3):
        with pytest.raises(StructureError):
            FlowRelation(path3, frozenset({(0, 7)}))

    def test_linear_ordering(self, data_manager):
        flow = data_manager.load_flow("order.flow")
        assert FlowHelper.linear_ordering(flow, flow.base.sorted_points()) == [0, 1, 2]


class TestArcFlows:

    def test_analytic_arc_needs_rule(self):
        with pytest.raises(PreconditionError):
            DirectedArcSample((Fraction(1),), Promise.ANALYTIC)

    def test_arc_needs_points(self):
        with pytest.raises(PreconditionError):
            DirectedArcSample(())

    def test_extended_arc(self):
        arc = DirectedArcSample((Fraction(1),), Promise.ANALYTIC, lambda k: Fraction(k + 1))
        assert arc.extended(2) == (1, 2, 3)

    def test_unpromised_arc_is_undecided(self, line):
        arc = DirectedArcSample(tuple(Fraction(k) for k in range(1, 5)))
        assert FlowHelper.arc_relation(line, arc, Fraction(0), Fraction(1)) is None

    def test_flow_of_increasing_arc(self, line):
        _, arc, _ = FlowHelper.sample_arc("order")
        probes = [Fraction(k) for k in range(-2, 3)]
        flow = FlowHelper.flow_from_arc(line, arc, probes)
        assert not flow.inconclusive
        assert flow.holds(0, 1) and not flow.holds(1, 0)
        assert FlowHelper.check_flow_axioms(flow) == []
        assert FlowHelper.linear_ordering(flow, probes) == probes

    def test_declared_stable_arc_on_tree(self, path5):
        arc = DirectedArcSample(tuple(path5.vertex_points()[2:]), Promise.DECLARED_STABLE, label="tail")
        flow = FlowHelper.flow_from_arc(path5, arc, path5.vertex_points()[:3])
        assert not flow.inconclusive
        assert FlowHelper.check_flow_axioms(flow) == []

    def test_cofinal_arcs_agree(self, line):
        probes = [Fraction(k) for k in range(-2, 3)]
        first = DirectedArcSample(tuple(Fraction(k) for k in range(1, 9)), Promise.ANALYTIC, lambda k: Fraction(k + 1))
        second = DirectedArcSample(tuple(Fraction(2 * k) for k in range(1, 9)), Promise.ANALYTIC,
                                   lambda k: Fraction(2 * (k + 1)))
        assert FlowHelper.flow_from_arc(line, first, probes).r == FlowHelper.flow_from_arc(line, second, probes).r

    def test_spider_branches_flow_to_center(self):
        _, arc, _ = FlowHelper.sample_arc("spider")
        spider = SpiderTree(3)
        outer, inner, center = spider.leg_point(1, 2), spider.leg_point(1, 1), spider.leg_point(1, 0)
        other = spider.leg_point(2, 1)
        flow = FlowHelper.flow_from_arc(spider, arc, [outer, inner, center, other])
        assert flow.holds(outer, inner) and flow.holds(inner, center) and flow.holds(other, center)
        assert not flow.holds(center, inner)
        assert FlowHelper.check_flow_axioms(flow) == []

    def test_interval_formula_for_non_cofinal_arcs(self):
        # droite privée de 0: deux arcs sans majorant convergent vers le trou
        line = LineModel(lambda x: x != 0)
        left = DirectedArcSample(tuple(-Fraction(1, 2 ** (k + 1)) for k in range(8)), Promise.ANALYTIC,
                                 lambda k: -Fraction(1, 2 ** (k + 1)), "C")
        right = DirectedArcSample(tuple(Fraction(1, 2 ** (k + 1)) for k in range(8)), Promise.ANALYTIC,
                                  lambda k: Fraction(1, 2 ** (k + 1)), "D")
        assert FlowHelper.interval_formula_holds(line, left, right, left.points[1], right.points[1])
        assert FlowHelper.interval_formula_holds(line, left, right, left.points[0], right.points[3])


class TestCuts:

    def test_order_arc_cuts_at_plus_infinity(self):
        line, arc, coordinates = FlowHelper.sample_arc("order")
        cut = FlowHelper.flow_cut(line, arc, coordinates)
        assert cut.position == PlusInfinity()
        assert not cut.lies_on
        assert cut.lower_contains(Fraction(100))

    def test_gap_arc_cuts_between_zero_and_one(self):
        line, arc, coordinates = FlowHelper.sample_arc("gap")
        cut = FlowHelper.flow_cut(line, arc, coordinates)
        assert cut.position == Gap(Fraction(0), Fraction(1))
        assert cut.lies_on
        assert cut.lower_contains(0) and not cut.lower_contains(1)

    def test_spider_arc_cuts_at_center(self):
        line, arc, coordinates = FlowHelper.sample_arc("spider")
        cut = FlowHelper.flow_cut(line, arc, coordinates)
        assert cut.position == AtPoint(Fraction(0))
        assert FlowHelper.lies_on(line, arc, coordinates)

    def test_decreasing_arc_cuts_at_minus_infinity(self, line):
        arc = DirectedArcSample(tuple(Fraction(-k) for k in range(1, 9)), Promise.ANALYTIC, lambda k: Fraction(-k - 1))
        cut = FlowHelper.flow_cut(line, arc, [Fraction(k) for k in range(-2, 3)])
        assert cut.position == MinusInfinity()
        assert not cut.lower_contains(0)

    def test_arc_ending_inside_window(self):
        line = LineModel()
        arc = DirectedArcSample(tuple(1 - Fraction(1, 2 ** (k + 1)) for k in range(8)), Promise.ANALYTIC,
                                lambda k: 1 - Fraction(1, 2 ** (k + 1)))
        cut = FlowHelper.flow_cut(line, arc, [Fraction(k, 2) for k in range(-2, 5)])
        assert isinstance(cut.position, Gap)

    def test_e_classes_are_convex(self):
        relation = {(0, 1): True, (1, 0): False, (0, 2): False, (2, 0): False, (1, 2): False, (2, 1): False}
        assert FlowHelper.e_classes([0, 1, 2], relation) == [[0, 1], [2]]

    def test_non_convex_class(self):
        relation = {(0, 2): True}
        with pytest.raises(StructureError):
            FlowHelper.e_classes([0, 1, 2], relation)

    def test_unknown_sample_arc(self):
        with pytest.raises(PreconditionError):
            FlowHelper.sample_arc("spiral")

    def test_no_coordinates(self, line):
        _, arc, _ = FlowHelper.sample_arc("order")
        with pytest.raises(PreconditionError):
            FlowHelper.flow_cut(line, arc, [])


import random
from fractions import Fraction

import pytest

from conftest import pretree_of
from models.automorphism import F2Isometry, PiecewiseLinearMap, VertexPermutation, conjugate
from models.classification import Elliptic, FixedPoint, InvertedSegment, Loxodromic, LoxodromicVerdict
from models.f2_word import LETTERS, F2Word
from models.lazy_tree import F2Tree
from models.line_model import LineModel
from models.tree_point import TreePoint
from utils.action_helpers import ActionHelper
from utils.errors import PreconditionError, StructureError
from utils.tree_helpers import TreeModelHelper

V = TreePoint.vertex
HALF = Fraction(1, 2)

# automorphismes de lettres sans lettre fixe: seul Λ est fixe
SWAPS = (("b", "a"), ("B", "A"), ("b", "A"), ("B", "a"), ("A", "B"))


def flip(tree, n, label="flip"):
    return VertexPermutation({i: n - 1 - i for i in range(n)}, label, tree)


def random_word(rng, length):
    letters = []
    while len(letters) < length:
        letter = rng.choice(LETTERS)
        if not letters or letter != -letters[-1]:
            letters.append(letter)
    return F2Word(tuple(letters))


def cyclic_word(rng, length):
    while True:
        word = random_word(rng, length)
        if length == 1 or word.letters[0] != -word.letters[-1]:
            return word


@pytest.fixture
def line_sample():
    return LineModel().window_points(6, HALF)


class TestClassify:

    def test_flip_fixes_middle_vertex(self, path5):
        found = ActionHelper.classify(path5, flip(path5, 5), path5.default_sample())
        assert isinstance(found, Elliptic)
        assert found.fixed_set == {V(2)}

    def test_edge_inversion_fixes_midpoint(self):
        path4 = TreeModelHelper.path_tree(4)
        found = ActionHelper.classify(path4, flip(path4, 4), path4.default_sample())
        assert found.fixed_set == {path4.make_point(1, 2, HALF)}

    def test_translation_is_loxodromic(self, line, line_sample):
        g = PiecewiseLinearMap.translation(2, "g")
        found = ActionHelper.classify(line, g, line_sample, window=6)
        assert isinstance(found, Loxodromic)
        assert found.translation_length == 2
        assert found.axis[0] < found.axis[-1]

    def test_reflection_is_elliptic(self, line, line_sample):
        found = ActionHelper.classify(line, PiecewiseLinearMap.reflection(0), line_sample)
        assert found.fixed_set == {0}

    def test_translation_length(self, line, line_sample):
        assert ActionHelper.translation_length(line, PiecewiseLinearMap.translation(-3), line_sample) == 3

    def test_non_automorphism_rejected(self, path5):
        swap = VertexPermutation({0: 1, 1: 0, 2: 2, 3: 3, 4: 4}, "swap")
        with pytest.raises(StructureError):
            ActionHelper.classify(path5, swap, path5.vertex_points())

    def test_empty_sample(self, line):
        with pytest.raises(PreconditionError):
            ActionHelper.classify(line, PiecewiseLinearMap.translation(1), [])


class TestAxes:

    def test_median_criterion_on_line(self, line, line_sample):
        g = PiecewiseLinearMap.translation(2)
        assert ActionHelper.axis_by_median_criterion(line, g, line_sample, 6) == set(line_sample)

    def test_median_criterion_needs_loxodromic(self, line, line_sample):
        with pytest.raises(PreconditionError):
            ActionHelper.axis_by_median_criterion(line, PiecewiseLinearMap.reflection(1), line_sample)

    def test_median_criterion_on_random_f2_conjugates(self):
        rng = random.Random(4)
        tree = F2Tree(bound=8)
        ball = tree.ball_points(3)
        for _ in range(100):
            u = cyclic_word(rng, rng.randint(1, 3))
            w = random_word(rng, rng.randint(0, 2))
            g = F2Isometry.left(w * u * ~w)
            found = ActionHelper.classify(tree, g, ball)
            assert isinstance(found, Loxodromic)
            assert found.translation_length == len(u)
            assert tree.vertex(w) in found.axis
            assert ActionHelper.axis_by_median_criterion(tree, g, ball) == frozenset(found.axis)

    def test_median_criterion_on_random_line_translations(self, line, line_sample):
        rng = random.Random(44)
        for _ in range(100):
            shift = Fraction(rng.choice([k for k in range(-8, 9) if k]), 2)
            g = PiecewiseLinearMap.translation(shift)
            if rng.random() < HALF:
                g = conjugate(PiecewiseLinearMap.reflection(Fraction(rng.randint(-4, 4), 2)), g)
            found = ActionHelper.classify(line, g, line_sample, 6)
            assert found.translation_length == abs(shift)
            assert ActionHelper.axis_by_median_criterion(line, g, line_sample, 6) == frozenset(found.axis)

    def test_segment_meets_axis_in_f2(self):
        tree = F2Tree()
        g = F2Isometry.left("ba")
        q, gq = ActionHelper.segment_meets_axis(tree, g, tree.vertex("a"))
        assert (q, gq) == (tree.vertex("1"), tree.vertex("ba"))

    def test_segment_meets_axis_on_line(self, line):
        assert ActionHelper.segment_meets_axis(line, PiecewiseLinearMap.translation(2), 0, 6) == (0, 2)

    def test_f2_axis_points(self):
        tree = F2Tree()
        g = F2Isometry.left("ab")
        assert ActionHelper.on_axis(tree, g, tree.vertex("a"))
        assert not ActionHelper.on_axis(tree, g, tree.vertex("b"))


class TestNonNesting:

    def test_translation_never_nests(self, line):
        segments = [(Fraction(-3), Fraction(3)), (Fraction(0), Fraction(1))]
        result = ActionHelper.check_non_nesting(line, PiecewiseLinearMap.translation(2), segments, 6)
        assert result.verdict == "pass"

    def test_contraction_nests(self, line):
        result = ActionHelper.check_non_nesting(line, PiecewiseLinearMap.scaling(HALF),
                                                [(Fraction(-2), Fraction(2))], 6)
        assert result.verdict == "fail"
        assert result.witness == (-2, 2)

    def test_segment_leaving_window(self, line):
        result = ActionHelper.check_non_nesting(line, PiecewiseLinearMap.translation(2),
                                                [(Fraction(5), Fraction(6))], 6)
        assert result.verdict == "inconclusive"
        assert result.inconclusive == ((5, 6),)

    def test_finite_tree_automorphisms_pass(self, path5):
        segments = [(x, y) for x in path5.vertex_points() for y in path5.vertex_points() if x < y]
        for g in TreeModelHelper.automorphisms(path5):
            assert ActionHelper.check_non_nesting(path5, g, segments).verdict == "pass"


class TestEllipticProducts:

    def test_disjoint_fixed_sets_give_loxodromic_product(self, line, line_sample):
        r0, r1 = PiecewiseLinearMap.reflection(0, "r0"), PiecewiseLinearMap.reflection(1, "r1")
        findings = {f.check: f for f in ActionHelper.elliptic_product(line, r0, r1, line_sample)}
        assert findings["product-loxodromic"].status == "pass"
        assert findings["bridge-on-axis"].status == "pass"
        assert (findings["bridge-on-axis"].details["t"], findings["bridge-on-axis"].details["q"]) == (0, 1)
        assert findings["axis-meets-fixed-sets"].status == "pass"
        assert findings["axis-meets-fixed-sets"].details["translation"] == 2

    def test_common_fixed_point(self, line, line_sample):
        r0, s2 = PiecewiseLinearMap.reflection(0, "r0"), PiecewiseLinearMap.scaling(2, label="s2")
        findings = ActionHelper.elliptic_product(line, r0, s2, line_sample)
        assert [(f.check, f.status) for f in findings] == [("elliptic-triple-intersection", "pass")]

    def test_requires_elliptics(self, line, line_sample):
        with pytest.raises(PreconditionError):
            ActionHelper.elliptic_product(line, PiecewiseLinearMap.translation(1),
                                          PiecewiseLinearMap.reflection(0), line_sample)

    def test_random_reflection_pairs(self, line, line_sample):
        rng = random.Random(6)
        centres = [x for x in line_sample if abs(x) <= 2]
        for _ in range(100):
            s, t = rng.sample(centres, 2)
            g, h = PiecewiseLinearMap.reflection(s, "rs"), PiecewiseLinearMap.reflection(t, "rt")
            findings = {f.check: f for f in ActionHelper.elliptic_product(line, g, h, line_sample)}
            assert {f.status for f in findings.values()} == {"pass"}
            meets = findings["axis-meets-fixed-sets"].details
            assert (meets["left"], meets["right"]) == (1, 1)
            assert meets["translation"] == 2 * abs(s - t)

    def test_random_f2_involution_pairs(self):
        rng = random.Random(7)
        tree = F2Tree(bound=8)
        ball = tree.ball_points(3)
        near = tree.ball_vertices(F2Word(), 2)
        for _ in range(100):
            x, y = rng.sample(near, 2)
            g = conjugate(F2Isometry.left(x), F2Isometry.letters(*rng.choice(SWAPS)))
            h = conjugate(F2Isometry.left(y), F2Isometry.letters(*rng.choice(SWAPS)))
            findings = {f.check: f for f in ActionHelper.elliptic_product(tree, g, h, ball)}
            assert set(findings) == {"product-loxodromic", "bridge-on-axis", "axis-meets-fixed-sets"}
            assert {f.status for f in findings.values()} == {"pass"}
            bridge = findings["bridge-on-axis"].details
            assert (bridge["t"], bridge["q"]) == (tree.vertex(x), tree.vertex(y))
            meets = findings["axis-meets-fixed-sets"].details
            assert (meets["left"], meets["right"]) == (1, 1)
            assert meets["translation"] == 2 * tree.vertex_distance(x, y)

    def test_segment_to_image_meets_fixed_set_at_projection(self, path5):
        finding = ActionHelper.elliptic_projection_check(path5, flip(path5, 5), path5.default_sample())
        assert finding.status == "pass"
        assert finding.details["checked"] == len(path5.default_sample()) - 1

    def test_reflection_projection_inside_window(self, line, line_sample):
        finding = ActionHelper.elliptic_projection_check(line, PiecewiseLinearMap.reflection(0, "r0"), line_sample, 6)
        assert (finding.status, finding.details["outside"]) == ("pass", 0)

    def test_projection_check_requires_elliptic(self, line, line_sample):
        with pytest.raises(PreconditionError):
            ActionHelper.elliptic_projection_check(line, PiecewiseLinearMap.translation(1), line_sample, 6)

    def test_bridge_between_disjoint_axes_lies_on_third(self):
        tree = F2Tree(bound=5)
        h1, h2 = F2Isometry.left("a"), F2Isometry.left("baB")
        findings = ActionHelper.bridge_in_third_axis(tree, h1, h2, tree.ball_points(3))
        assert [(f.check, f.status, f.details["pair"]) for f in findings] == [("bridge-in-third-axis", "pass", "12")]
        assert (findings[0].details["t"], findings[0].details["q"]) == (tree.vertex("1"), tree.vertex("b"))

    def test_random_bridges_lie_on_third_axis(self):
        rng = random.Random(9)
        tree = F2Tree(bound=8)
        ball = tree.ball_points(3)
        checked = 0
        while checked < 100:
            h1 = F2Isometry.left(cyclic_word(rng, rng.randint(1, 2)))
            w = random_word(rng, 1)
            h2 = F2Isometry.left(w * cyclic_word(rng, rng.randint(1, 2)) * ~w)
            axes = [set(ActionHelper.classify(tree, h, ball).axis) for h in (h1, h2)]
            if axes[0] & axes[1]:
                continue
            # L_h3 longe L_h1 et L_h2: seule la paire (1, 2) est disjointe
            findings = ActionHelper.bridge_in_third_axis(tree, h1, h2, ball)
            assert [(f.details["pair"], f.status) for f in findings] == [("12", "pass")]
            checked += 1


class TestFixedOrInverted:

    def test_rotation_fixes_center(self, star3):
        rotation = VertexPermutation({0: 0, 1: 2, 2: 3, 3: 1}, "rot")
        assert ActionHelper.fixed_point_or_inverted_segment(star3, rotation) == FixedPoint(0)

    def test_flip_inverts_middle_edge(self):
        path4 = TreeModelHelper.path_tree(4)
        verdict = ActionHelper.fixed_point_or_inverted_segment(pretree_of(path4), flip(None, 4))
        assert verdict == InvertedSegment(1, 2)

    def test_translation_window_is_loxodromic(self, line):
        pretree = TreeModelHelper.as_pretree(line, line.window_points(3))
        verdict = ActionHelper.fixed_point_or_inverted_segment(pretree, PiecewiseLinearMap.translation(1))
        assert isinstance(verdict, LoxodromicVerdict)

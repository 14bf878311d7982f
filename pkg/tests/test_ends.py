from fractions import Fraction

import pytest

from models.automorphism import F2Isometry, PiecewiseLinearMap
from models.end import CyclicWithGenerator, Dense, End, Inconclusive
from models.lazy_tree import F2Tree
from models.line_model import LineModel
from utils.end_helpers import EndHelper
from utils.errors import WindowExhaustedError
from utils.f2_helpers import F2Helper

T2 = PiecewiseLinearMap.translation(2, "g")
T3 = PiecewiseLinearMap.translation(3, "h")


@pytest.fixture
def end():
    """Bout -∞ de la droite, atteint par g⁻ⁿ(0) avec g = +2."""
    return End(LineModel(), T2, Fraction(0))


class TestEndOrder:

    def test_ray_goes_to_minus_infinity(self, end):
        assert [end.ray_point(n) for n in range(3)] == [0, -2, -4]
        assert end.translation_length() == 2

    def test_probes(self, end):
        assert EndHelper.probes_for(end, 2) == [4, 2, 0, -2, -4]

    def test_order_is_natural_order(self, end):
        assert EndHelper.precedes_e(end, Fraction(-5), Fraction(1))
        assert not EndHelper.precedes_e(end, Fraction(1), Fraction(-5))
        assert EndHelper.precedes_e(end, Fraction(3), Fraction(3))
        assert not EndHelper.strictly_precedes_e(end, Fraction(3), Fraction(3))

    def test_axis_coordinate(self, end):
        assert EndHelper.axis_coordinate(end, Fraction(-4)) == -4
        assert EndHelper.axis_coordinate(end, Fraction(3)) == 3


class TestStabilizer:

    def test_translations_fix_the_end(self, end):
        assert EndHelper.in_stabilizer(end, T3)
        assert EndHelper.in_stabilizer(end, T2.inverse())

    def test_half_line_fixer(self, end):
        fixer = PiecewiseLinearMap.half_line_fixer(0, 2)
        assert EndHelper.fixes_half_line(end, fixer)
        assert not EndHelper.fixes_half_line(end, T3)

    def test_f2_axis_end(self):
        space = F2Tree(bound=48)
        end = F2Helper.axis_end(space)
        a2, b2, _ = F2Helper.generators()
        assert EndHelper.in_stabilizer(end, a2)
        assert not EndHelper.in_stabilizer(end, b2)

    def test_enumerate_words_reduces_and_deduplicates(self, end):
        t1 = PiecewiseLinearMap.translation(1)
        elements = EndHelper.enumerate_words([t1], 2, EndHelper.probes_for(end))
        assert [label for label, _ in elements] == ["id", "t1", "t1^-1", "t1*t1", "t1^-1*t1^-1"]


class TestNu:

    @pytest.mark.parametrize("h, image", [(T2, 2), (T3, 3), (T3.inverse(), -3)])
    def test_nu_of_translations(self, end, h, image):
        assert EndHelper.nu(end, h) == image

    def test_star_action_on_other_points(self, end):
        assert EndHelper.star_action(end, T3, Fraction(5)) == 8

    def test_search_window_exhausted(self, end):
        with pytest.raises(WindowExhaustedError):
            EndHelper.star_action(end, T3, Fraction(0), window=1)


class TestCosetOrder:

    def test_two_before_three(self, end):
        datum = EndHelper.coset_compare(end, T2, T3)
        assert datum.verdict == "<"
        assert datum.symbol == "≺"
        assert EndHelper.coset_compare(end, T3, T2).verdict == ">"
        assert EndHelper.coset_compare(end, T3, T3).verdict == "="

    def test_archimedean_witness(self, end):
        assert EndHelper.archimedean_witness(end, T3) == 2
        assert EndHelper.archimedean_witness(end, T2.inverse()) == 0


class TestDenseOrCyclic:

    def test_cyclic(self):
        assert EndHelper.dense_or_cyclic([0, 2, 3, 5]) == CyclicWithGenerator(Fraction(1))

    def test_dense_at_resolution(self):
        resolution = Fraction(1, 2 ** 8)
        points = [0, resolution, 2 * resolution, Fraction(1, 2)]
        assert EndHelper.dense_or_cyclic(points, resolution) == Dense(resolution)

    def test_too_few_points(self):
        assert isinstance(EndHelper.dense_or_cyclic([0, 1]), Inconclusive)

    def test_incommensurable_gaps(self):
        verdict = EndHelper.dense_or_cyclic([0, 2, 5])
        assert isinstance(verdict, Inconclusive)
        assert verdict.reason == "écart 3 entre 2 et 5 non multiple de l'écart minimal 2"


class TestContractibility:

    def test_points_pushed_below_base(self, end):
        elements = EndHelper.enumerate_words([T2, T3], 3, EndHelper.probes_for(end))
        result = EndHelper.e_contractible_check(end, [Fraction(0), Fraction(1), Fraction(5)], elements)
        assert result.passed
        assert result.reached[0] == (0, "id")

    def test_f2_stabilizer_excludes_b2(self):
        findings = {f.check: f for f in F2Helper.stabilizer_even_distance(3, 3)}
        assert findings["b2-outside-stabilizer"].status == "pass"
        assert findings["even-distance"].status == "pass"

    def test_f2_left_translations_on_axis(self):
        space = F2Tree(bound=48)
        end = F2Helper.axis_end(space)
        a = F2Isometry.left("a")
        assert EndHelper.in_stabilizer(end, a)

from fractions import Fraction

import pytest

from data.data_manager import DataManager
from models.automorphism import F2Isometry, VertexPermutation
from models.matrix import MatrixN
from models.tree_point import TreePoint
from utils.errors import InputFormatError
from utils.tree_helpers import TreeModelHelper


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestPretreeFiles:

    def test_load_sample(self, data_manager):
        pretree = data_manager.load_pretree("path3.pretree")
        assert pretree.points == {0, 1, 2}
        assert pretree.is_between(1, 0, 2)

    def test_comments_keep_line_numbers(self, data_manager, tmp_path):
        path = write(tmp_path, "p.pretree", "# commentaire\n\npretree 3\nb 1 0 2  # fin\nx 1 2\n")
        with pytest.raises(InputFormatError) as info:
            data_manager.load_pretree(path)
        assert info.value.line_number == 5
        assert info.value.source == path

    def test_missing_header(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_pretree(write(tmp_path, "p.pretree", "b 1 0 2\n"))
        assert info.value.line_number == 1

    @pytest.mark.parametrize("header", ["pretree 0", "pretree", "pretree x"])
    def test_bad_size(self, data_manager, tmp_path, header):
        with pytest.raises(InputFormatError):
            data_manager.load_pretree(write(tmp_path, "p.pretree", header + "\n"))

    def test_point_out_of_range(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_pretree(write(tmp_path, "p.pretree", "pretree 2\nb 1 0 5\n"))
        assert info.value.line_number == 2
        assert "5" in str(info.value)

    def test_empty_file(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_pretree(write(tmp_path, "p.pretree", "# rien\n"))
        assert info.value.line_number is None

    def test_flow_file(self, data_manager):
        flow = data_manager.load_flow("order.flow")
        assert flow.holds(0, 2)
        assert not flow.holds(2, 0)

    def test_flow_bad_line(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_flow(write(tmp_path, "f.flow", "flow 2\nr 0\n"))
        assert info.value.line_number == 2


class TestTreeFiles:

    def test_rational_lengths(self, data_manager):
        tree = data_manager.load_tree("star.tree")
        assert dict(((u, v), length) for u, v, length in tree.edges)[(0, 3)] == Fraction(1, 2)

    def test_zero_denominator(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_tree(write(tmp_path, "t.tree", "tree\nv 0\nv 1\ne 0 1 1/0\n"))
        assert info.value.line_number == 4

    def test_mixed_identifiers(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError):
            data_manager.load_tree(write(tmp_path, "t.tree", "tree\nv 0\nv x\ne 0 x 1\n"))

    def test_string_identifiers(self, data_manager, tmp_path):
        tree = data_manager.load_tree(write(tmp_path, "t.tree", "tree\nv x\nv y\ne x y 2\n"))
        assert tree.vertex_distance("x", "y") == 2

    def test_save_and_reload(self, data_manager, tmp_path):
        tree = data_manager.load_tree("star.tree")
        target = str(tmp_path / "out" / "star.tree")
        assert data_manager.save_tree(tree, target)
        assert data_manager.load_tree(target).edges == tree.edges
        assert data_manager.stats["saves_count"] == 1

    def test_format_tree(self, data_manager):
        lines = DataManager.format_tree(data_manager.load_tree("star.tree"))
        assert lines[0] == "tree"
        assert "e 0 3 1/2" in lines


class TestGenerators:

    def test_permutation_block(self, data_manager):
        tree = data_manager.load_tree("path5.tree")
        [flip] = data_manager.load_generators("flip5.aut", tree)
        assert isinstance(flip, VertexPermutation)
        assert flip.label == "flip"
        assert flip(TreePoint.vertex(1)) == TreePoint.vertex(3)

    def test_rules(self, data_manager):
        g, h = data_manager.load_generators("line.aut")
        assert (g.label, h.label) == ("g", "h")
        assert g(Fraction(1)) == 3 and h(Fraction(1)) == 4

    def test_f2_rules(self, data_manager):
        generators = data_manager.load_generators("f2.aut")
        assert [g.label for g in generators] == ["A2", "B2", "Phi"]
        assert all(isinstance(g, F2Isometry) for g in generators)

    def test_default_label(self, data_manager, tmp_path):
        [g] = data_manager.load_generators(write(tmp_path, "g.aut", "perm\nm 0 1\nm 1 0\n"))
        assert g.label == "g1"

    def test_rule_without_label(self, data_manager, tmp_path):
        [g] = data_manager.load_generators(write(tmp_path, "g.aut", "rule scale 1/2\n"))
        assert g(Fraction(4)) == 2

    def test_non_bijective_block(self, data_manager, tmp_path):
        path = write(tmp_path, "g.aut", "perm bad\nm 0 1\nm 1 1\n")
        with pytest.raises(InputFormatError) as info:
            data_manager.load_generators(path)
        assert info.value.line_number == 1

    def test_block_not_an_automorphism(self, data_manager, tmp_path):
        path = write(tmp_path, "g.aut", "perm swap\nm 0 1\nm 1 0\nm 2 2\nm 3 3\nm 4 4\n")
        with pytest.raises(InputFormatError):
            data_manager.load_generators(path, TreeModelHelper.path_tree(5))

    @pytest.mark.parametrize("text, line_number", [
        ("m 0 1\n", 1),
        ("rule translate\n", 1),
        ("rule spin 1\n", 1),
        ("rule f2-leftmul ac\n", 1),
        ("rule f2-phi a\n", 1),
        ("rule translate 2 as g\nturn 1\n", 2),
        ("rule translate x\n", 1),
    ])
    def test_malformed_lines(self, data_manager, tmp_path, text, line_number):
        with pytest.raises(InputFormatError) as info:
            data_manager.load_generators(write(tmp_path, "g.aut", text))
        assert info.value.line_number == line_number

    def test_no_generators(self, data_manager, tmp_path):
        with pytest.raises(InputFormatError):
            data_manager.load_generators(write(tmp_path, "g.aut", "# vide\n"))


class TestArguments:

    def test_vertex_point(self, data_manager):
        assert data_manager.parse_point("@3") == TreePoint.vertex(3)

    def test_edge_point(self, data_manager, path5):
        assert data_manager.parse_point("@1-2:1/4", path5) == path5.make_point(1, 2, Fraction(1, 4))

    def test_edge_point_needs_tree(self, data_manager):
        with pytest.raises(InputFormatError):
            data_manager.parse_point("@1-2:1/4")

    def test_edge_point_off_tree(self, data_manager, path5):
        with pytest.raises(InputFormatError):
            data_manager.parse_point("@0-3:1/2", path5)

    def test_invalid_point(self, data_manager):
        with pytest.raises(InputFormatError) as info:
            data_manager.parse_point("3")
        assert info.value.source == "<argument>"

    def test_matrix(self, data_manager):
        assert data_manager.parse_matrix("1,0,0,1", 2, 3) == MatrixN.identity(2, 3)
        assert data_manager.parse_matrix("4,0,0,1", 2, 3).key == (1, 0, 0, 1)

    def test_matrix_wrong_size(self, data_manager):
        with pytest.raises(InputFormatError):
            data_manager.parse_matrix("1,0,0", 2, 3)


class TestBookkeeping:

    def test_resolve(self, data_manager):
        assert data_manager.resolve("path3.pretree").endswith("samples/path3.pretree")
        assert data_manager.resolve("absent.pretree") == "absent.pretree"

    def test_stats(self, data_manager, tmp_path):
        data_manager.load_pretree("path3.pretree")
        assert data_manager.stats["loads_count"] == 1
        assert data_manager.stats["last_operation"] == "load_path3.pretree"
        with pytest.raises(InputFormatError):
            data_manager.load_pretree(write(tmp_path, "p.pretree", "pretree 1\nb 0 0\n"))
        assert data_manager.stats["errors_count"] == 1

    def test_missing_file(self, data_manager):
        with pytest.raises(OSError):
            data_manager.load_pretree("absent.pretree")
        assert data_manager.stats["errors_count"] == 1

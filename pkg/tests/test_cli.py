import pytest

from controllers.main_controller import EXIT_FAIL, EXIT_INPUT, EXIT_OK, MainController
from utils.errors import InputFormatError
from utils.settings import LabSettings


def run(capsys, *argv):
    code = MainController().run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def line_of(out, check):
    return next(line for line in out.splitlines() if line.startswith(f"check={check} "))


class TestPretreeCommands:

    def test_check_axioms_pass(self, capsys):
        code, out, _ = run(capsys, "check-axioms", "path3.pretree")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "command=check-axioms"
        assert out.endswith("verdict=pass count=4\n")
        assert "checked=1" in line_of(out, "interval-intersection")
        assert "inner={1} terminal={0,2}" in line_of(out, "terminal-decomposition")

    def test_check_axioms_fail(self, capsys):
        code, out, _ = run(capsys, "check-axioms", "bad.pretree")
        assert code == EXIT_FAIL
        assert "check=pretree-axiom status=fail axiom=A2 witness=(0,2,1)" in out

    def test_median(self, capsys):
        code, out, _ = run(capsys, "median", "star3.pretree", "1", "2", "3")
        assert code == EXIT_OK
        assert "median=0" in line_of(out, "median")

    def test_bridge(self, capsys):
        code, out, _ = run(capsys, "bridge", "path3.pretree", "--a", "0", "--b", "2")
        assert code == EXIT_OK
        assert "interior={1} q=2 t=0" in line_of(out, "bridge")

    def test_closure(self, capsys):
        code, out, _ = run(capsys, "closure", "star3.pretree", "--points", "1,2,3")
        assert code == EXIT_OK
        assert "closure={0,1,2,3}" in line_of(out, "median-closure")

    def test_median_on_invalid_pretree(self, capsys):
        code, out, err = run(capsys, "median", "bad.pretree", "0", "1", "2")
        assert code == EXIT_INPUT
        assert out == ""
        assert "ERREUR" in err

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, "check-axioms", "absent.pretree")
        assert code == EXIT_INPUT
        assert out == ""
        assert "absent.pretree" in err


class TestActionCommands:

    def test_classify_flip(self, capsys):
        code, out, _ = run(capsys, "classify", "--gens", "flip5.aut", "--tree", "path5.tree")
        assert code == EXIT_OK
        assert "elliptic" in out
        assert "check=elliptic-projection status=pass" in out

    def test_classify_translations(self, capsys):
        code, out, _ = run(capsys, "classify", "--gens", "line.aut")
        assert code == EXIT_OK
        assert "check=segment-meets-axis status=pass g=g q=0" in out
        assert "check=bridge-in-third-axis status=info" in out

    def test_cycle_tree_is_an_input_error(self, capsys):
        code, _, err = run(capsys, "classify", "--gens", "flip5.aut", "--tree", "cycle.tree")
        assert code == EXIT_INPUT
        assert "cycle.tree" in err

    def test_isometrize_prints_tree_first(self, capsys):
        code, out, _ = run(capsys, "isometrize", "--pretree", "star3.pretree", "--gens", "star_rotation.aut")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "tree"
        assert "e 0 3 1" in lines
        assert lines.index("command=isometrize") > lines.index("e 0 3 1")
        assert "check=isometry status=pass" in out

    def test_isometrize_writes_the_tree(self, capsys, tmp_path):
        target = str(tmp_path / "iso" / "star.tree")
        code, out, _ = run(capsys, "isometrize", "--pretree", "star3.pretree", "--gens", "star_rotation.aut",
                           "--output", target)
        assert code == EXIT_OK
        assert f"path={target}" in line_of(out, "tree-saved")
        with open(target, encoding="utf-8") as f:
            assert "e 0 3 1" in f.read().splitlines()


class TestF2Commands:

    def test_printed_identities_fail(self, capsys):
        code, out, _ = run(capsys, "f2-demo", "--check", "identities", "--word-bound", "3")
        assert code == EXIT_FAIL
        assert "status=pass bound=3" in line_of(out, "a2-conjugate-product")
        assert "status=pass bound=3" in line_of(out, "b2-conjugate-product")
        printed = line_of(out, "printed-a2-identity")
        assert "status=fail" in printed and "image=Ba" in printed and "witness=1" in printed

    def test_claim_alias_selects_vertex_orbit(self, capsys):
        code, out, _ = run(capsys, "f2-demo", "--check", "claim1", "--radius", "2", "--word-bound", "6")
        assert code == EXIT_OK
        covers = line_of(out, "closure-covers-ball")
        assert "status=pass" in covers and "radius=2" in covers and "bound=6" in covers
        assert "check=phi-squared" not in out


class TestFlowAndEnds:

    def test_gap_arc(self, capsys):
        code, out, _ = run(capsys, "flow", "--arc", "gap")
        assert code == EXIT_OK
        cut = line_of(out, "flow-cut")
        assert "position=gap" in cut
        assert "lower=0" in cut and "upper=1" in cut

    def test_flow_file(self, capsys):
        code, out, _ = run(capsys, "flow", "order.flow")
        assert code == EXIT_OK
        assert "order=(0,1,2)" in line_of(out, "flow-ordering")

    def test_flow_needs_exactly_one_source(self, capsys):
        code, _, _ = run(capsys, "flow")
        assert code == EXIT_INPUT

    def test_ends_on_line(self, capsys):
        code, out, _ = run(capsys, "ends", "--gens", "line.aut", "--axis-of", "g")
        assert code == EXIT_OK
        verdict = line_of(out, "dense-or-cyclic")
        assert "kind=cyclic" in verdict and "step=1" in verdict
        assert "check=e-contractible status=pass" in out
        assert "check=axis-metric-agreement status=pass" in out

    def test_unknown_axis_generator(self, capsys):
        code, _, _ = run(capsys, "ends", "--gens", "line.aut", "--axis-of", "k")
        assert code == EXIT_INPUT


class TestConjugacyCommands:

    def test_all_pairs_in_sl32(self, capsys):
        code, out, _ = run(capsys, "xpath", "--group", "sl:3:2", "--all-pairs")
        assert code == EXIT_OK
        assert "order=168" in line_of(out, "class") and "size=21" in line_of(out, "class")
        assert "pairs=210" in line_of(out, "xpath-all-pairs")

    def test_disconnected_transpositions(self, capsys):
        code, out, _ = run(capsys, "xpath", "--group", "perm:4", "--class", "of", "--element", "1,0,2,3",
                           "--from", "1,0,2,3", "--to", "0,1,3,2")
        assert code == EXIT_FAIL
        assert "check=xpath status=fail explored=1" in out

    def test_cap_is_an_input_error(self, capsys):
        code, _, _ = run(capsys, "xpath", "--group", "sl:3:3", "--cap", "100")
        assert code == EXIT_INPUT

    def test_invalid_group(self, capsys):
        code, _, _ = run(capsys, "xpath", "--group", "gl:3")
        assert code == EXIT_INPUT

    def test_sl_demo_needs_rank_three(self, capsys):
        code, _, _ = run(capsys, "sl-demo", "--n", "2")
        assert code == EXIT_INPUT


class TestParserAndSettings:

    def test_missing_command(self, capsys):
        code, _, err = run(capsys)
        assert code == EXIT_INPUT
        assert "usage" in err

    def test_unknown_choice(self, capsys):
        code, _, _ = run(capsys, "flow", "--arc", "spiral")
        assert code == EXIT_INPUT

    def test_runs_are_deterministic(self, capsys):
        first = run(capsys, "sl-demo", "--draws", "5", "--seed", "3")
        second = run(capsys, "sl-demo", "--draws", "5", "--seed", "3")
        assert first == second
        assert first[0] == EXIT_OK

    def test_environment_overrides(self, capsys, monkeypatch):
        monkeypatch.setenv("TREELAB_WINDOW", "large")
        code, _, err = run(capsys, "flow", "--arc", "gap")
        assert code == EXIT_INPUT
        assert "TREELAB_WINDOW" in err

    def test_settings_from_mapping(self):
        settings = LabSettings.from_env({"TREELAB_SEED": "7", "TREELAB_LOG_LEVEL": "debug"})
        assert (settings.seed, settings.log_level, settings.window) == (7, "DEBUG", 6)
        assert settings.with_overrides(seed=None, window=3).seed == 7

    def test_settings_reject_non_integers(self):
        with pytest.raises(InputFormatError):
            LabSettings.from_env({"TREELAB_CAP": "many"})

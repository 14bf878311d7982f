import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from controllers.action_controller import ActionController
from controllers.conjugacy_controller import ConjugacyController
from controllers.end_controller import EndController
from controllers.f2_controller import ALIASES, CHECKS, F2Controller
from controllers.flow_controller import FlowController
from controllers.metrize_controller import MetrizeController
from controllers.pretree_controller import PretreeController
from data.data_manager import DataManager
from models.report import Report
from utils.errors import InputFormatError, LabError, WindowExhaustedError
from utils.flow_helpers import SAMPLE_ARCS
from utils.settings import LabSettings
from views.base_view import BaseView
from views.report_view import ReportView

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class MainController:
    """Point d'entrée en ligne de commande: analyse des arguments, dispatch, rapport et code de sortie."""

    def __init__(self):
        self.settings = LabSettings()
        self.view = BaseView()

    def _init_data_layer(self, data_dir: str):
        self.data_manager = DataManager(data_dir)

    def _init_controllers(self):
        self.pretree_controller = PretreeController(self.data_manager, self.settings)
        self.action_controller = ActionController(self.data_manager, self.settings)
        self.flow_controller = FlowController(self.data_manager, self.settings)
        self.end_controller = EndController(self.data_manager, self.settings)
        self.conjugacy_controller = ConjugacyController(self.data_manager, self.settings)
        self.f2_controller = F2Controller(self.data_manager, self.settings)
        self.metrize_controller = MetrizeController(self.data_manager, self.settings)

    @staticmethod
    def _add_settings_flags(parser: argparse.ArgumentParser, default):
        parser.add_argument("--seed", type=int, default=default, help="graine des tirages aléatoires")
        parser.add_argument("--window", type=int, default=default, help="rayon de la fenêtre de travail")
        parser.add_argument("--word-bound", type=int, default=default, help="longueur maximale des mots")
        parser.add_argument("--cap", type=int, default=default, help="taille maximale d'un groupe énuméré")
        parser.add_argument("--log-level", choices=LOG_LEVELS, default=default)

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="treelab", description="Laboratoire de prétrees médians et d'actions de groupes sur les arbres"
        )
        self._add_settings_flags(parser, None)
        parser.add_argument("--data-dir", default="data", help="répertoire des données (samples/ inclus)")
        local = argparse.ArgumentParser(add_help=False)
        self._add_settings_flags(local, argparse.SUPPRESS)
        commands = parser.add_subparsers(dest="command", required=True, metavar="commande")

        def command(name: str, help_text: str) -> argparse.ArgumentParser:
            return commands.add_parser(name, help=help_text, parents=[local])

        sub = command("check-axioms", "vérifie les axiomes A1 à A4 d'un prétree")
        sub.add_argument("pretree")
        sub = command("median", "médiane de trois points d'un prétree")
        sub.add_argument("pretree")
        sub.add_argument("points", nargs=3)
        sub = command("bridge", "pont entre deux ensembles pleins")
        sub.add_argument("pretree")
        sub.add_argument("--a", required=True, help="points séparés par des virgules")
        sub.add_argument("--b", required=True, help="points séparés par des virgules")
        sub = command("closure", "clôture médiane d'un ensemble de points")
        sub.add_argument("pretree")
        sub.add_argument("--points", required=True, help="points séparés par des virgules")
        for name, help_text in (("classify", "classe chaque générateur: elliptique ou loxodromique"),
                                ("non-nesting", "cherche un segment envoyé strictement dans lui-même")):
            sub = command(name, help_text)
            sub.add_argument("--gens", required=True)
            sub.add_argument("--tree")
        sub = command("flow", "axiomes d'un flot, ou coupure induite par un arc de démonstration")
        sub.add_argument("relation", nargs="?")
        sub.add_argument("--arc", choices=SAMPLE_ARCS)
        sub = command("ends", "stabilisateur d'un bout, ν, ordre et dichotomie dense/cyclique")
        sub.add_argument("--gens", required=True)
        sub.add_argument("--tree")
        sub.add_argument("--a0")
        sub.add_argument("--axis-of", help="libellé du générateur loxodromique de base")
        sub = command("xpath", "X-chemins dans une classe de conjugaison")
        sub.add_argument("--group", required=True, help="sl:n:p ou perm:m")
        sub.add_argument("--class", dest="class_name", choices=("transvections", "of"), default="transvections")
        sub.add_argument("--element", help="représentant de la classe `of`")
        sub.add_argument("--from", dest="source")
        sub.add_argument("--to", dest="target")
        sub.add_argument("--all-pairs", action="store_true")
        sub = command("sl-demo", "formule de Chevalley et X-chemins de transvections dans SL(n, p)")
        sub.add_argument("--n", type=int, default=3)
        sub.add_argument("--p", type=int, default=2)
        sub.add_argument("--draws", type=int, default=50)
        sub = command("f2-demo", "le groupe <a², b², φ> sur l'arbre de Cayley de F2")
        sub.add_argument("--radius", type=int)
        sub.add_argument("--v", help="mot (ab) ou point d'arête (1-a, 1-a:1/3)")
        sub.add_argument("--check", choices=CHECKS + tuple(ALIASES), default="all")
        sub = command("isometrize", "réalise un prétree médian fini comme arbre simplicial")
        sub.add_argument("--pretree", required=True)
        sub.add_argument("--gens", required=True)
        sub.add_argument("--output", help="écrit l'arbre produit dans ce fichier")
        return parser

    def _handlers(self) -> Dict[str, Callable[[argparse.Namespace], Report]]:
        return {
            "check-axioms": lambda a: self.pretree_controller.check_axioms(a.pretree),
            "median": lambda a: self.pretree_controller.median(a.pretree, *a.points),
            "bridge": lambda a: self.pretree_controller.bridge(a.pretree, a.a, a.b),
            "closure": lambda a: self.pretree_controller.closure(a.pretree, a.points),
            "classify": lambda a: self.action_controller.classify(a.gens, a.tree),
            "non-nesting": lambda a: self.action_controller.non_nesting(a.gens, a.tree),
            "flow": lambda a: self.flow_controller.run(a.relation, a.arc),
            "ends": lambda a: self.end_controller.run(a.gens, a.a0, a.axis_of, a.tree),
            "xpath": lambda a: self.conjugacy_controller.xpath(a.group, a.class_name, a.element,
                                                               a.source, a.target, a.all_pairs),
            "sl-demo": lambda a: self.conjugacy_controller.sl_demo(a.n, a.p, a.draws),
            "f2-demo": lambda a: self.f2_controller.run(a.check, a.radius, a.v),
            "isometrize": lambda a: self.metrize_controller.isometrize(a.pretree, a.gens, a.output),
        }

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self.build_parser().parse_args(argv)
        except SystemExit as e:
            # argparse a déjà écrit l'usage sur stderr
            return e.code if isinstance(e.code, int) else EXIT_INPUT

        try:
            self.settings = LabSettings.from_env().with_overrides(
                seed=args.seed, window=args.window, word_bound=args.word_bound,
                cap=args.cap, log_level=args.log_level
            )
        except InputFormatError as e:
            self.view.display_error(str(e))
            return EXIT_INPUT
        logging.getLogger().setLevel(getattr(logging, self.settings.log_level, logging.WARNING))
        self._init_data_layer(args.data_dir)
        self._init_controllers()

        logger.debug("Commande %s avec %s", args.command, self.settings)
        try:
            report = self._handlers()[args.command](args)
        except WindowExhaustedError as e:
            report = Report()
            report.add(args.command, "inconclusive", reason=str(e), window=e.window)
        except (LabError, OSError) as e:
            self.view.display_error(str(e))
            return EXIT_INPUT

        ReportView.write(ReportView.emit_report(report, {"command": args.command}), sys.stdout)
        return EXIT_FAIL if report.verdict == "fail" else EXIT_OK

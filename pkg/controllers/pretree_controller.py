import logging
from typing import Hashable, List

from data.data_manager import DataManager
from models.pretree import FinitePretree
from models.report import Report
from utils.errors import StructureError
from utils.pretree_helpers import PretreeHelper
from utils.settings import LabSettings

logger = logging.getLogger(__name__)


class PretreeController:
    """Sous-commandes check-axioms, median, bridge et closure."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def _load_valid(self, path: str) -> FinitePretree:
        pretree = self.data_manager.load_pretree(path)
        result = PretreeHelper.check_pretree_axioms(pretree.points, pretree.between)
        if not result.passed:
            first = result.failures[0]
            raise StructureError(f"{path}: axiome {first.axiom} en échec", witness=first.witness)
        return pretree

    def _points(self, pretree: FinitePretree, text: str) -> List[Hashable]:
        points = [self.data_manager.parse_id(token) for token in text.split(",") if token.strip()]
        pretree._check_points(*points)
        return points

    def check_axioms(self, path: str) -> Report:
        pretree = self.data_manager.load_pretree(path)
        result = PretreeHelper.check_pretree_axioms(pretree.points, pretree.between)
        report = Report()
        for failure in result.failures:
            report.add("pretree-axiom", "fail", axiom=failure.axiom, witness=failure.witness)
        if result.passed:
            inner, terminal = PretreeHelper.terminal_decomposition(pretree)
            report.add("pretree-axioms", "pass", points=len(pretree), triples=len(pretree.between))
            report.add("terminal-decomposition", "info", inner=inner, terminal=terminal)
            for check, run in (("interval-intersection", PretreeHelper.interval_intersection_check),
                               ("interval-concatenation", PretreeHelper.concatenation_check)):
                checked, witness = run(pretree)
                details = {"checked": checked}
                if witness is not None:
                    details["witness"] = witness
                report.check(check, witness is None, **details)
        return report

    def median(self, path: str, x: str, y: str, z: str) -> Report:
        pretree = self._load_valid(path)
        a, b, c = self._points(pretree, f"{x},{y},{z}")
        report = Report()
        report.add("median", "info", x=a, y=b, z=c, median=pretree.median(a, b, c))
        return report

    def bridge(self, path: str, first: str, second: str) -> Report:
        pretree = self._load_valid(path)
        a, b = self._points(pretree, first), self._points(pretree, second)
        found = PretreeHelper.bridge(pretree, a, b)
        report = Report()
        report.add("bridge", "info", t=found.t, q=found.q, interior=found.interior)
        return report

    def closure(self, path: str, seed: str) -> Report:
        pretree = self._load_valid(path)
        points = self._points(pretree, seed)
        report = Report()
        try:
            closure = PretreeHelper.median_closure(pretree, points)
        except StructureError as e:
            report.add("median-closure", "fail", seed=frozenset(points), witness=e.witness)
            return report
        report.add("median-closure", "info", seed=frozenset(points), closure=closure, size=len(closure))
        report.check("closure-idempotent", PretreeHelper.median_closure(pretree, closure) == closure)
        return report

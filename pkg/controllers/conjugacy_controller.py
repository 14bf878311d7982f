import logging
import random
from itertools import combinations
from typing import Optional

from data.data_manager import DataManager
from models.group_table import Disconnected, FiniteGroupTable
from models.report import Report
from utils.conjugacy_helpers import ConjugacyHelper
from utils.errors import InputFormatError, PreconditionError, XPathUnavailable
from utils.settings import LabSettings
from utils.validators import validate_group_spec

logger = logging.getLogger(__name__)

# au-delà, sl-demo ne construit pas la table du groupe
TABLE_LIMIT = 1000


class ConjugacyController:
    """Sous-commandes xpath et sl-demo."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def _element(self, spec: str, text: str):
        kind, _, rest = spec.partition(":")
        if kind == "sl":
            n, p = (int(x) for x in rest.split(":"))
            return self.data_manager.parse_matrix(text, n, p)
        entries = [e.strip() for e in text.split(",")]
        if not all(e.isdigit() for e in entries):
            raise InputFormatError(f"Permutation invalide: {text!r}", "<argument>")
        return tuple(int(e) for e in entries)

    def _table(self, spec: str) -> FiniteGroupTable:
        if not validate_group_spec(spec):
            raise InputFormatError(f"Groupe invalide: {spec!r} (sl:n:p ou perm:m)", "<argument>")
        return ConjugacyHelper.build_group_table(spec, self.settings.cap)

    def xpath(self, spec: str, class_name: str = "transvections", element: Optional[str] = None,
              source: Optional[str] = None, target: Optional[str] = None, all_pairs: bool = False) -> Report:
        table = self._table(spec)
        members = ConjugacyHelper.select_class(
            table, class_name, self._element(spec, element) if element else None
        )
        report = Report()
        report.add("class", "info", group=table.name, order=len(table), size=len(members))
        if all_pairs:
            self._all_pairs(report, table, members)
        if source is not None or target is not None:
            if source is None or target is None:
                raise PreconditionError("--from et --to vont ensemble")
            i = table.index_of(self._element(spec, source))
            j = table.index_of(self._element(spec, target))
            found = ConjugacyHelper.bfs_xpath(table, members, i, j)
            if isinstance(found, Disconnected):
                report.add("xpath", "fail", explored=found.explored)
            else:
                ok, _ = ConjugacyHelper.is_x_path([table.index_of(e) for e in found.elements], table, members)
                report.check("xpath", ok, length=len(found), path=found.elements, certificates=found.certificates)
        return report

    @staticmethod
    def _all_pairs(report: Report, table: FiniteGroupTable, members) -> None:
        longest, disconnected, pairs = 0, None, 0
        for i, j in combinations(sorted(members), 2):
            pairs += 1
            found = ConjugacyHelper.bfs_xpath(table, members, i, j)
            if isinstance(found, Disconnected):
                disconnected = (table.elements[i], table.elements[j])
                break
            longest = max(longest, len(found))
        details = {"pairs": pairs, "max-length": longest}
        if disconnected is not None:
            details["witness"] = disconnected
        report.check("xpath-all-pairs", disconnected is None, **details)

    def sl_demo(self, n: int, p: int, draws: int = 50) -> Report:
        if n < 3:
            raise PreconditionError(f"n = {n} < 3")
        rng = random.Random(self.settings.seed)
        report = Report()
        order = ConjugacyHelper.sl_order(n, p)
        report.add("sl-order", "info", n=n, p=p, order=order)

        bad = None
        for _ in range(draws):
            t1 = ConjugacyHelper.random_transvection(rng, n, p)
            t2 = ConjugacyHelper.random_transvection(rng, n, p, orthogonal_to=t1.u)
            commutator, predicted = ConjugacyHelper.chevalley_commutator(t1, t2)
            if commutator != predicted:
                bad = (str(t1), str(t2))
                break
        details = {"draws": draws, "seed": self.settings.seed}
        if bad:
            details["witness"] = bad
        report.check("chevalley", bad is None, **details)

        certified, degenerate, unavailable, longest = 0, 0, 0, 0
        for _ in range(draws):
            t1 = ConjugacyHelper.random_transvection(rng, n, p)
            t2 = ConjugacyHelper.random_transvection(rng, n, p)
            try:
                path = ConjugacyHelper.transvection_xpath(t1, t2)
            except XPathUnavailable:
                unavailable += 1
                continue
            certified += 1
            degenerate += path.degenerate
            longest = max(longest, len(path))
        status = "pass" if unavailable == 0 else "inconclusive"
        report.add("transvection-xpath", status, draws=draws, certified=certified,
                   degenerate=degenerate, unavailable=unavailable, **{"max-length": longest})

        if order <= min(TABLE_LIMIT, self.settings.cap):
            table = ConjugacyHelper.build_group_table(f"sl:{n}:{p}", self.settings.cap)
            members = ConjugacyHelper.select_class(table, "transvections")
            report.add("transvection-class", "info", size=len(members), classes=len(table.classes))
            report.check("transvections-generate", ConjugacyHelper.transvections_generate(table))
        else:
            report.add("transvection-class", "info", skipped=True, order=order)
        return report

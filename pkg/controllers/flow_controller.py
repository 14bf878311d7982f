import logging
from typing import Optional

from data.data_manager import DataManager
from models.flow import AtPoint, Gap
from models.report import Report
from utils.errors import PreconditionError, WindowExhaustedError
from utils.flow_helpers import FlowHelper
from utils.settings import LabSettings

logger = logging.getLogger(__name__)


class FlowController:
    """Sous-commande flow: axiomes d'un flot lu sur fichier, ou coupure d'un arc de démonstration."""

    def __init__(self, data_manager: DataManager, settings: LabSettings):
        self.data_manager = data_manager
        self.settings = settings

    def run(self, path: Optional[str] = None, arc_name: Optional[str] = None) -> Report:
        if (path is None) == (arc_name is None):
            raise PreconditionError("Donner soit un fichier de flot, soit --arc")
        if path is not None:
            return self.check_file(path)
        return self.cut_of_arc(arc_name)

    def check_file(self, path: str) -> Report:
        flow = self.data_manager.load_flow(path)
        report = Report()
        report.extend(FlowHelper.check_flow_axioms(flow))
        if report.passed:
            report.add("flow", "pass", points=len(flow.base), pairs=len(flow.r))
            ordering = FlowHelper.linear_ordering(flow, flow.base.sorted_points())
            if ordering is not None:
                report.add("flow-ordering", "info", order=tuple(ordering))
        return report

    def cut_of_arc(self, name: str) -> Report:
        line, arc, coordinates = FlowHelper.sample_arc(name, self.settings.window)
        report = Report()
        try:
            cut = FlowHelper.flow_cut(line, arc, coordinates)
        except WindowExhaustedError as e:
            report.add("flow-cut", "inconclusive", arc=arc.label, reason=str(e))
            return report
        details = {"arc": arc.label, "line": line.label, "position": cut.position.kind, "lies-on": cut.lies_on}
        if isinstance(cut.position, AtPoint):
            details["point"] = cut.position.point
        elif isinstance(cut.position, Gap):
            details["lower"], details["upper"] = cut.position.lower, cut.position.upper
        report.add("flow-cut", "info", **details)

        probes = [line.ambient_point(x) for x in coordinates]
        flow = FlowHelper.flow_from_arc(line.ambient_space(), arc, probes)
        failures = FlowHelper.check_flow_axioms(flow)
        report.check("flow-axioms-on-probes", not failures, probes=len(probes),
                     undecided=len(flow.inconclusive))
        return report

from .main_controller import MainController
from .pretree_controller import PretreeController
from .action_controller import ActionController
from .flow_controller import FlowController
from .end_controller import EndController
from .conjugacy_controller import ConjugacyController
from .f2_controller import F2Controller
from .metrize_controller import MetrizeController

__all__ = [
    "MainController",
    "PretreeController",
    "ActionController",
    "FlowController",
    "EndController",
    "ConjugacyController",
    "F2Controller",
    "MetrizeController",
]

from .base_view import BaseView
from .report_view import ReportView

__all__ = [
    'BaseView',
    'ReportView'
]

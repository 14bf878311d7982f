import sys
from typing import TextIO


class BaseView:
    """Messages destinés à l'utilisateur: sur stderr, le rapport garde stdout."""

    stream: TextIO = None

    @classmethod
    def _out(cls) -> TextIO:
        return cls.stream or sys.stderr

    @classmethod
    def display_error(cls, message: str):
        print(f"ERREUR: {message}", file=cls._out())


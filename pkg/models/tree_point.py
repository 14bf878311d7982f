from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Optional, Tuple

from utils.errors import StructureError
from utils.formatters import format_rational

ZERO = Fraction(0)


@dataclass(frozen=True)
class TreePoint:
    """Sommet, ou point intérieur d'une arête (u, v) à distance offset de u.

    Forme canonique: u < v et 0 < offset < length.
    """

    u: Hashable
    v: Optional[Hashable] = None
    offset: Fraction = ZERO
    length: Fraction = ZERO

    def __post_init__(self):
        if self.v is None:
            if self.offset != 0:
                raise StructureError(f"Sommet avec décalage non nul: {self.u}")
            return
        if not self.u < self.v:
            raise StructureError(f"Arête non canonique: ({self.u}, {self.v})")
        if not 0 < self.offset < self.length:
            raise StructureError(
                f"Décalage {self.offset} hors de ]0, {self.length}[ sur ({self.u}, {self.v})"
            )

    @staticmethod
    def vertex(u: Hashable) -> "TreePoint":
        return TreePoint(u)

    @staticmethod
    def on_edge(x: Hashable, y: Hashable, offset_from_x, length) -> "TreePoint":
        offset_from_x = Fraction(offset_from_x)
        length = Fraction(length)
        if offset_from_x == 0:
            return TreePoint(x)
        if offset_from_x == length:
            return TreePoint(y)
        if y < x:
            return TreePoint(y, x, length - offset_from_x, length)
        return TreePoint(x, y, offset_from_x, length)

    @property
    def is_vertex(self) -> bool:
        return self.v is None

    @property
    def edge(self) -> Optional[Tuple[Hashable, Hashable]]:
        return None if self.v is None else (self.u, self.v)

    def offset_from(self, endpoint: Hashable) -> Fraction:
        if self.v is None:
            return ZERO
        return self.offset if endpoint == self.u else self.length - self.offset

    def anchors(self) -> Tuple[Tuple[Hashable, Fraction], ...]:
        """Sommets extrémités avec leur distance au point."""
        if self.v is None:
            return ((self.u, ZERO),)
        return ((self.u, self.offset), (self.v, self.length - self.offset))

    def sort_key(self):
        if self.v is None:
            return (natural_key(self.u), 0, natural_key(self.u), ZERO)
        return (natural_key(self.u), 1, natural_key(self.v), self.offset)

    def __lt__(self, other: "TreePoint") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.v is None:
            return f"@{self.u}"
        return f"@{self.u}-{self.v}:{format_rational(self.offset)}"


def natural_key(value):
    key = getattr(value, "sort_key", None)
    return key() if callable(key) else value

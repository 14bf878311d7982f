from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, FrozenSet, Hashable, Optional, Tuple, Union

from models.pretree import BasePretree
from utils.errors import PreconditionError, StructureError


class Promise(Enum):
    ANALYTIC = "analytic"
    DECLARED_STABLE = "declared-stable"
    NONE = "none"


@dataclass(frozen=True)
class FlowRelation:
    base: BasePretree
    r: FrozenSet[Tuple[Hashable, Hashable]]
    inconclusive: FrozenSet[Tuple[Hashable, Hashable]] = frozenset()

    def __post_init__(self):
        for x, y in sorted(self.r, key=str):
            if x not in self.base.points or y not in self.base.points:
                raise StructureError(f"Couple ({x}, {y}) avec point inconnu", witness=(x, y))

    def holds(self, x, y) -> bool:
        return (x, y) in self.r


@dataclass(frozen=True)
class DirectedArcSample:
    """Suite strictement croissante de points d'un arc, avec sa promesse de prolongement.

    `continuation(k)` donne le k-ième point de l'arc (k >= len(points)) pour
    les arcs dont la règle est connue analytiquement.
    """

    points: Tuple
    promise: Promise = Promise.NONE
    continuation: Optional[Callable[[int], object]] = field(default=None, compare=False)
    label: str = "C"

    def __post_init__(self):
        if not self.points:
            raise PreconditionError("Un arc échantillonné a au moins un point")
        if self.promise is Promise.ANALYTIC and self.continuation is None:
            raise PreconditionError("Une promesse analytique demande une règle de prolongement")

    def extended(self, extra: int) -> Tuple:
        if self.continuation is None or extra <= 0:
            return tuple(self.points)
        start = len(self.points)
        return tuple(self.points) + tuple(self.continuation(k) for k in range(start, start + extra))


@dataclass(frozen=True)
class AtPoint:
    point: Fraction
    kind = "at-point"


@dataclass(frozen=True)
class Gap:
    lower: Fraction
    upper: Fraction
    kind = "gap"


@dataclass(frozen=True)
class PlusInfinity:
    kind = "plus-infinity"


@dataclass(frozen=True)
class MinusInfinity:
    kind = "minus-infinity"


CutPosition = Union[AtPoint, Gap, PlusInfinity, MinusInfinity]


@dataclass(frozen=True)
class Cut:
    line: object
    position: CutPosition

    @property
    def lies_on(self) -> bool:
        return isinstance(self.position, (AtPoint, Gap))

    def lower_contains(self, x) -> bool:
        """x est dans l'ensemble inférieur (borné) de la coupure."""
        position = self.position
        if isinstance(position, AtPoint):
            return x <= position.point
        if isinstance(position, Gap):
            return x <= position.lower
        return isinstance(position, PlusInfinity)

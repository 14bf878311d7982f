from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple

from models.automorphism import TreeAutomorphism
from models.pretree import BasePretree
from utils.errors import PreconditionError


@dataclass
class DiscreteMedianClosure:
    pretree: BasePretree
    generators: List[TreeAutomorphism] = field(default_factory=list)


@dataclass(frozen=True)
class IsometryCertificate:
    label: str
    ok: bool
    checked_pairs: int
    witness: Tuple = ()


@dataclass
class EquivariantMetric:
    tree: object
    correspondence: Dict[Hashable, Hashable]
    certificates: List[IsometryCertificate] = field(default_factory=list)

    @property
    def isometric(self) -> bool:
        return all(c.ok for c in self.certificates)


@dataclass(frozen=True)
class AxisChart:
    """Coordonnées d'une fenêtre d'axe translaté s(L_g), normalisées par `unit`."""

    label: str
    points: Tuple[Hashable, ...]
    coordinates: Tuple[Fraction, ...]
    unit: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.points) != len(self.coordinates):
            raise PreconditionError(f"{self.label}: points et coordonnées de tailles différentes")
        if self.unit <= 0:
            raise PreconditionError(f"{self.label}: unité non positive")

    @staticmethod
    def from_points(label: str, space, points: Sequence[Hashable], unit=1) -> "AxisChart":
        """Coordonnées = distance au premier point de la suite ordonnée."""
        origin = points[0]
        return AxisChart(label, tuple(points), tuple(space.distance(origin, p) for p in points), Fraction(unit))

    def coordinate_map(self) -> Dict[Hashable, Fraction]:
        return {p: c / self.unit for p, c in zip(self.points, self.coordinates)}

    def metric(self, x, y) -> Fraction:
        coords = self.coordinate_map()
        return abs(coords[x] - coords[y])


@dataclass(frozen=True)
class AgreementFinding:
    first: str
    second: str
    status: str
    overlap: int = 0
    witness: Tuple = ()

from dataclasses import dataclass
from typing import FrozenSet, Hashable, Tuple


@dataclass(frozen=True)
class OrbitWindow:
    """Orbite d'un point sous G et sa clôture médiane, sur une boule de l'arbre de Cayley."""

    origin: Hashable
    radius: int
    bound: int
    orbit: FrozenSet[Hashable]
    closure: FrozenSet[Hashable]
    missing_vertices: Tuple[Hashable, ...] = ()
    labels: FrozenSet[str] = frozenset()
    crowded_edges: Tuple[Tuple[Hashable, Hashable], ...] = ()
    strays: Tuple[Hashable, ...] = ()

    @property
    def covers_ball(self) -> bool:
        return not self.missing_vertices

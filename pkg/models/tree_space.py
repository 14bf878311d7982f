from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Hashable, List, Optional, Tuple

from models.tree_point import TreePoint, ZERO, natural_key
from utils.errors import StructureError


class TreeSpace(ABC):
    """Espace métrique arborescent exact (arithmétique rationnelle)."""

    name = "arbre"
    root: Any = None

    @abstractmethod
    def distance(self, p, q) -> Fraction:
        ...

    @abstractmethod
    def point_along(self, p, q, t) -> Any:
        """Point du géodésique [p, q] à distance t de p."""

    @abstractmethod
    def geodesic(self, p, q) -> Tuple[List[Any], Fraction]:
        ...

    def between(self, y, x, z) -> bool:
        """B(y; x, z): y est strictement entre x et z."""
        if y == x or y == z:
            return False
        return self.distance(x, y) + self.distance(y, z) == self.distance(x, z)

    def in_segment(self, y, x, z) -> bool:
        return y == x or y == z or self.between(y, x, z)

    def median(self, x, y, z):
        t = (self.distance(x, y) + self.distance(x, z) - self.distance(y, z)) / 2
        return self.point_along(x, y, t)

    def displacement(self, g, p) -> Fraction:
        return self.distance(p, g(p))

    def in_window(self, p, radius: Optional[int]) -> bool:
        if radius is None or self.root is None:
            return True
        return self.distance(self.root, p) <= radius


class SimplicialSpace(TreeSpace):
    """Arbre simplicial; les points sont des TreePoint."""

    @abstractmethod
    def vertex_distance(self, u: Hashable, v: Hashable) -> Fraction:
        ...

    @abstractmethod
    def vertex_path(self, u: Hashable, v: Hashable) -> List[Hashable]:
        ...

    @abstractmethod
    def edge_length(self, u: Hashable, v: Hashable) -> Fraction:
        ...

    @abstractmethod
    def has_vertex(self, u: Hashable) -> bool:
        ...

    def make_point(self, x: Hashable, y: Optional[Hashable] = None, offset_from_x=ZERO) -> TreePoint:
        if y is None:
            if not self.has_vertex(x):
                raise StructureError(f"Sommet inconnu: {x}")
            return TreePoint.vertex(x)
        length = self.edge_length(x, y)
        if not 0 <= Fraction(offset_from_x) <= length:
            raise StructureError(f"Décalage {offset_from_x} hors de l'arête ({x}, {y})")
        return TreePoint.on_edge(x, y, offset_from_x, length)

    def distance(self, p: TreePoint, q: TreePoint) -> Fraction:
        if p == q:
            return ZERO
        if p.edge is not None and p.edge == q.edge:
            return abs(p.offset - q.offset)
        return min(dp + self.vertex_distance(a, b) + dq
                   for a, dp in p.anchors() for b, dq in q.anchors())

    def geodesic(self, p: TreePoint, q: TreePoint) -> Tuple[List[TreePoint], Fraction]:
        if p == q:
            return [p], ZERO
        if p.edge is not None and p.edge == q.edge:
            return [p, q], abs(p.offset - q.offset)
        _, a, b = min((dp + self.vertex_distance(a, b) + dq, a, b)
                      for a, dp in p.anchors() for b, dq in q.anchors())
        chain = [p]
        for vertex in self.vertex_path(a, b):
            station = TreePoint.vertex(vertex)
            if station != chain[-1]:
                chain.append(station)
        if q != chain[-1]:
            chain.append(q)
        return chain, self.distance(p, q)

    def point_along(self, p: TreePoint, q: TreePoint, t) -> TreePoint:
        t = Fraction(t)
        chain, total = self.geodesic(p, q)
        if not 0 <= t <= total:
            raise StructureError(f"Paramètre {t} hors de [0, {total}]")
        travelled = ZERO
        for start, end in zip(chain, chain[1:]):
            step = self.distance(start, end)
            if t <= travelled + step:
                return self._step_towards(start, end, t - travelled)
            travelled += step
        return chain[-1]

    def _step_towards(self, start: TreePoint, end: TreePoint, delta: Fraction) -> TreePoint:
        if delta == 0:
            return start
        edge = start.edge or end.edge or tuple(sorted((start.u, end.u), key=natural_key))
        x, y = edge
        length = self.edge_length(x, y)
        pos_start = self._position(start, x, length)
        pos_end = self._position(end, x, length)
        new_pos = pos_start + delta if pos_end > pos_start else pos_start - delta
        return TreePoint.on_edge(x, y, new_pos, length)

    @staticmethod
    def _position(point: TreePoint, x: Hashable, length: Fraction) -> Fraction:
        if point.is_vertex:
            return ZERO if point.u == x else length
        return point.offset

    def midpoints(self, edges) -> List[TreePoint]:
        return [TreePoint.on_edge(x, y, self.edge_length(x, y) / 2, self.edge_length(x, y)) for x, y in edges]

import logging
from abc import abstractmethod
from fractions import Fraction
from typing import Hashable, List, Optional, Tuple

from models.f2_word import F2Word, LETTERS
from models.metric_tree import MetricTree
from models.tree_point import TreePoint, natural_key
from models.tree_space import SimplicialSpace
from utils.errors import PreconditionError, StructureError

logger = logging.getLogger(__name__)

ONE = Fraction(1)


class LazyTree(SimplicialSpace):
    """Arbre infini à arêtes unité, développé à la demande autour de root."""

    def __init__(self, root: Hashable, bound: int = 12):
        self.root_vertex = root
        self.root = TreePoint.vertex(root)
        self.bound = bound

    @abstractmethod
    def neighbors(self, vertex: Hashable) -> List[Hashable]:
        ...

    def edge_length(self, u: Hashable, v: Hashable) -> Fraction:
        if v not in self.neighbors(u):
            raise StructureError(f"Arête inconnue: ({u}, {v})", witness=(u, v))
        return ONE

    def ball_vertices(self, center: Hashable, radius: int) -> List[Hashable]:
        seen = {center}
        layer = [center]
        for _ in range(radius):
            next_layer = []
            for vertex in layer:
                for neighbor in self.neighbors(vertex):
                    if neighbor not in seen:
                        seen.add(neighbor)
                        next_layer.append(neighbor)
            layer = next_layer
        return sorted(seen, key=natural_key)

    def materialize_ball(self, center: Optional[Hashable] = None, radius: int = 1) -> MetricTree:
        center = self.root_vertex if center is None else center
        if radius < 0 or radius > self.bound:
            raise PreconditionError(f"Rayon {radius} hors de la borne déclarée {self.bound}")
        vertices = self.ball_vertices(center, radius)
        kept = set(vertices)
        edges = []
        for vertex in vertices:
            for neighbor in self.neighbors(vertex):
                if neighbor in kept and natural_key(vertex) < natural_key(neighbor):
                    edges.append((vertex, neighbor, ONE))
        logger.debug("Boule de rayon %s: %s sommets", radius, len(vertices))
        return MetricTree(vertices, edges)

    def ball_points(self, radius: int, center: Optional[Hashable] = None) -> List[TreePoint]:
        center = self.root_vertex if center is None else center
        return [TreePoint.vertex(v) for v in self.ball_vertices(center, radius)]


class F2Tree(LazyTree):
    """Arbre de Cayley de F2 = <a, b>, 4-régulier, arêtes unité."""

    name = "f2"

    def __init__(self, bound: int = 12):
        super().__init__(F2Word(), bound)

    def has_vertex(self, u) -> bool:
        return isinstance(u, F2Word)

    def neighbors(self, vertex: F2Word) -> List[F2Word]:
        return [vertex * F2Word((letter,)) for letter in LETTERS]

    def edge_length(self, u: F2Word, v: F2Word) -> Fraction:
        if len((~u) * v) != 1:
            raise StructureError(f"Arête inconnue: ({u}, {v})", witness=(u, v))
        return ONE

    def vertex_distance(self, u: F2Word, v: F2Word) -> Fraction:
        return Fraction(len(u) + len(v) - 2 * u.common_prefix_length(v))

    def vertex_path(self, u: F2Word, v: F2Word) -> List[F2Word]:
        n = u.common_prefix_length(v)
        up = [u[:k] for k in range(len(u), n - 1, -1)]
        down = [v[:k] for k in range(n + 1, len(v) + 1)]
        return up + down

    def median(self, x: TreePoint, y: TreePoint, z: TreePoint):
        if x.is_vertex and y.is_vertex and z.is_vertex:
            meets = (x.u.common_prefix(y.u), y.u.common_prefix(z.u), x.u.common_prefix(z.u))
            return TreePoint.vertex(max(meets, key=len))
        return super().median(x, y, z)

    def vertex(self, word) -> TreePoint:
        if isinstance(word, str):
            word = F2Word.parse(word)
        return TreePoint.vertex(word)

    def midpoint(self, x, y) -> TreePoint:
        x = F2Word.parse(x) if isinstance(x, str) else x
        y = F2Word.parse(y) if isinstance(y, str) else y
        return self.make_point(x, y, Fraction(1, 2))


class SpiderTree(LazyTree):
    """Étoile à `legs` branches infinies; sommets (branche, profondeur), centre (0, 0)."""

    name = "spider"
    CENTER: Tuple[int, int] = (0, 0)

    def __init__(self, legs: int = 3, bound: int = 64):
        if legs < 1:
            raise PreconditionError("Au moins une branche est requise")
        self.legs = legs
        super().__init__(self.CENTER, bound)

    def has_vertex(self, u) -> bool:
        if u == self.CENTER:
            return True
        return (isinstance(u, tuple) and len(u) == 2 and 1 <= u[0] <= self.legs and u[1] >= 1)

    def neighbors(self, vertex: Tuple[int, int]) -> List[Tuple[int, int]]:
        leg, depth = vertex
        if depth == 0:
            return [(i, 1) for i in range(1, self.legs + 1)]
        below = self.CENTER if depth == 1 else (leg, depth - 1)
        return [below, (leg, depth + 1)]

    def vertex_distance(self, u, v) -> Fraction:
        if u[0] == v[0]:
            return Fraction(abs(u[1] - v[1]))
        return Fraction(u[1] + v[1])

    def vertex_path(self, u, v) -> List[Tuple[int, int]]:
        if u[0] == v[0] and u != self.CENTER:
            step = 1 if v[1] >= u[1] else -1
            return [(u[0], d) for d in range(u[1], v[1] + step, step)]
        up = [(u[0], d) for d in range(u[1], 0, -1)]
        down = [(v[0], d) for d in range(1, v[1] + 1)]
        return up + [self.CENTER] + down

    def leg_point(self, leg: int, depth) -> TreePoint:
        """Point de la branche `leg` à distance rationnelle `depth` du centre."""
        depth = Fraction(depth)
        if depth == 0:
            return TreePoint.vertex(self.CENTER)
        whole = depth.numerator // depth.denominator
        lower = self.CENTER if whole == 0 else (leg, whole)
        if depth == whole:
            return TreePoint.vertex((leg, whole))
        return TreePoint.on_edge(lower, (leg, whole + 1), depth - whole, ONE)

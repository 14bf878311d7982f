import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Tuple

import networkx as nx

from models.tree_point import TreePoint, natural_key
from models.tree_space import SimplicialSpace
from utils.errors import StructureError

logger = logging.getLogger(__name__)


class MetricTree(SimplicialSpace):
    """Arbre simplicial fini à longueurs d'arêtes rationnelles positives."""

    name = "arbre-fini"

    def __init__(self, vertices: Iterable[Hashable],
                 edges: Iterable[Tuple[Hashable, Hashable, Fraction]]):
        self.graph = nx.Graph()
        self.graph.add_nodes_from(vertices)
        for u, v, length in edges:
            self._validate_edge(u, v, length)
            self.graph.add_edge(u, v, length=Fraction(length))
        self._validate_tree()
        self._distance_cache: Dict[Hashable, Dict[Hashable, Fraction]] = {}

    def _validate_edge(self, u, v, length):
        if u not in self.graph or v not in self.graph:
            raise StructureError(f"Arête ({u}, {v}) vers un sommet inconnu", witness=(u, v))
        if u == v:
            raise StructureError(f"Boucle sur le sommet {u}", witness=(u, v))
        if Fraction(length) <= 0:
            raise StructureError(f"Longueur non positive sur ({u}, {v}): {length}", witness=(u, v))

    def _validate_tree(self):
        if self.graph.number_of_nodes() == 0:
            raise StructureError("Arbre vide")
        if not nx.is_tree(self.graph):
            cycle = None
            if not nx.is_connected(self.graph):
                raise StructureError("Graphe non connexe")
            try:
                cycle = tuple(u for u, _ in nx.find_cycle(self.graph))
            except nx.NetworkXNoCycle:
                pass
            raise StructureError("Le graphe contient un cycle", witness=cycle)

    @property
    def vertices(self) -> List[Hashable]:
        return sorted(self.graph.nodes, key=natural_key)

    @property
    def edges(self) -> List[Tuple[Hashable, Hashable, Fraction]]:
        result = []
        for u, v, data in self.graph.edges(data=True):
            x, y = sorted((u, v), key=natural_key)
            result.append((x, y, data["length"]))
        return sorted(result, key=lambda e: (natural_key(e[0]), natural_key(e[1])))

    def has_vertex(self, u: Hashable) -> bool:
        return u in self.graph

    def has_edge(self, u: Hashable, v: Hashable) -> bool:
        return self.graph.has_edge(u, v)

    def edge_length(self, u: Hashable, v: Hashable) -> Fraction:
        if not self.graph.has_edge(u, v):
            raise StructureError(f"Arête inconnue: ({u}, {v})", witness=(u, v))
        return self.graph.edges[u, v]["length"]

    def vertex_distance(self, u: Hashable, v: Hashable) -> Fraction:
        if u not in self._distance_cache:
            if u not in self.graph:
                raise StructureError(f"Sommet inconnu: {u}", witness=(u,))
            self._distance_cache[u] = nx.single_source_dijkstra_path_length(self.graph, u, weight="length")
        try:
            return Fraction(self._distance_cache[u][v])
        except KeyError:
            raise StructureError(f"Sommet inconnu: {v}", witness=(v,))

    def vertex_path(self, u: Hashable, v: Hashable) -> List[Hashable]:
        return nx.shortest_path(self.graph, u, v)

    def vertex_points(self) -> List[TreePoint]:
        return [TreePoint.vertex(u) for u in self.vertices]

    def edge_midpoints(self) -> List[TreePoint]:
        return self.midpoints((u, v) for u, v, _ in self.edges)

    def default_sample(self) -> List[TreePoint]:
        """Sommets et milieux d'arêtes (subdivision barycentrique)."""
        return self.vertex_points() + self.edge_midpoints()

    def subtree(self, vertices: Iterable[Hashable]) -> "MetricTree":
        kept = set(vertices)
        return MetricTree(kept, [(u, v, length) for u, v, length in self.edges if u in kept and v in kept])

    def leaves(self) -> List[Hashable]:
        if self.graph.number_of_nodes() == 1:
            return self.vertices
        return [u for u in self.vertices if self.graph.degree[u] == 1]

    def __repr__(self) -> str:
        return f"MetricTree({self.graph.number_of_nodes()} sommets)"

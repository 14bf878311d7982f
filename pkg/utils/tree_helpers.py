import random
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from models.automorphism import F2Isometry, PiecewiseLinearMap, VertexPermutation
from models.lazy_tree import F2Tree
from models.line_model import LineModel
from models.metric_tree import MetricTree
from models.pretree import FinitePretree
from models.tree_point import TreePoint, natural_key
from utils.errors import PreconditionError

ORDER_SYMBOLS = {-1: "<", 0: "=", 1: ">"}


class TreeModelHelper:

    @staticmethod
    def random_tree(rng: random.Random, n: int, rational_lengths: bool = False) -> MetricTree:
        """Arbre aléatoire à n sommets (suite de Prüfer), longueurs unité ou rationnelles."""
        if n < 1:
            raise ValueError("Un arbre a au moins un sommet")
        if n == 1:
            return MetricTree([0], [])
        graph = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
        edges = []
        for u, v in sorted(graph.edges):
            length = Fraction(rng.randint(1, 6), rng.randint(1, 4)) if rational_lengths else Fraction(1)
            edges.append((u, v, length))
        return MetricTree(range(n), edges)

    @staticmethod
    def random_points(rng: random.Random, tree: MetricTree, count: int) -> List[TreePoint]:
        """Sommets et points rationnels d'arêtes tirés au hasard (sans doublon)."""
        points = set()
        edges = tree.edges
        attempts = 0
        while len(points) < count and attempts < 50 * count:
            attempts += 1
            if not edges or rng.random() < 0.4:
                points.add(TreePoint.vertex(rng.choice(tree.vertices)))
                continue
            u, v, length = rng.choice(edges)
            offset = length * Fraction(rng.randint(1, 7), 8)
            points.add(tree.make_point(u, v, offset))
        return sorted(points)

    @staticmethod
    def as_pretree(space, sample: Iterable[Hashable]) -> FinitePretree:
        """B(y; x, z) ssi y est strictement intérieur à la géodésique [x, z]."""
        ordered = sorted(set(sample), key=natural_key)
        triples = []
        for x, z in combinations(ordered, 2):
            for y in ordered:
                if space.between(y, x, z):
                    triples.append((y, x, z))
                    triples.append((y, z, x))
        return FinitePretree(ordered, triples)

    @staticmethod
    def line_order_compare(line: LineModel, x, y) -> str:
        return ORDER_SYMBOLS[line.compare(x, y)]

    @staticmethod
    def four_point_condition(space, points: Sequence[Hashable]) -> bool:
        for p, q, r, s in combinations(points, 4):
            sums = sorted((space.distance(p, q) + space.distance(r, s),
                           space.distance(p, r) + space.distance(q, s),
                           space.distance(p, s) + space.distance(q, r)))
            if sums[1] != sums[2]:
                return False
        return True

    @staticmethod
    def automorphisms(tree: MetricTree, limit: Optional[int] = None) -> List[VertexPermutation]:
        """Automorphismes de l'arbre préservant les longueurs (GraphMatcher de networkx)."""
        matcher = isomorphism.GraphMatcher(
            tree.graph, tree.graph, edge_match=lambda e1, e2: e1["length"] == e2["length"]
        )
        result = []
        for i, mapping in enumerate(matcher.isomorphisms_iter()):
            if limit is not None and i >= limit:
                break
            result.append(VertexPermutation(mapping, f"g{i}", tree))
        return result

    @staticmethod
    def path_tree(n: int, length=1) -> MetricTree:
        return MetricTree(range(n), [(i, i + 1, Fraction(length)) for i in range(n - 1)])

    @staticmethod
    def star_tree(leaves: int = 3) -> MetricTree:
        """Étoile: centre 0, feuilles 1..leaves."""
        return MetricTree(range(leaves + 1), [(0, i, Fraction(1)) for i in range(1, leaves + 1)])

    @staticmethod
    def space_for(generators: Sequence, tree: Optional[MetricTree] = None,
                  window: int = 6) -> Tuple[object, List[Hashable]]:
        """Arbre porteur et échantillon de travail pour une famille de générateurs."""
        if tree is not None:
            return tree, tree.default_sample()
        if generators and all(isinstance(g, PiecewiseLinearMap) for g in generators):
            line = LineModel()
            return line, line.window_points(window, Fraction(1, 2))
        if generators and all(isinstance(g, F2Isometry) for g in generators):
            space = F2Tree(bound=window + 2)
            return space, space.ball_points(window)
        raise PreconditionError("Générateurs sans arbre porteur commun: fournir un fichier d'arbre")

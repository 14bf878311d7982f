import logging
from itertools import combinations
from typing import FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

import networkx as nx

from models.pretree import AxiomFailure, AxiomReport, BasePretree, Bridge, FinitePretree
from models.tree_point import natural_key
from utils.errors import PreconditionError, StructureError

logger = logging.getLogger(__name__)


class PretreeHelper:

    @staticmethod
    def check_pretree_axioms(points: Iterable[Hashable], between: Iterable[Tuple]) -> AxiomReport:
        """Vérification exhaustive des axiomes A1 à A4."""
        pretree = FinitePretree(points, between)
        triples = sorted(pretree.between, key=lambda t: tuple(natural_key(p) for p in t))
        ordered = pretree.sorted_points()
        failures: List[AxiomFailure] = []

        for y, x, z in triples:
            if x == z:
                failures.append(AxiomFailure("A1", (y, x, z)))
            if pretree.is_between(z, x, y):
                failures.append(AxiomFailure("A2", (y, x, z)))
            if not pretree.is_between(y, z, x):
                failures.append(AxiomFailure("A3", (y, x, z)))
            for w in ordered:
                if w != y and not (pretree.is_between(y, x, w) or pretree.is_between(y, z, w)):
                    failures.append(AxiomFailure("A4", (y, x, z, w)))

        failures.sort(key=AxiomFailure.sort_key)
        if failures:
            logger.info("Axiomes en échec: %s", sorted({f.axiom for f in failures}))
        return AxiomReport(failures)

    @staticmethod
    def is_full(pretree: BasePretree, subset: Iterable[Hashable]) -> bool:
        subset = set(subset)
        pretree._check_points(*subset)
        return all(pretree.interval(x, y) <= subset for x, y in combinations(subset, 2))

    @staticmethod
    def is_linear(pretree: BasePretree, subset: Iterable[Hashable]) -> bool:
        subset = set(subset)
        pretree._check_points(*subset)
        for x, y, z in combinations(subset, 3):
            if not (pretree.is_between(x, y, z) or pretree.is_between(y, x, z) or pretree.is_between(z, x, y)):
                return False
        return True

    @staticmethod
    def is_arc(pretree: BasePretree, subset: Iterable[Hashable]) -> bool:
        subset = set(subset)
        return bool(subset) and PretreeHelper.is_full(pretree, subset) and PretreeHelper.is_linear(pretree, subset)

    @staticmethod
    def terminal_decomposition(pretree: BasePretree) -> Tuple[FrozenSet[Hashable], FrozenSet[Hashable]]:
        """(T0, P): P = points jamais strictement entre deux autres."""
        ordered = pretree.sorted_points()
        inner: Set[Hashable] = set()
        for x, z in combinations(ordered, 2):
            inner.update(pretree.strictly_between(x, z))
        return frozenset(inner), frozenset(pretree.points) - inner

    @staticmethod
    def projection(pretree: BasePretree, subset: Iterable[Hashable], point: Hashable) -> Hashable:
        """Point de S le plus proche de p, par repliement des médianes t <- m(p, t, s)."""
        ordered = sorted(subset, key=natural_key)
        if not ordered:
            raise PreconditionError("Projection sur un ensemble vide")
        current = ordered[0]
        for s in ordered[1:]:
            m = pretree.median(point, current, s)
            if m is None:
                raise StructureError(f"Pas de médiane pour ({point}, {current}, {s})", witness=(point, current, s))
            current = m
        return current

    @staticmethod
    def bridge(pretree: BasePretree, first: Iterable[Hashable], second: Iterable[Hashable]) -> Bridge:
        first, second = frozenset(first), frozenset(second)
        if not first or not second:
            raise PreconditionError("Pont entre ensembles vides")
        for name, subset in (("A", first), ("B", second)):
            if not PretreeHelper.is_full(pretree, subset):
                raise PreconditionError(f"L'ensemble {name} n'est pas plein")
        common = first & second
        if len(common) >= 2:
            raise PreconditionError(f"|A ∩ B| = {len(common)} >= 2")
        if common:
            point = next(iter(common))
            return Bridge(point, point, frozenset())

        anchor = min(second, key=natural_key)
        t = PretreeHelper.projection(pretree, first, anchor)
        q = PretreeHelper.projection(pretree, second, t)
        segment = pretree.interval(t, q)
        if segment & first != {t} or segment & second != {q}:
            raise StructureError("Le segment [t, q] rencontre A ou B hors de ses extrémités", witness=(t, q))
        return Bridge(t, q, segment - {t, q})

    @staticmethod
    def median_closure(pretree: BasePretree, seed: Iterable[Hashable]) -> FrozenSet[Hashable]:
        """Plus petit sur-ensemble stable par médianes."""
        closure: List[Hashable] = []
        members: Set[Hashable] = set()
        frontier = sorted(set(seed), key=natural_key)
        pretree._check_points(*frontier)
        while frontier:
            for x in frontier:
                members.add(x)
                closure.append(x)
            found: Set[Hashable] = set()
            current = list(closure)
            for x in frontier:
                for y, z in combinations(current, 2):
                    if x == y or x == z:
                        continue
                    m = pretree.median(x, y, z)
                    if m is None:
                        raise StructureError(f"Prétree non médian en ({x}, {y}, {z})", witness=(x, y, z))
                    if m not in members:
                        found.add(m)
            frontier = sorted(found, key=natural_key)
        logger.debug("Clôture médiane: %s -> %s points", len(set(seed)), len(members))
        return frozenset(members)

    @staticmethod
    def interval_intersection(pretree: BasePretree, t: Hashable, ends: Iterable[Hashable]) -> Optional[Hashable]:
        """c tel que ∩[t, e] = [t, c], ou None si l'intersection n'est pas un intervalle."""
        ends = list(ends)
        common = frozenset(pretree.points)
        for e in ends:
            common &= pretree.interval(t, e)
        for c in sorted(common, key=natural_key):
            if pretree.interval(t, c) == common:
                return c
        return None

    @staticmethod
    def concatenation_holds(pretree: BasePretree, t, q, r) -> Optional[bool]:
        """[t,r] = [t,q] ∪ [q,r] quand [t,q] ∩ [q,r] = {q}; None si l'hypothèse manque."""
        left, right = pretree.interval(t, q), pretree.interval(q, r)
        if left & right != {q}:
            return None
        return pretree.interval(t, r) == left | right

    @staticmethod
    def interval_intersection_check(pretree: BasePretree) -> Tuple[int, Optional[Tuple]]:
        """Pour t ∈ T0, toute intersection de deux ou trois [t, e] est un [t, c]. Renvoie (cas, témoin)."""
        inner, _ = PretreeHelper.terminal_decomposition(pretree)
        ordered = pretree.sorted_points()
        checked = 0
        for t in sorted(inner, key=natural_key):
            others = [e for e in ordered if e != t]
            for size in (2, 3):
                for ends in combinations(others, size):
                    checked += 1
                    if PretreeHelper.interval_intersection(pretree, t, ends) is None:
                        return checked, (t,) + ends
        return checked, None

    @staticmethod
    def concatenation_check(pretree: BasePretree) -> Tuple[int, Optional[Tuple]]:
        ordered = pretree.sorted_points()
        checked = 0
        for t in ordered:
            for q in ordered:
                for r in ordered:
                    holds = PretreeHelper.concatenation_holds(pretree, t, q, r)
                    if holds is None:
                        continue
                    checked += 1
                    if not holds:
                        return checked, (t, q, r)
        return checked, None

    @staticmethod
    def between_triples_of_graph(graph, vertices: Optional[Iterable[Hashable]] = None) -> List[Tuple]:
        """Betweenness induite par les chemins d'un arbre networkx."""
        vertices = sorted(graph.nodes if vertices is None else vertices, key=natural_key)
        triples = []
        for x in vertices:
            paths = nx.single_source_shortest_path(graph, x)
            for z in vertices:
                if z == x:
                    continue
                for y in paths[z][1:-1]:
                    triples.append((y, x, z))
        return triples

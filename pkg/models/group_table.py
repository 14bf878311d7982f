from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

from utils.errors import StructureError


class FiniteGroupTable:
    """Groupe fini énuméré: éléments, produit à la demande, inverses, classes de conjugaison."""

    def __init__(self, name: str, elements: Sequence, compose: Callable, key: Callable,
                 generators: Sequence = ()):
        self.name = name
        self.compose = compose
        self.key = key
        ordered = sorted(elements, key=key)
        self.elements: List = list(ordered)
        self._index: Dict[Hashable, int] = {key(e): i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise StructureError(f"{name}: éléments dupliqués")
        self.generators = [self.index_of(g) for g in generators]
        self._products: Dict[Tuple[int, int], int] = {}
        self.identity = self._find_identity()
        self.inverses = self._compute_inverses()
        self.classes: List[FrozenSet[int]] = self._compute_classes()
        self._class_of = {i: c for c in self.classes for i in c}

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, element) -> int:
        try:
            return self._index[self.key(element)]
        except KeyError:
            raise StructureError(f"{self.name}: élément hors du groupe: {element}")

    def contains(self, element) -> bool:
        return self.key(element) in self._index

    def multiply(self, i: int, j: int) -> int:
        pair = (i, j)
        if pair not in self._products:
            product = self.compose(self.elements[i], self.elements[j])
            self._products[pair] = self.index_of(product)
        return self._products[pair]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def signed(self, i: int, sign: int) -> int:
        return i if sign > 0 else self.inverses[i]

    def class_of(self, i: int) -> FrozenSet[int]:
        return self._class_of[i]

    def class_order(self) -> List[int]:
        return sorted(len(c) for c in self.classes)

    def _find_identity(self) -> int:
        for i, e in enumerate(self.elements):
            if self.key(self.compose(e, e)) == self.key(e):
                return i
        raise StructureError(f"{self.name}: pas d'élément neutre")

    def _compute_inverses(self) -> List[int]:
        # ordre de g: g^k = e, alors g⁻¹ = g^(k-1)
        inverses = [-1] * len(self.elements)
        for i in range(len(self.elements)):
            if inverses[i] >= 0:
                continue
            previous, current = self.identity, i
            while current != self.identity:
                previous, current = current, self.multiply(current, i)
            inverses[i] = previous
            inverses[previous] = i
        return inverses

    def _compute_classes(self) -> List[FrozenSet[int]]:
        conjugators = self.generators or list(range(len(self.elements)))
        seen: Dict[int, FrozenSet[int]] = {}
        classes = []
        for i in range(len(self.elements)):
            if i in seen:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                x = frontier.pop()
                for c in conjugators:
                    y = self.multiply(self.multiply(c, x), self.inverses[c])
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            frozen = frozenset(orbit)
            classes.append(frozen)
            for x in orbit:
                seen[x] = frozen
        return classes

    def generated_subgroup(self, seeds: Sequence[int]) -> FrozenSet[int]:
        closure = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for s in seeds:
                y = self.multiply(x, s)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        return frozenset(closure)

    def __repr__(self) -> str:
        return f"FiniteGroupTable({self.name}, ordre {len(self.elements)})"


@dataclass(frozen=True)
class XPath:
    elements: Tuple
    certificates: Tuple[Tuple[int, int], ...]
    degenerate: bool = False
    note: Optional[str] = None

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Disconnected:
    source: Hashable
    target: Hashable
    explored: int

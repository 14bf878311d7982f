from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

from models.tree_point import natural_key
from utils.errors import PreconditionError, StructureError

INTERVAL_KINDS = ("closed", "open", "half-open", "half-open-left")

Triple = Tuple[Hashable, Hashable, Hashable]


class BasePretree:
    """Interface commune: points, betweenness, intervalles, médianes."""

    points: FrozenSet[Hashable]

    def is_between(self, y, x, z) -> bool:
        raise NotImplementedError

    def _check_points(self, *points):
        for p in points:
            if p not in self.points:
                raise StructureError(f"Point inconnu: {p}", witness=(p,))

    def interval(self, x, y, kind: str = "closed") -> FrozenSet[Hashable]:
        """[x,y], (x,y), [x,y) ou (x,y]."""
        self._check_points(x, y)
        if kind not in INTERVAL_KINDS:
            raise PreconditionError(f"Type d'intervalle inconnu: {kind}")
        inner = set(self.strictly_between(x, y))
        if kind in ("closed", "half-open"):
            inner.add(x)
        if kind in ("closed", "half-open-left"):
            inner.add(y)
        if x == y and kind != "closed":
            inner.discard(x)
        return frozenset(inner)

    def strictly_between(self, x, z) -> Iterable[Hashable]:
        return [y for y in self.points if self.is_between(y, x, z)]

    def median(self, x, y, z) -> Optional[Hashable]:
        """Point unique de [x,y] ∩ [y,z] ∩ [z,x], ou None."""
        self._check_points(x, y, z)
        common = self.interval(x, y) & self.interval(y, z) & self.interval(z, x)
        if not common:
            return None
        if len(common) > 1:
            raise StructureError(
                f"Médiane non unique pour ({x}, {y}, {z})",
                witness=tuple(sorted(common, key=natural_key))
            )
        return next(iter(common))

    def sorted_points(self) -> List[Hashable]:
        return sorted(self.points, key=natural_key)

    def __len__(self) -> int:
        return len(self.points)


class FinitePretree(BasePretree):
    """Ensemble fini muni d'une relation ternaire explicite B(y; x, z)."""

    def __init__(self, points: Iterable[Hashable], between: Iterable[Triple], strict: bool = True):
        self.points = frozenset(points)
        if not self.points:
            raise PreconditionError("Un prétree a au moins un point")
        self.between: FrozenSet[Triple] = frozenset(tuple(t) for t in between)
        if strict:
            for triple in sorted(self.between, key=lambda t: tuple(natural_key(p) for p in t)):
                unknown = [p for p in triple if p not in self.points]
                if unknown:
                    raise StructureError(f"Triplet {triple} avec point inconnu {unknown[0]}", witness=triple)
        self._index: Dict[Tuple[Hashable, Hashable], Set[Hashable]] = defaultdict(set)
        for y, x, z in self.between:
            self._index[(x, z)].add(y)

    def is_between(self, y, x, z) -> bool:
        return y in self._index.get((x, z), ())

    def strictly_between(self, x, z) -> Iterable[Hashable]:
        return self._index.get((x, z), set())

    def restrict(self, subset: Iterable[Hashable]) -> "FinitePretree":
        kept = frozenset(subset)
        return FinitePretree(kept, [t for t in self.between if all(p in kept for p in t)])

    def mutate(self, triple: Triple) -> "FinitePretree":
        """Copie avec le triplet ajouté s'il est absent, retiré sinon."""
        triple = tuple(triple)
        between = set(self.between)
        if triple in between:
            between.remove(triple)
        else:
            between.add(triple)
        return FinitePretree(self.points, between)

    def __repr__(self) -> str:
        return f"FinitePretree({len(self.points)} points, {len(self.between)} triplets)"


class WindowPretree(BasePretree):
    """Vue prétree d'un échantillon fini d'un TreeSpace, calculée à la demande."""

    def __init__(self, space, points: Iterable[Hashable]):
        self.space = space
        self.points = frozenset(points)
        if not self.points:
            raise PreconditionError("Échantillon vide")
        self._intervals: Dict[Tuple[Hashable, Hashable], FrozenSet[Hashable]] = {}

    def is_between(self, y, x, z) -> bool:
        return self.space.between(y, x, z)

    def strictly_between(self, x, z) -> Iterable[Hashable]:
        key = (x, z)
        if key not in self._intervals:
            found = frozenset(y for y in self.points if self.space.between(y, x, z))
            self._intervals[key] = found
            self._intervals[(z, x)] = found
        return self._intervals[key]

    def median(self, x, y, z) -> Optional[Hashable]:
        self._check_points(x, y, z)
        m = self.space.median(x, y, z)
        return m if m in self.points else None


@dataclass(frozen=True)
class Bridge:
    t: Hashable
    q: Hashable
    interior: FrozenSet[Hashable] = field(default_factory=frozenset)

    def extremities(self) -> FrozenSet[Hashable]:
        return frozenset((self.t, self.q))

    def segment(self) -> FrozenSet[Hashable]:
        return self.interior | self.extremities()


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witness: Tuple

    def sort_key(self):
        return (self.axiom, tuple(natural_key(p) for p in self.witness))


@dataclass
class AxiomReport:
    failures: List[AxiomFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def axioms_failed(self) -> Set[str]:
        return {f.axiom for f in self.failures}

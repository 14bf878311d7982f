from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, List, Optional, Tuple

from models.automorphism import TreeAutomorphism


@dataclass(frozen=True)
class End:
    """Bout de l'arbre atteint par g⁻ⁿ(a0) quand n -> +inf."""

    space: object
    g: TreeAutomorphism
    a0: Hashable
    label: str = "e"

    def ray_point(self, n: int):
        """g⁻ⁿ(a0), sur la demi-droite (-inf, a0]."""
        return (self.g ** -n)(self.a0) if n else self.a0

    def translation_length(self) -> Fraction:
        return self.space.distance(self.a0, self.g(self.a0))


@dataclass
class EndGroupSample:
    generators: List[TreeAutomorphism]
    word_bound: int
    a0: Hashable
    g: TreeAutomorphism
    elements: List[TreeAutomorphism] = field(default_factory=list)


@dataclass(frozen=True)
class CosetOrderDatum:
    h1: str
    h2: str
    verdict: str
    witness: Optional[Hashable] = None

    SYMBOLS = {"<": "≺", "=": "≈", ">": "≻"}

    @property
    def symbol(self) -> str:
        return self.SYMBOLS[self.verdict]


@dataclass(frozen=True)
class Dense:
    bound: Fraction
    kind = "dense"


@dataclass(frozen=True)
class CyclicWithGenerator:
    step: Fraction
    kind = "cyclic"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind = "inconclusive"


@dataclass(frozen=True)
class ContractibilityResult:
    reached: Tuple[Tuple[Hashable, str], ...]
    unreached: Tuple[Hashable, ...]

    @property
    def passed(self) -> bool:
        return not self.unreached

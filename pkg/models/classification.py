from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Hashable, Optional, Tuple, Union


@dataclass(frozen=True)
class Elliptic:
    fixed_set: FrozenSet[Hashable]
    window: Optional[int] = None

    kind = "elliptic"


@dataclass(frozen=True)
class Loxodromic:
    axis: Tuple[Hashable, ...]
    translation_length: Fraction
    window: Optional[int] = None

    kind = "loxodromic"


Classification = Union[Elliptic, Loxodromic]


@dataclass(frozen=True)
class FixedPoint:
    point: Hashable
    kind = "fixed-point"


@dataclass(frozen=True)
class InvertedSegment:
    c: Hashable
    image: Hashable
    kind = "inverted-segment"


@dataclass(frozen=True)
class LoxodromicVerdict:
    kind = "loxodromic"


@dataclass(frozen=True)
class NonNestingResult:
    verdict: str
    witness: Optional[Tuple[Hashable, Hashable]] = None
    inconclusive: Tuple[Tuple[Hashable, Hashable], ...] = ()

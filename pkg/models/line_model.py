from fractions import Fraction
from typing import Any, Callable, List, Optional, Tuple

from models.tree_space import TreeSpace
from utils.errors import PreconditionError, StructureError

ZERO = Fraction(0)


class LineModel(TreeSpace):
    """Droite rationnelle ordonnée, avec un sous-ensemble distingué et un point base a0.

    `resolution` vaut 0 pour un modèle discret; sinon c'est le plus petit
    écart représentable d'un échantillon dense. Une droite plongée dans un
    autre arbre se décrit par `ambient` et `embed` (coordonnée -> point).
    """

    name = "droite"

    def __init__(self, membership: Optional[Callable[[Fraction], bool]] = None,
                 a0=ZERO, resolution=ZERO, label: str = "Q",
                 ambient: Optional[TreeSpace] = None,
                 embed: Optional[Callable[[Fraction], Any]] = None):
        self.membership = membership or (lambda x: True)
        self.a0 = Fraction(a0)
        self.root = self.a0
        self.resolution = Fraction(resolution)
        self.label = label
        if (ambient is None) != (embed is None):
            raise PreconditionError("ambient et embed vont ensemble")
        self.ambient = ambient
        self.embed = embed

    @staticmethod
    def integers(a0=0) -> "LineModel":
        return LineModel(lambda x: x.denominator == 1, a0=a0, label="Z")

    @staticmethod
    def dyadic(depth: int = 8, a0=0) -> "LineModel":
        return LineModel(lambda x: (x * 2 ** depth).denominator == 1, a0=a0,
                         resolution=Fraction(1, 2 ** depth), label=f"Z[1/2^{depth}]")

    @property
    def is_discrete(self) -> bool:
        return self.resolution == 0

    def contains(self, x) -> bool:
        return self.membership(Fraction(x))

    def compare(self, x, y) -> int:
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)

    def distance(self, p, q) -> Fraction:
        return abs(Fraction(p) - Fraction(q))

    def between(self, y, x, z) -> bool:
        return min(x, z) < y < max(x, z)

    def point_along(self, p, q, t) -> Fraction:
        p, q, t = Fraction(p), Fraction(q), Fraction(t)
        if not 0 <= t <= abs(q - p):
            raise StructureError(f"Paramètre {t} hors de [0, {abs(q - p)}]")
        return p + t if q >= p else p - t

    def median(self, x, y, z) -> Fraction:
        return sorted((Fraction(x), Fraction(y), Fraction(z)))[1]

    def geodesic(self, p, q) -> Tuple[List[Fraction], Fraction]:
        p, q = Fraction(p), Fraction(q)
        return ([p] if p == q else [p, q]), abs(q - p)

    def window_points(self, radius, step=None) -> List[Fraction]:
        """Points de [a0 - radius, a0 + radius] sur la grille du modèle."""
        step = Fraction(step) if step is not None else (self.resolution or Fraction(1))
        count = int(Fraction(radius) / step)
        points = [self.a0 + k * step for k in range(-count, count + 1)]
        return [p for p in points if self.contains(p)]

    def ambient_point(self, x):
        return self.embed(Fraction(x)) if self.embed else Fraction(x)

    def ambient_space(self) -> TreeSpace:
        return self.ambient or self

    def __repr__(self) -> str:
        return f"LineModel({self.label}, a0={self.a0})"

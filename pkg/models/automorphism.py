from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from models.f2_word import F2Word, phi, phi_inverse
from models.tree_point import TreePoint
from utils.errors import PreconditionError, StructureError
from utils.formatters import format_rational


class TreeAutomorphism(ABC):
    """Automorphisme d'arbre: règle directe, règle inverse et libellé."""

    label: str = "g"

    @abstractmethod
    def apply_vertex(self, vertex):
        ...

    @abstractmethod
    def inverse(self) -> "TreeAutomorphism":
        ...

    def edge_scale(self, x, y, image_x, image_y) -> Fraction:
        return Fraction(1)

    def apply(self, point):
        if not isinstance(point, TreePoint):
            return self.apply_vertex(point)
        if point.is_vertex:
            return TreePoint.vertex(self.apply_vertex(point.u))
        x, y = self.apply_vertex(point.u), self.apply_vertex(point.v)
        scale = self.edge_scale(point.u, point.v, x, y)
        return TreePoint.on_edge(x, y, point.offset * scale, point.length * scale)

    def __call__(self, point):
        return self.apply(point)

    def __mul__(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        """g * h = g∘h (h d'abord)."""
        return ComposedAutomorphism((self, other))

    def __pow__(self, n: int) -> "TreeAutomorphism":
        if n == 0:
            return IdentityAutomorphism()
        base = self if n > 0 else self.inverse()
        return ComposedAutomorphism((base,) * abs(n)) if abs(n) > 1 else base

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class IdentityAutomorphism(TreeAutomorphism):
    label = "id"

    def apply_vertex(self, vertex):
        return vertex

    def inverse(self) -> "TreeAutomorphism":
        return self


class ComposedAutomorphism(TreeAutomorphism):

    def __init__(self, factors: Sequence[TreeAutomorphism]):
        flat: List[TreeAutomorphism] = []
        for factor in factors:
            if isinstance(factor, ComposedAutomorphism):
                flat.extend(factor.factors)
            elif not isinstance(factor, IdentityAutomorphism):
                flat.append(factor)
        self.factors: Tuple[TreeAutomorphism, ...] = tuple(flat)
        self.label = "*".join(f.label for f in self.factors) or "id"

    def apply_vertex(self, vertex):
        for factor in reversed(self.factors):
            vertex = factor.apply_vertex(vertex)
        return vertex

    def apply(self, point):
        for factor in reversed(self.factors):
            point = factor.apply(point)
        return point

    def inverse(self) -> "TreeAutomorphism":
        return ComposedAutomorphism([f.inverse() for f in reversed(self.factors)])


class VertexPermutation(TreeAutomorphism):
    """Permutation de sommets d'un arbre fini (ou des points d'un prétree fini).

    Les points d'arêtes sont transportés proportionnellement si `tree` est fourni.
    """

    def __init__(self, mapping: Dict[Hashable, Hashable], label: str = "g", tree=None):
        self.mapping = dict(mapping)
        self.label = label
        self.tree = tree
        self._validate_mapping()

    def _validate_mapping(self):
        images = list(self.mapping.values())
        if len(set(images)) != len(images) or set(images) != set(self.mapping):
            raise StructureError(f"{self.label}: l'application n'est pas une bijection")
        if self.tree is None:
            return
        for u, v, _ in self.tree.edges:
            if not self.tree.has_edge(self.mapping[u], self.mapping[v]):
                raise StructureError(
                    f"{self.label}: l'arête ({u}, {v}) n'est pas envoyée sur une arête",
                    witness=(u, v)
                )

    def apply_vertex(self, vertex):
        try:
            return self.mapping[vertex]
        except KeyError:
            raise StructureError(f"{self.label}: point inconnu {vertex}", witness=(vertex,))

    def edge_scale(self, x, y, image_x, image_y) -> Fraction:
        if self.tree is None:
            return Fraction(1)
        return self.tree.edge_length(image_x, image_y) / self.tree.edge_length(x, y)

    def inverse(self) -> "VertexPermutation":
        return VertexPermutation({v: k for k, v in self.mapping.items()}, f"{self.label}^-1", self.tree)

    def restrict(self, points) -> "VertexPermutation":
        return VertexPermutation({p: self.mapping[p] for p in points}, self.label)

    def apply(self, point):
        if point in self.mapping:
            return self.mapping[point]
        return super().apply(point)


class PiecewiseLinearMap(TreeAutomorphism):
    """Homéomorphisme affine par morceaux de la droite rationnelle.

    pieces: (borne_inf, borne_sup, pente, translation), bornes None = infini.
    """

    def __init__(self, pieces: Sequence[Tuple[Optional[Fraction], Optional[Fraction], Fraction, Fraction]],
                 label: str = "f"):
        self.pieces = [(None if lo is None else Fraction(lo), None if hi is None else Fraction(hi),
                        Fraction(slope), Fraction(shift)) for lo, hi, slope, shift in pieces]
        self.label = label
        self._validate_pieces()

    def _validate_pieces(self):
        if not self.pieces or self.pieces[0][0] is not None or self.pieces[-1][1] is not None:
            raise StructureError(f"{self.label}: les morceaux doivent couvrir la droite")
        signs = set()
        for (lo, hi, slope, shift), nxt in zip(self.pieces, self.pieces[1:] + [None]):
            if slope == 0:
                raise StructureError(f"{self.label}: pente nulle")
            signs.add(slope > 0)
            if nxt is not None:
                if hi is None or nxt[0] != hi:
                    raise StructureError(f"{self.label}: morceaux non contigus en {hi}")
                if slope * hi + shift != nxt[2] * hi + nxt[3]:
                    raise StructureError(f"{self.label}: discontinuité en {hi}", witness=(hi,))
        if len(signs) != 1:
            raise StructureError(f"{self.label}: application non monotone")

    @staticmethod
    def translation(shift, label: Optional[str] = None) -> "PiecewiseLinearMap":
        shift = Fraction(shift)
        return PiecewiseLinearMap([(None, None, 1, shift)], label or f"t{format_rational(shift)}")

    @staticmethod
    def scaling(factor, center=0, label: Optional[str] = None) -> "PiecewiseLinearMap":
        factor, center = Fraction(factor), Fraction(center)
        if factor <= 0:
            raise PreconditionError("Facteur d'échelle non positif")
        return PiecewiseLinearMap([(None, None, factor, center - factor * center)],
                                  label or f"s{format_rational(factor)}")

    @staticmethod
    def reflection(center, label: Optional[str] = None) -> "PiecewiseLinearMap":
        center = Fraction(center)
        return PiecewiseLinearMap([(None, None, -1, 2 * center)], label or f"r{format_rational(center)}")

    @staticmethod
    def half_line_fixer(cut, slope, label: Optional[str] = None) -> "PiecewiseLinearMap":
        """Identité sur (-inf, cut], pente `slope` au-delà."""
        cut, slope = Fraction(cut), Fraction(slope)
        return PiecewiseLinearMap([(None, cut, 1, 0), (cut, None, slope, cut - slope * cut)],
                                  label or f"fix{format_rational(cut)}")

    @property
    def is_increasing(self) -> bool:
        return self.pieces[0][2] > 0

    def apply_vertex(self, x):
        x = Fraction(x)
        for lo, hi, slope, shift in self.pieces:
            if (lo is None or lo <= x) and (hi is None or x <= hi):
                return slope * x + shift
        raise StructureError(f"{self.label}: point hors domaine {x}")

    def inverse(self) -> "PiecewiseLinearMap":
        inverted = []
        for lo, hi, slope, shift in self.pieces:
            ends = [None if b is None else slope * b + shift for b in (lo, hi)]
            if slope < 0:
                ends.reverse()
            inverted.append((ends[0], ends[1], 1 / slope, -shift / slope))
        if not self.is_increasing:
            inverted.reverse()
        return PiecewiseLinearMap(inverted, f"{self.label}^-1")


class F2Isometry(TreeAutomorphism):
    """Isométries de l'arbre de Cayley de F2 (sommets = mots réduits).

    kind: 'left' (multiplication à gauche par word), 'theta', 'phi',
    'phi-inverse', 'letters' (automorphisme de lettres signé, images de a et b).
    """

    KINDS = ("left", "theta", "phi", "phi-inverse", "letters")

    def __init__(self, kind: str, word: Optional[F2Word] = None,
                 images: Optional[Tuple[F2Word, F2Word]] = None, label: Optional[str] = None):
        if kind not in self.KINDS:
            raise PreconditionError(f"Règle F2 inconnue: {kind}")
        if kind == "left" and word is None:
            raise PreconditionError("La multiplication à gauche demande un mot")
        if kind == "letters":
            self._validate_images(images)
        self.kind = kind
        self.word = word
        self.images = images
        self.label = label or self._default_label()

    @staticmethod
    def _validate_images(images):
        if images is None or len(images) != 2 or any(len(w) != 1 for w in images):
            raise PreconditionError("Un automorphisme de lettres envoie a et b sur des lettres")
        if abs(images[0].letters[0]) == abs(images[1].letters[0]):
            raise PreconditionError("Images de a et b non indépendantes")

    def _default_label(self) -> str:
        if self.kind == "left":
            return f"L[{self.word}]"
        if self.kind == "letters":
            return f"sigma[{self.images[0]},{self.images[1]}]"
        return self.kind

    @staticmethod
    def left(word) -> "F2Isometry":
        return F2Isometry("left", word=F2Word.parse(word) if isinstance(word, str) else word)

    @staticmethod
    def letters(image_a: str, image_b: str) -> "F2Isometry":
        return F2Isometry("letters", images=(F2Word.parse(image_a), F2Word.parse(image_b)))

    def apply_vertex(self, word: F2Word) -> F2Word:
        if self.kind == "left":
            return self.word * word
        if self.kind == "theta":
            return word.theta()
        if self.kind == "phi":
            return phi(word)
        if self.kind == "phi-inverse":
            return phi_inverse(word)
        return word.substitute({1: self.images[0], 2: self.images[1]})

    def inverse(self) -> "F2Isometry":
        if self.kind == "left":
            return F2Isometry("left", word=~self.word)
        if self.kind == "theta":
            return self
        if self.kind == "phi":
            return F2Isometry("phi-inverse")
        if self.kind == "phi-inverse":
            return F2Isometry("phi")
        preimages = {}
        for letter, image in zip((1, 2), self.images):
            target = image.letters[0]
            preimages[abs(target)] = F2Word((letter if target > 0 else -letter,))
        return F2Isometry("letters", images=(preimages[1], preimages[2]))


def conjugate(h: TreeAutomorphism, g: TreeAutomorphism) -> TreeAutomorphism:
    """h g h⁻¹."""
    return ComposedAutomorphism((h, g, h.inverse()))

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from models.automorphism import IdentityAutomorphism, TreeAutomorphism
from models.end import (
    ContractibilityResult, CosetOrderDatum, CyclicWithGenerator, Dense, End, Inconclusive
)
from models.tree_point import natural_key
from utils.errors import PreconditionError, WindowExhaustedError

logger = logging.getLogger(__name__)

RAY_DEPTH = 6
SEARCH_LIMIT = 64

LabelledElement = Tuple[str, TreeAutomorphism]


class EndHelper:

    @staticmethod
    def enumerate_words(generators: Sequence[TreeAutomorphism], bound: int,
                        probes: Sequence[Hashable]) -> List[LabelledElement]:
        """Produits réduits d'au plus `bound` générateurs (et inverses), dédupliqués par leurs images."""
        letters = []
        for g in generators:
            letters.append((g.label, g, id(g), 1))
            letters.append((f"{g.label}^-1", g.inverse(), id(g), -1))
        found: Dict[Tuple, LabelledElement] = {}
        identity = IdentityAutomorphism()
        found[tuple(probes)] = ("id", identity)
        for length in range(1, bound + 1):
            for word in product(letters, repeat=length):
                if any(a[2] == b[2] and a[3] == -b[3] for a, b in zip(word, word[1:])):
                    continue
                element = word[0][1]
                for letter in word[1:]:
                    element = element * letter[1]
                signature = tuple(element(p) for p in probes)
                if signature not in found:
                    label = "*".join(letter[0] for letter in word)
                    element.label = label
                    found[signature] = (label, element)
        logger.debug("%s éléments distincts jusqu'à la longueur %s", len(found), bound)
        return list(found.values())

    @staticmethod
    def probes_for(end: End, depth: int = RAY_DEPTH) -> List[Hashable]:
        return [end.ray_point(n) for n in range(-depth, depth + 1)]

    @staticmethod
    def precedes_e(end: End, x, y) -> bool:
        """x ≤_e y : x ∈ [y, z] pour z assez profond vers e."""
        space = end.space
        reach = space.distance(end.a0, x) + space.distance(end.a0, y)
        n = int(reach / end.translation_length()) + 2
        z = end.ray_point(n)
        return x == y or space.in_segment(x, y, z)

    @staticmethod
    def strictly_precedes_e(end: End, x, y) -> bool:
        return x != y and EndHelper.precedes_e(end, x, y)

    @staticmethod
    def in_stabilizer(end: End, h: TreeAutomorphism, depth: int = RAY_DEPTH) -> bool:
        """h ∈ G_e sur la fenêtre: le produit de Gromov (h(rₙ) | r_N) en a0 croît avec n."""
        space = end.space
        far = end.ray_point(4 * depth)
        reach = []
        for n in range(depth, 2 * depth):
            m = space.median(end.a0, h(end.ray_point(n)), far)
            reach.append(space.distance(end.a0, m))
        return all(a < b for a, b in zip(reach, reach[1:]))

    @staticmethod
    def fixes_half_line(end: End, h: TreeAutomorphism, depth: int = RAY_DEPTH) -> bool:
        """h ∈ G_(e) sur la fenêtre: h fixe les points profonds de la demi-droite."""
        return all(h(end.ray_point(n)) == end.ray_point(n) for n in range(depth, 2 * depth))

    @staticmethod
    def _first_below(end: End, h: TreeAutomorphism, c, limit: int) -> int:
        targets = (end.a0, h(end.a0), h.inverse()(end.a0))
        g_inverse = end.g.inverse()
        point = c
        for n in range(limit + 1):
            if all(EndHelper.precedes_e(end, point, t) for t in targets):
                return n
            point = g_inverse(point)
        raise WindowExhaustedError(f"n0 introuvable pour {h.label} en {c}", limit)

    @staticmethod
    def star_action(end: End, h: TreeAutomorphism, c, window: Optional[int] = None,
                    extra: int = 0) -> Hashable:
        """h *_g c = g^n0 h g^-n0 (c), n0 minimal (plus `extra`)."""
        n0 = EndHelper._first_below(end, h, c, window or SEARCH_LIMIT) + extra
        g = end.g
        return (g ** n0)(h((g ** -n0)(c)))

    @staticmethod
    def nu(end: End, h: TreeAutomorphism, window: Optional[int] = None) -> Hashable:
        return EndHelper.star_action(end, h, end.a0, window)

    @staticmethod
    def coset_compare(end: End, h1: TreeAutomorphism, h2: TreeAutomorphism,
                      depth: int = RAY_DEPTH) -> CosetOrderDatum:
        """h1 ≺ h2 ssi h1(t) <_e h2(t) pour t profond sur la demi-droite."""
        verdicts = set()
        witness = None
        for n in range(depth, 2 * depth):
            t = end.ray_point(n)
            x, y = h1(t), h2(t)
            if x == y:
                verdicts.add("=")
            # h1 ≺ h2 quand h1(t) est plus proche de e: pour e = -∞ sur la droite, +2 ≺ +3
            elif EndHelper.precedes_e(end, x, y):
                verdicts.add("<")
            else:
                verdicts.add(">")
            if witness is None:
                witness = t
        if len(verdicts) != 1:
            raise WindowExhaustedError(f"Ordre de {h1.label} et {h2.label} instable sur la fenêtre", depth)
        return CosetOrderDatum(h1.label, h2.label, verdicts.pop(), witness)

    @staticmethod
    def archimedean_witness(end: End, h: TreeAutomorphism, limit: int = SEARCH_LIMIT) -> int:
        """Plus petit n ≥ 0 avec h ≺ gⁿ."""
        for n in range(limit + 1):
            if EndHelper.coset_compare(end, h, end.g ** n).verdict == "<":
                return n
        raise WindowExhaustedError(f"Aucune puissance de g ne domine {h.label}", limit)

    @staticmethod
    def axis_coordinate(end: End, x) -> Fraction:
        """Coordonnée signée de x sur l'axe de g, négative du côté de e."""
        d = Fraction(end.space.distance(end.a0, x))
        return -d if EndHelper.strictly_precedes_e(end, x, end.a0) else d

    @staticmethod
    def dense_or_cyclic(points: Sequence[Fraction], resolution=0):
        values = sorted(set(Fraction(p) for p in points))
        if len(values) < 3:
            return Inconclusive("moins de 3 points")
        gaps = [b - a for a, b in zip(values, values[1:])]
        least = min(gaps)
        resolution = Fraction(resolution)
        if resolution and least <= resolution:
            return Dense(resolution)
        for a, b in zip(values, values[1:]):
            if ((b - a) / least).denominator != 1:
                return Inconclusive(f"écart {b - a} entre {a} et {b} non multiple de l'écart minimal {least}")
        return CyclicWithGenerator(least)

    @staticmethod
    def e_contractible_check(end: End, points: Sequence[Hashable],
                             elements: Sequence[LabelledElement]) -> ContractibilityResult:
        stabilizer = [(label, h) for label, h in elements if label == "id" or EndHelper.in_stabilizer(end, h)]
        if not stabilizer:
            raise PreconditionError("Aucun élément de G_e dans l'échantillon")
        reached, unreached = [], []
        for c in sorted(points, key=natural_key):
            for label, h in stabilizer:
                if EndHelper.precedes_e(end, h(c), end.a0):
                    reached.append((c, label))
                    break
            else:
                unreached.append(c)
        if unreached:
            logger.info("%s points non contractés", len(unreached))
        return ContractibilityResult(tuple(reached), tuple(unreached))


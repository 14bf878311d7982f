import logging
from itertools import combinations
from fractions import Fraction
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

from models.automorphism import TreeAutomorphism
from models.classification import (
    Classification, Elliptic, FixedPoint, InvertedSegment,
    Loxodromic, LoxodromicVerdict, NonNestingResult
)
from models.pretree import BasePretree, WindowPretree
from models.report import Finding
from models.tree_point import natural_key
from utils.errors import PreconditionError, StructureError, WindowExhaustedError
from utils.pretree_helpers import PretreeHelper

logger = logging.getLogger(__name__)

PRESERVATION_SAMPLE = 12


class ActionHelper:

    @staticmethod
    def check_automorphism(space, g: TreeAutomorphism, sample: Sequence[Hashable],
                           limit: int = PRESERVATION_SAMPLE) -> None:
        """Lève StructureError si g ne préserve pas la betweenness sur l'échantillon."""
        probe = sorted(sample, key=natural_key)[:limit]
        images = {x: g(x) for x in probe}
        for x, y, z in combinations(probe, 3):
            for a, b, c in ((x, y, z), (y, x, z), (z, x, y)):
                if space.between(a, b, c) != space.between(images[a], images[b], images[c]):
                    raise StructureError(f"{g.label} ne préserve pas la betweenness", witness=(a, b, c))
        for x in probe:
            if g.inverse()(images[x]) != x:
                raise StructureError(f"{g.label}: la règle inverse ne défait pas la règle directe", witness=(x,))

    @staticmethod
    def classify(space, g: TreeAutomorphism, sample: Iterable[Hashable],
                 window: Optional[int] = None) -> Classification:
        sample = sorted(set(sample), key=natural_key)
        if not sample:
            raise PreconditionError("Échantillon vide")
        ActionHelper.check_automorphism(space, g, sample)
        displacement = {x: space.distance(x, g(x)) for x in sample}
        least = min(displacement.values())
        if least == 0:
            return Elliptic(frozenset(x for x in sample if displacement[x] == 0), window)

        axis = [x for x in sample if displacement[x] == least]
        ordered = ActionHelper._order_on_line(space, axis, g)
        if ordered is None:
            # g renverse un segment: son milieu est fixe
            x = axis[0]
            middle = space.point_along(x, g(x), least / 2)
            if g(middle) != middle:
                raise StructureError(f"{g.label}: axe non préservé", witness=(x, g(x)))
            return Elliptic(frozenset({middle}), window)
        return Loxodromic(tuple(ordered), least, window)

    @staticmethod
    def _order_on_line(space, axis: List[Hashable], g: TreeAutomorphism) -> Optional[List[Hashable]]:
        if len(axis) == 1:
            return list(axis)
        start = axis[0]
        far = max(axis, key=lambda x: (space.distance(start, x), natural_key(x)))
        ordered = sorted(axis, key=lambda x: space.distance(far, x))
        total = sum(space.distance(x, y) for x, y in zip(ordered, ordered[1:]))
        if total != space.distance(ordered[0], ordered[-1]):
            raise StructureError(f"{g.label}: l'ensemble de déplacement minimal n'est pas linéaire")
        first, last = ordered[0], ordered[-1]
        step = space.distance(first, g(first))
        if space.distance(g(first), last) == space.distance(first, last) + step:
            ordered.reverse()
            first = ordered[0]
        position = {x: space.distance(first, x) for x in ordered}
        for x in ordered:
            image = g(x)
            if image in position and position[image] != position[x] + step:
                return None
        return ordered

    @staticmethod
    def on_axis(space, g: TreeAutomorphism, x: Hashable) -> bool:
        """x ∈ L_g ssi x est la médiane de x, g⁻¹(x), g(x)."""
        return space.median(x, g.inverse()(x), g(x)) == x

    @staticmethod
    def axis_by_median_criterion(space, g: TreeAutomorphism, sample: Iterable[Hashable],
                                 window: Optional[int] = None) -> frozenset:
        sample = list(sample)
        found = ActionHelper.classify(space, g, sample, window)
        if not isinstance(found, Loxodromic):
            raise PreconditionError(f"{g.label} n'est pas loxodromique sur la fenêtre")
        return frozenset(x for x in sample if ActionHelper.on_axis(space, g, x))

    @staticmethod
    def segment_meets_axis(space, g: TreeAutomorphism, p: Hashable,
                           window: Optional[int] = None) -> Tuple[Hashable, Hashable]:
        """[p, g(p)] ∩ L_g = [q, g(q)]."""
        image = g(p)
        if not (space.in_window(p, window) and space.in_window(image, window)):
            raise WindowExhaustedError(f"[{p}, {image}] sort de la fenêtre", window)
        q = space.median(g.inverse()(p), p, image)
        if q == p and image == p:
            raise PreconditionError(f"{g.label} fixe {p}")
        if not ActionHelper.on_axis(space, g, q):
            raise PreconditionError(f"{g.label} n'est pas loxodromique")
        return q, g(q)

    @staticmethod
    def check_non_nesting(space, g: TreeAutomorphism, segments: Iterable[Tuple[Hashable, Hashable]],
                          window: Optional[int] = None) -> NonNestingResult:
        inconclusive = []
        for x, y in segments:
            gx, gy = g(x), g(y)
            if not all(space.in_window(p, window) for p in (x, y, gx, gy)):
                inconclusive.append((x, y))
                continue
            if {gx, gy} != {x, y} and space.in_segment(gx, x, y) and space.in_segment(gy, x, y):
                return NonNestingResult("fail", witness=(x, y), inconclusive=tuple(inconclusive))
        if inconclusive:
            logger.info("Non-emboîtement: %s segments hors fenêtre", len(inconclusive))
            return NonNestingResult("inconclusive", inconclusive=tuple(inconclusive))
        return NonNestingResult("pass")

    @staticmethod
    def elliptic_product(space, g: TreeAutomorphism, h: TreeAutomorphism,
                         sample: Iterable[Hashable], window: Optional[int] = None) -> List[Finding]:
        sample = sorted(set(sample), key=natural_key)
        cg = ActionHelper.classify(space, g, sample, window)
        ch = ActionHelper.classify(space, h, sample, window)
        if not (isinstance(cg, Elliptic) and isinstance(ch, Elliptic)):
            raise PreconditionError(f"{g.label} et {h.label} doivent être elliptiques")
        product = g * h
        cgh = ActionHelper.classify(space, product, sample, window)
        fg, fh = cg.fixed_set, ch.fixed_set
        label = f"{g.label},{h.label}"
        findings = []

        if fg & fh:
            if isinstance(cgh, Elliptic):
                common = fg & fh & cgh.fixed_set
                findings.append(Finding("elliptic-triple-intersection", "pass" if common else "fail",
                                        {"pair": label, "size": len(common)}))
            else:
                findings.append(Finding("elliptic-common-fixed-point", "fail",
                                        {"pair": label, "reason": "produit loxodromique"}))
            return findings

        is_lox = isinstance(cgh, Loxodromic)
        findings.append(Finding("product-loxodromic", "pass" if is_lox else "fail", {"pair": label}))
        if not is_lox:
            return findings
        axis = frozenset(cgh.axis)
        bridge = PretreeHelper.bridge(WindowPretree(space, sample), fg, fh)
        findings.append(Finding("bridge-on-axis", "pass" if bridge.segment() <= axis else "fail",
                                {"pair": label, "t": bridge.t, "q": bridge.q}))
        findings.append(Finding("axis-meets-fixed-sets", "pass"
                                if len(fg & axis) == 1 and len(fh & axis) == 1 else "fail",
                                {"pair": label, "left": len(fg & axis), "right": len(fh & axis),
                                 "translation": cgh.translation_length}))
        return findings

    @staticmethod
    def elliptic_projection_check(space, g: TreeAutomorphism, sample: Iterable[Hashable],
                                  window: Optional[int] = None) -> Finding:
        """Pour x hors de T^g: [x, g(x)] ∩ T^g est réduit à la projection de x sur T^g."""
        sample = sorted(set(sample), key=natural_key)
        found = ActionHelper.classify(space, g, sample, window)
        if not isinstance(found, Elliptic):
            raise PreconditionError(f"{g.label} n'est pas elliptique")
        fixed = found.fixed_set
        pretree = WindowPretree(space, sample)
        checked = outside = 0
        for x in sample:
            if x in fixed:
                continue
            image = g(x)
            if not space.in_window(image, window):
                outside += 1
                continue
            checked += 1
            a = PretreeHelper.projection(pretree, fixed, x)
            meet = {p for p in fixed if p in (x, image) or space.between(p, x, image)}
            if meet != {a}:
                return Finding("elliptic-projection", "fail", {"g": g.label, "witness": x, "projection": a})
        return Finding("elliptic-projection", "pass" if checked else "inconclusive",
                       {"g": g.label, "checked": checked, "outside": outside, "window": window})

    @staticmethod
    def bridge_in_third_axis(space, h1: TreeAutomorphism, h2: TreeAutomorphism,
                             sample: Iterable[Hashable], window: Optional[int] = None) -> List[Finding]:
        """Pour h3 = h2·h1: le pont entre deux axes disjoints est dans le troisième."""
        sample = sorted(set(sample), key=natural_key)
        elements = (h1, h2, h2 * h1)
        axes = []
        for h in elements:
            found = ActionHelper.classify(space, h, sample, window)
            if not isinstance(found, Loxodromic):
                raise PreconditionError(f"{h.label} n'est pas loxodromique sur la fenêtre")
            axes.append(frozenset(found.axis))
        pretree = WindowPretree(space, sample)
        findings = []
        for i, j in combinations(range(3), 2):
            if axes[i] & axes[j]:
                continue
            k = 3 - i - j
            bridge = PretreeHelper.bridge(pretree, axes[i], axes[j])
            findings.append(Finding("bridge-in-third-axis", "pass" if bridge.segment() <= axes[k] else "fail",
                                    {"pair": f"{i + 1}{j + 1}", "t": bridge.t, "q": bridge.q}))
        if not findings:
            findings.append(Finding("bridge-in-third-axis", "info", {"reason": "aucune paire d'axes disjoints"}))
        return findings

    @staticmethod
    def fixed_point_or_inverted_segment(pretree: BasePretree, g: TreeAutomorphism):
        """Point fixe, segment inversé [c, g(c)] avec g²(c) = c, ou verdict loxodromique."""
        ordered = pretree.sorted_points()
        for p in ordered:
            if g(p) == p:
                return FixedPoint(p)
        candidates = [c for c in ordered if g(c) in pretree.points and g(g(c)) == c]
        if candidates:
            c = min(candidates, key=lambda x: (len(pretree.interval(x, g(x))), natural_key(x)))
            return InvertedSegment(c, g(c))
        return LoxodromicVerdict()

    @staticmethod
    def translation_length(space, g: TreeAutomorphism, sample: Iterable[Hashable]) -> Fraction:
        return min(space.distance(x, g(x)) for x in sample)

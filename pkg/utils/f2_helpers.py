import logging
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from models.automorphism import F2Isometry, TreeAutomorphism
from models.end import End
from models.f2_word import F2Word, all_words, axis_position, phi, phi_inverse
from models.lazy_tree import F2Tree
from models.orbit import OrbitWindow
from models.pretree import WindowPretree
from models.report import Finding
from models.tree_point import TreePoint, natural_key
from utils.end_helpers import EndHelper
from utils.errors import StructureError
from utils.pretree_helpers import PretreeHelper

logger = logging.getLogger(__name__)

# marge de la boule de travail: a² et b² déplacent de 2
ORBIT_MARGIN = 2

A, B = F2Word.parse("a"), F2Word.parse("b")


class F2Helper:

    @staticmethod
    def generators() -> List[F2Isometry]:
        """A2, B2, Phi: les générateurs de G = <a², b², φ>."""
        return [
            F2Isometry("left", word=A ** 2, label="A2"),
            F2Isometry("left", word=B ** 2, label="B2"),
            F2Isometry("phi", label="Phi"),
        ]

    @staticmethod
    def generator_steps() -> List[TreeAutomorphism]:
        steps = []
        for g in F2Helper.generators():
            inverse = g.inverse()
            inverse.label = f"{g.label}^-1"
            steps.extend((g, inverse))
        return steps

    @staticmethod
    def theta_phi_theta(word: F2Word) -> F2Word:
        """θφθ(w) = a·θ(w)."""
        return phi(word.theta()).theta()

    @staticmethod
    def verify_generator_identities(bound: int) -> List[Finding]:
        words = all_words(bound)
        ba = B * A
        checks = {
            "phi-squared": lambda w: phi(phi(w)) == ba * w,
            "phi-roundtrip": lambda w: phi_inverse(phi(w)) == w and phi(phi_inverse(w)) == w,
            "phi-parity": lambda w: len(w) % 2 == 1 or len(phi(w)) % 2 == 1,
            # θφθ n'est pas dans G: ces deux lignes vérifient seulement φ = b·θ
            "a2-via-theta-phi-theta": lambda w: F2Helper.theta_phi_theta(phi(w)) == A * A * w,
            "b2-via-theta-phi-theta": lambda w: phi(F2Helper.theta_phi_theta(w)) == B * B * w,
            # a² = (aφa⁻¹)·φ et b² = φ·(b⁻¹φb): produits de conjugués de φ
            "a2-conjugate-product": lambda w: A * phi(~A * phi(w)) == A * A * w,
            "b2-conjugate-product": lambda w: phi(~B * phi(B * w)) == B * B * w,
        }
        findings = []
        for name, check in checks.items():
            failures = [w for w in words if not check(w)]
            details = {"bound": bound, "words": len(words)}
            if failures:
                details["witness"] = failures[0]
            findings.append(Finding(name, "fail" if failures else "pass", details))

        # a φ⁻¹ a⁻¹ φ et φ a φ⁻¹ a⁻¹, composés de droite à gauche
        printed = {
            "printed-a2-identity": (lambda w: A * phi_inverse(~A * phi(w)), A * A),
            "printed-b2-identity": (lambda w: phi(A * phi_inverse(~A * w)), B * B),
        }
        for name, (rule, square) in printed.items():
            failures = [w for w in words if rule(w) != square * w]
            details = {"bound": bound, "words": len(words)}
            if failures:
                image = rule(F2Word())
                uniform = all(rule(w) == image * w for w in words)
                details.update({"witness": failures[0], "image": rule(failures[0]),
                                "left-multiplication": image if uniform else "none"})
            findings.append(Finding(name, "fail" if failures else "pass", details))
        return findings

    @staticmethod
    def positive_offset(point: TreePoint) -> Fraction:
        """Distance de p à l'extrémité w de son arête (w, w·x), x ∈ {a, b}."""
        for w, other in ((point.u, point.v), (point.v, point.u)):
            if ((~w) * other).letters[0] > 0:
                return point.offset_from(w)
        raise StructureError(f"{point} n'est pas sur une arête de l'arbre de Cayley")

    @staticmethod
    def in_f2_theta_orbit(point: TreePoint, origin: TreePoint) -> bool:
        """Orbite de `origin` sous <F2, θ>: sommets, ou points à distance o de w sur (w, w·x), x ∈ {a, b}."""
        if origin.is_vertex or point.is_vertex:
            return origin.is_vertex == point.is_vertex
        return F2Helper.positive_offset(point) == F2Helper.positive_offset(origin)

    @staticmethod
    def _orbit(space: F2Tree, v: TreePoint, bound: int, radius: int) -> Dict[TreePoint, int]:
        depth = {v: 0}
        frontier = [v]
        steps = F2Helper.generator_steps()
        for level in range(1, bound + 1):
            next_frontier = []
            for p in frontier:
                for g in steps:
                    image = g(p)
                    if image not in depth and space.in_window(image, radius + ORBIT_MARGIN):
                        depth[image] = level
                        next_frontier.append(image)
            frontier = next_frontier
        return {p: d for p, d in depth.items() if space.in_window(p, radius)}

    @staticmethod
    def _window_sample(space: F2Tree, v: TreePoint, radius: int) -> List[TreePoint]:
        vertices = space.ball_vertices(space.root_vertex, radius)
        sample = [TreePoint.vertex(w) for w in vertices]
        if v.is_vertex:
            return sample
        offset = F2Helper.positive_offset(v)
        kept = set(vertices)
        for w in vertices:
            for x in (A, B):
                if w * x in kept:
                    sample.append(space.make_point(w, w * x, offset))
        return sample

    @staticmethod
    def orbit_and_closure(v: TreePoint, bound: int, radius: int, space: Optional[F2Tree] = None) -> OrbitWindow:
        space = space or F2Tree(bound=radius + ORBIT_MARGIN)
        orbit = F2Helper._orbit(space, v, bound, radius)
        sample = F2Helper._window_sample(space, v, radius)
        pretree = WindowPretree(space, sample)
        strays = tuple(sorted((p for p in orbit if p not in pretree.points), key=natural_key))
        closure = PretreeHelper.median_closure(pretree, [p for p in orbit if p in pretree.points])
        ball = space.ball_vertices(space.root_vertex, radius)
        missing = tuple(w for w in ball if TreePoint.vertex(w) not in closure)
        labels = set()
        per_edge: Dict[Tuple, int] = defaultdict(int)
        for p in closure:
            if p.is_vertex:
                labels.add("vertex")
            elif F2Helper.in_f2_theta_orbit(p, v):
                labels.add("orbit")
            else:
                labels.add("other")
        for p in orbit:
            if not p.is_vertex:
                per_edge[p.edge] += 1
        crowded = tuple(sorted((e for e, n in per_edge.items() if n > 1),
                               key=lambda e: (natural_key(e[0]), natural_key(e[1]))))
        logger.info("Orbite de %s: %s points, clôture %s points (rayon %s, borne %s)",
                    v, len(orbit), len(closure), radius, bound)
        return OrbitWindow(v, radius, bound, frozenset(orbit), closure, missing, frozenset(labels), crowded, strays)

    @staticmethod
    def orbit_findings(window: OrbitWindow) -> List[Finding]:
        base = {"radius": window.radius, "bound": window.bound, "v": window.origin}
        findings = [Finding("orbit-size", "info", dict(base, orbit=len(window.orbit), closure=len(window.closure)))]
        if window.origin.is_vertex:
            findings.append(Finding("closure-covers-ball", "pass" if window.covers_ball else "fail",
                                    dict(base, missing=len(window.missing_vertices))))
            return findings
        findings.append(Finding("closure-two-orbits", "pass" if window.labels == {"vertex", "orbit"} else "fail",
                                dict(base, labels=window.labels)))
        findings.append(Finding("edge-holds-one-orbit-point", "fail" if window.crowded_edges else "pass",
                                dict(base, crowded=len(window.crowded_edges))))
        findings.append(Finding("orbit-in-f2-theta-orbit", "fail" if window.strays else "pass",
                                dict(base, strays=len(window.strays))))
        return findings

    @staticmethod
    def axis_end(space: F2Tree) -> End:
        """Bout +∞ de L_a: rayons a^(2n), n -> +∞."""
        return End(space, F2Isometry("left", word=A ** -2, label="A2^-1"), TreePoint.vertex(F2Word()), "a+")

    @staticmethod
    def on_axis_a(point: TreePoint) -> bool:
        return point.is_vertex and all(abs(letter) == 1 for letter in point.u.letters)

    @staticmethod
    def stabilizer_even_distance(bound: int, window: int) -> List[Finding]:
        space = F2Tree(bound=8 * window)
        end = F2Helper.axis_end(space)
        probes = EndHelper.probes_for(end)
        elements = EndHelper.enumerate_words(F2Helper.generators(), bound, probes)
        stabilizer = [(label, h) for label, h in elements if EndHelper.in_stabilizer(end, h)]
        base = {"bound": bound, "window": window}
        if not stabilizer:
            return [Finding("even-distance", "inconclusive", dict(base, reason="aucun élément de G_e"))]
        v = end.a0
        images = sorted({h(v) for _, h in stabilizer if F2Helper.on_axis_a(h(v))
                         and space.in_window(h(v), window)}, key=natural_key)
        distances = {space.distance(x, y) for x, y in combinations(images, 2)}
        odd = sorted(d for d in distances if d % 2)
        least = min((d for d in distances if d > 0), default=None)
        excluded = [label for label, h in elements if label == "B2" and not EndHelper.in_stabilizer(end, h)]
        return [
            Finding("stabilizer-sample", "info", dict(base, elements=len(elements), stabilizer=len(stabilizer))),
            Finding("even-distance", "fail" if odd else "pass",
                    dict(base, images=len(images), least=least if least is not None else "none")),
            Finding("b2-outside-stabilizer", "pass" if excluded else "fail", base),
        ]

    @staticmethod
    def phi_median_check(radius: int) -> Finding:
        """médiane(v, φ⁻¹v, φv) est un sommet pour tout milieu d'arête v hors de L."""
        space = F2Tree(bound=radius + 2)
        g = F2Isometry("phi")
        bad = []
        checked = 0
        for w in space.ball_vertices(space.root_vertex, radius - 1):
            for x in (A, B):
                if axis_position(w) is not None and axis_position(w * x) is not None:
                    continue
                v = space.midpoint(w, w * x)
                checked += 1
                if not space.median(v, g.inverse()(v), g(v)).is_vertex:
                    bad.append(v)
        return Finding("phi-median-vertex", "fail" if bad else "pass",
                       {"radius": radius, "checked": checked, "witness": bad[0] if bad else "none"})

    @staticmethod
    def parse_point(text: str) -> TreePoint:
        """Mot (`ab`, `1`) ou milieu d'arête `w-w'` / point `w-w':o`."""
        if "-" not in text:
            return TreePoint.vertex(F2Word.parse(text))
        edge, _, offset = text.partition(":")
        x, y = (F2Word.parse(part) for part in edge.split("-", 1))
        if len((~x) * y) != 1:
            raise StructureError(f"({x}, {y}) n'est pas une arête de l'arbre de Cayley")
        return TreePoint.on_edge(x, y, Fraction(offset) if offset else Fraction(1, 2), 1)

import logging
import random
from collections import deque
from itertools import permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from models.group_table import Disconnected, FiniteGroupTable, XPath
from models.matrix import MatrixN, Transvection, dot, prime_field, to_ints
from utils.errors import CapExceededError, PreconditionError, StructureError, XPathUnavailable

logger = logging.getLogger(__name__)

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

Vector = Tuple[int, ...]


class ConjugacyHelper:

    @staticmethod
    def make_transvection(u: Sequence[int], v: Sequence[int], xi: int, p: int) -> Transvection:
        """t_uv(ξ) = I + u ξ v, avec v·u = 0 et u, v, ξ non nuls."""
        prime_field(p)
        u = tuple(int(x) % p for x in u)
        v = tuple(int(x) % p for x in v)
        xi = int(xi) % p
        if len(u) != len(v):
            raise PreconditionError(f"Dimensions incompatibles: {len(u)} et {len(v)}")
        if not any(u) or not any(v) or xi == 0:
            raise PreconditionError("u, v et ξ doivent être non nuls")
        if dot(v, u, p):
            raise PreconditionError(f"v·u = {dot(v, u, p)} ≠ 0")
        return Transvection(u, v, xi, p)

    @staticmethod
    def random_transvection(rng: random.Random, n: int, p: int,
                            orthogonal_to: Optional[Sequence[int]] = None) -> Transvection:
        """Tirage de t_uv(ξ); avec `orthogonal_to`, v s'annule aussi sur ce vecteur."""
        while True:
            u = tuple(rng.randrange(p) for _ in range(n))
            v = tuple(rng.randrange(p) for _ in range(n))
            if not any(u) or not any(v) or dot(v, u, p):
                continue
            if orthogonal_to is not None and dot(v, orthogonal_to, p):
                continue
            return Transvection(u, v, rng.randrange(1, p), p)

    @staticmethod
    def is_transvection(matrix: MatrixN) -> bool:
        if matrix.det() != 1:
            raise PreconditionError(f"det = {matrix.det()} ≠ 1")
        residue = matrix.minus_identity()
        if not np.any(residue):
            return False
        return int(np.linalg.matrix_rank(residue)) == 1 and not np.any(residue @ residue)

    @staticmethod
    def chevalley_commutator(t1: Transvection, t2: Transvection) -> Tuple[MatrixN, MatrixN]:
        """[t_uv(ξ), t_wy(ζ)] = a b a⁻¹ b⁻¹ et sa valeur prédite t_uy(ξ (v·w) ζ)."""
        p = t1.p
        if t2.p != p or t2.n != t1.n:
            raise PreconditionError("Transvections sur des espaces différents")
        for name, value in (("v·u", dot(t1.v, t1.u, p)), ("y·w", dot(t2.v, t2.u, p)), ("y·u", dot(t2.v, t1.u, p))):
            if value:
                raise PreconditionError(f"{name} = {value} ≠ 0")
        a, b = t1.matrix, t2.matrix
        commutator = a @ b @ a.inverse() @ b.inverse()
        coefficient = t1.xi * dot(t1.v, t2.u, p) * t2.xi % p
        if coefficient == 0:
            return commutator, MatrixN.identity(t1.n, p)
        return commutator, ConjugacyHelper.make_transvection(t1.u, t2.v, coefficient, p).matrix

    @staticmethod
    def _span(basis, p: int) -> Iterator[Vector]:
        """Vecteurs non nuls engendrés par `basis`, coefficients en ordre lexicographique."""
        rows = [tuple(int(x) for x in row) for row in basis]
        for coefficients in product(range(p), repeat=len(rows)):
            if not any(coefficients):
                continue
            yield tuple(sum(c * row[i] for c, row in zip(coefficients, rows)) % p for i in range(len(rows[0])))

    @staticmethod
    def _null_space(rows: Sequence[Vector], p: int):
        field = prime_field(p)
        return field(np.asarray(rows, dtype=np.int64) % p).null_space()

    @staticmethod
    def _forward_template(t: Transvection, t2: Transvection) -> Optional[Tuple[MatrixN, ...]]:
        p = t.p
        for y in ConjugacyHelper._span(ConjugacyHelper._null_space([t.u], p), p):
            if dot(y, t2.u, p) == 0:
                continue
            basis = ConjugacyHelper._null_space([t2.v, y], p)
            if basis.shape[0] == 0:
                continue
            for x in ConjugacyHelper._span(basis, p):
                if dot(t.v, x, p) == 0:
                    continue
                make = ConjugacyHelper.make_transvection
                steps = (
                    make(t.u, t.v, t.xi, p),
                    make(t.u, y, t.xi * dot(t.v, x, p), p),
                    make(x, y, 1, p),
                    make(x, t2.v, t2.xi * dot(y, t2.u, p), p),
                    make(t2.u, t2.v, t2.xi, p),
                )
                logger.debug("Gabarit trouvé: x=%s y=%s", x, y)
                return tuple(s.matrix for s in steps)
        return None

    @staticmethod
    def transvection_xpath(t: Transvection, t2: Transvection) -> XPath:
        if t.n < 3:
            raise PreconditionError(f"n = {t.n} < 3")
        if t2.n != t.n or t2.p != t.p:
            raise PreconditionError("Transvections sur des espaces différents")
        elements = ConjugacyHelper._forward_template(t, t2)
        note = None
        if elements is None:
            backward = ConjugacyHelper._forward_template(t2, t)
            if backward is not None:
                elements = tuple(reversed(backward))
                note = "gabarit inversé"
        if elements is not None:
            ok, certificates = ConjugacyHelper.is_x_path(elements)
            if not ok:
                raise StructureError("Chemin construit non certifié", witness=tuple(str(e) for e in elements))
            return XPath(elements, certificates, note=note)

        logger.info("Aucun (x, y) non dégénéré pour %s, %s", t, t2)
        first, last = t.matrix, t2.matrix
        if first == last:
            return XPath((first,), (), degenerate=True, note="chemin réduit à un élément")
        ok, certificates = ConjugacyHelper.is_x_path((first, last))
        if ok:
            return XPath((first, last), certificates, degenerate=True, note="paire directement adjacente")
        raise XPathUnavailable(f"Aucun X-chemin de longueur 5 entre {t} et {t2} sur GF({t.p})")

    @staticmethod
    def _transvection_adjacency(g: MatrixN, h: MatrixN) -> Optional[Tuple[int, int]]:
        for eps, tau in SIGNS:
            if ConjugacyHelper.is_transvection((g ** eps) @ (h ** tau)):
                return eps, tau
        return None

    @staticmethod
    def _table_adjacency(table: FiniteGroupTable, targets: FrozenSet[int], i: int, j: int) \
            -> Optional[Tuple[int, int]]:
        for eps, tau in SIGNS:
            product_index = table.multiply(table.signed(i, eps), table.signed(j, tau))
            if product_index in targets:
                return eps, tau
        return None

    @staticmethod
    def _conjugation_targets(table: FiniteGroupTable, members: FrozenSet[int]) -> FrozenSet[int]:
        """Éléments conjugués à un membre de X ∪ X⁻¹."""
        targets: Set[int] = set()
        for i in members:
            targets |= table.class_of(i)
            targets |= table.class_of(table.inverse(i))
        return frozenset(targets)

    @staticmethod
    def is_x_path(sequence: Sequence, table: Optional[FiniteGroupTable] = None,
                  members: Optional[FrozenSet[int]] = None) -> Tuple[bool, Tuple[Tuple[int, int], ...]]:
        """Contexte transvections (matrices) si `table` est None, sinon indices de `table` et X = `members`."""
        if not sequence:
            return False, ()
        certificates = []
        if table is None:
            if not all(ConjugacyHelper.is_transvection(g) for g in sequence):
                return False, ()
            for g, h in zip(sequence, sequence[1:]):
                signs = ConjugacyHelper._transvection_adjacency(g, h)
                if signs is None:
                    return False, tuple(certificates)
                certificates.append(signs)
            return True, tuple(certificates)

        members = frozenset(members or ())
        for i in sequence:
            if not 0 <= i < len(table):
                raise StructureError(f"Indice hors du groupe: {i}")
        if not all(i in members for i in sequence):
            return False, ()
        targets = ConjugacyHelper._conjugation_targets(table, members)
        for i, j in zip(sequence, sequence[1:]):
            signs = ConjugacyHelper._table_adjacency(table, targets, i, j)
            if signs is None:
                return False, tuple(certificates)
            certificates.append(signs)
        return True, tuple(certificates)

    @staticmethod
    def bfs_xpath(table: FiniteGroupTable, members: FrozenSet[int], source: int, target: int) \
            -> Union[XPath, Disconnected]:
        members = frozenset(members)
        for i in (source, target):
            if i not in members:
                raise PreconditionError(f"{table.elements[i]} n'est pas dans X")
        targets = ConjugacyHelper._conjugation_targets(table, members)
        ordered = sorted(members)
        previous: Dict[int, Tuple[int, Tuple[int, int]]] = {}
        seen = {source}
        queue = deque([source])
        while queue and target not in seen:
            i = queue.popleft()
            for j in ordered:
                if j in seen:
                    continue
                signs = ConjugacyHelper._table_adjacency(table, targets, i, j)
                if signs is not None:
                    seen.add(j)
                    previous[j] = (i, signs)
                    queue.append(j)
        if target not in seen:
            return Disconnected(table.elements[source], table.elements[target], len(seen))
        path, certificates = [target], []
        while path[-1] != source:
            i, signs = previous[path[-1]]
            path.append(i)
            certificates.append(signs)
        path.reverse()
        certificates.reverse()
        return XPath(tuple(table.elements[i] for i in path), tuple(certificates))

    @staticmethod
    def sl_order(n: int, p: int) -> int:
        order = p ** (n * (n - 1) // 2)
        for k in range(2, n + 1):
            order *= p ** k - 1
        return order

    @staticmethod
    def build_group_table(spec: str, cap: int = 10 ** 6, elements: Sequence = ()) -> FiniteGroupTable:
        """`sl:n:p`, `perm:m` ou `gen` (groupe engendré par `elements`)."""
        kind, _, rest = spec.partition(":")
        if kind == "sl":
            n, p = (int(x) for x in rest.split(":"))
            prime_field(p)
            order = ConjugacyHelper.sl_order(n, p)
            if order > cap:
                raise CapExceededError(f"|SL({n},{p})| = {order} dépasse la limite {cap}")
            generators = [MatrixN.elementary(n, p, i, j) for i in range(n) for j in range(n) if i != j]
            if n == 1:
                generators = [MatrixN.identity(1, p)]
            closure = ConjugacyHelper._closure(generators, lambda a, b: a @ b, lambda m: m.key, cap)
            return FiniteGroupTable(f"SL({n},{p})", closure, lambda a, b: a @ b, lambda m: m.key, generators)
        if kind == "perm":
            m = int(rest)
            if factorial(m) > cap:
                raise CapExceededError(f"|S{m}| = {factorial(m)} dépasse la limite {cap}")
            identity = tuple(range(m))
            generators = [identity]
            if m >= 2:
                generators = [(1, 0) + identity[2:], identity[1:] + (0,)]
            return FiniteGroupTable(f"S{m}", list(permutations(range(m))), compose_permutations,
                                    lambda s: s, generators)
        if kind == "gen":
            if not elements:
                raise PreconditionError("Aucun générateur fourni")
            sample = elements[0]
            if isinstance(sample, MatrixN):
                compose, key = (lambda a, b: a @ b), (lambda x: x.key)
            else:
                compose, key = compose_permutations, (lambda s: tuple(s))
            closure = ConjugacyHelper._closure(list(elements), compose, key, cap)
            return FiniteGroupTable(f"<{len(elements)} générateurs>", closure, compose, key, list(elements))
        raise PreconditionError(f"Groupe inconnu: {spec}")

    @staticmethod
    def _closure(generators: Sequence, compose, key, cap: int) -> List:
        found = {key(g): g for g in generators}
        frontier = list(generators)
        while frontier:
            next_frontier = []
            for x in frontier:
                for g in generators:
                    y = compose(x, g)
                    k = key(y)
                    if k not in found:
                        found[k] = y
                        next_frontier.append(y)
                        if len(found) > cap:
                            raise CapExceededError(f"Le groupe engendré dépasse la limite {cap}")
            frontier = next_frontier
        logger.debug("Clôture: %s éléments", len(found))
        return list(found.values())

    @staticmethod
    def select_class(table: FiniteGroupTable, name: str, element=None) -> FrozenSet[int]:
        """`transvections` (tables SL) ou `of` (classe de conjugaison de `element`)."""
        if name == "transvections":
            return frozenset(i for i, g in enumerate(table.elements)
                             if isinstance(g, MatrixN) and ConjugacyHelper.is_transvection(g))
        if name == "of":
            if element is None:
                raise PreconditionError("La classe `of` demande un élément")
            return table.class_of(table.index_of(element))
        raise PreconditionError(f"Classe inconnue: {name}")

    @staticmethod
    def transvections_generate(table: FiniteGroupTable) -> bool:
        members = ConjugacyHelper.select_class(table, "transvections")
        return len(table.generated_subgroup(sorted(members))) == len(table)

    @staticmethod
    def conjugate_transvection(a: MatrixN, t: Transvection) -> Transvection:
        """a·t_uv(ξ)·a⁻¹ = t_{au, va⁻¹}(ξ)."""
        field = prime_field(t.p)
        u = to_ints(a.array @ field(np.asarray(t.u, dtype=np.int64).reshape(-1, 1)))
        v = to_ints(field(np.asarray(t.v, dtype=np.int64).reshape(1, -1)) @ a.inverse().array)
        return ConjugacyHelper.make_transvection(u.flatten(), v.flatten(), t.xi, t.p)


def compose_permutations(first: Tuple[int, ...], second: Tuple[int, ...]) -> Tuple[int, ...]:
    """(σ∘τ)(i) = σ(τ(i))."""
    return tuple(first[i] for i in second)

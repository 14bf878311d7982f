import logging
import os
import re
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from models.automorphism import F2Isometry, PiecewiseLinearMap, TreeAutomorphism, VertexPermutation
from models.f2_word import F2Word
from models.flow import FlowRelation
from models.matrix import MatrixN
from models.metric_tree import MetricTree
from models.pretree import FinitePretree
from models.tree_point import TreePoint
from utils.errors import InputFormatError, LabError
from utils.file_utils import ensure_directory_exists, read_text_lines, safe_text_save
from utils.formatters import format_rational, parse_rational
from utils.validators import validate_matrix_literal, validate_point_literal, validate_word_literal

logger = logging.getLogger(__name__)

INTEGER_PATTERN = re.compile(r'^-?\d+$')

Line = Tuple[int, List[str]]


class DataManager:
    """Lecture et écriture des formats texte: prétrees, arbres, générateurs, flots, matrices."""

    def __init__(self, data_dir: str = "data"):
        self.data_dir = data_dir
        self.samples_dir = os.path.join(data_dir, "samples")

        self._stats = {
            'saves_count': 0,
            'loads_count': 0,
            'errors_count': 0,
            'last_operation': None
        }

    @property
    def stats(self) -> Dict[str, object]:
        return dict(self._stats)

    def resolve(self, path: str) -> str:
        """Le chemin tel quel s'il existe, sinon dans data/samples."""
        if os.path.exists(path):
            return path
        candidate = os.path.join(self.samples_dir, path)
        return candidate if os.path.exists(candidate) else path

    def _read(self, path: str) -> Tuple[str, List[Line]]:
        source = self.resolve(path)
        self._stats['last_operation'] = f"load_{os.path.basename(source)}"
        try:
            raw = read_text_lines(source)
        except OSError:
            self._stats['errors_count'] += 1
            raise
        lines = []
        for number, text in enumerate(raw, 1):
            text = text.split("#", 1)[0].strip()
            if text:
                lines.append((number, text.split()))
        self._stats['loads_count'] += 1
        return source, lines

    def _fail(self, message: str, source: str, number: Optional[int] = None) -> InputFormatError:
        self._stats['errors_count'] += 1
        return InputFormatError(message, source, number)

    @staticmethod
    def parse_id(token: str) -> Hashable:
        return int(token) if INTEGER_PATTERN.match(token) else token

    def _header(self, source: str, lines: List[Line], keyword: str) -> Tuple[int, List[Line]]:
        if not lines or lines[0][1][0] != keyword:
            raise self._fail(f"En-tête `{keyword}` attendu", source, lines[0][0] if lines else None)
        number, tokens = lines[0]
        if len(tokens) != 2 or not INTEGER_PATTERN.match(tokens[1]) or int(tokens[1]) < 1:
            raise self._fail(f"`{keyword} <n>` avec n >= 1 attendu", source, number)
        return int(tokens[1]), lines[1:]

    def _triple(self, source: str, number: int, tokens: List[str], size: int) -> Tuple[int, ...]:
        values = []
        for token in tokens[1:]:
            if not INTEGER_PATTERN.match(token):
                raise self._fail(f"Identifiant de point invalide: {token}", source, number)
            value = int(token)
            if not 0 <= value < size:
                raise self._fail(f"Point inconnu: {value}", source, number)
            values.append(value)
        return tuple(values)

    def load_pretree(self, path: str) -> FinitePretree:
        """`pretree <n>` puis lignes `b y x z` (B(y; x, z)), points 0..n-1."""
        source, lines = self._read(path)
        size, body = self._header(source, lines, "pretree")
        triples = []
        for number, tokens in body:
            if tokens[0] != "b" or len(tokens) != 4:
                raise self._fail("Ligne `b y x z` attendue", source, number)
            triples.append(self._triple(source, number, tokens, size))
        logger.debug("Prétree %s: %s points, %s triplets", source, size, len(triples))
        return FinitePretree(range(size), triples)

    def load_flow(self, path: str) -> FlowRelation:
        """`flow <n>` puis lignes `b y x z` et `r x y`."""
        source, lines = self._read(path)
        size, body = self._header(source, lines, "flow")
        triples, pairs = [], []
        for number, tokens in body:
            if tokens[0] == "b" and len(tokens) == 4:
                triples.append(self._triple(source, number, tokens, size))
            elif tokens[0] == "r" and len(tokens) == 3:
                pairs.append(self._triple(source, number, tokens, size))
            else:
                raise self._fail("Ligne `b y x z` ou `r x y` attendue", source, number)
        return FlowRelation(FinitePretree(range(size), triples), frozenset(pairs))

    def load_tree(self, path: str) -> MetricTree:
        """`tree`, puis `v id` et `e id1 id2 longueur`."""
        source, lines = self._read(path)
        if not lines or lines[0][1] != ["tree"]:
            raise self._fail("En-tête `tree` attendu", source, lines[0][0] if lines else None)
        vertices, edges = [], []
        for number, tokens in lines[1:]:
            if tokens[0] == "v" and len(tokens) == 2:
                vertices.append(self.parse_id(tokens[1]))
            elif tokens[0] == "e" and len(tokens) == 4:
                try:
                    length = parse_rational(tokens[3])
                except InputFormatError as e:
                    raise self._fail(str(e), source, number)
                edges.append((self.parse_id(tokens[1]), self.parse_id(tokens[2]), length))
            else:
                raise self._fail("Ligne `v id` ou `e id1 id2 longueur` attendue", source, number)
        if len({type(v) for v in vertices}) > 1:
            raise self._fail("Identifiants de sommets de types mélangés", source)
        try:
            return MetricTree(vertices, edges)
        except LabError as e:
            raise self._fail(str(e), source)

    def parse_point(self, text: str, tree: Optional[MetricTree] = None) -> TreePoint:
        """`@id` ou `@id1-id2:décalage` (décalage depuis id1)."""
        if not validate_point_literal(text):
            raise self._fail(f"Point invalide: {text!r}", "<argument>")
        body = text.strip()[1:]
        if ":" not in body:
            return TreePoint.vertex(self.parse_id(body))
        edge, offset = body.split(":")
        first, second = edge.split("-", 1) if not edge.startswith("-") else self._split_negative(edge)
        x, y = self.parse_id(first), self.parse_id(second)
        if tree is None:
            raise self._fail("Un point d'arête demande un arbre", "<argument>")
        try:
            return tree.make_point(x, y, parse_rational(offset))
        except LabError as e:
            raise self._fail(str(e), "<argument>")

    @staticmethod
    def _split_negative(edge: str) -> List[str]:
        head, _, tail = edge[1:].partition("-")
        return ["-" + head, tail]

    def parse_matrix(self, text: str, n: int, p: int) -> MatrixN:
        if not validate_matrix_literal(text, n):
            raise self._fail(f"Matrice {n}×{n} attendue (liste séparée par des virgules): {text!r}", "<argument>")
        return MatrixN([[int(x) for x in text.split(",")[i * n:(i + 1) * n]] for i in range(n)], p)

    def load_generators(self, path: str, tree: Optional[MetricTree] = None) -> List[TreeAutomorphism]:
        """Blocs `perm [label]` + lignes `m a b`, ou lignes `rule <nom> <paramètres> [as <label>]`."""
        source, lines = self._read(path)
        generators: List[TreeAutomorphism] = []
        block: Optional[Tuple[int, str, Dict]] = None

        def close_block():
            if block is None:
                return
            number, label, mapping = block
            try:
                generators.append(VertexPermutation(mapping, label, tree))
            except LabError as e:
                raise self._fail(str(e), source, number)

        for number, tokens in lines:
            keyword = tokens[0]
            if keyword == "perm":
                close_block()
                block = (number, tokens[1] if len(tokens) > 1 else f"g{len(generators) + 1}", {})
            elif keyword == "m":
                if block is None or len(tokens) != 3:
                    raise self._fail("Ligne `m a b` hors d'un bloc `perm`", source, number)
                block[2][self.parse_id(tokens[1])] = self.parse_id(tokens[2])
            elif keyword == "rule":
                close_block()
                block = None
                generators.append(self._rule(source, number, tokens[1:]))
            else:
                raise self._fail(f"Mot-clé inconnu: {keyword}", source, number)
        close_block()
        if not generators:
            raise self._fail("Aucun générateur", source)
        return generators

    def _rule(self, source: str, number: int, tokens: List[str]) -> TreeAutomorphism:
        label = None
        if len(tokens) >= 2 and tokens[-2] == "as":
            label, tokens = tokens[-1], tokens[:-2]
        if not tokens:
            raise self._fail("Règle vide", source, number)
        name, params = tokens[0], tokens[1:]
        builders: Dict[str, Tuple[int, Callable]] = {
            "translate": (1, lambda q: PiecewiseLinearMap.translation(q[0], label)),
            "scale": (1, lambda q: PiecewiseLinearMap.scaling(q[0], label=label)),
            "reflect": (1, lambda q: PiecewiseLinearMap.reflection(q[0], label)),
            "fix-half-line": (2, lambda q: PiecewiseLinearMap.half_line_fixer(q[0], q[1], label)),
        }
        try:
            if name in builders:
                arity, build = builders[name]
                if len(params) != arity:
                    raise self._fail(f"`{name}` attend {arity} paramètre(s)", source, number)
                return build([parse_rational(p) for p in params])
            if name.startswith("f2-"):
                return self._f2_rule(source, number, name[3:], params, label)
        except InputFormatError as e:
            if e.line_number is not None:
                raise
            raise self._fail(str(e), source, number)
        except LabError as e:
            raise self._fail(str(e), source, number)
        raise self._fail(f"Règle inconnue: {name}", source, number)

    def _f2_rule(self, source: str, number: int, name: str, params: List[str], label: Optional[str]) -> F2Isometry:
        for word in params:
            if not validate_word_literal(word):
                raise self._fail(f"Mot de F2 invalide: {word}", source, number)
        words = [F2Word.parse(w) for w in params]
        if name == "leftmul" and len(words) == 1:
            return F2Isometry("left", word=words[0], label=label)
        if name in ("phi", "phi-inverse", "theta") and not words:
            return F2Isometry(name, label=label)
        if name == "letters" and len(words) == 2:
            return F2Isometry("letters", images=(words[0], words[1]), label=label)
        raise self._fail(f"Règle f2-{name} mal formée", source, number)

    @staticmethod
    def format_tree(tree: MetricTree) -> List[str]:
        lines = ["tree"]
        lines.extend(f"v {v}" for v in tree.vertices)
        lines.extend(f"e {u} {v} {format_rational(length)}" for u, v, length in tree.edges)
        return lines

    def save_tree(self, tree: MetricTree, path: str) -> bool:
        self._stats['last_operation'] = f"save_{os.path.basename(path)}"
        if not ensure_directory_exists(os.path.dirname(path) or "."):
            self._stats['errors_count'] += 1
            return False
        success = safe_text_save("\n".join(self.format_tree(tree)) + "\n", path)
        self._stats['saves_count' if success else 'errors_count'] += 1
        return success

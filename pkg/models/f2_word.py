from typing import Iterable, Iterator, List, Optional, Tuple

from utils.errors import InputFormatError
from utils.validators import validate_word_literal

# Lettres: 1 = a, 2 = b, -1 = a⁻¹, -2 = b⁻¹
LETTER_NAMES = {1: "a", 2: "b", -1: "A", -2: "B"}
NAME_LETTERS = {v: k for k, v in LETTER_NAMES.items()}
LETTERS = (1, 2, -1, -2)


class F2Word:
    """Mot réduit du groupe libre F2 = <a, b>; le mot vide est Λ."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        reduced: List[int] = []
        for letter in letters:
            if letter not in LETTER_NAMES:
                raise ValueError(f"Lettre inconnue: {letter}")
            if reduced and reduced[-1] == -letter:
                reduced.pop()
            else:
                reduced.append(letter)
        self.letters: Tuple[int, ...] = tuple(reduced)
        self._hash = hash(self.letters)

    @staticmethod
    def identity() -> "F2Word":
        return F2Word()

    @staticmethod
    def parse(text: str) -> "F2Word":
        if not validate_word_literal(text):
            raise InputFormatError(f"Mot de F2 invalide: {text!r}")
        text = text.strip()
        if text in ("", "1", "Λ"):
            return F2Word()
        return F2Word(NAME_LETTERS[c] for c in text)

    def __mul__(self, other: "F2Word") -> "F2Word":
        return F2Word(self.letters + other.letters)

    def __invert__(self) -> "F2Word":
        return F2Word(-letter for letter in reversed(self.letters))

    def __pow__(self, n: int) -> "F2Word":
        if n < 0:
            return ~(self ** -n)
        return F2Word(self.letters * n)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return F2Word(self.letters[index])
        return self.letters[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        # shortlex: a < b < A < B
        return len(self.letters), tuple(LETTERS.index(x) for x in self.letters)

    def __lt__(self, other: "F2Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "F2Word") -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "F2Word") -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: "F2Word") -> bool:
        return self.sort_key() >= other.sort_key()

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(LETTER_NAMES[x] for x in self.letters)

    def __repr__(self) -> str:
        return f"F2Word('{self}')"

    def is_identity(self) -> bool:
        return not self.letters

    def common_prefix_length(self, other: "F2Word") -> int:
        n = 0
        for x, y in zip(self.letters, other.letters):
            if x != y:
                break
            n += 1
        return n

    def common_prefix(self, other: "F2Word") -> "F2Word":
        return F2Word(self.letters[:self.common_prefix_length(other)])

    def theta(self) -> "F2Word":
        """Substitution a <-> b."""
        return F2Word(_swap(x) for x in self.letters)

    def substitute(self, images: dict) -> "F2Word":
        result: List[int] = []
        for letter in self.letters:
            image = images[abs(letter)]
            result.extend(image.letters if letter > 0 else (~image).letters)
        return F2Word(result)


def _swap(letter: int) -> int:
    return letter // abs(letter) * (3 - abs(letter))


def all_words(max_length: int) -> List[F2Word]:
    """Tous les mots réduits de longueur <= max_length, en ordre shortlex."""
    words = [F2Word()]
    layer = [F2Word()]
    for _ in range(max_length):
        next_layer = []
        for word in layer:
            for letter in LETTERS:
                if word.letters and word.letters[-1] == -letter:
                    continue
                next_layer.append(F2Word(word.letters + (letter,)))
        words.extend(next_layer)
        layer = next_layer
    return words


# Axe L de ba: (ba)^k b^ε au rang positif, (a⁻¹b⁻¹)^k a^-ε au rang négatif.

def axis_word(position: int) -> F2Word:
    pattern = (2, 1) if position >= 0 else (-1, -2)
    return F2Word(pattern[i % 2] for i in range(abs(position)))


def axis_position(word: F2Word) -> Optional[int]:
    n = _axis_prefix_length(word)
    if n != len(word):
        return None
    return n if (not word.letters or word.letters[0] == 2) else -n


def axis_prefix(word: F2Word) -> Tuple[int, F2Word]:
    """Décompose word = P_n · w1 avec P_n le plus long préfixe sur L."""
    n = _axis_prefix_length(word)
    rest = F2Word(word.letters[n:])
    if n and word.letters[0] == -1:
        return -n, rest
    return n, rest


def _axis_prefix_length(word: F2Word) -> int:
    if not word.letters:
        return 0
    if word.letters[0] == 2:
        pattern = (2, 1)
    elif word.letters[0] == -1:
        pattern = (-1, -2)
    else:
        return 0
    n = 0
    for i, letter in enumerate(word.letters):
        if letter != pattern[i % 2]:
            break
        n += 1
    return n


def phi(word: F2Word) -> F2Word:
    position, rest = axis_prefix(word)
    return axis_word(position + 1) * rest.theta()


def phi_inverse(word: F2Word) -> F2Word:
    position, rest = axis_prefix(word)
    return axis_word(position - 1) * rest.theta()

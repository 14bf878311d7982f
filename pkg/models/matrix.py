from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Tuple

import galois
import numpy as np

from utils.errors import PreconditionError, StructureError
from utils.validators import validate_prime


@lru_cache(maxsize=None)
def prime_field(p: int):
    if not validate_prime(p):
        raise PreconditionError(f"Le module {p} n'est pas premier")
    return galois.GF(p)


class MatrixN:
    """Matrice n×n sur GF(p)."""

    __slots__ = ("p", "field", "array", "key")

    def __init__(self, entries, p: int):
        self.p = p
        self.field = prime_field(p)
        array = np.asarray(entries, dtype=np.int64) % p
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise StructureError(f"Matrice non carrée: forme {array.shape}")
        self.array = self.field(array)
        self.key: Tuple[int, ...] = tuple(int(x) for x in self.array.flatten())

    @staticmethod
    def identity(n: int, p: int) -> "MatrixN":
        return MatrixN(np.eye(n, dtype=np.int64), p)

    @staticmethod
    def elementary(n: int, p: int, i: int, j: int, alpha: int = 1) -> "MatrixN":
        """t_ij(α) = I + α E_ij."""
        entries = np.eye(n, dtype=np.int64)
        entries[i, j] += alpha
        return MatrixN(entries, p)

    @property
    def n(self) -> int:
        return self.array.shape[0]

    def __matmul__(self, other: "MatrixN") -> "MatrixN":
        return MatrixN(to_ints(self.array @ other.array), self.p)

    __mul__ = __matmul__

    def inverse(self) -> "MatrixN":
        return MatrixN(to_ints(np.linalg.inv(self.array)), self.p)

    def __invert__(self) -> "MatrixN":
        return self.inverse()

    def __pow__(self, exponent: int) -> "MatrixN":
        base = self if exponent >= 0 else self.inverse()
        result = MatrixN.identity(self.n, self.p)
        for _ in range(abs(exponent)):
            result = result @ base
        return result

    def det(self) -> int:
        return int(np.linalg.det(self.array))

    def is_identity(self) -> bool:
        return self == MatrixN.identity(self.n, self.p)

    def minus_identity(self):
        return self.array - self.field(np.eye(self.n, dtype=np.int64))

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixN) and self.p == other.p and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.p, self.key))

    def sort_key(self):
        return self.key

    def __lt__(self, other: "MatrixN") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.key)

    def __repr__(self) -> str:
        return f"MatrixN([{self}], p={self.p})"


def to_ints(array) -> np.ndarray:
    return np.array(array.view(np.ndarray), dtype=np.int64)


def dot(row: Iterable[int], column: Iterable[int], p: int) -> int:
    return sum(int(a) * int(b) for a, b in zip(row, column)) % p


@dataclass(frozen=True)
class Transvection:
    """t_uv(ξ) = I + u ξ v, avec v·u = 0."""

    u: Tuple[int, ...]
    v: Tuple[int, ...]
    xi: int
    p: int

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def matrix(self) -> MatrixN:
        field = prime_field(self.p)
        u = field(np.asarray(self.u, dtype=np.int64).reshape(-1, 1) % self.p)
        v = field(np.asarray(self.v, dtype=np.int64).reshape(1, -1) % self.p)
        residue = to_ints(u @ v * field(self.xi % self.p))
        return MatrixN(np.eye(self.n, dtype=np.int64) + residue, self.p)

    def __str__(self) -> str:
        u = ",".join(map(str, self.u))
        v = ",".join(map(str, self.v))
        return f"t[u=({u}),v=({v}),xi={self.xi}]"

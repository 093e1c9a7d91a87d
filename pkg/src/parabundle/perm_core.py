"""
Permutations of ``[1, n]`` in one-line notation, with the Coxeter-group
operations of the symmetric group generated by ``s_1, ..., s_{n-1}``.

Positions and values are 1-based everywhere in the public interface.
Composition follows ``(x * y)(i) = x(y(i))``.

>>> w = Permutation.parse("436125")
>>> w.length()
8
>>> sorted(right_descents(w)), sorted(left_descents(w))
([1, 3], [2, 3, 5])
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "GeneratorSet", "Permutation", "RankMatrix",
    "from_one_line", "identity", "compose", "inverse", "length",
    "right_descents", "left_descents", "support", "reduced_word",
    "rank_matrix", "simple_reflection", "from_word", "all_permutations",
]

# set of generator indices i, each standing for s_i = (i, i+1)
GeneratorSet = frozenset


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of ``[1, n]`` stored as its one-line word."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("a permutation needs at least one entry")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [1, {n}]: {self.images!r}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read ``"4231"`` or ``"10,3,1,..."``."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation text")
        try:
            if "," in text:
                values = [int(part) for part in text.split(",")]
            else:
                values = [int(ch) for ch in text]
        except ValueError:
            raise ValueError(f"malformed permutation text: {text!r}") from None
        return from_one_line(values)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def length(self) -> int:
        return length(self)

    def inverse(self) -> Permutation:
        return inverse(self)


def from_one_line(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(range(1, n + 1)))


def simple_reflection(i: int, n: int) -> Permutation:
    """The transposition ``s_i`` swapping ``i`` and ``i+1`` in ``S_n``."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"s_{i} is not a generator of S_{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def compose(x: Permutation, y: Permutation) -> Permutation:
    """Return ``x * y``, i.e. ``i -> x(y(i))``."""
    if x.n != y.n:
        raise ValueError(f"cannot compose S_{x.n} with S_{y.n}")
    xs = x.images
    return Permutation(tuple(xs[j - 1] for j in y.images))


def from_word(word: Sequence[int], n: int) -> Permutation:
    """Multiply ``s_{word[0]} * s_{word[1]} * ...`` in ``S_n``."""
    images = list(range(1, n + 1))
    # right-multiplying by s_i swaps positions i, i+1
    for i in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"s_{i} is not a generator of S_{n}")
        images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, v in enumerate(w.images, 1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Inversion count, which is the Coxeter length."""
    a = w.images
    n = len(a)
    return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])


def right_descents(w: Permutation) -> frozenset[int]:
    a = w.images
    return frozenset(i for i in range(1, len(a)) if a[i - 1] > a[i])


def left_descents(w: Permutation) -> frozenset[int]:
    """``s_k`` is a left descent iff value ``k+1`` sits left of value ``k``."""
    pos = inverse(w).images
    return frozenset(k for k in range(1, len(pos)) if pos[k] < pos[k - 1])


def support(w: Permutation) -> frozenset[int]:
    """
    Generators occurring in some (hence every) reduced word of ``w``.

    ``s_i`` is in the support iff ``w`` does not stabilize ``[1, i]``,
    which happens iff ``max(w(1), ..., w(i)) > i``.

    >>> sorted(support(Permutation.parse("213465")))
    [1, 5]
    """
    result = []
    running_max = 0
    for i, v in enumerate(w.images[:-1], 1):
        if v > running_max:
            running_max = v
        if running_max > i:
            result.append(i)
    return frozenset(result)


def reduced_word(w: Permutation) -> list[int]:
    """
    A reduced word for ``w`` obtained by stripping the smallest left
    descent until the identity is reached.

    >>> reduced_word(Permutation.parse("2413"))
    [1, 3, 2]
    """
    images = list(w.images)
    pos = list(inverse(w).images)
    n = len(images)
    word = []
    while True:
        for k in range(1, n):
            if pos[k] < pos[k - 1]:
                break
        else:
            return word
        word.append(k)
        # s_k * x swaps the values k and k+1
        a, b = pos[k - 1], pos[k]
        images[a - 1], images[b - 1] = k + 1, k
        pos[k - 1], pos[k] = b, a


@dataclass(frozen=True, slots=True)
class RankMatrix:
    """``r_w[i, j] = #{k <= j : w(k) <= i}``, indexed 1-based as ``m[i, j]``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(ij)
        return self.rows[i - 1][j - 1]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def rank_matrix(w: Permutation) -> RankMatrix:
    n = w.n
    rows = []
    for i in range(1, n + 1):
        row = []
        count = 0
        for v in w.images:
            if v <= i:
                count += 1
            row.append(count)
        rows.append(tuple(row))
    return RankMatrix(tuple(rows))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic order."""
    from itertools import permutations

    for images in permutations(range(1, n + 1)):
        yield Permutation(images)

"""
Classical and split pattern containment.

A split pattern ``u(1)...u(j) | u(j+1)...u(k)`` occurs in ``w`` with respect
to position ``r`` when some occurrence ``i_1 < ... < i_k`` of ``u`` has its
first ``j`` indices in ``[1, r]`` and the rest in ``[r+1, n]``.

Witnesses are tuples of 1-based positions. When several occurrences exist the
lexicographically smallest one is reported.

>>> w = Permutation.parse("426135")
>>> contains_split_at(w, parse_pattern("34|12"), 3)
(1, 3, 4, 5)
>>> [r for r in range(1, 6) if contains_split_at(w, parse_pattern("34|12"), r)]
[3]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perm_core import Permutation

__all__ = [
    "SplitPattern", "Witness", "flatten", "contains_pattern",
    "contains_split_at", "avoids_split_at", "avoids_split_everywhere",
    "parse_pattern", "occurrence_ending_at_last", "SPLIT_312", "SPLIT_231",
]

# strictly increasing 1-based positions i_1 < ... < i_k
Witness = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SplitPattern:
    pattern: Permutation
    split: int

    def __post_init__(self):
        if not 1 <= self.split <= self.pattern.n - 1:
            raise ValueError(
                f"split {self.split} must lie in [1, {self.pattern.n - 1}]"
            )

    def __str__(self) -> str:
        vals = [str(v) for v in self.pattern.images]
        sep = "" if self.pattern.n <= 9 else ","
        return sep.join(vals[: self.split]) + "|" + sep.join(vals[self.split :])


def flatten(values: Sequence[int], target_offset: int = 0) -> tuple[int, ...]:
    """
    Replace ``values`` by consecutive integers from ``target_offset + 1``
    with the same relative order.

    >>> flatten([2, 4, 1])
    (2, 3, 1)
    >>> flatten([6, 2, 3], 3)
    (6, 4, 5)
    """
    if len(set(values)) != len(values):
        raise ValueError(f"repeated values in {list(values)!r}")
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank, idx in enumerate(order, target_offset + 1):
        out[idx] = rank
    return tuple(out)


@lru_cache(maxsize=None)
def _neighbours(pattern: tuple[int, ...], order: tuple[int, ...]):
    """
    For each step of ``order`` give the earlier steps holding the closest
    pattern values below and above, or -1. Choosing a text value strictly
    between those two keeps the partial match order-isomorphic.
    """
    below, above = [], []
    for t, idx in enumerate(order):
        pv = pattern[idx]
        lo = hi = -1
        for s in range(t):
            qv = pattern[order[s]]
            if qv < pv and (lo < 0 or qv > pattern[order[lo]]):
                lo = s
            elif qv > pv and (hi < 0 or qv < pattern[order[hi]]):
                hi = s
        below.append(lo)
        above.append(hi)
    return tuple(below), tuple(above)


def _first_match(a, pattern, split=0, r=0):
    """
    Depth-first search for the lexicographically first occurrence.

    ``a`` and ``pattern`` are value tuples, positions 0-based. With
    ``split > 0`` the first ``split`` pattern entries are confined to
    positions ``< r`` and the rest to positions ``>= r``.
    """
    n, k = len(a), len(pattern)
    if k > n:
        return None
    below, above = _neighbours(pattern, tuple(range(k)))
    chosen_pos = [0] * k
    chosen_val = [0] * k

    def bounds(t, start):
        lo_pos = start
        hi_pos = n - (k - t)
        if split:
            if t < split:
                hi_pos = min(hi_pos, r - (split - t))
            else:
                lo_pos = max(lo_pos, r)
        return lo_pos, hi_pos

    def search(t, start):
        if t == k:
            return True
        lo_pos, hi_pos = bounds(t, start)
        b, c = below[t], above[t]
        vmin = chosen_val[b] if b >= 0 else 0
        vmax = chosen_val[c] if c >= 0 else n + 1
        for p in range(lo_pos, hi_pos + 1):
            v = a[p]
            if vmin < v < vmax:
                chosen_pos[t] = p
                chosen_val[t] = v
                if search(t + 1, p + 1):
                    return True
        return False

    if search(0, 0):
        return tuple(p + 1 for p in chosen_pos)
    return None


def contains_pattern(w: Permutation, p: Permutation) -> Witness | None:
    """Classical containment; returns a witness or ``None``."""
    return _first_match(w.images, p.images)


def contains_split_at(w: Permutation, sp: SplitPattern, r: int) -> Witness | None:
    if not 1 <= r <= w.n - 1:
        raise ValueError(f"position r={r} outside [1, {w.n - 1}]")
    return _first_match(w.images, sp.pattern.images, sp.split, r)


def avoids_split_at(w: Permutation, sp: SplitPattern, r: int) -> bool:
    return contains_split_at(w, sp, r) is None


def avoids_split_everywhere(w: Permutation, sp: SplitPattern) -> bool:
    return all(avoids_split_at(w, sp, r) for r in range(1, w.n))


def occurrence_ending_at_last(a: Sequence[int], pattern: tuple[int, ...]) -> bool:
    """
    Whether the value word ``a`` has an occurrence of ``pattern`` that uses
    its final position. Used by the pruned enumerator, where every shorter
    prefix is already known to avoid the pattern.
    """
    n, k = len(a), len(pattern)
    if k > n:
        return False
    if k == 1:
        return True
    # match the last pattern entry first; its text position is fixed
    order = (k - 1,) + tuple(range(k - 1))
    below, above = _neighbours(pattern, order)
    vals = [0] * k
    vals[0] = a[n - 1]
    last = n - 1

    def search(t, start):
        if t == k:
            return True
        b, c = below[t], above[t]
        vmin = vals[b] if b >= 0 else 0
        vmax = vals[c] if c >= 0 else n + 1
        # step t places pattern entry t-1; k-1-t entries still follow it
        for p in range(start, last - (k - 1 - t)):
            v = a[p]
            if vmin < v < vmax:
                vals[t] = v
                if search(t + 1, p + 1):
                    return True
        return False

    return search(1, 0)


def _parse_values(text: str) -> list[int]:
    if "," in text:
        return [int(part) for part in text.split(",")]
    return [int(ch) for ch in text]


def parse_pattern(text: str) -> SplitPattern | Permutation:
    """
    ``"23|1"`` gives a split pattern, ``"3412"`` a classical one. Comma
    separated entries are accepted on either side of the bar.
    """
    text = text.strip()
    if text.count("|") > 1:
        raise ValueError(f"more than one bar in {text!r}")
    try:
        if "|" in text:
            left, right = text.split("|")
            left, right = left.strip().strip(","), right.strip().strip(",")
            if not left or not right:
                raise ValueError(f"bar at the end of {text!r}")
            lv, rv = _parse_values(left), _parse_values(right)
            return SplitPattern(Permutation(tuple(lv + rv)), len(lv))
        if not text:
            raise ValueError("empty pattern text")
        return Permutation(tuple(_parse_values(text)))
    except ValueError as exc:
        raise ValueError(f"malformed pattern {text!r}: {exc}") from None


SPLIT_312 = SplitPattern(Permutation((3, 1, 2)), 1)
SPLIT_231 = SplitPattern(Permutation((2, 3, 1)), 2)

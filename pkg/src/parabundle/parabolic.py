"""
Parabolic decompositions ``w = v * u`` for the maximal parabolic subgroup
generated by ``J = S \\ {s_r}``.

``v`` is the minimal-length representative of the coset ``w W_J`` and ``u``
lies in ``W_J``, so it permutes ``[1, r]`` and ``[r+1, n]`` separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import flatten
from .perm_core import Permutation, right_descents

__all__ = [
    "ParabolicDecomposition", "parabolic_decompose", "coset_rep_support",
    "is_min_coset_rep",
]


@dataclass(frozen=True, slots=True)
class ParabolicDecomposition:
    v: Permutation
    u: Permutation
    r: int

    @property
    def n(self) -> int:
        return self.v.n


def _check_position(n: int, r: int) -> None:
    if not 1 <= r <= n - 1:
        raise ValueError(f"position r={r} outside [1, {n - 1}]")


def parabolic_decompose(w: Permutation, r: int) -> ParabolicDecomposition:
    """
    Sort each side of the bar to get ``v``; flatten each side in place to
    get ``u``.

    >>> d = parabolic_decompose(Permutation.parse("541623"), 3)
    >>> str(d.v), str(d.u)
    ('145236', '321645')
    """
    _check_position(w.n, r)
    left, right = w.images[:r], w.images[r:]
    v = Permutation(tuple(sorted(left)) + tuple(sorted(right)))
    u = Permutation(flatten(left) + flatten(right, r))
    return ParabolicDecomposition(v, u, r)


def is_min_coset_rep(v: Permutation, r: int) -> bool:
    """``v`` has no right descent other than possibly ``s_r``."""
    _check_position(v.n, r)
    return right_descents(v) <= {r}


def coset_rep_support(v: Permutation, r: int) -> frozenset[int]:
    """
    Support of a minimal coset representative: the interval
    ``v(r+1) <= k < v(r)``, empty when ``v`` is the identity.

    >>> sorted(coset_rep_support(Permutation.parse("2413"), 2))
    [1, 2, 3]
    """
    if not is_min_coset_rep(v, r):
        raise ValueError(f"{v} is not a minimal coset representative for r={r}")
    return frozenset(range(v(r + 1), v(r)))

"""
Billey-Postnikov (BP) decompositions of permutations.

The parabolic decomposition ``w = v * u`` at position ``r`` is BP when every
generator of ``v`` other than ``s_r`` is a left descent of ``u``. The same
property is decided a second way, by avoidance of the split patterns
``3|12`` and ``23|1`` at ``r``; the two routes share no code and
:func:`bp_positions` refuses to answer if they ever disagree.

A complete BP decomposition peels one BP factor at a time, each removing
exactly one generator from the support, until the identity is reached.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .parabolic import parabolic_decompose
from .patterns import SPLIT_231, SPLIT_312, SplitPattern, Witness, contains_pattern, contains_split_at
from .perm_core import Permutation, compose, identity, left_descents, length, reduced_word, support

__all__ = [
    "CriteriaDisagreement", "PositionVerdict", "BPReport", "CompleteBP",
    "TowerStage", "is_bp_by_descent", "is_bp_by_pattern", "bp_report",
    "bp_positions", "complete_bp", "greedy_complete_bp",
    "sigma_from_positions", "tower_stages", "complete_bp_with_order",
    "has_complete_structure_by_pattern", "COMPLETE_STRUCTURE_PATTERNS",
    "SMOOTH_PATTERNS",
]

log = logging.getLogger(__name__)

COMPLETE_STRUCTURE_PATTERNS = tuple(
    Permutation.parse(p) for p in ("3412", "52341", "635241")
)
SMOOTH_PATTERNS = tuple(Permutation.parse(p) for p in ("3412", "4231"))


class CriteriaDisagreement(RuntimeError):
    """The descent and split-pattern criteria gave different answers."""


def _check_position(n: int, r: int) -> None:
    if not 1 <= r <= n - 1:
        raise ValueError(f"position r={r} outside [1, {n - 1}]")


def is_bp_by_descent(w: Permutation, r: int) -> bool:
    """
    >>> is_bp_by_descent(Permutation.parse("3241"), 2)
    True
    >>> any(is_bp_by_descent(Permutation.parse("3412"), r) for r in (1, 2, 3))
    False
    """
    d = parabolic_decompose(w, r)
    return support(d.v) - {r} <= left_descents(d.u)


def _split_violation(w: Permutation, r: int) -> tuple[SplitPattern, Witness] | None:
    for sp in (SPLIT_312, SPLIT_231):
        witness = contains_split_at(w, sp, r)
        if witness is not None:
            return sp, witness
    return None


def is_bp_by_pattern(w: Permutation, r: int) -> bool:
    _check_position(w.n, r)
    return _split_violation(w, r) is None


@dataclass(frozen=True)
class PositionVerdict:
    r: int
    bp_by_descent: bool
    bp_by_pattern: bool
    # first split occurrence found at r, when there is one
    violation: SplitPattern | None = None
    witness: Witness | None = None


@dataclass(frozen=True)
class BPReport:
    w: Permutation
    verdicts: tuple[PositionVerdict, ...]

    @property
    def positions(self) -> frozenset[int]:
        return frozenset(v.r for v in self.verdicts if v.bp_by_descent)

    def consistent(self) -> bool:
        return all(v.bp_by_descent == v.bp_by_pattern for v in self.verdicts)


def bp_report(w: Permutation) -> BPReport:
    verdicts = []
    for r in range(1, w.n):
        found = _split_violation(w, r)
        sp, witness = found if found else (None, None)
        verdicts.append(
            PositionVerdict(r, is_bp_by_descent(w, r), found is None, sp, witness)
        )
    return BPReport(w, tuple(verdicts))


def bp_positions(w: Permutation) -> frozenset[int]:
    """
    Positions ``r`` at which ``w = v * u`` is a BP decomposition.

    >>> sorted(bp_positions(Permutation.parse("4231")))
    [2]
    """
    report = bp_report(w)
    for v in report.verdicts:
        if v.bp_by_descent != v.bp_by_pattern:
            raise CriteriaDisagreement(
                f"w={w}, r={v.r}: descent criterion says {v.bp_by_descent}, "
                f"split patterns say {v.bp_by_pattern}"
            )
    return report.positions


def sigma_from_positions(positions: Sequence[int], n: int) -> tuple[int, ...]:
    """
    The ordering of ``[1, n-1]`` induced by positions ``r_k, ..., r_1``
    (outermost factor first): ``sigma(i) = r_{k+1-i}``, then the unused
    indices in increasing order.

    Returned as a one-line tuple since ``n = 1`` gives the empty ordering.

    >>> sigma_from_positions([2, 1, 3], 4)
    (2, 1, 3)
    >>> sigma_from_positions([], 4)
    (1, 2, 3)
    """
    seen = set()
    for r in positions:
        _check_position(n, r)
        if r in seen:
            raise ValueError(f"position {r} repeated in {list(positions)!r}")
        seen.add(r)
    rest = [i for i in range(1, n) if i not in seen]
    return tuple(positions) + tuple(rest)


@dataclass(frozen=True)
class CompleteBP:
    """
    ``w = factors[0] * factors[1] * ... * factors[-1]``, i.e.
    ``v_k * ... * v_1``; ``positions[i]`` is the generator introduced by
    ``factors[i]``.
    """

    w: Permutation
    factors: tuple[Permutation, ...]
    positions: tuple[int, ...]
    sigma: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.factors)

    def product(self) -> Permutation:
        result = identity(self.w.n)
        for v in self.factors:
            result = compose(result, v)
        return result

    def reduced_words(self) -> list[list[int]]:
        return [reduced_word(v) for v in self.factors]

    def check(self) -> None:
        """Raise ``AssertionError`` unless every structural invariant holds."""
        assert self.product() == self.w, "factors do not multiply back to w"
        assert sum(length(v) for v in self.factors) == length(self.w)
        assert len(set(self.positions)) == len(self.positions)
        assert self.k == len(support(self.w))
        tail = identity(self.w.n)
        prev: frozenset[int] = frozenset()
        for i, (v, r) in enumerate(zip(reversed(self.factors), reversed(self.positions)), 1):
            tail = compose(v, tail)
            supp = support(tail)
            assert len(supp) == i, f"|S(v_{i}...v_1)| = {len(supp)}"
            assert supp - prev == {r}, f"new generator at stage {i} is not s_{r}"
            prev = supp
        assert self.sigma == sigma_from_positions(self.positions, self.w.n)


def _make_complete(w: Permutation, stages: list[tuple[int, Permutation]]) -> CompleteBP:
    positions = tuple(r for r, _ in stages)
    return CompleteBP(
        w,
        tuple(v for _, v in stages),
        positions,
        sigma_from_positions(positions, w.n),
    )


def greedy_complete_bp(w: Permutation) -> CompleteBP | None:
    """Always peel the smallest BP position in the support; never backtrack."""
    stages = []
    x = w
    while not x.is_identity():
        for r in sorted(support(x)):
            if is_bp_by_descent(x, r):
                d = parabolic_decompose(x, r)
                stages.append((r, d.v))
                x = d.u
                break
        else:
            return None
    return _make_complete(w, stages)


def complete_bp(w: Permutation) -> CompleteBP | None:
    """
    Search for a complete BP decomposition, trying positions in increasing
    order and backtracking on failure. ``None`` means the exhaustive search
    found none.

    >>> c = complete_bp(Permutation.parse("4231"))
    >>> [str(v) for v in c.factors], c.positions, c.sigma
    (['2413', '2134', '1243'], (2, 1, 3), (2, 1, 3))
    >>> complete_bp(Permutation.parse("3412")) is None
    True
    """
    dead: set[tuple[int, ...]] = set()

    def peel(x: Permutation):
        if x.is_identity():
            return []
        if x.images in dead:
            return None
        failed_before = False
        for r in sorted(support(x)):
            if not is_bp_by_descent(x, r):
                continue
            d = parabolic_decompose(x, r)
            rest = peel(d.u)
            if rest is not None:
                if failed_before:
                    log.warning("complete_bp(%s): backtracked at %s, used r=%d", w, x, r)
                return [(r, d.v)] + rest
            failed_before = True
        dead.add(x.images)
        return None

    stages = peel(w)
    if stages is None:
        return None
    return _make_complete(w, stages)


@dataclass(frozen=True)
class TowerStage:
    r: int
    # "trivial" when s_r is no longer in the support, else "bp" or "fail"
    status: str
    remainder: Permutation
    v: Permutation | None = None
    u: Permutation | None = None
    violation: SplitPattern | None = None
    witness: Witness | None = None


def _check_order(order: Sequence[int], n: int) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(1, n)):
        raise ValueError(f"order {list(order)!r} is not a permutation of [1, {n - 1}]")
    return order


def tower_stages(w: Permutation, order: Sequence[int]) -> list[TowerStage]:
    """
    Peel ``w`` at the positions of ``order`` in turn. Stops after the first
    failing stage.
    """
    order = _check_order(order, w.n)
    stages = []
    x = w
    for r in order:
        if r not in support(x):
            stages.append(TowerStage(r, "trivial", x))
            continue
        d = parabolic_decompose(x, r)
        if not is_bp_by_descent(x, r):
            found = _split_violation(x, r)
            sp, witness = found if found else (None, None)
            stages.append(TowerStage(r, "fail", x, d.v, d.u, sp, witness))
            break
        stages.append(TowerStage(r, "bp", x, d.v, d.u))
        x = d.u
    return stages


def complete_bp_with_order(w: Permutation, order: Sequence[int]) -> CompleteBP | None:
    """
    >>> complete_bp_with_order(Permutation.parse("4231"), (2, 1, 3)) is not None
    True
    >>> complete_bp_with_order(Permutation.parse("4231"), (1, 2, 3)) is None
    True
    """
    stages = tower_stages(w, order)
    if any(s.status == "fail" for s in stages):
        return None
    peeled = [s for s in stages if s.status == "bp"]
    remainder = peeled[-1].u if peeled else w
    if not remainder.is_identity():
        return None
    return _make_complete(w, [(s.r, s.v) for s in peeled])


def has_complete_structure_by_pattern(w: Permutation) -> bool:
    return all(contains_pattern(w, p) is None for p in COMPLETE_STRUCTURE_PATTERNS)

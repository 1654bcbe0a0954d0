"""Valid cuts of the Steiner set: the S-partitions induced by some S-mincut."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .graphcore import SteinerContext
from .maxflow import max_flow, steiner_lambda

DEFAULT_ENUM_BOUND = 14


def crosses(a: frozenset, b: frozenset, steiner: frozenset) -> bool:
    """Two S-partitions cross iff all four corners are nonempty."""
    return bool(a & b) and bool(a - b) and bool(b - a) and bool(steiner - a - b)


@dataclass(frozen=True)
class ValidCutSet:
    lam: int
    steiner: frozenset
    cuts: tuple  # anchor-side Steiner subsets, by ascending bitmask
    laminar: tuple  # laminar flag per cut

    @property
    def anchor(self) -> int:
        return min(self.steiner)

    def key(self, side: Iterable[int]) -> frozenset:
        """Normalise either side of a partition to its anchor side."""
        side = frozenset(side)
        return side if self.anchor in side else self.steiner - side

    def is_valid(self, side: Iterable[int]) -> bool:
        side = frozenset(side)
        if not side or side >= self.steiner or not side <= self.steiner:
            return False
        return self.key(side) in self._lookup

    @property
    def _lookup(self) -> frozenset:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.cuts)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def laminar_cuts(self) -> list[frozenset]:
        return [c for c, lam in zip(self.cuts, self.laminar) if lam]

    def crossing_cuts(self) -> list[frozenset]:
        return [c for c, lam in zip(self.cuts, self.laminar) if not lam]


def classify_laminar(cuts: Iterable[frozenset], steiner: frozenset) -> tuple:
    cuts = list(cuts)
    return tuple(not any(crosses(a, b, steiner) for b in cuts if b != a) for a in cuts)


def enumerate_valid_cuts(ctx: SteinerContext, bound: int = DEFAULT_ENUM_BOUND) -> ValidCutSet:
    """Test every anchor-containing proper subset of S with one max flow each."""
    order = ctx.steiner_sorted
    k = len(order)
    if k > bound:
        raise DomainError("steiner set too large for enumeration")
    if ctx.lam is None:
        steiner_lambda(ctx)
    cuts = []
    for rest in range(1 << (k - 1)):
        side = frozenset([order[0]] + [order[i + 1] for i in range(k - 1) if rest >> i & 1])
        if len(side) == k:
            continue
        if max_flow(ctx.graph, side, ctx.steiner - side).value == ctx.lam:
            cuts.append(side)
    return ValidCutSet(ctx.lam, ctx.steiner, tuple(cuts), classify_laminar(cuts, ctx.steiner))


def is_indivisible(vcs: ValidCutSet, s1: Iterable[int]) -> bool:
    """No valid cut splits ``S1``."""
    s1 = frozenset(s1)
    return not any((c & s1) and (s1 - c) for c in vcs.cuts)


def tight_valid_cut(vcs: ValidCutSet, u: int, v: int) -> frozenset | None:
    """Smallest valid side holding ``u`` but not ``v`` (intersection of all such sides)."""
    best = None
    for c in vcs.cuts:
        for side in (c, vcs.steiner - c):
            if u in side and v not in side:
                best = side if best is None else best & side
    return best

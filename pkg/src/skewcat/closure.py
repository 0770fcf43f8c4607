"""
Bounded saturation of partition sets under the skew or the classic operations.

The closures are infinite, so the engines compute the least fixpoint inside a
finite window (at most ``max_points`` points and optionally ``max_blocks``
blocks).  Results outside the window are skipped, never queued.  This is a
sound under-approximation: an element with few points may only be derivable
through larger intermediates.  :func:`member_exact` decides membership via
words instead and does not suffer from this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .partitions import (
    CAP, CORNERS, IDENTITY, Partition, canonical_labels, compose, involution, rotate, tensor,
)
from .skew import enumerate_connected_tensors
from .words import Verdict, lift_member, word_of_partition

__all__ = ["ClosureBounds", "ClosureTruncation", "skew_closure", "classic_closure",
           "member_exact", "closure_from_json"]


@dataclass(frozen=True)
class ClosureBounds:
    max_points: int = 10
    max_blocks: int | None = None
    max_elements: int | None = None

    def __post_init__(self):
        if self.max_points < 2:
            raise ValueError("max_points must be at least 2")
        if self.max_blocks is not None and self.max_blocks < 1:
            raise ValueError("max_blocks must be positive")

    def admits(self, p: Partition) -> bool:
        return p.points <= self.max_points and (
            self.max_blocks is None or p.blocks <= self.max_blocks)


@dataclass(frozen=True)
class ClosureTruncation:
    kind: str
    generators: tuple[Partition, ...]
    bounds: ClosureBounds
    elements: frozenset = field(default_factory=frozenset)
    saturated: bool = True

    def __contains__(self, p: Partition) -> bool:
        return p in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Partition]:
        return sorted(self.elements)

    def of_shape(self, k: int, l: int) -> list[Partition]:  # noqa: E741
        return sorted(p for p in self.elements if p.k == k and p.l == l)

    def to_json(self) -> dict:
        return {"kind": self.kind, "maxPoints": self.bounds.max_points,
                "maxBlocks": self.bounds.max_blocks,
                "generators": [p.to_json() for p in self.generators],
                "elements": [p.to_json() for p in self.sorted()],
                "saturated": self.saturated}


class _Saturator:
    """Worklist fixpoint; each new element is combined with everything seen so far."""

    def __init__(self, kind: str, bounds: ClosureBounds):
        self.kind = kind
        self.bounds = bounds
        self.elements: set[Partition] = set()
        self.queue: list[Partition] = []
        self.by_upper: dict[tuple, list[Partition]] = {}
        self.by_lower: dict[tuple, list[Partition]] = {}
        self.done: list[Partition] = []
        self.stopped = False

    def add(self, p: Partition):
        if p in self.elements or not self.bounds.admits(p):
            return
        if self.bounds.max_elements is not None and len(self.elements) >= self.bounds.max_elements:
            self.stopped = True
            return
        self.elements.add(p)
        self.queue.append(p)

    def _key(self, row: tuple[int, ...]) -> tuple:
        # classic composition only needs equal arity; skew needs equal row kernels
        return (len(row),) if self.kind == "classic" else (len(row), canonical_labels(row))

    def _compose(self, q: Partition, p: Partition):
        if p.k + q.l <= self.bounds.max_points:
            self.add(compose(q, p)[0])

    def _tensor(self, p: Partition, q: Partition):
        if p.points + q.points > self.bounds.max_points:
            return
        if self.kind == "classic":
            self.add(tensor(p, q))
        else:
            for r in enumerate_connected_tensors(p, q):
                self.add(r)

    def step(self, p: Partition):
        self.add(involution(p))
        for corner in CORNERS:
            if (p.upper if corner.startswith("upper") else p.lower):
                self.add(rotate(p, corner))
        self.done.append(p)
        self.by_upper.setdefault(self._key(p.upper), []).append(p)
        self.by_lower.setdefault(self._key(p.lower), []).append(p)
        for q in list(self.done):
            self._tensor(p, q)
            if q is not p:
                self._tensor(q, p)
        # p on top of q, and q on top of p
        for q in list(self.by_upper.get(self._key(p.lower), ())):
            self._compose(q, p)
        for q in list(self.by_lower.get(self._key(p.upper), ())):
            if q is not p:
                self._compose(p, q)

    def run(self, seeds: Iterable[Partition]):
        for p in sorted(set(seeds)):
            self.add(p)
        while self.queue and not self.stopped:
            self.queue.sort(reverse=True)
            self.step(self.queue.pop())
        return frozenset(self.elements), not (self.queue or self.stopped)


def _closure(kind: str, generators: Iterable[Partition], bounds: ClosureBounds | None):
    bounds = bounds or ClosureBounds()
    gens = tuple(sorted(set(generators)))
    for g in gens:
        if not bounds.admits(g):
            raise ValueError(f"generator {g!r} lies outside the bounds")
    elements, saturated = _Saturator(kind, bounds).run(gens + (CAP, IDENTITY))
    return ClosureTruncation(kind, gens, bounds, elements, saturated)


def skew_closure(generators: Iterable[Partition] = (),
                 bounds: ClosureBounds | None = None) -> ClosureTruncation:
    """Truncated closure of E u {cap, |} under involution, rotation,
    connected tensor products and conditioned composition."""
    return _closure("skew", generators, bounds)


def classic_closure(generators: Iterable[Partition] = (),
                    bounds: ClosureBounds | None = None) -> ClosureTruncation:
    """Truncated closure under involution, rotation, tensor product and composition."""
    return _closure("classic", generators, bounds)


def member_exact(p: Partition, oracle, lift: str = "S") -> Verdict:
    """Membership of p in the skew category attached to the oracle's subgroup.

    p belongs iff the word of its rotation to one row lies in N, which the
    oracle decides for up to ``oracle.rank`` blocks.
    """
    if p.blocks > oracle.rank:
        raise ValueError(f"{p!r} has {p.blocks} blocks, more than the rank {oracle.rank}")
    return lift_member(oracle, word_of_partition(p), lift)


def closure_from_json(data: dict) -> ClosureTruncation:
    if not isinstance(data, dict):
        raise ValueError("closure request must be a JSON object")
    kind = data.get("kind", "skew")
    if kind not in ("skew", "classic"):
        raise ValueError(f"unknown closure kind {kind!r}")
    gens = [Partition.from_json(g) for g in data.get("generators", [])]
    bounds = ClosureBounds(data.get("maxPoints", 10), data.get("maxBlocks"))
    return (skew_closure if kind == "skew" else classic_closure)(gens, bounds)

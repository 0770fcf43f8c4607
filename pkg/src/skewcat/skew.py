"""
Connected tensor products and conditioned compositions.

Connected operations are parameterized by a partial matching between blocks
(a :class:`BlockPairing`) instead of by raw multi-indices: the matchings are
finite and canonical, the multi-index orbits are not.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Iterator

from .partitions import (
    ArityError, Partition, canonical_labels, compose, compose_components, ker,
)

__all__ = [
    "IncompatibleError", "BlockPairing", "partial_matchings",
    "connected_tensor", "enumerate_connected_tensors",
    "compatible", "conditioned_compose", "enumerate_connected_conditioned_compositions",
    "loop_factors",
]


class IncompatibleError(ValueError):
    """Conditioned composition of partitions whose middle rows differ."""


class BlockPairing(frozenset):
    """A partial matching {(block of p, block of q), ...}.

    >>> BlockPairing([(1, 2)]).to_json()
    [[1, 2]]
    """

    def __new__(cls, pairs: Iterable = ()):
        pairs = [tuple(x) for x in pairs]
        for pr in pairs:
            if len(pr) != 2 or not all(isinstance(x, int) and x >= 1 for x in pr):
                raise ValueError(f"pairing entries must be pairs of block ids, got {pr!r}")
        left = [a for a, _ in pairs]
        right = [b for _, b in pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ValueError(f"pairing {pairs!r} is not a partial matching")
        return super().__new__(cls, pairs)

    def validate(self, p: Partition, q: Partition):
        for a, b in self:
            if a > p.blocks or b > q.blocks:
                raise ValueError(f"pair {(a, b)} references a nonexistent block")

    def to_json(self) -> list:
        return [list(x) for x in sorted(self)]

    @classmethod
    def from_json(cls, data) -> "BlockPairing":
        return cls(data)


def partial_matchings(left: Iterable, right: Iterable) -> Iterator[tuple]:
    """All partial matchings between two finite sets, as tuples of pairs."""
    left, right = list(left), list(right)
    for size in range(min(len(left), len(right)) + 1):
        for ls in combinations(left, size):
            for rs in permutations(right, size):
                yield tuple(zip(ls, rs))


def _joined_tensor(p: Partition, q: Partition, pairs) -> Partition:
    shift = p.blocks
    relabel = {b: a for a, b in pairs}
    qu = tuple(relabel.get(x, x + shift) for x in q.upper)
    ql = tuple(relabel.get(x, x + shift) for x in q.lower)
    return ker(p.upper + qu, p.lower + ql)


def connected_tensor(p: Partition, q: Partition, pairing: Iterable = ()) -> Partition:
    """p tensor q with each paired block of p joined to its block of q."""
    if not isinstance(pairing, BlockPairing):
        pairing = BlockPairing(pairing)
    pairing.validate(p, q)
    return _joined_tensor(p, q, pairing)


def enumerate_connected_tensors(p: Partition, q: Partition) -> set[Partition]:
    """The set L of all connected tensor products of p and q."""
    return {_joined_tensor(p, q, m)
            for m in partial_matchings(range(1, p.blocks + 1), range(1, q.blocks + 1))}


def compatible(p: Partition, q: Partition) -> bool:
    """Whether the lower row of p and the upper row of q have the same block structure."""
    if p.l != q.k:
        raise ArityError(f"p has {p.l} lower points but q has {q.k} upper points")
    return canonical_labels(p.lower) == canonical_labels(q.upper)


def conditioned_compose(q: Partition, p: Partition) -> tuple[Partition, int]:
    if not compatible(p, q):
        raise IncompatibleError(f"{p!r} and {q!r} are not compatible")
    return compose(q, p)


def _outer_only_blocks(q: Partition, p: Partition):
    """Blocks of qp that avoid the middle row, split into upper-only and lower-only."""
    r, loops, comp = compose_components(q, p)
    bp = p.blocks
    through = {comp[a] for a in p.lower}
    # qp was built from component roots read upper row first, so map roots to r's labels
    root_label = {}
    for root, lab in zip((comp[a] for a in p.upper), r.upper):
        root_label[root] = lab
    for root, lab in zip((comp[bp + b] for b in q.lower), r.lower):
        root_label[root] = lab
    upper_only = sorted({root_label[comp[a]] for a in p.upper if comp[a] not in through})
    lower_only = sorted({root_label[comp[bp + b]] for b in q.lower
                         if comp[bp + b] not in through})
    return r, loops, upper_only, lower_only


def enumerate_connected_conditioned_compositions(q: Partition, p: Partition) -> set[Partition]:
    """The set M: qp followed by joinings of upper-only with lower-only blocks."""
    if not compatible(p, q):
        raise IncompatibleError(f"{p!r} and {q!r} are not compatible")
    r, _, upper_only, lower_only = _outer_only_blocks(q, p)
    out = set()
    for m in partial_matchings(upper_only, lower_only):
        relabel = {b: a for a, b in m}
        out.add(ker(r.upper, tuple(relabel.get(x, x) for x in r.lower)))
    return out


def loop_factors(q: Partition, p: Partition) -> tuple[int, int]:
    """(a, b): b middle blocks, of which a reach an outer point."""
    if not compatible(p, q):
        raise IncompatibleError(f"{p!r} and {q!r} are not compatible")
    _, loops = compose(q, p)
    b = len(set(p.lower))
    return b - loops, b

"""
Two-row set partitions in canonical kernel form.

A partition p in P(k, l) is stored as the lexicographically minimal labelling
of its k upper and l lower points, i.e. block ids 1, 2, ... assigned in order
of first occurrence when reading the upper row and then the lower row.  Every
constructor recanonicalizes, so structural equality is semantic equality.

>>> p = ker((3, 3, 7), (7, 3, 3))
>>> p.upper, p.lower
((1, 1, 2), (2, 1, 1))
>>> p == PRIMARY
True
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ArityError", "Partition", "ker", "ind", "canonical_labels",
    "involution", "tensor", "compose", "rotate", "CORNERS",
    "delta", "delta_hat", "coarsenings", "set_partitions", "all_partitions",
    "one_block", "EMPTY", "IDENTITY", "CUP", "CAP", "PRIMARY",
]


class ArityError(ValueError):
    """Row lengths of two partitions (or a labelling) do not fit together."""


def canonical_labels(labels: Iterable) -> tuple[int, ...]:
    """Relabel a sequence by order of first occurrence, starting at 1."""
    seen: dict = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen) + 1
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """A partition of k upper and l lower points, stored as ind(p).

    Build instances with :func:`ker`; the constructor only accepts labels that
    are already canonical.
    """

    upper: tuple[int, ...]
    lower: tuple[int, ...]

    def __post_init__(self):
        labels = self.upper + self.lower
        if canonical_labels(labels) != labels:
            raise ValueError(
                f"labels {self.upper}/{self.lower} are not in canonical form; use ker()")

    @property
    def k(self) -> int:
        return len(self.upper)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.lower)

    @property
    def points(self) -> int:
        return len(self.upper) + len(self.lower)

    @property
    def blocks(self) -> int:
        """bl(p), the number of blocks."""
        return max(self.upper + self.lower, default=0)

    @property
    def labels(self) -> tuple[int, ...]:
        return self.upper + self.lower

    @property
    def is_one_row(self) -> bool:
        return not self.lower

    def sort_key(self):
        return (self.points, self.k, self.labels)

    def __lt__(self, other: "Partition") -> bool:
        return self.sort_key() < other.sort_key()

    def block_list(self) -> list[list[tuple[str, int]]]:
        """Blocks as lists of points ('u', i) / ('l', j), 1-based."""
        out: list[list[tuple[str, int]]] = [[] for _ in range(self.blocks)]
        for i, b in enumerate(self.upper, 1):
            out[b - 1].append(("u", i))
        for j, b in enumerate(self.lower, 1):
            out[b - 1].append(("l", j))
        return out

    def to_json(self) -> dict:
        return {"upper": list(self.upper), "lower": list(self.lower)}

    @classmethod
    def from_json(cls, data: dict) -> "Partition":
        try:
            upper, lower = data["upper"], data["lower"]
        except (KeyError, TypeError):
            raise ValueError(f"partition JSON needs 'upper' and 'lower': {data!r}")
        return ker(upper, lower)

    def __str__(self):
        up = " ".join(map(str, self.upper)) or "-"
        lo = " ".join(map(str, self.lower)) or "-"
        return f"{up} / {lo}"

    def __repr__(self):
        return f"ker({self.upper}, {self.lower})"


def _check_labels(seq: Sequence) -> tuple:
    seq = tuple(seq)
    for x in seq:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ValueError(f"labels must be positive integers, got {x!r}")
    return seq


def ker(upper: Sequence[int] = (), lower: Sequence[int] = ()) -> Partition:
    """The partition whose blocks are the fibers of the labelling."""
    upper, lower = _check_labels(upper), _check_labels(lower)
    labels = canonical_labels(upper + lower)
    return Partition(labels[:len(upper)], labels[len(upper):])


def ind(p: Partition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return p.upper, p.lower


def one_block(k: int, l: int) -> Partition:
    """e(k, l): all k + l points in a single block."""
    return ker((1,) * k, (1,) * l)


EMPTY = Partition((), ())
IDENTITY = ker((1,), (1,))
CUP = ker((), (1, 1))
CAP = ker((1, 1), ())
PRIMARY = ker((1, 1, 2), (2, 1, 1))


def involution(p: Partition) -> Partition:
    """Turn p upside down."""
    return ker(p.lower, p.upper)


def tensor(p: Partition, q: Partition) -> Partition:
    """Horizontal concatenation with disjoint blocks."""
    s = p.blocks
    return ker(p.upper + tuple(x + s for x in q.upper),
               p.lower + tuple(x + s for x in q.lower))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def compose_components(q: Partition, p: Partition):
    """Glue the lower row of p to the upper row of q.

    Returns ``(result, loops, comp)`` where ``comp`` maps each block of p
    (ids 1..bl(p)) and each block of q (ids bl(p)+1..) to a component root.
    """
    if p.l != q.k:
        raise ArityError(f"cannot compose: p has {p.l} lower points, q has {q.k} upper points")
    bp = p.blocks
    parent = list(range(bp + q.blocks + 1))
    for a, b in zip(p.lower, q.upper):
        ra, rb = _find(parent, a), _find(parent, bp + b)
        if ra != rb:
            parent[rb] = ra
    outer = set()
    for a in p.upper:
        outer.add(_find(parent, a))
    for b in q.lower:
        outer.add(_find(parent, bp + b))
    middle = {_find(parent, a) for a in p.lower}
    loops = len(middle - outer)
    up = tuple(_find(parent, a) for a in p.upper)
    lo = tuple(_find(parent, bp + b) for b in q.lower)
    comp = {x: _find(parent, x) for x in range(1, bp + q.blocks + 1)}
    return ker(up, lo), loops, comp


def compose(q: Partition, p: Partition) -> tuple[Partition, int]:
    """The composition qp (p on top of q) with loops removed, and l(q, p)."""
    r, loops, _ = compose_components(q, p)
    return r, loops


CORNERS = ("upper-left", "lower-left", "upper-right", "lower-right")


def rotate(p: Partition, corner: str) -> Partition:
    """One basic rotation.

    ``upper-left`` moves the leftmost upper leg in front of the lower row,
    ``lower-left`` moves the leftmost lower leg in front of the upper row,
    ``upper-right`` moves the rightmost upper leg behind the lower row and
    ``lower-right`` moves the rightmost lower leg behind the upper row.
    """
    u, d = p.upper, p.lower
    if corner == "upper-left":
        if not u:
            raise ValueError("upper row is empty")
        return ker(u[1:], u[:1] + d)
    if corner == "lower-left":
        if not d:
            raise ValueError("lower row is empty")
        return ker(d[:1] + u, d[1:])
    if corner == "upper-right":
        if not u:
            raise ValueError("upper row is empty")
        return ker(u[:-1], d + u[-1:])
    if corner == "lower-right":
        if not d:
            raise ValueError("lower row is empty")
        return ker(u + d[-1:], d[:-1])
    raise ValueError(f"unknown corner {corner!r}")


def rotate_to_upper(p: Partition) -> Partition:
    """Rotate every lower leg to the upper row: ker(i, j) -> ker(i j^-1)."""
    return ker(p.upper + p.lower[::-1])


def _check_arity(p: Partition, upper, lower):
    if len(upper) != p.k or len(lower) != p.l:
        raise ArityError(
            f"labelling of shape ({len(upper)}, {len(lower)}) for partition in P({p.k}, {p.l})")


def delta_hat(p: Partition, upper: Sequence[int], lower: Sequence[int]) -> int:
    """1 iff ker(upper, lower) == p."""
    _check_arity(p, upper, lower)
    return int(ker(upper, lower) == p)


def delta(p: Partition, upper: Sequence[int], lower: Sequence[int]) -> int:
    """1 iff the labelling is constant on every block of p."""
    _check_arity(p, upper, lower)
    value: dict[int, int] = {}
    for b, x in zip(p.labels, tuple(upper) + tuple(lower)):
        if value.setdefault(b, x) != x:
            return 0
    return 1


def set_partitions(m: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length m, i.e. canonical labellings."""
    if m == 0:
        yield ()
        return
    seq = [1] * m
    maxes = [1] * m
    while True:
        yield tuple(seq)
        i = m - 1
        while i > 0 and seq[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        seq[i] += 1
        maxes[i] = max(maxes[i - 1], seq[i])
        for j in range(i + 1, m):
            seq[j] = 1
            maxes[j] = maxes[i]


def all_partitions(k: int, l: int, max_blocks: int | None = None) -> Iterator[Partition]:
    """P(k, l) in lexicographic order of ind(p), optionally only <= max_blocks blocks."""
    for labels in set_partitions(k + l):
        if max_blocks is not None and labels and max(labels) > max_blocks:
            continue
        yield Partition(labels[:k], labels[k:])


def coarsenings(p: Partition) -> set[Partition]:
    """M_{<=p}: every partition obtained from p by joining blocks (p included)."""
    out = set()
    for merge in set_partitions(p.blocks):
        out.add(ker(tuple(merge[b - 1] for b in p.upper),
                    tuple(merge[b - 1] for b in p.lower)))
    return out

"""
Exact sparse linear maps (C^n)^{(x)k} -> (C^n)^{(x)l} and the two functors.

``t_hat(p, n)`` has entry 1 at (j, i) iff ker(i, j) = p; ``t(p, n)`` has
entry 1 iff (i, j) is constant on the blocks of p.  Entries are keyed by
(out, in) index tuples over 1..n and hold Fractions; zeros are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping

from .exact import EchelonBasis
from .partitions import CUP, Partition, all_partitions, coarsenings, compose
from .skew import (
    compatible, enumerate_connected_conditioned_compositions, enumerate_connected_tensors,
    loop_factors,
)

__all__ = [
    "ResourceError", "ShapeError", "LinMap", "zero_map", "identity_map", "t_hat", "t",
    "adjoint", "tensor_map", "compose_map", "linear_combination",
    "lemma32_tensor", "lemma32_compose", "stated_composition_factor", "composition_expansion",
    "linearly_independent", "span_contains", "TensorCategoryReport",
    "check_tensor_category_with_duals", "mobius_expand_hat", "expand_t_in_hat",
    "mobius_coefficient", "DENSE_LIMIT",
]

DENSE_LIMIT = 10 ** 6


class ResourceError(RuntimeError):
    """A computation would exceed a hard size guard."""


class ShapeError(ValueError):
    """Maps of different (n, k, l) were combined."""


@dataclass(frozen=True)
class LinMap:
    n: int
    k: int
    l: int  # noqa: E741
    entries: Mapping[tuple[tuple[int, ...], tuple[int, ...]], Fraction]

    def __post_init__(self):
        clean = {}
        for (out, inp), c in self.entries.items():
            if len(out) != self.l or len(inp) != self.k:
                raise ShapeError(f"index ({out}, {inp}) does not fit shape ({self.k}, {self.l})")
            if any(x < 1 or x > self.n for x in out + inp):
                raise ValueError(f"index ({out}, {inp}) leaves 1..{self.n}")
            c = _number(c)
            if c:
                clean[(tuple(out), tuple(inp))] = c
        object.__setattr__(self, "entries", clean)

    @classmethod
    def _trusted(cls, n: int, k: int, l: int, entries: dict) -> "LinMap":  # noqa: E741
        """Skip validation for entries produced by the operations below."""
        m = object.__new__(cls)
        for name, val in (("n", n), ("k", k), ("l", l)):
            object.__setattr__(m, name, val)
        object.__setattr__(m, "entries", {key: c for key, c in entries.items() if c})
        return m

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.n, self.k, self.l

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __add__(self, other: "LinMap") -> "LinMap":
        _same_shape(self, other)
        out = dict(self.entries)
        for key, c in other.entries.items():
            out[key] = out.get(key, 0) + c
        return LinMap._trusted(self.n, self.k, self.l, out)

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, c) -> "LinMap":
        c = _number(c)
        return LinMap._trusted(self.n, self.k, self.l,
                               {key: c * x for key, x in self.entries.items()})

    __rmul__ = scale

    def __call__(self, inp: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        """Image of the basis vector e_inp, as {out: coefficient}."""
        return {o: c for (o, i), c in self.entries.items() if i == tuple(inp)}

    def vector(self) -> dict:
        return dict(self.entries)

    def to_dense(self) -> list[list[Fraction]]:
        """n^l x n^k matrix, rows and columns in lexicographic index order."""
        rows, cols = self.n ** self.l, self.n ** self.k
        if rows * cols > DENSE_LIMIT:
            raise ResourceError(f"dense {rows}x{cols} matrix exceeds {DENSE_LIMIT} entries")
        m = [[Fraction(0)] * cols for _ in range(rows)]
        for (out, inp), c in self.entries.items():
            m[_flat(out, self.n)][_flat(inp, self.n)] = c
        return m

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l,
                "entries": [{"out": list(o), "in": list(i), "num": c.numerator,
                             "den": c.denominator}
                            for (o, i), c in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "LinMap":
        try:
            ent = {(tuple(e["out"]), tuple(e["in"])): Fraction(e["num"], e.get("den", 1))
                   for e in data["entries"]}
            return cls(data["n"], data["k"], data["l"], ent)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed LinMap JSON: {exc}") from exc


def _number(c):
    """Exact rational, kept as int when integral."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _flat(idx: tuple[int, ...], n: int) -> int:
    out = 0
    for x in idx:
        out = out * n + (x - 1)
    return out


def _same_shape(a: LinMap, b: LinMap):
    if a.shape != b.shape:
        raise ShapeError(f"shape {a.shape} != {b.shape}")


def zero_map(n: int, k: int, l: int) -> LinMap:  # noqa: E741
    return LinMap(n, k, l, {})


def identity_map(n: int, k: int = 1) -> LinMap:
    return LinMap(n, k, k, {(i, i): 1 for i in product(range(1, n + 1), repeat=k)})


@lru_cache(maxsize=None)
def t_hat(p: Partition, n: int) -> LinMap:
    """T-hat_p: injective labellings of the blocks; zero when bl(p) > n."""
    ent = {}
    for labels in permutations(range(1, n + 1), p.blocks):
        ent[(tuple(labels[b - 1] for b in p.lower),
             tuple(labels[b - 1] for b in p.upper))] = 1
    return LinMap._trusted(n, p.k, p.l, ent)


@lru_cache(maxsize=None)
def t(p: Partition, n: int) -> LinMap:
    """T_p: all labellings constant on blocks."""
    ent = {}
    for labels in product(range(1, n + 1), repeat=p.blocks):
        ent[(tuple(labels[b - 1] for b in p.lower),
             tuple(labels[b - 1] for b in p.upper))] = 1
    return LinMap._trusted(n, p.k, p.l, ent)


def adjoint(a: LinMap) -> LinMap:
    """Transpose; all coefficients are real."""
    return LinMap._trusted(a.n, a.l, a.k, {(i, o): c for (o, i), c in a.entries.items()})


def tensor_map(a: LinMap, b: LinMap) -> LinMap:
    if a.n != b.n:
        raise ShapeError(f"dimensions {a.n} and {b.n} differ")
    return LinMap._trusted(a.n, a.k + b.k, a.l + b.l,
                  {(o1 + o2, i1 + i2): c1 * c2
                   for (o1, i1), c1 in a.entries.items()
                   for (o2, i2), c2 in b.entries.items()})


def compose_map(s: LinMap, a: LinMap) -> LinMap:
    """s after a."""
    if a.n != s.n or a.l != s.k:
        raise ShapeError(f"cannot compose {s.shape} after {a.shape}")
    by_input: dict = {}
    for (o, i), c in s.entries.items():
        by_input.setdefault(i, []).append((o, c))
    out: dict = {}
    for (mid, i), c in a.entries.items():
        for o, d in by_input.get(mid, ()):
            out[(o, i)] = out.get((o, i), 0) + c * d
    return LinMap._trusted(a.n, a.k, s.l, out)


def linear_combination(terms: Iterable[tuple], n: int, k: int, l: int) -> LinMap:  # noqa: E741
    """sum of c * map over (c, map) pairs."""
    out: dict = {}
    for c, m in terms:
        if m.shape != (n, k, l):
            raise ShapeError(f"term of shape {m.shape} in a sum of shape {(n, k, l)}")
        for key, x in m.entries.items():
            out[key] = out.get(key, 0) + c * x
    return LinMap._trusted(n, k, l, out)


def lemma32_tensor(p: Partition, q: Partition, n: int) -> LinMap:
    """Residual of T-hat_p (x) T-hat_q = sum over connected tensor products."""
    lhs = tensor_map(t_hat(p, n), t_hat(q, n))
    rhs = linear_combination(((1, t_hat(r, n)) for r in enumerate_connected_tensors(p, q)),
                             n, p.k + q.k, p.l + q.l)
    return lhs - rhs


def stated_composition_factor(q: Partition, p: Partition, n: int) -> int:
    """prod_{c=a}^{b-1} (n - c) with (a, b) the loop factors; 1 if a = b."""
    a, b = loop_factors(q, p)
    out = 1
    for c in range(a, b):
        out *= n - c
    return out


def composition_expansion(q: Partition, p: Partition, n: int) -> dict[Partition, int]:
    """Exact coefficients with T-hat_q T-hat_p = sum_r c_r T-hat_r.

    For a target labelling with kernel r, the middle labels on loops must be
    pairwise distinct and avoid all bl(r) labels already in use, which gives
    c_r = (n - bl(r)) (n - bl(r) - 1) ... over the l(q, p) loops.
    """
    if not compatible(p, q):
        return {}
    _, loops = compose(q, p)
    out = {}
    for r in enumerate_connected_conditioned_compositions(q, p):
        c = 1
        for x in range(r.blocks, r.blocks + loops):
            c *= n - x
        if c:
            out[r] = c
    return out


def lemma32_compose(p: Partition, q: Partition, n: int, exact: bool = False) -> LinMap:
    """Residual of T-hat_q o T-hat_p against the composition identity.

    With ``exact=False`` the right-hand side is the uniform factor
    prod_{c=a}^{b-1}(n - c) times the sum over M, and zero when p, q are
    incompatible or the middle row has more than n blocks.  With
    ``exact=True`` it is :func:`composition_expansion`.
    """
    lhs = compose_map(t_hat(q, n), t_hat(p, n))
    if exact:
        rhs = linear_combination(((c, t_hat(r, n))
                                  for r, c in composition_expansion(q, p, n).items()),
                                 n, p.k, q.l)
        return lhs - rhs
    b = len(set(p.lower))
    if not compatible(p, q) or b > n:
        return lhs
    factor = stated_composition_factor(q, p, n)
    rhs = linear_combination(((factor, t_hat(r, n))
                              for r in enumerate_connected_conditioned_compositions(q, p)),
                             n, p.k, q.l)
    return lhs - rhs


def _check_shapes(maps):
    shapes = {m.shape for m in maps}
    if len(shapes) > 1:
        raise ShapeError(f"mixed shapes {sorted(shapes)}")


def linearly_independent(maps: list[LinMap]) -> tuple[bool, int]:
    _check_shapes(maps)
    basis = EchelonBasis()
    for m in maps:
        basis.add(m.entries)
    return basis.rank == len(maps), basis.rank


def span_contains(basis: list[LinMap], target: LinMap) -> tuple[bool, list[Fraction] | None]:
    """Exact solve; coefficients are returned in basis order."""
    _check_shapes(list(basis) + [target])
    eb = EchelonBasis()
    for m in basis:
        eb.add(m.entries)
    sol = eb.solve(target.entries)
    if sol is None:
        return False, None
    return True, [sol.get(i, Fraction(0)) for i in range(len(basis))]


@dataclass
class TensorCategoryReport:
    n: int
    arity_bound: int
    checked: int = 0
    violations: list = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"n": self.n, "arityBound": self.arity_bound, "checked": self.checked,
                "passed": self.passed,
                "violations": [{"axiom": ax, "what": what, "residual": res.to_json()}
                               for ax, what, res in self.violations]}


def check_tensor_category_with_duals(partitions: Iterable[Partition], n: int,
                                     arity_bound: int, first_only: bool = False
                                     ) -> TensorCategoryReport:
    """Check the span of {T-hat_p} for closure, per arity pair (k, l) with k + l <= bound.

    Tensor products, compositions and adjoints of basis maps must stay in
    the span of matching arity; id must lie in the (1, 1) span and
    zeta = T-hat of the cup in the (0, 2) span.
    """
    report = TensorCategoryReport(n, arity_bound)
    by_arity: dict[tuple[int, int], list[Partition]] = {}
    for p in sorted(set(partitions)):
        if p.points <= arity_bound and p.blocks <= n:
            by_arity.setdefault((p.k, p.l), []).append(p)
    spans: dict[tuple[int, int], EchelonBasis] = {}

    def span(k, l):  # noqa: E741
        if (k, l) not in spans:
            eb = EchelonBasis()
            for p in by_arity.get((k, l), ()):
                eb.add(t_hat(p, n).entries)
            spans[k, l] = eb
        return spans[k, l]

    def check(axiom, what, m: LinMap):
        report.checked += 1
        res = span(m.k, m.l).residual(m.entries)
        if res:
            report.violations.append((axiom, what, LinMap(n, m.k, m.l, res)))
            return first_only
        return False

    if arity_bound >= 2 and check("(iv) identity", "id", identity_map(n)):
        return report
    if arity_bound >= 2 and check("(v) duality", "zeta", t_hat(CUP, n)):
        return report
    basis = [(p, t_hat(p, n)) for ps in by_arity.values() for p in ps]
    for p, m in basis:
        if check("(iii) involution", f"adjoint of {p!r}", adjoint(m)):
            return report
    for p, m in basis:
        for q, m2 in basis:
            if p.points + q.points <= arity_bound:
                if check("(i) tensor", f"{p!r} (x) {q!r}", tensor_map(m, m2)):
                    return report
            if p.l == q.k and p.k + q.l <= arity_bound:
                if check("(ii) composition", f"{q!r} o {p!r}", compose_map(m2, m)):
                    return report
    return report


@lru_cache(maxsize=None)
def mobius_expand_hat(p: Partition) -> dict[Partition, int]:
    """Coefficients c_q with T-hat_p = sum_q c_q T_q over q in M_{<=p}.

    Recursion: T-hat_p = T_p - sum_{q < p} T-hat_q.  The coefficients do not
    depend on n.
    """
    out = {p: 1}
    for q in coarsenings(p):
        if q == p:
            continue
        for r, c in mobius_expand_hat(q).items():
            out[r] = out.get(r, 0) - c
    return {q: c for q, c in out.items() if c}


def expand_t_in_hat(p: Partition) -> dict[Partition, int]:
    """T_p = sum of T-hat_q over all coarsenings q."""
    return {q: 1 for q in coarsenings(p)}


def mobius_coefficient(p: Partition, q: Partition) -> int:
    """Closed-form Moebius value mu(p, q) in the lattice of block merges.

    Independent of the recursion; used as a cross-check.
    """
    merged: dict[int, set[int]] = {}
    for bp, bq in zip(p.labels, q.labels):
        merged.setdefault(bq, set()).add(bp)
    # q must be a coarsening: each block of p lands in one block of q
    owner = {}
    for bp, bq in zip(p.labels, q.labels):
        if owner.setdefault(bp, bq) != bq:
            return 0
    out = 1
    for blocks in merged.values():
        m = len(blocks)
        out *= (-1) ** (m - 1) * factorial(m - 1)
    return out


def all_t_hat(n: int, k: int, l: int) -> list[tuple[Partition, LinMap]]:  # noqa: E741
    return [(p, t_hat(p, n)) for p in all_partitions(k, l, max_blocks=n)]


"""Sparse Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = Mapping[Hashable, Fraction]


class EchelonBasis:
    """Incrementally row-reduced span of sparse rational vectors.

    Every stored row has a pivot key; the pivot appears in no other stored
    row.  ``combo`` records each row as a combination of the inserted
    vectors, which is what :meth:`solve` returns.
    """

    def __init__(self):
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict[int, Fraction]] = {}
        self.count = 0

    def _reduce(self, vec: Vector) -> tuple[dict, dict[int, Fraction]]:
        v = {key: Fraction(x) for key, x in vec.items() if x}
        combo: dict[int, Fraction] = {}
        # rows never contain a foreign pivot, so one pass over the pivots of v suffices
        for key in [k for k in v if k in self.rows]:
            c = v[key]
            for k2, x in self.rows[key].items():
                y = v.get(k2, 0) - c * x
                if y:
                    v[k2] = y
                else:
                    v.pop(k2, None)
            for i, x in self.combos[key].items():
                y = combo.get(i, 0) - c * x
                if y:
                    combo[i] = y
                else:
                    combo.pop(i, None)
        return v, combo

    def add(self, vec: Vector) -> bool:
        """Insert a vector; return True if it raised the rank."""
        idx = self.count
        self.count += 1
        v, combo = self._reduce(vec)
        if not v:
            return False
        combo[idx] = combo.get(idx, 0) + 1
        pivot = min(v)
        c = v[pivot]
        v = {k: x / c for k, x in v.items()}
        combo = {i: x / c for i, x in combo.items()}
        # keep the basis fully reduced in the new pivot
        for key, row in self.rows.items():
            d = row.get(pivot)
            if d:
                for k2, x in v.items():
                    y = row.get(k2, 0) - d * x
                    if y:
                        row[k2] = y
                    else:
                        row.pop(k2, None)
                cb = self.combos[key]
                for i, x in combo.items():
                    y = cb.get(i, 0) - d * x
                    if y:
                        cb[i] = y
                    else:
                        cb.pop(i, None)
        self.rows[pivot] = v
        self.combos[pivot] = combo
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, vec: Vector) -> dict:
        return self._reduce(vec)[0]

    def contains(self, vec: Vector) -> bool:
        return not self.residual(vec)

    def solve(self, vec: Vector) -> dict[int, Fraction] | None:
        """Coefficients c_i with sum c_i v_i = vec over inserted vectors, or None."""
        v, combo = self._reduce(vec)
        if v:
            return None
        return {i: -x for i, x in combo.items() if x}


def rank(vectors: Iterable[Vector]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank

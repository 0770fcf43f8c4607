"""
The symmetric-group example: N_S is the kernel of a_i -> (i, n+1) into S_{n+1}.

Everything here is data: the oracle, its normal generators, the named
partitions h3 and r with their coarsenings, and two helper quotients used
by the harness (a sign quotient separating N2, and a corrupted oracle for
negative controls).
"""

from __future__ import annotations

from .partitions import PRIMARY, ker, one_block
from .words import QuotientOracle, Word, reduce

H3 = ker((1, 2, 1, 2, 1, 2))
R = ker((1, 2, 1, 3, 1, 2, 1, 3))
R1 = ker((1, 2, 1, 2, 1, 2, 1, 2))
R2 = ker((1, 1, 1, 3, 1, 1, 1, 3))
R3 = ker((1, 2, 1, 1, 1, 2, 1, 1))
E33 = one_block(3, 3)
E60 = one_block(6, 0)
E80 = one_block(8, 0)

GENERATING_PARTITIONS = (PRIMARY, H3, R)

# T-hat of each named partition in the T basis
EXPANSIONS = {
    "primary": (PRIMARY, {PRIMARY: 1, E33: -1}),
    "h3": (H3, {H3: 1, E60: -1}),
    "r": (R, {R: 1, R1: -1, R2: -1, R3: -1, E80: 2}),
}


def _transposition(i: int, j: int, degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    img[i], img[j] = j, i
    return tuple(img)


def star_oracle(n: int) -> QuotientOracle:
    """N_S in Z2^{*n}: a_i acts as the transposition (i, n+1) on n+1 points."""
    if n < 1:
        raise ValueError("n must be positive")
    return QuotientOracle(tuple(_transposition(i, n, n + 1) for i in range(n)))


def corrupted_star_oracle(n: int, dropped: int = 1) -> QuotientOracle:
    """N_S with the image of a_dropped replaced by the identity (negative control)."""
    images = list(star_oracle(n).images)
    images[dropped - 1] = tuple(range(n + 1))
    return QuotientOracle(tuple(images))


def sign_oracle(n: int) -> QuotientOracle:
    """Kernel of a_i -> (0 1): the words of even length."""
    return QuotientOracle(tuple((1, 0) for _ in range(n)))


def generator_indices(n: int) -> list[tuple[int, ...]]:
    """Raw multi-indices of N_gen, before reduction.

    a_i^2, (a_i a_j^2)^2 and (a_i a_j)^3 for i != j, and
    (a_b a_c a_b a_d)^2 for pairwise distinct b, c, d.
    """
    rng = range(1, n + 1)
    out = [(i, i) for i in rng]
    out += [(i, j, j, i, j, j) for i in rng for j in rng if i != j]
    out += [(i, j) * 3 for i in rng for j in rng if i != j]
    out += [(b, c, b, d) * 2 for b in rng for c in rng for d in rng
            if len({b, c, d}) == 3]
    return out


def generator_words(n: int) -> list[Word]:
    """N_gen as reduced words (the relations a_i^2 and (a_i a_j^2)^2 reduce to the identity)."""
    return [reduce(idx) for idx in generator_indices(n)]


def nontrivial_generators(n: int) -> list[Word]:
    return sorted({w for w in generator_words(n) if not w.is_identity})

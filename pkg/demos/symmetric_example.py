"""Walk through the symmetric-group example at n = 4.

N_S is the kernel of Z2^{*4} -> S_5 sending a_i to the transposition (i, 5).
Run with ``python demos/symmetric_example.py``.
"""

from skewcat import (
    ClosureBounds, Verdict, is_strongly_invariant, member_exact, reduce, skew_closure,
    word_of_partition,
)
from skewcat.linmap import mobius_expand_hat
from skewcat.symmetric import (
    EXPANSIONS, GENERATING_PARTITIONS, H3, R, R1, nontrivial_generators, star_oracle,
)
from skewcat.words import apply_map

ns = star_oracle(4)

print("generating partitions and their words")
for p in GENERATING_PARTITIONS:
    print(f"  {p}   word {list(word_of_partition(p).letters)}")

print("\nexact membership")
for name, p in (("h3", H3), ("r", R), ("(1 2)^4", R1)):
    print(f"  {name:8} {member_exact(p, ns).value}")

# the skew closure stays inside N_S, and agrees with it inside the window
c = skew_closure(GENERATING_PARTITIONS, ClosureBounds(8))
print(f"\nskew closure up to 8 points: {len(c)} partitions, saturated={c.saturated}")
print("  all members:", all(member_exact(p, ns) is Verdict.IN for p in c))

# not easy: merging the letter 3 into 2 leaves N_S
res = is_strongly_invariant(ns, nontrivial_generators(4))
r = reduce((1, 2, 1, 3) * 2)
img = apply_map(r, {3: 2})
print(f"\nstrongly invariant: {res.verdict.value}")
print(f"  {list(r.letters)} under 3->2 gives {list(img.letters)}: {ns.member(img).value}")

print("\nT-hat in terms of T")
for name, (p, _) in EXPANSIONS.items():
    terms = " ".join(f"{c:+d} T[{q}]" for q, c in sorted(mobius_expand_hat(p).items()))
    print(f"  {name}: {terms}")

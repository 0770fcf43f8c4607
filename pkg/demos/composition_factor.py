"""The uniform composition factor versus the per-partition loop count.

Composing T-hat maps, the loops get labels that must avoid every label of
the resulting partition r, so the coefficient of T-hat_r depends on bl(r).
Run with ``python demos/composition_factor.py``.
"""

from skewcat.linmap import (
    compose_map, composition_expansion, lemma32_compose, stated_composition_factor, t_hat,
)
from skewcat.partitions import ker
from skewcat.verify import suite_functor

p = ker((), (1,))     # a single lower point
q = ker((1,), (2,))   # a through-line cut in two

for n in (1, 2, 3):
    lhs = compose_map(t_hat(q, n), t_hat(p, n))
    print(f"n={n}: T-hat_q T-hat_p has entries {sorted(lhs.entries.items())}")
    print(f"      uniform factor {stated_composition_factor(q, p, n)}, "
          f"exact expansion {composition_expansion(q, p, n)}")
    print(f"      uniform residual zero: {lemma32_compose(p, q, n).is_zero}, "
          f"exact residual zero: {lemma32_compose(p, q, n, exact=True).is_zero}")

print()
for n in (1, 2, 3, 4):
    print(suite_functor(n, 4).to_text())

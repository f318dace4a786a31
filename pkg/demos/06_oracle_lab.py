"""Desk-scale numerics behind the security analysis.

Everything here is dense linear algebra on a few dozen amplitudes: the
compression basis change and its involution, the exact weight of the
low-zero-count branch of a compressed all-zeros state, random states of
the high-plus-count subspace and the single-register measurement floor,
sequential-measurement martingales, and the full compressed query
unitary on a two-point domain.
"""

import numpy as np

from fischlin.bounds import eval_eps_gamma
from fischlin.lab import (
    TensorState,
    build_symmetric_state,
    chernoff_mc,
    comp_matrix,
    comp_zero_tail_exact,
    measure_bound_check,
    plus_state,
    product_state,
    query_unitary_smoke,
    sequential_measure_martingale,
)

rng = np.random.default_rng(0)

# the compression operator is a unitary involution swapping the uniform
# superposition with the "unqueried" marker
for l in (1, 2, 3):
    c = comp_matrix(l)
    defect = np.abs(c @ c - np.eye(c.shape[0])).max()
    print(f"l={l}: Comp^2 = I up to {defect:.1e}")

# exact branch weight versus the linear-rate bound: fine at gamma = 1/2,
# falsified at gamma = 4 * 2^-l once k is large (see the README note)
for l, k, gamma in ((3, 64, 0.5), (5, 256, 0.125), (5, 1024, 0.125)):
    exact = comp_zero_tail_exact(l, k, gamma)
    bound = eval_eps_gamma(gamma, l, k)
    mark = "<=" if exact <= bound else "> (!)"
    print(f"l={l} k={k} gamma={gamma}: exact {exact:.3e} {mark} bound {bound:.3e}")

# random state with at least n of m registers in the uniform
# superposition: the first register shows the all-zeros outcome with
# probability at least 2^-l n/m - 2^(1-l/2) sqrt(n(m-n))/m
st = build_symmetric_state(m=4, n=3, l=1, rng=rng)
rep = measure_bound_check(st)
print(f"\nm=4, n=3, l=1 random subspace state: plus weight "
      f"{rep.plus_weight:.4f} >= {rep.plus_floor:.4f}, zero weight "
      f"{rep.zero_weight:.4f} >= {rep.zero_floor:.4f}")

# sequential measurement martingale: count all-zero outcomes against the
# realized cumulative conditional mean
st = TensorState(8, 1, product_state(8, plus_state(1)))
mart = sequential_measure_martingale(st, epsilon=2.0, trials=50_000, rng=rng)
print(f"\niid product state: tail {mart.empirical:.4f} <= "
      f"bound {mart.bound:.4f} (mean count {mart.mean_zero_count:.2f}, "
      f"cumulative mean {mart.mean_cum_mean:.2f})")

wst = build_symmetric_state(m=4, n=2, l=1, rng=rng)
mart = sequential_measure_martingale(wst, epsilon=2.0, trials=50_000, rng=rng)
print(f"correlated subspace state: tail {mart.empirical:.4f} <= "
      f"bound {mart.bound:.4f}")

# binomial tails against the multiplicative bounds
ch = chernoff_mc(n=4096, p=2.0 ** -4, delta=0.5, trials=20_000, rng=rng)
print(f"\nbinomial (n=4096, p=1/16): upper {ch.upper_tail_emp:.2e} <= "
      f"{ch.upper_bound:.2e}, lower {ch.lower_tail_emp:.2e} <= "
      f"{ch.lower_bound:.2e}")

# the compressed query operator on a two-point domain, exactly
smoke = query_unitary_smoke(l=1, domain_size=2)
print(f"\nquery unitary: defect {smoke.unitary_defect:.1e}, "
      f"fresh output uniform up to {smoke.y_uniform_dev:.1e}, "
      f"database never exceeds the query count (excess mass "
      f"{smoke.db_size_excess_mass:.1e}), repeat queries consistent "
      f"(dev {smoke.same_x_dev:.1e})")

"""Evaluate the extraction-error chain and plan parameters.

For a prover with a fixed commitment vector, the chain combines a
zero-count tail, a martingale tail over the untouched oracle cells, and
a compression tail into one failure probability eps; eps/(1 - eps) and
the 4 (q+k)^2 lifting then cover arbitrary q-query provers. The closed
form 3 exp(-k/(128 c 2^l log2 k)) + 7 exp(-k/(8 * 2^l)) dominates the
chain on the whole validity region.
"""

from fischlin.bounds import eval_chain, plan_parameters, report_csv_rows, sweep

# flagship point: 2^30 repetitions, 14 hash bits, rate constant 1
r = eval_chain(k=2 ** 30, l=14, c_rate=1.0, q=2 ** 20)
p = r.params
print(f"N = {p.N} challenges, mu = {p.mu:.4e} expected zero cells")
print(f"delta = {p.delta:.6f}, delta' = {p.delta_prime:.6f}, "
      f"mu_lower/mu = {p.mu_lower / p.mu:.6f}")
print(f"tail terms (natural logs): zero-count {r.log_eps_dprime:.4g}, "
      f"martingale {r.log_eps_prime:.4g}, compression {r.log_eps_gamma_1mgk:.4g}")
print(f"chain eps       = {r.eps:.4e}   (log {r.log_eps:.2f})")
print(f"closed form     = {r.closed_form:.4e}   (log {r.log_closed_form:.2f})")
print(f"eps_det         = {r.eps_det:.4e}")
print(f"eps_ex(q=2^20)  = {r.eps_ex:.4e}  "
      f"(4 (q+k)^2 * eps_det = {r.eps_ex_raw:.4e})")
assert r.eps <= r.closed_form

# instantiation recipe: given a base protocol with 509 challenges and a
# target repetition count, pick l, the challenge-space size, and the
# number of parallel base copies
plan = plan_parameters(k_target=2 ** 30, c_rate=1.0, base_space=509)
print(f"\nplan for k = 2^30 over a 509-challenge base protocol: "
      f"l = {plan['l']}, N = {plan['N']}, r = {plan['r']} copies")

# sweep the validity region and show the dominance margin
reports = sweep([2 ** e for e in range(20, 35, 2)], [14, 16, 18],
                [1.0, 2.0, 4.0])
print(f"\nvalid grid points: {len(reports)}")
worst = max(reports, key=lambda g: g.log_eps - g.log_closed_form)
wp = worst.params
print(f"smallest dominance margin at k=2^{wp.k.bit_length() - 1}, "
      f"l={wp.l}, c={wp.c_rate:g}: log eps {worst.log_eps:.3f} <= "
      f"log closed form {worst.log_closed_form:.3f}")

header, rows = report_csv_rows(reports[:3])
print("\ncsv columns:", ", ".join(header[:10]), "...")
for row in rows:
    print("  ", row[:6])

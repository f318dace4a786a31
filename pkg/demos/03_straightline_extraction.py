"""Extract the witness from a prover's recorded oracle queries.

Grinding forces the prover to query valid transcripts for consecutive
challenges until one hashes to zero. Whenever some repetition needed a
second attempt, the transcript already holds two valid transcripts for
the same commitment with different challenges, and special soundness
hands over the witness. No rewinding and no extra interaction: the
extractor just reads the query log.
"""

import random

from fischlin import (
    FischlinParams,
    GroupParams,
    Schnorr,
    Status,
    attempts_per_repetition,
    derive_seed,
    keygen,
    prove,
    run_online_experiment,
)

group = GroupParams(p=1019, q=509, g=4)
params = FischlinParams(k=4, l=2, N=32, T=32)
protocol = Schnorr(group, 32)

rng = random.Random(3)
instance, witness = keygen(group, rng)
print(f"planted witness: {witness.w}")


def honest_prover(oracle):
    return instance, prove(params, protocol, instance, witness, oracle, rng)


result = run_online_experiment(params, protocol, honest_prover, derive_seed(3))
attempts = attempts_per_repetition(result.proof, result.transcript)
print(f"verdict: {result.verdict}, attempts per repetition: {attempts}")
print(f"extraction: {result.outcome.status.value}", end="")
if result.outcome.status is Status.EXTRACTED:
    print(f", w = {result.outcome.witness.w}")
else:
    print()

# extraction rate over many runs: it succeeds exactly when some
# repetition ground through at least two challenges
runs, extracted = 300, 0
for seed in range(runs):
    r = random.Random(seed)
    inst, wit = keygen(group, r)
    res = run_online_experiment(
        params, protocol,
        lambda oracle, i=inst, w=wit, r=r: (i, prove(params, protocol, i, w, oracle, r)),
        derive_seed(seed))
    if res.outcome and res.outcome.status is Status.EXTRACTED:
        assert res.outcome.witness == wit
        extracted += 1
print(f"extraction rate: {extracted}/{runs} "
      f"(expect about {1 - (2 ** -params.l) ** params.k:.4f})")

# the hard case: a prover replaying a cached proof makes no grinding
# queries, so the transcript holds only the verifier's k points
cached = None


def replaying_prover(oracle):
    return instance, cached


warm = random.Random(4)
from fischlin import RecordingOracle

warm_oracle = RecordingOracle(params, protocol, derive_seed(4))
cached = prove(params, protocol, instance, witness, warm_oracle, warm)
res = run_online_experiment(params, protocol, replaying_prover, derive_seed(4))
print(f"replayed proof: verdict {res.verdict}, transcript holds "
      f"{len(res.transcript)} entries, extraction {res.outcome.status.value}")

"""Produce and check a proof-of-work NIZK.

The prover commits k times, then for each repetition i walks challenges
c = 0, 1, 2, ... until the l-bit hash of (commitments, i, c, response)
is all zeros. Expected cost is about k * 2^l hash queries; the verifier
needs exactly k. The proof is a flat byte string with a documented
layout.
"""

import random

from fischlin import (
    FischlinParams,
    GroupParams,
    RecordingOracle,
    completeness_error,
    derive_seed,
    deserialize_proof,
    keygen,
    proof_to_json,
    protocol_for_challenge_space,
    prove,
    serialize_proof,
    verify,
)

group = GroupParams(p=1019, q=509, g=4)
params = FischlinParams.explicit(k=8, l=6, c_rate=4)
print(f"parameters: k={params.k} repetitions, l={params.l} hash bits, "
      f"N={params.N} challenges per repetition")

err = completeness_error(params)
print(f"honest abort probability <= {err.upper_bound:.3e}")

protocol = protocol_for_challenge_space(group, params.N)
rng = random.Random(7)
instance, witness = keygen(group, rng)

oracle = RecordingOracle(params, protocol, derive_seed(7))
proof = prove(params, protocol, instance, witness, oracle, rng)
print(f"grinding took {len(oracle.transcript)} oracle queries "
      f"(expect about k * 2^l = {params.k * 2 ** params.l})")
print(f"accepted challenges per repetition: {proof.c_vec}")

fresh = RecordingOracle(params, protocol, derive_seed(7))
print("verify ->", verify(params, protocol, instance, proof, fresh),
      f"with {len(fresh.transcript)} verifier queries")

blob = serialize_proof(params, protocol, proof)
print(f"wire size: {len(blob)} bytes, magic {blob[:4]!r}")
assert deserialize_proof(params, protocol, blob) == proof

doc = proof_to_json(params, protocol, proof)
print("json dump keys:", sorted(doc))

# flipping one byte of the serialized proof breaks it
tampered = bytearray(blob)
tampered[-1] ^= 1
bad = deserialize_proof(params, protocol, bytes(tampered))
print("tampered proof ->",
      verify(params, protocol, instance, bad,
             RecordingOracle(params, protocol, derive_seed(7))))

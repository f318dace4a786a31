"""Walk through the three-move sigma protocol on a toy group.

The relation is discrete log in the order-509 subgroup of Z_1019^*:
the prover knows w with x = g^w and convinces a verifier without
revealing w. Two accepting transcripts with the same commitment and
different challenges give w away, which is exactly what the
straight-line extractor will exploit later.
"""

import random

from fischlin import GroupParams, Schnorr, keygen

group = GroupParams(p=1019, q=509, g=4)
protocol = Schnorr(group)
rng = random.Random(1)

instance, witness = keygen(group, rng)
print(f"statement x = {instance.x}, witness w = {witness.w}")

# honest run: commit, challenge, respond, verify
a, state = protocol.commit(instance, rng)
c = rng.randrange(protocol.challenge_space)
z = protocol.respond(state, witness, c)
print(f"transcript (a={a}, c={c}, z={z}) ->",
      "accept" if protocol.verify(instance, a, c, z) else "reject")

# a wrong response is rejected
print("tampered response ->",
      "accept" if protocol.verify(instance, a, c, (z + 1) % group.q) else "reject")

# special soundness: two transcripts sharing the commitment leak w
c2 = (c + 1) % protocol.challenge_space
z2 = protocol.respond(state, witness, c2)
recovered = protocol.extract(instance, a, c, z, c2, z2)
print(f"extracted witness from two transcripts: {recovered.w} "
      f"(planted {witness.w})")

# honest-verifier zero knowledge: given the challenge up front, a
# simulator without the witness produces identically distributed
# transcripts
sim_a, sim_z = protocol.simulate(instance, c, rng)
print(f"simulated transcript (a={sim_a}, c={c}, z={sim_z}) ->",
      "accept" if protocol.verify(instance, sim_a, c, sim_z) else "reject")

# challenge-space surgery: restrict to exactly N = 768 by running two
# coordinates in parallel (509^2 >= 768), challenges split into digits
from fischlin import protocol_for_challenge_space

wide = protocol_for_challenge_space(group, 768)
a, state = wide.commit(instance, rng)
z = wide.respond(state, witness, 700)
print(f"2-copy protocol at N=768, challenge 700 ->",
      "accept" if wide.verify(instance, a, 700, z) else "reject")

import random

import pytest

from fischlin.extractor import attempts_per_repetition
from fischlin.oracle import RecordingOracle, derive_seed
from fischlin.sigma import Schnorr, keygen, protocol_for_challenge_space
from fischlin.transform import (
    Abort,
    FischlinParams,
    Proof,
    completeness_error,
    deserialize_proof,
    peek_params,
    proof_from_json,
    proof_to_json,
    prove,
    serialize_proof,
    verify,
)


class TestParams:
    def test_legacy_derivation(self):
        p = FischlinParams.from_security(48, 6)
        assert (p.k, p.l, p.t_legacy) == (8, 6, 36)
        assert p.N == p.T == 37

    def test_legacy_requires_divisibility(self):
        with pytest.raises(ValueError):
            FischlinParams.from_security(50, 6)

    def test_explicit_rate(self):
        p = FischlinParams.explicit(8, 6, 4)
        assert p.N == p.T == 768  # 4 * 64 * log2(8)
        assert p.t_legacy == 36   # ceil(log2(48)) * 6

    def test_explicit_rate_large(self):
        p = FischlinParams.explicit(2 ** 30, 14, 1)
        assert p.N == 2 ** 14 * 30 == 491520

    def test_validation(self):
        with pytest.raises(ValueError):
            FischlinParams(k=0, l=2, N=4, T=4)
        with pytest.raises(ValueError):
            FischlinParams(k=1, l=65, N=4, T=4)
        with pytest.raises(ValueError):
            FischlinParams(k=1, l=2, N=1, T=1)
        with pytest.raises(ValueError):
            FischlinParams(k=1, l=2, N=4, T=5)
        with pytest.raises(ValueError):
            FischlinParams(k=1, l=2, N=4, T=0)


def make_run(group, params, seed):
    proto = protocol_for_challenge_space(group, params.N)
    rng = random.Random(seed)
    inst, wit = keygen(group, rng)
    oracle = RecordingOracle(params, proto, derive_seed(seed))
    return proto, rng, inst, wit, oracle


class TestProveVerify:
    def test_toy_run_verifies(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 1)
        proof = prove(params, proto, inst, wit, oracle, rng)
        assert verify(params, proto, inst, proof, oracle)

    def test_completeness_many_runs(self, toy_group):
        params = FischlinParams(k=2, l=1, N=64, T=64)
        # per-repetition abort probability 2^-64: expect zero aborts
        aborts = 0
        for seed in range(1000):
            proto, rng, inst, wit, oracle = make_run(toy_group, params, seed)
            try:
                proof = prove(params, proto, inst, wit, oracle, rng)
            except Abort:
                aborts += 1
                continue
            assert verify(params, proto, inst, proof, oracle)
        assert aborts == 0

    def test_single_attempt_abort_rate(self, toy_group):
        # with T = 1 each repetition succeeds with probability 2^-l
        params = FischlinParams(k=1, l=1, N=2, T=1)
        runs, hits = 2000, 0
        for seed in range(runs):
            proto, rng, inst, wit, oracle = make_run(toy_group, params, seed)
            try:
                prove(params, proto, inst, wit, oracle, rng)
                hits += 1
            except Abort:
                pass
        p = 0.5
        sigma = (runs * p * (1 - p)) ** 0.5
        assert abs(hits - runs * p) <= 3 * sigma

    def test_tampered_response_rejected(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 3)
        proof = prove(params, proto, inst, wit, oracle, rng)
        bad = Proof(proof.a_vec, proof.c_vec,
                    ((proof.z_vec[0] + 1) % 509,) + proof.z_vec[1:])
        assert not verify(params, proto, inst, bad, oracle)

    def test_swapped_repetitions_rejected(self, toy_group):
        # the repetition index is bound into the hash input, so swapping
        # the accepted (c, z) pairs between repetitions must not verify
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 4)
        proof = prove(params, proto, inst, wit, oracle, rng)
        swapped = Proof(proof.a_vec, proof.c_vec[::-1], proof.z_vec[::-1])
        assert not verify(params, proto, inst, swapped, oracle)

    def test_malformed_proofs_reject_not_raise(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 5)
        proof = prove(params, proto, inst, wit, oracle, rng)
        assert not verify(params, proto, inst,
                          Proof(proof.a_vec[:1], proof.c_vec[:1], proof.z_vec[:1]),
                          oracle)
        assert not verify(params, proto, inst,
                          Proof(proof.a_vec, (16, proof.c_vec[1]), proof.z_vec),
                          oracle)
        assert not verify(params, proto, inst,
                          Proof(proof.a_vec, ("x", proof.c_vec[1]), proof.z_vec),
                          oracle)

    def test_verifier_makes_exactly_k_queries_when_accepting(self, toy_group):
        params = FischlinParams(k=3, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 6)
        proof = prove(params, proto, inst, wit, oracle, rng)
        fresh = RecordingOracle(params, proto, derive_seed(6))
        assert verify(params, proto, inst, proof, fresh)
        assert len(fresh.transcript) == params.k

    def test_query_discipline(self, toy_group):
        # for each repetition the log holds challenges 0..c_i in order,
        # each with its valid response: the material extraction feeds on
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 7)
        proof = prove(params, proto, inst, wit, oracle, rng)
        for i in range(1, params.k + 1):
            seen = [e.inp for e in oracle.transcript.entries if e.inp.i == i]
            assert [e.c for e in seen] == list(range(proof.c_vec[i - 1] + 1))
            for e in seen:
                assert e.a_vec == proof.a_vec
                assert proto.verify(inst, e.a_vec[i - 1], e.c, e.z)

    def test_attempt_counts_match_challenges(self, toy_group):
        params = FischlinParams(k=4, l=2, N=32, T=32)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 8)
        proof = prove(params, proto, inst, wit, oracle, rng)
        counts = attempts_per_repetition(proof, oracle.transcript)
        assert counts == [c + 1 for c in proof.c_vec]

    def test_grinding_cost_geometric(self, toy_group):
        # expected total queries about k * 2^l; Monte-Carlo within 5%
        params = FischlinParams(k=4, l=4, N=256, T=256)
        total, runs = 0, 400
        for seed in range(runs):
            proto, rng, inst, wit, oracle = make_run(toy_group, params, seed)
            prove(params, proto, inst, wit, oracle, rng)
            total += len(oracle.transcript)
        mean = total / runs
        expect = params.k * 2 ** params.l
        assert abs(mean - expect) / expect < 0.05


class TestCompletenessError:
    def test_standard_point(self):
        err = completeness_error(FischlinParams.explicit(8, 6, 4))
        exact = 8 * (63 / 64) ** 768
        assert err.upper_bound == pytest.approx(exact, rel=1e-12)
        assert 4e-5 < err.upper_bound < 8 * 2.718282 ** -12
        assert err.per_repetition == pytest.approx((63 / 64) ** 768)

    def test_zero_attempts_aborts_surely(self):
        err = completeness_error(FischlinParams(k=3, l=2, N=4, T=4), attempts=0)
        assert err.per_repetition == 1.0
        assert err.exact == 1.0

    def test_monte_carlo_matches_exact(self, toy_group):
        params = FischlinParams(k=4, l=2, N=4, T=4)
        exact = completeness_error(params).exact
        runs, aborts = 2000, 0
        for seed in range(runs):
            proto, rng, inst, wit, oracle = make_run(toy_group, params, seed)
            try:
                prove(params, proto, inst, wit, oracle, rng)
            except Abort:
                aborts += 1
        sigma = (runs * exact * (1 - exact)) ** 0.5
        assert abs(aborts - runs * exact) <= 3 * sigma


class TestSerialization:
    def test_roundtrip_random_proofs(self, toy_group):
        params = FischlinParams(k=3, l=4, N=20, T=20)
        proto = Schnorr(toy_group, 20)
        rng = random.Random(31)
        for _ in range(1000):
            proof = Proof(
                tuple(pow(4, rng.randrange(509), 1019) for _ in range(3)),
                tuple(rng.randrange(20) for _ in range(3)),
                tuple(rng.randrange(509) for _ in range(3)))
            blob = serialize_proof(params, proto, proof)
            assert deserialize_proof(params, proto, blob) == proof

    def test_proof_size_formula(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 9)
        proof = prove(params, proto, inst, wit, oracle, rng)
        blob = serialize_proof(params, proto, proof)
        expect = 16  # magic + three u32 header words
        for a, z in zip(proof.a_vec, proof.z_vec):
            expect += 2 + len(proto.encode_commitment(a))
            expect += 4
            expect += 2 + len(proto.encode_response(z))
        assert len(blob) == expect

    def test_truncation_detected(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 10)
        blob = serialize_proof(params, proto,
                               prove(params, proto, inst, wit, oracle, rng))
        for cut in (3, 10, len(blob) - 1):
            with pytest.raises(ValueError):
                deserialize_proof(params, proto, blob[:cut])

    def test_bad_magic_detected(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto = protocol_for_challenge_space(toy_group, 16)
        with pytest.raises(ValueError):
            deserialize_proof(params, proto, b"NOPE" + bytes(12))

    def test_trailing_bytes_detected(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 15)
        blob = serialize_proof(params, proto,
                               prove(params, proto, inst, wit, oracle, rng))
        with pytest.raises(ValueError):
            deserialize_proof(params, proto, blob + b"\x00")

    def test_out_of_range_challenge_detected(self, toy_group):
        params = FischlinParams(k=1, l=2, N=4, T=4)
        proto = Schnorr(toy_group, 4)
        proof = Proof((64,), (3,), (17,))
        blob = bytearray(serialize_proof(params, proto, proof))
        # challenge u32 sits after header + 2-byte length + 1-byte element
        blob[16 + 2 + 1 + 3] = 200
        with pytest.raises(ValueError):
            deserialize_proof(params, proto, bytes(blob))

    def test_peek_params(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 12)
        blob = serialize_proof(params, proto,
                               prove(params, proto, inst, wit, oracle, rng))
        assert peek_params(blob) == (2, 2, 16)

    def test_json_roundtrip(self, toy_group):
        params = FischlinParams(k=2, l=2, N=16, T=16)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 13)
        proof = prove(params, proto, inst, wit, oracle, rng)
        assert proof_from_json(params, proto, proof_to_json(params, proto, proof)) == proof

    def test_repeated_protocol_roundtrip(self, toy_group):
        # N = 768 needs two Schnorr copies on the toy group
        params = FischlinParams.explicit(8, 6, 4)
        proto, rng, inst, wit, oracle = make_run(toy_group, params, 14)
        assert proto.copies == 2
        proof = prove(params, proto, inst, wit, oracle, rng)
        blob = serialize_proof(params, proto, proof)
        assert deserialize_proof(params, proto, blob) == proof
        assert verify(params, proto, inst, proof, oracle)

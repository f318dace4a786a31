"""Proof-of-work compiler turning a sigma protocol into a NIZK.

The prover commits k times, then for each repetition i grinds challenges
c = 0, 1, 2, ... until the l-bit oracle output on (a_vec, i, c, z) is all
zeros, giving a proof (a_vec, c_vec, z_vec). The verifier recomputes the k
hashes and the k sigma verifications. Every grinding attempt goes through
the recording oracle, which is what makes transcript-based straight-line
extraction possible.

Parameters: k repetitions, l hash bits, challenge space size N, and an
attempt cap T. T defaults to N (enumerate the whole restricted challenge
space); the legacy cap ceil(log2 lambda) * l is kept for reference as
``t_legacy``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

from .oracle import OracleInput

__all__ = [
    "Abort",
    "FischlinParams",
    "Proof",
    "CompletenessError",
    "peek_params",
    "prove",
    "verify",
    "serialize_proof",
    "deserialize_proof",
    "proof_to_json",
    "proof_from_json",
    "completeness_error",
]

_MAGIC = b"FISP"


class Abort(RuntimeError):
    """Honest prover or simulator ran out of admissible challenges."""


@dataclass(frozen=True)
class FischlinParams:
    """k repetitions, l hash bits, N challenges per repetition, attempt
    cap T; ``c_rate`` and ``lam`` record how the set was derived."""

    k: int
    l: int
    N: int
    T: int
    c_rate: float | None = None
    t_legacy: int | None = None
    lam: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if not 1 <= self.l <= 64:
            raise ValueError("l must be in [1, 64]")
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if not 1 <= self.T <= self.N:
            raise ValueError("T must be in [1, N]")

    @classmethod
    def from_security(cls, lam: int, l: int) -> "FischlinParams":
        """Legacy derivation: k = lam/l (must divide) and
        T = N = ceil(log2 lam) * l + 1 challenge values {0..t}."""
        if lam <= 0 or l <= 0:
            raise ValueError("arguments must be positive")
        if lam % l != 0:
            raise ValueError("l must divide lambda")
        t = math.ceil(math.log2(lam)) * l
        return cls(k=lam // l, l=l, N=t + 1, T=t + 1, t_legacy=t, lam=lam)

    @classmethod
    def explicit(cls, k: int, l: int, c_rate: float) -> "FischlinParams":
        """Rate-based derivation N = round(c * 2^l * log2 k), T = N."""
        if k < 2 or l < 1 or c_rate <= 0:
            raise ValueError("arguments must be positive (k >= 2)")
        n = round(c_rate * 2.0 ** l * math.log2(k))
        t_legacy = math.ceil(math.log2(k * l)) * l
        return cls(k=k, l=l, N=n, T=n, c_rate=c_rate, t_legacy=t_legacy, lam=k * l)


@dataclass(frozen=True)
class Proof:
    """Length-k vectors of commitments, challenges, responses."""

    a_vec: tuple
    c_vec: tuple
    z_vec: tuple

    def __post_init__(self):
        if not len(self.a_vec) == len(self.c_vec) == len(self.z_vec):
            raise ValueError("proof vectors must have equal length")


def prove(params: FischlinParams, protocol, instance, witness, oracle, rng) -> Proof:
    """Grind each repetition's challenge in increasing order from 0 until
    the oracle output is zero; raise Abort if some repetition exhausts its
    T attempts. Commitments are never resampled after an abort."""
    k = params.k
    pairs = [protocol.commit(instance, rng) for _ in range(k)]
    a_vec = tuple(p[0] for p in pairs)
    c_vec, z_vec = [], []
    for i in range(1, k + 1):
        state = pairs[i - 1][1]
        for c in range(params.T):
            z = protocol.respond(state, witness, c)
            if oracle.query(OracleInput(a_vec, i, c, z)) == 0:
                c_vec.append(c)
                z_vec.append(z)
                break
        else:
            raise Abort(f"repetition {i}: no zero hash within {params.T} attempts")
    return Proof(a_vec, tuple(c_vec), tuple(z_vec))


def verify(params: FischlinParams, protocol, instance, proof: Proof, oracle) -> bool:
    """Accept iff every repetition sigma-verifies and hashes to zero.

    Malformed proofs are rejected, never raised on. Exactly k oracle
    queries are made on the accepting path.
    """
    if len(proof.a_vec) != params.k or len(proof.c_vec) != params.k \
            or len(proof.z_vec) != params.k:
        return False
    for i in range(1, params.k + 1):
        a, c, z = proof.a_vec[i - 1], proof.c_vec[i - 1], proof.z_vec[i - 1]
        if not isinstance(c, int) or not 0 <= c < params.N:
            return False
        if not protocol.verify(instance, a, c, z):
            return False
        if oracle.query(OracleInput(proof.a_vec, i, c, z)) != 0:
            return False
    return True


def serialize_proof(params: FischlinParams, protocol, proof: Proof) -> bytes:
    """Magic, u32 k, u32 l, u32 N, then per repetition the length-prefixed
    commitment, u32 challenge, length-prefixed response."""
    out = bytearray(_MAGIC)
    out += struct.pack(">III", params.k, params.l, params.N)
    for a, c, z in zip(proof.a_vec, proof.c_vec, proof.z_vec):
        enc = protocol.encode_commitment(a)
        out += len(enc).to_bytes(2, "big") + enc
        out += struct.pack(">I", c)
        enc = protocol.encode_response(z)
        out += len(enc).to_bytes(2, "big") + enc
    return bytes(out)


def peek_params(data: bytes) -> tuple[int, int, int]:
    """Read (k, l, N) from a serialized proof header."""
    if data[:4] != _MAGIC:
        raise ValueError("bad magic")
    if len(data) < 16:
        raise ValueError("truncated header")
    return struct.unpack_from(">III", data, 4)


def deserialize_proof(params: FischlinParams, protocol, data: bytes) -> Proof:
    if data[:4] != _MAGIC:
        raise ValueError("bad magic")
    if len(data) < 16:
        raise ValueError("truncated header")
    k, l, n = struct.unpack_from(">III", data, 4)
    if (k, l, n) != (params.k, params.l, params.N):
        raise ValueError("parameter mismatch")
    off = 16
    a_vec, c_vec, z_vec = [], [], []

    def take(count):
        nonlocal off
        if off + count > len(data):
            raise ValueError("truncated proof")
        piece = data[off:off + count]
        off += count
        return piece

    for _ in range(k):
        a_vec.append(protocol.decode_commitment(take(int.from_bytes(take(2), "big"))))
        c = struct.unpack(">I", take(4))[0]
        if c >= n:
            raise ValueError("challenge out of range")
        c_vec.append(c)
        z_vec.append(protocol.decode_response(take(int.from_bytes(take(2), "big"))))
    if off != len(data):
        raise ValueError("trailing bytes")
    return Proof(tuple(a_vec), tuple(c_vec), tuple(z_vec))


def proof_to_json(params: FischlinParams, protocol, proof: Proof) -> dict:
    return {
        "k": params.k, "l": params.l, "N": params.N,
        "a": [protocol.encode_commitment(a).hex() for a in proof.a_vec],
        "c": list(proof.c_vec),
        "z": [protocol.encode_response(z).hex() for z in proof.z_vec],
    }


def proof_from_json(params: FischlinParams, protocol, obj: dict) -> Proof:
    if (obj["k"], obj["l"], obj["N"]) != (params.k, params.l, params.N):
        raise ValueError("parameter mismatch")
    return Proof(
        tuple(protocol.decode_commitment(bytes.fromhex(h)) for h in obj["a"]),
        tuple(int(c) for c in obj["c"]),
        tuple(protocol.decode_response(bytes.fromhex(h)) for h in obj["z"]))


@dataclass(frozen=True)
class CompletenessError:
    """Abort probability of the honest prover."""

    per_repetition: float
    exact: float
    upper_bound: float


def completeness_error(params: FischlinParams, attempts: int | None = None) -> CompletenessError:
    """Per repetition the prover misses with probability (1 - 2^-l)^T;
    the union bound k * (1 - 2^-l)^T caps the overall abort probability.
    ``attempts`` overrides params.T (attempts = 0 means certain abort)."""
    t = params.T if attempts is None else attempts
    if t < 0:
        raise ValueError("attempt count must be nonnegative")
    per_rep = (1.0 - 2.0 ** -params.l) ** t
    exact = 1.0 - (1.0 - per_rep) ** params.k
    return CompletenessError(per_rep, exact, params.k * per_rep)

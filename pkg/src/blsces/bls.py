"""BLS signatures over BN254 with try-and-increment hashing to G1.

``hash_to_g1`` appends a single counter byte to the message and takes
sha256 until the leading digest bits name a curve x-coordinate whose
rhs = x^3 + b is a nonzero quadratic residue.  The counter is exposed to
callers because the credential layers re-run the final, deterministic
iteration and prove it inside a constraint system.

Digest layout for a profile whose prime has L bits: the first L digest
bits (big-endian) are the candidate x, the remaining 256 - L bits are
spare, and the highest spare bit picks the square root, so the hashed
point is (x, (-1)^sign * sqrt(x^3 + b)).  Candidates with x >= p or a
zero/non-residue rhs advance the counter.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from blsces.errors import (
    DuplicateMessageError,
    EncodingError,
    HashToCurveFailure,
    ValidationError,
)
from blsces.groups import (
    BN254,
    CurveProfile,
    G1Point,
    G2Point,
    g1_compress,
    g1_decompress,
)
from blsces.groups.backend import DEFAULT_BACKEND, PairingBackend

COUNTER_BOUND = 256  # counter fits one byte; miss probability ~ 2^-256 per message

SHA256_BITS = 256


@dataclass(frozen=True)
class KeyPair:
    """Signing key (scalar mod r) and its public key sk * g2."""

    sk: int
    pk: G2Point


@dataclass(frozen=True)
class Signature:
    """Compressed-G1 signature bytes (32 bytes)."""

    data: bytes

    def __post_init__(self):
        if len(self.data) != 32:
            raise EncodingError("signature must be 32 bytes")

    def hex(self) -> str:
        return self.data.hex()


@dataclass(frozen=True)
class HashToG1Result:
    point: G1Point
    counter: int
    spare_bits: int
    sign_bit: int
    x: int


def keygen(rng=None, backend: PairingBackend = DEFAULT_BACKEND) -> KeyPair:
    """Sample a keypair.  ``rng`` needs ``randrange``; defaults to the OS CSPRNG.

    A seeded random.Random gives reproducible keys for test vectors.
    """
    if rng is None:
        rng = secrets.SystemRandom()
    r = backend.params.r
    sk = rng.randrange(1, r)
    return KeyPair(sk=sk, pk=backend.g2_mul(backend.g2_generator(), sk))


def hash_candidate(msg: bytes, counter: int, profile: CurveProfile = BN254) -> tuple[int, int, int]:
    """One try-and-increment step: digest of msg || counter split into
    (candidate x, sign bit, spare bits)."""
    if not 0 <= counter < COUNTER_BOUND:
        raise ValidationError("counter out of range")
    digest = hashlib.sha256(msg + bytes([counter])).digest()
    d = int.from_bytes(digest, "big")
    shift = SHA256_BITS - profile.x_bits
    x = d >> shift
    spare = d & ((1 << shift) - 1)
    sign = (spare >> (shift - 1)) & 1
    return x, sign, spare


def hash_to_g1_at(msg: bytes, counter: int, profile: CurveProfile = BN254) -> HashToG1Result | None:
    """Evaluate the single deterministic iteration at a given counter.

    Returns None when that counter does not land on the curve.  This is
    the building block verifiers use when the counter travels with the
    signature instead of being re-derived.
    """
    x, sign, spare = hash_candidate(msg, counter, profile)
    if not profile.is_signing_x(x):
        return None
    y0 = profile.sqrt(profile.rhs(x))
    y = (profile.p - y0) % profile.p if sign else y0
    return HashToG1Result(point=G1Point(x, y), counter=counter, spare_bits=spare, sign_bit=sign, x=x)


@lru_cache(maxsize=4096)
def _hash_to_g1_cached(msg: bytes, profile_name: str) -> HashToG1Result:
    from blsces.groups.params import PROFILES

    profile = PROFILES[profile_name]
    for counter in range(COUNTER_BOUND):
        result = hash_to_g1_at(msg, counter, profile)
        if result is not None:
            return result
    raise HashToCurveFailure(f"no curve point within {COUNTER_BOUND} counters")


def hash_to_g1(msg: bytes, profile: CurveProfile = BN254) -> HashToG1Result:
    """Deterministic try-and-increment hash onto the curve."""
    return _hash_to_g1_cached(bytes(msg), profile.name)


def sign(sk: int, msg: bytes, backend: PairingBackend = DEFAULT_BACKEND) -> Signature:
    """Deterministic BLS signature: compress(sk * H(msg))."""
    h = hash_to_g1(msg, backend.profile)
    return sign_hashed(sk, h, backend)


def sign_hashed(sk: int, h: HashToG1Result, backend: PairingBackend = DEFAULT_BACKEND) -> Signature:
    if not 0 < sk < backend.params.r:
        raise ValidationError("signing key out of range")
    return Signature(g1_compress(backend.g1_mul(h.point, sk)))


def decode_signature(sig: Signature, backend: PairingBackend = DEFAULT_BACKEND) -> G1Point:
    """Decode signature bytes to a point; raises EncodingError when malformed."""
    return g1_decompress(sig.data)


def verify(pk: G2Point, msg: bytes, sig: Signature, backend: PairingBackend = DEFAULT_BACKEND) -> bool:
    """Pairing check e(H(msg), pk) == e(sig, g2).

    Malformed signature bytes raise EncodingError so callers can tell a
    parse failure apart from a cryptographic reject.  The public key is
    validated (curve equation and subgroup) on its first use; validation
    results ride along with the cached pairing precomputation.
    """
    point = decode_signature(sig, backend)
    h = hash_to_g1(msg, backend.profile)
    return backend.pairing_product_is_one(
        [(h.point, pk), (-point, backend.g2_generator())]
    )


def aggregate(sigs: Sequence[Signature], backend: PairingBackend = DEFAULT_BACKEND) -> Signature:
    """Sum the signature points; the empty aggregate is the identity encoding."""
    total = None
    for idx, sig in enumerate(sigs):
        try:
            point = decode_signature(sig, backend)
        except EncodingError as exc:
            raise EncodingError(f"signature {idx} malformed: {exc}") from exc
        total = point if total is None else backend.g1_add(total, point)
    if total is None:
        from blsces.groups.points import G1_IDENTITY

        total = G1_IDENTITY
    return Signature(g1_compress(total))


def verify_aggregate_points(
    pks: Sequence[G2Point],
    points: Sequence[G1Point],
    agg: Signature,
    backend: PairingBackend = DEFAULT_BACKEND,
) -> bool:
    """Pairing-product check over already-hashed message points.

    Malformed aggregate bytes raise EncodingError, mirroring ``verify``,
    so callers can report parse failures distinctly from rejects.
    """
    if len(pks) != len(points) or not pks:
        raise ValidationError("need equally many public keys and points, at least one")
    agg_point = decode_signature(agg, backend)
    pairs = [(pt, pk) for pt, pk in zip(points, pks)]
    pairs.append((-agg_point, backend.g2_generator()))
    return backend.pairing_product_is_one(pairs)


def verify_aggregate(
    pks: Sequence[G2Point],
    msgs: Sequence[bytes],
    agg: Signature,
    backend: PairingBackend = DEFAULT_BACKEND,
) -> bool:
    """Verify prod e(H(m_i), pk_i) == e(agg, g2).

    Messages must be pairwise distinct: the credential layer always
    embeds the claim index, so a repeat can only be hostile input.
    """
    if len(pks) != len(msgs):
        raise ValidationError("public key and message counts differ")
    if not msgs:
        raise ValidationError("empty aggregate verification")
    if len(set(msgs)) != len(msgs):
        raise DuplicateMessageError("aggregate verification with repeated message")
    points = [hash_to_g1(m, backend.profile).point for m in msgs]
    return verify_aggregate_points(pks, points, agg, backend)

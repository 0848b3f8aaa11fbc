"""Witness generation for the hash-to-curve statement.

For each disclosed claim the prover re-runs try-and-increment outside
the constraint system, keeps the successful counter, and records the
quotient/remainder of every multiplication in the fixed square-and-
multiply evaluation of rhs^((p-1)/2).  The constraint system then only
has to check the final, deterministic iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

from blsces import bls
from blsces.credential import CEAS, Claim, encode_claim_message
from blsces.errors import ValidationError
from blsces.groups.params import BN254, CurveProfile
from blsces.zk.bigint_gadget import residuosity_chain_schedule


@dataclass(frozen=True)
class HashToCurveWitness:
    """Everything needed to re-derive one hashed point inside the proof."""

    index: int
    x: int
    sign_bit: int
    counter: int
    residuosity_chain: tuple[tuple[int, int], ...]


def compute_residuosity_chain(x: int, profile: CurveProfile) -> tuple[tuple[int, int], ...]:
    """Quotient/remainder pairs for x^2, x^3 + b, then each step of the
    square-and-multiply walk of exponent (p-1)/2.  Plain integer
    arithmetic; the constraint gadget follows the identical schedule."""
    p, b = profile.p, profile.b
    chain = []

    def step(a, m, k=0):
        q, r = divmod(a * m + k, p)
        chain.append((q, r))
        return r

    sq = step(x, x)
    rhs = step(sq, x, b)
    acc = rhs
    bits = residuosity_chain_schedule(p)
    for bit in bits[1:]:
        acc = step(acc, acc)
        if bit:
            acc = step(acc, rhs)
    return tuple(chain)


def chain_final_remainder(chain: tuple[tuple[int, int], ...]) -> int:
    return chain[-1][1]


def hash_to_curve_witness(
    i: int,
    claim: Claim,
    n: int,
    ceas: CEAS,
    profile: CurveProfile = BN254,
) -> tuple[tuple[int, int], HashToCurveWitness]:
    """Run the full try-and-increment search for one claim message and
    package the result: public part (x, sign_bit) plus the witness.

    Raises HashToCurveFailure on counter exhaustion and ValidationError
    for hidden claims, mirroring the signing path exactly.
    """
    if claim.hidden:
        raise ValidationError("cannot build a hash witness for a hidden claim")
    msg = encode_claim_message(ceas, n, i, claim)
    h = bls.hash_to_g1(msg, profile)
    chain = compute_residuosity_chain(h.x, profile)
    if chain_final_remainder(chain) != 1:
        raise AssertionError("residuosity chain disagrees with the accepted candidate")
    witness = HashToCurveWitness(
        index=i,
        x=h.x,
        sign_bit=h.sign_bit,
        counter=h.counter,
        residuosity_chain=chain,
    )
    return (h.x, h.sign_bit), witness

"""Proving and verifying extractions without revealing claims.

The holder proves, inside the constraint system, that hash-to-curve was
evaluated correctly over the (secret) encoded claim messages and that
the application predicate holds; the verifier decompresses the
resulting points from the public (x, sign) pairs and performs the
aggregate pairing check itself, outside the proof.  Verification is the
conjunction of three independently reported checks:

  b1  the disclosed index set is allowed by the policy,
  b2  the pairing equation binds the extracted signature to the
      decompressed points under the issuer key,
  b3  the backend accepts the proof for the public inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from blsces import bls
from blsces.credential import CEAS, Credential, ExtractionSet, ceas_contains
from blsces.errors import EncodingError, ValidationError
from blsces.groups import G1Point, G2Point, decompress_x
from blsces.groups.backend import DEFAULT_BACKEND, PairingBackend
from blsces.groups.params import BN254
from blsces.zk.backend import BackendParams, Proof, ProverBackend, TRANSPARENT_BACKEND
from blsces.zk.statement import PublicInputs, build_statement
from blsces.zk.witness import hash_to_curve_witness


@dataclass(frozen=True)
class ZkSetup:
    keypair: bls.KeyPair
    backend_params: BackendParams


@dataclass(frozen=True)
class ZkVerifyResult:
    accept: bool
    policy_ok: bool
    pairing_ok: bool
    proof_ok: bool
    code: str = "ok"

    def __bool__(self):
        return self.accept


def zk_setup(
    security_param: int = 128,
    rng=None,
    prover_backend: ProverBackend = TRANSPARENT_BACKEND,
    pairing_backend: PairingBackend = DEFAULT_BACKEND,
) -> ZkSetup:
    """Issuer keypair plus prover-backend parameters (empty for the
    transparent backend)."""
    return ZkSetup(
        keypair=bls.keygen(rng, pairing_backend),
        backend_params=prover_backend.setup(security_param),
    )


def prove_extraction(
    backend_params: BackendParams,
    cred: Credential,
    ceas: CEAS,
    x: ExtractionSet,
    predicate=None,
    prover_backend: ProverBackend = TRANSPARENT_BACKEND,
    profile=BN254,
) -> tuple[Proof, PublicInputs]:
    """Generate hash witnesses for every disclosed claim and prove the
    statement.  Requires x to be allowed by the policy and the claims at
    x to be visible."""
    if not ceas_contains(ceas, x):
        raise ValidationError("extraction set is not allowed by the policy")
    idxs = tuple(x.sorted())
    witnesses = {}
    publics_x = []
    publics_sign = []
    for i in idxs:
        (xi, sign), wit = hash_to_curve_witness(i, cred[i], len(cred), ceas, profile)
        witnesses[i] = wit
        publics_x.append(xi)
        publics_sign.append(sign)
    inputs = PublicInputs(
        x_coords=tuple(publics_x),
        sign_bits=tuple(publics_sign),
        ceas_bytes=ceas.to_bytes(),
        extraction=idxs,
    )
    statement = build_statement(cred, ceas, witnesses, idxs, predicate=predicate, profile_name=profile.name)
    proof = prover_backend.prove(backend_params, statement)
    return proof, inputs


def zk_verify(
    backend_params: BackendParams,
    pk: G2Point,
    ext_sig: bls.Signature,
    proof: Proof,
    inputs: PublicInputs,
    prover_backend: ProverBackend = TRANSPARENT_BACKEND,
    pairing_backend: PairingBackend = DEFAULT_BACKEND,
) -> ZkVerifyResult:
    """Check policy membership, the pairing equation over decompressed
    points, and the backend proof; accept only if all three hold."""
    # b1: the disclosed index set is allowed by the policy the verifier
    # was handed (the proof separately binds the policy the messages
    # were encoded under).
    try:
        ceas = CEAS.from_bytes(inputs.ceas_bytes)
        x = ExtractionSet(frozenset(inputs.extraction))
        b1 = ceas_contains(ceas, x)
    except (EncodingError, ValidationError):
        b1 = False

    # b2: decompress each point from its public (x, sign) pair and run
    # the aggregate pairing equation.
    b2 = False
    b2_code = "pairing_failed"
    points = None
    try:
        points = [
            G1Point(*decompress_x(xi, sign, pairing_backend.profile))
            for xi, sign in zip(inputs.x_coords, inputs.sign_bits)
        ]
    except EncodingError:
        b2_code = "decompress_failed"
    if points is not None:
        try:
            b2 = bls.verify_aggregate_points([pk] * len(points), points, ext_sig, pairing_backend)
        except EncodingError:
            b2_code = "malformed_signature"
        except ValidationError:
            b2_code = "malformed_inputs"

    # b3: backend proof verification.
    verdict = prover_backend.verify(backend_params, proof, inputs)
    b3 = bool(verdict)

    accept = b1 and b2 and b3
    if accept:
        code = "ok"
    elif not b1:
        code = "policy_rejected"
    elif not b2:
        code = b2_code
    else:
        code = f"proof_rejected:{verdict.code}"
    return ZkVerifyResult(accept=accept, policy_ok=b1, pairing_ok=b2, proof_ok=b3, code=code)

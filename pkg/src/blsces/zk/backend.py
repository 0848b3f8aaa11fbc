"""Prover backends behind a setup/prove/verify interface.

A succinct proof system is explicitly out of scope; what ships is a
transparent backend whose "proof" is the full witness assignment plus
the statement layout.  Its verify rebuilds the constraint system from
the layout, pins the public variables to the supplied public inputs,
and re-evaluates every constraint.  It offers no hiding against the
verifier and no succinctness; it exists so the statement logic is
testable end to end, and so a real backend can slot in later.
"""

from __future__ import annotations

import json
import zlib
from abc import ABC, abstractmethod
from dataclasses import dataclass

from blsces.errors import EncodingError, StatementError
from blsces.zk.statement import PublicInputs, StatementLayout, SynthesisResult, public_assignment, synthesize

_VALUE_BYTES = 32


@dataclass(frozen=True)
class Proof:
    """Backend-defined opaque proof bytes."""

    data: bytes


@dataclass(frozen=True)
class BackendParams:
    """Setup output.  The transparent backend needs none."""

    backend: str = "transparent"


@dataclass(frozen=True)
class BackendVerdict:
    ok: bool
    code: str = "ok"

    def __bool__(self):
        return self.ok


class ProverBackend(ABC):
    name: str

    @abstractmethod
    def setup(self, security_param: int = 128) -> BackendParams: ...

    @abstractmethod
    def prove(self, params: BackendParams, statement: SynthesisResult) -> Proof: ...

    @abstractmethod
    def verify(self, params: BackendParams, proof: Proof, inputs: PublicInputs) -> BackendVerdict: ...


class TransparentBackend(ProverBackend):
    name = "transparent"

    def setup(self, security_param: int = 128) -> BackendParams:
        return BackendParams(backend=self.name)

    def prove(self, params: BackendParams, statement: SynthesisResult) -> Proof:
        if statement.values is None:
            raise StatementError("cannot prove a shape-only synthesis")
        header = json.dumps(
            {"backend": self.name, "layout": statement.layout.to_json()},
            separators=(",", ":"),
            sort_keys=True,
        ).encode()
        packed = b"".join(v.to_bytes(_VALUE_BYTES, "big") for v in statement.values)
        return Proof(header + b"\n" + zlib.compress(packed, 6))

    def parse(self, proof: Proof) -> tuple[StatementLayout, list[int]]:
        try:
            header, blob = proof.data.split(b"\n", 1)
            meta = json.loads(header)
            if meta.get("backend") != self.name:
                raise EncodingError("proof built for a different backend")
            layout = StatementLayout.from_json(meta["layout"])
            packed = zlib.decompress(blob)
        except EncodingError:
            raise
        except Exception as exc:
            raise EncodingError(f"malformed proof: {exc}") from exc
        if len(packed) % _VALUE_BYTES:
            raise EncodingError("witness blob length not a multiple of the value size")
        values = [
            int.from_bytes(packed[k: k + _VALUE_BYTES], "big")
            for k in range(0, len(packed), _VALUE_BYTES)
        ]
        return layout, values

    def verify(self, params: BackendParams, proof: Proof, inputs: PublicInputs) -> BackendVerdict:
        try:
            layout, values = self.parse(proof)
        except EncodingError:
            return BackendVerdict(False, "malformed_proof")
        try:
            expected_public = public_assignment(layout, inputs)
            shape = synthesize(layout, witness=None)
        except (StatementError, EncodingError, Exception) as exc:
            if not isinstance(exc, (StatementError, EncodingError)):
                raise
            return BackendVerdict(False, "statement_rebuild_failed")
        cs = shape.cs
        if len(values) != cs.num_vars or values[0] != 1:
            return BackendVerdict(False, "witness_shape_mismatch")
        if values[1: 1 + cs.num_public] != expected_public:
            return BackendVerdict(False, "public_inputs_mismatch")
        if not cs.satisfied(values):
            return BackendVerdict(False, "constraints_unsatisfied")
        return BackendVerdict(True)


TRANSPARENT_BACKEND = TransparentBackend()

BACKENDS = {TransparentBackend.name: TRANSPARENT_BACKEND}


def get_backend(name: str) -> ProverBackend:
    try:
        return BACKENDS[name]
    except KeyError:
        raise StatementError(f"unknown prover backend {name!r}") from None

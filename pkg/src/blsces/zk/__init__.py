"""Constraint-system proof path for hash-to-curve and claim predicates."""

from blsces.zk.backend import (
    BACKENDS,
    BackendParams,
    BackendVerdict,
    Proof,
    ProverBackend,
    TRANSPARENT_BACKEND,
    TransparentBackend,
    get_backend,
)
from blsces.zk.predicates import CustomPredicate, EqualsPredicate, RangePredicate, predicate_from_descriptor
from blsces.zk.protocol import ZkSetup, ZkVerifyResult, prove_extraction, zk_setup, zk_verify
from blsces.zk.r1cs import Builder, ConstraintSystem
from blsces.zk.statement import PublicInputs, StatementLayout, SynthesisResult, build_statement, synthesize
from blsces.zk.witness import HashToCurveWitness, compute_residuosity_chain, hash_to_curve_witness

__all__ = [
    "BACKENDS",
    "BackendParams",
    "BackendVerdict",
    "Builder",
    "ConstraintSystem",
    "CustomPredicate",
    "EqualsPredicate",
    "HashToCurveWitness",
    "Proof",
    "ProverBackend",
    "PublicInputs",
    "RangePredicate",
    "StatementLayout",
    "SynthesisResult",
    "TRANSPARENT_BACKEND",
    "TransparentBackend",
    "ZkSetup",
    "ZkVerifyResult",
    "build_statement",
    "compute_residuosity_chain",
    "get_backend",
    "hash_to_curve_witness",
    "predicate_from_descriptor",
    "prove_extraction",
    "synthesize",
    "zk_setup",
    "zk_verify",
]

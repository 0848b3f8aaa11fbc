"""Pairing-group backend: BN254 field/curve/pairing plus the toy field."""

from blsces.groups.backend import Bn254Backend, DEFAULT_BACKEND, PairingBackend
from blsces.groups.encoding import (
    G1_IDENTITY_BYTES,
    decompress_x,
    fp_from_bytes,
    fp_to_bytes,
    g1_compress,
    g1_decompress,
    g2_from_bytes,
    g2_to_bytes,
)
from blsces.groups.pairing import GtElement, GT_IDENTITY, pairing, pairing_product, pairing_product_is_one
from blsces.groups.params import (
    BN254,
    GROUP_PARAMS,
    TOY,
    CurveProfile,
    GroupParams,
    legendre,
    sqrt_mod,
)
from blsces.groups.points import (
    G1Point,
    G2Point,
    G1_GEN,
    G1_IDENTITY,
    G2_GEN,
    G2_IDENTITY,
    check_g1,
    check_g2,
    g1_add,
    g1_mul,
    g2_add,
    g2_mul,
)

__all__ = [
    "BN254",
    "Bn254Backend",
    "CurveProfile",
    "DEFAULT_BACKEND",
    "G1Point",
    "G2Point",
    "G1_GEN",
    "G1_IDENTITY",
    "G1_IDENTITY_BYTES",
    "G2_GEN",
    "G2_IDENTITY",
    "GROUP_PARAMS",
    "GroupParams",
    "GtElement",
    "GT_IDENTITY",
    "PairingBackend",
    "TOY",
    "check_g1",
    "check_g2",
    "decompress_x",
    "fp_from_bytes",
    "fp_to_bytes",
    "g1_add",
    "g1_compress",
    "g1_decompress",
    "g1_mul",
    "g2_add",
    "g2_from_bytes",
    "g2_mul",
    "g2_to_bytes",
    "legendre",
    "pairing",
    "pairing_product",
    "pairing_product_is_one",
    "sqrt_mod",
]

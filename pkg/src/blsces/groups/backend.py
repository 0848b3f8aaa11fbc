"""Backend boundary for the pairing group.

Signature and credential code talks to a ``PairingBackend`` rather than
to curve modules directly, so a vetted external pairing library can be
dropped in later without touching the protocol layers.  One concrete
backend ships: the in-repo BN254 implementation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable

from blsces.groups import encoding, pairing, points
from blsces.groups.params import BN254, GROUP_PARAMS, CurveProfile, GroupParams
from blsces.groups.points import G1Point, G2Point


class PairingBackend(ABC):
    """Group operations every protocol layer consumes."""

    @property
    @abstractmethod
    def params(self) -> GroupParams: ...

    @property
    @abstractmethod
    def profile(self) -> CurveProfile: ...

    @abstractmethod
    def g1_generator(self) -> G1Point: ...

    @abstractmethod
    def g2_generator(self) -> G2Point: ...

    @abstractmethod
    def g1_add(self, a: G1Point, b: G1Point) -> G1Point: ...

    @abstractmethod
    def g1_mul(self, pt: G1Point, k: int) -> G1Point: ...

    @abstractmethod
    def g2_mul(self, pt: G2Point, k: int) -> G2Point: ...

    @abstractmethod
    def validate_g1(self, pt: G1Point) -> G1Point: ...

    @abstractmethod
    def validate_g2(self, pt: G2Point) -> G2Point: ...

    @abstractmethod
    def pairing(self, pt: G1Point, q: G2Point) -> pairing.GtElement: ...

    @abstractmethod
    def pairing_product_is_one(
        self, pairs: Iterable[tuple[G1Point, G2Point]]
    ) -> bool: ...


class Bn254Backend(PairingBackend):
    """The shipped backend: pure-Python BN254 with ate-pairing precomputation."""

    @property
    def params(self) -> GroupParams:
        return GROUP_PARAMS

    @property
    def profile(self) -> CurveProfile:
        return BN254

    def g1_generator(self) -> G1Point:
        return points.G1_GEN

    def g2_generator(self) -> G2Point:
        return points.G2_GEN

    def g1_add(self, a: G1Point, b: G1Point) -> G1Point:
        points.check_g1(a)
        points.check_g1(b)
        return points.g1_add(a, b)

    def g1_mul(self, pt: G1Point, k: int) -> G1Point:
        points.check_g1(pt)
        return points.g1_mul(pt, k)

    def g2_mul(self, pt: G2Point, k: int) -> G2Point:
        points.check_g2(pt)
        return points.g2_mul(pt, k)

    def validate_g1(self, pt: G1Point) -> G1Point:
        return points.check_g1(pt)

    def validate_g2(self, pt: G2Point) -> G2Point:
        return points.check_g2(pt)

    def pairing(self, pt: G1Point, q: G2Point) -> pairing.GtElement:
        return pairing.pairing(pt, q)

    def pairing_product_is_one(self, pairs) -> bool:
        return pairing.pairing_product_is_one(pairs)

    def g2_precompute(self, q: G2Point) -> pairing.G2Precomp:
        return pairing.precompute_g2(q)

    def g1_compress(self, pt: G1Point) -> bytes:
        points.check_g1(pt)
        return encoding.g1_compress(pt)

    def g1_decompress(self, data: bytes) -> G1Point:
        return encoding.g1_decompress(data)


DEFAULT_BACKEND = Bn254Backend()

"""G1 and G2 points with Jacobian-coordinate arithmetic.

Public values are the frozen affine dataclasses ``G1Point`` and
``G2Point``; the Jacobian helpers underneath work on raw coordinate
tuples and are what scalar multiplication and the pairing use.  G2 lives
on the sextic twist y^2 = x^3 + 3/XI over Fp2.
"""

from __future__ import annotations

from dataclasses import dataclass

from blsces.errors import OffCurveError
from blsces.groups.params import CURVE_B, G1_GENERATOR, G2_GENERATOR, P, R
from blsces.groups import tower
from blsces.groups.tower import (
    FP2_ONE,
    FP2_ZERO,
    fp2_add,
    fp2_inv,
    fp2_mul,
    fp2_neg,
    fp2_smul,
    fp2_sqr,
    fp2_sub,
)

# Twist coefficient b' = 3 / XI.
TWIST_B = fp2_mul((3, 0), fp2_inv(tower.XI))


@dataclass(frozen=True)
class G1Point:
    """Affine G1 point; (0, 0, True) is the identity."""

    x: int = 0
    y: int = 0
    infinity: bool = False

    def is_identity(self) -> bool:
        return self.infinity

    def __neg__(self) -> "G1Point":
        if self.infinity:
            return self
        return G1Point(self.x, -self.y % P)


@dataclass(frozen=True)
class G2Point:
    """Affine G2 point on the twist, coordinates in Fp2."""

    x: tuple[int, int] = FP2_ZERO
    y: tuple[int, int] = FP2_ZERO
    infinity: bool = False

    def is_identity(self) -> bool:
        return self.infinity

    def __neg__(self) -> "G2Point":
        if self.infinity:
            return self
        return G2Point(self.x, fp2_neg(self.y))


G1_IDENTITY = G1Point(infinity=True)
G2_IDENTITY = G2Point(infinity=True)
G1_GEN = G1Point(*G1_GENERATOR)
G2_GEN = G2Point(*G2_GENERATOR)


def g1_on_curve(pt: G1Point) -> bool:
    if pt.infinity:
        return True
    x, y = pt.x % P, pt.y % P
    return (y * y - (x * x * x + CURVE_B)) % P == 0


def g2_on_curve(pt: G2Point) -> bool:
    if pt.infinity:
        return True
    lhs = fp2_sqr(pt.y)
    rhs = fp2_add(fp2_mul(fp2_sqr(pt.x), pt.x), TWIST_B)
    return lhs == rhs


def check_g1(pt: G1Point) -> G1Point:
    if not g1_on_curve(pt):
        raise OffCurveError("G1 point fails curve equation")
    return pt


def check_g2(pt: G2Point, subgroup: bool = True) -> G2Point:
    """Validate a G2 point; the twist has a cofactor, so membership in the
    order-r subgroup is a real check, done by scalar multiplication."""
    if not g2_on_curve(pt):
        raise OffCurveError("G2 point fails twist curve equation")
    if subgroup and not pt.infinity and not g2_mul(pt, R).is_identity():
        raise OffCurveError("G2 point outside the order-r subgroup")
    return pt


# ---------------------------------------------------------------------------
# Jacobian G1 over Fp
# ---------------------------------------------------------------------------

_J1_INF = (1, 1, 0)


def _j1_from(pt: G1Point):
    return _J1_INF if pt.infinity else (pt.x, pt.y, 1)


def _j1_to(j) -> G1Point:
    x, y, z = j
    if z == 0:
        return G1_IDENTITY
    zi = pow(z, -1, P)
    zi2 = zi * zi % P
    return G1Point(x * zi2 % P, y * zi2 % P * zi % P)


def _j1_double(pt):
    x1, y1, z1 = pt
    if z1 == 0 or y1 == 0:
        return _J1_INF if y1 == 0 else pt
    a = x1 * x1 % P
    b = y1 * y1 % P
    c = b * b % P
    d = 2 * ((x1 + b) * (x1 + b) - a - c) % P
    e = 3 * a % P
    f = e * e % P
    x3 = (f - 2 * d) % P
    y3 = (e * (d - x3) - 8 * c) % P
    z3 = 2 * y1 * z1 % P
    return (x3, y3, z3)


def _j1_add(p, q):
    x1, y1, z1 = p
    x2, y2, z2 = q
    if z1 == 0:
        return q
    if z2 == 0:
        return p
    z1z1 = z1 * z1 % P
    z2z2 = z2 * z2 % P
    u1 = x1 * z2z2 % P
    u2 = x2 * z1z1 % P
    s1 = y1 * z2 % P * z2z2 % P
    s2 = y2 * z1 % P * z1z1 % P
    if u1 == u2:
        if s1 != s2:
            return _J1_INF
        return _j1_double(p)
    h = (u2 - u1) % P
    i = 4 * h * h % P
    j = h * i % P
    r = 2 * (s2 - s1) % P
    v = u1 * i % P
    x3 = (r * r - j - 2 * v) % P
    y3 = (r * (v - x3) - 2 * s1 * j) % P
    z3 = ((z1 + z2) * (z1 + z2) - z1z1 - z2z2) % P * h % P
    return (x3, y3, z3)


def g1_add(a: G1Point, b: G1Point) -> G1Point:
    return _j1_to(_j1_add(_j1_from(a), _j1_from(b)))


def g1_mul(pt: G1Point, k: int) -> G1Point:
    # The whole curve has prime order R (cofactor 1), so reducing the
    # scalar is sound for any on-curve point.
    k %= R
    if k == 0 or pt.infinity:
        return G1_IDENTITY
    acc = _J1_INF
    base = _j1_from(pt)
    for bit in bin(k)[2:]:
        acc = _j1_double(acc)
        if bit == "1":
            acc = _j1_add(acc, base)
    return _j1_to(acc)


# ---------------------------------------------------------------------------
# Jacobian G2 over Fp2
# ---------------------------------------------------------------------------

_J2_INF = (FP2_ONE, FP2_ONE, FP2_ZERO)


def _j2_from(pt: G2Point):
    return _J2_INF if pt.infinity else (pt.x, pt.y, FP2_ONE)


def _j2_to(j) -> G2Point:
    x, y, z = j
    if z == FP2_ZERO:
        return G2_IDENTITY
    zi = fp2_inv(z)
    zi2 = fp2_sqr(zi)
    return G2Point(fp2_mul(x, zi2), fp2_mul(fp2_mul(y, zi2), zi))


def _j2_double(pt):
    x1, y1, z1 = pt
    if z1 == FP2_ZERO:
        return pt
    if y1 == FP2_ZERO:
        return _J2_INF
    a = fp2_sqr(x1)
    b = fp2_sqr(y1)
    c = fp2_sqr(b)
    t = fp2_sqr(fp2_add(x1, b))
    d = fp2_smul(fp2_sub(fp2_sub(t, a), c), 2)
    e = fp2_smul(a, 3)
    f = fp2_sqr(e)
    x3 = fp2_sub(f, fp2_smul(d, 2))
    y3 = fp2_sub(fp2_mul(e, fp2_sub(d, x3)), fp2_smul(c, 8))
    z3 = fp2_smul(fp2_mul(y1, z1), 2)
    return (x3, y3, z3)


def _j2_add(p, q):
    x1, y1, z1 = p
    x2, y2, z2 = q
    if z1 == FP2_ZERO:
        return q
    if z2 == FP2_ZERO:
        return p
    z1z1 = fp2_sqr(z1)
    z2z2 = fp2_sqr(z2)
    u1 = fp2_mul(x1, z2z2)
    u2 = fp2_mul(x2, z1z1)
    s1 = fp2_mul(fp2_mul(y1, z2), z2z2)
    s2 = fp2_mul(fp2_mul(y2, z1), z1z1)
    if u1 == u2:
        if s1 != s2:
            return _J2_INF
        return _j2_double(p)
    h = fp2_sub(u2, u1)
    i = fp2_smul(fp2_sqr(h), 4)
    j = fp2_mul(h, i)
    r = fp2_smul(fp2_sub(s2, s1), 2)
    v = fp2_mul(u1, i)
    x3 = fp2_sub(fp2_sub(fp2_sqr(r), j), fp2_smul(v, 2))
    y3 = fp2_sub(fp2_mul(r, fp2_sub(v, x3)), fp2_smul(fp2_mul(s1, j), 2))
    z3 = fp2_mul(fp2_sub(fp2_sub(fp2_sqr(fp2_add(z1, z2)), z1z1), z2z2), h)
    return (x3, y3, z3)


def g2_add(a: G2Point, b: G2Point) -> G2Point:
    return _j2_to(_j2_add(_j2_from(a), _j2_from(b)))


def g2_mul(pt: G2Point, k: int) -> G2Point:
    # No reduction mod R here: the twist has extra R'-torsion, and the
    # subgroup check relies on computing R*Q literally.
    if k < 0:
        return g2_mul(-pt, -k)
    if k == 0 or pt.infinity:
        return G2_IDENTITY
    acc = _J2_INF
    base = _j2_from(pt)
    for bit in bin(k)[2:]:
        acc = _j2_double(acc)
        if bit == "1":
            acc = _j2_add(acc, base)
    return _j2_to(acc)

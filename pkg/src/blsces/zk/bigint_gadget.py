"""Base-field arithmetic emulated inside the proof field.

The statement field (the BN254 scalar field) is smaller than the base
field being emulated, so values are carried as four 64-bit limbs and
every multiplication is certified by the integer identity

    a * b + k = q * p + r

checked limb-by-limb: the convolution of the limbs on both sides is
compared over pairs of 64-bit positions, with explicit offset carries
between pairs.  Position sums stay below 2^131 and carries below 2^68,
far under the proof-field modulus, so the field equations coincide with
the integer ones and no aliasing is possible.  q and r are supplied by
the prover and range-checked through bit decompositions (top limbs are
narrowed so q < 2^255 and r < 2^254, which the honest canonical values
always satisfy).

The quadratic-residuosity chain evaluates rhs^((p-1)/2) with a fixed
square-and-multiply schedule, so the constraint shape depends only on
the profile, never on the witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from blsces.zk.r1cs import Builder

LIMB_BITS = 64
NUM_LIMBS = 4
Q_WIDTHS = (64, 64, 64, 63)
R_WIDTHS = (64, 64, 64, 62)
CARRY_BITS = 69  # carries live in [-2^68, 2^68); stored offset by 2^68
_CARRY_OFFSET = 1 << (CARRY_BITS - 1)


def limbs_of(value: int) -> tuple[int, ...]:
    mask = (1 << LIMB_BITS) - 1
    return tuple((value >> (LIMB_BITS * i)) & mask for i in range(NUM_LIMBS))


def limbs_value(limbs: tuple[int, ...]) -> int:
    return sum(v << (LIMB_BITS * i) for i, v in enumerate(limbs))


@dataclass(frozen=True)
class EmulatedValue:
    """Four limb variables representing one base-field integer."""

    limbs: tuple[int, ...]  # variable indices, little-endian limbs

    def lc(self, i: int):
        return ((self.limbs[i], 1),)


def alloc_checked(bd: Builder, value: int | None, widths=R_WIDTHS) -> EmulatedValue:
    """Allocate limb variables bound to fresh bit decompositions."""
    limb_vals = limbs_of(value) if (bd.compute and value is not None) else (None,) * NUM_LIMBS
    out = []
    for i in range(NUM_LIMBS):
        bits = bd.bits_of(limb_vals[i], widths[i])
        limb = bd.alloc(limb_vals[i])
        bd.add_lin(((limb, -1),) + tuple((b, 1 << j) for j, b in enumerate(bits)))
        out.append(limb)
    return EmulatedValue(tuple(out))


def from_bit_lcs(bd: Builder, bit_lcs, values=None) -> EmulatedValue:
    """Pack existing boolean LCs (little-endian, already constrained) into
    limb variables; used to turn digest bits into an emulated x."""
    out = []
    for i in range(NUM_LIMBS):
        chunk = bit_lcs[i * LIMB_BITS:(i + 1) * LIMB_BITS]
        val = None
        if bd.compute:
            val = sum(bd.lc_val(lc) << j for j, lc in enumerate(chunk))
        limb = bd.alloc(val)
        lc = ((limb, -1),)
        for j, bit_lc in enumerate(chunk):
            lc = lc + tuple((v, c << j) for v, c in bit_lc)
        bd.add_lin(lc)
        out.append(limb)
    return EmulatedValue(tuple(out))


def emul_mul(
    bd: Builder,
    a: EmulatedValue,
    b: EmulatedValue,
    modulus: int,
    add_const: int = 0,
    supplied_qr: tuple[int, int] | None = None,
) -> tuple[EmulatedValue, tuple[int, int] | None]:
    """Constrain r = (a*b + add_const) mod p, returning r and the (q, r)
    pair used (for recording residuosity chains).

    ``supplied_qr`` lets the caller feed an externally generated
    witness; invalid pairs still synthesize boolean assignments and
    simply leave the system unsatisfied.
    """
    field = bd.cs.field
    square = a.limbs == b.limbs
    qr = None
    if bd.compute:
        a_val = limbs_value(tuple(bd.values[v] for v in a.limbs))
        b_val = limbs_value(tuple(bd.values[v] for v in b.limbs))
        if supplied_qr is not None:
            qr = supplied_qr
        else:
            qr = divmod(a_val * b_val + add_const, modulus)
    q = alloc_checked(bd, qr[0] if qr else None, Q_WIDTHS)
    r = alloc_checked(bd, qr[1] if qr else None, R_WIDTHS)

    # Limb products of a*b; squares reuse the symmetric half.
    prods: dict[tuple[int, int], int] = {}
    for i in range(NUM_LIMBS):
        for j in range(NUM_LIMBS):
            key = (min(i, j), max(i, j)) if square else (i, j)
            if key not in prods:
                prods[key] = bd.add_mul(a.limbs[key[0]], b.limbs[key[1]])

    p_limbs = limbs_of(modulus)

    def position_lc(k: int):
        terms: dict[int, int] = {}
        if k == 0 and add_const:
            terms[0] = add_const
        for i in range(NUM_LIMBS):
            j = k - i
            if not 0 <= j < NUM_LIMBS:
                continue
            key = (min(i, j), max(i, j)) if square else (i, j)
            terms[prods[key]] = terms.get(prods[key], 0) + 1
            if p_limbs[j]:
                terms[q.limbs[i]] = terms.get(q.limbs[i], 0) - p_limbs[j]
        if k < NUM_LIMBS:
            terms[r.limbs[k]] = terms.get(r.limbs[k], 0) - 1
        return terms

    # Group the 7 positions in pairs and thread offset carries between
    # the groups: group_g + carry_{g-1} = carry_g * 2^128.
    group_width = 1 << (2 * LIMB_BITS)
    carry_lc_prev = None
    for g in range(4):
        terms = position_lc(2 * g)
        if 2 * g + 1 < 7:
            for var, coeff in position_lc(2 * g + 1).items():
                terms[var] = terms.get(var, 0) + (coeff << LIMB_BITS)
        lc = tuple((v, c) for v, c in terms.items() if c)
        if carry_lc_prev is not None:
            lc = lc + carry_lc_prev
        if g == 3:
            bd.add_lin(lc)
            break
        stored = None
        if bd.compute:
            # All participating values are small exact ints, so this is
            # integer arithmetic, not field arithmetic.
            group_val = sum(bd.values[v] * c for v, c in lc)
            carry_val = group_val // group_width
            # Off-schedule only for invalid supplied witnesses; mask so
            # the bits stay boolean and the linear constraint carries
            # the violation instead of the synthesizer crashing.
            stored = (carry_val + _CARRY_OFFSET) & ((1 << CARRY_BITS) - 1)
        carry_bits = bd.bits_of(stored, CARRY_BITS)
        carry_terms = tuple((b, 1 << j) for j, b in enumerate(carry_bits))
        # group + carry_in = carry_out * 2^128, with carries stored offset
        bd.add_lin(lc + tuple((v, -(c << (2 * LIMB_BITS))) for v, c in carry_terms) + ((0, _CARRY_OFFSET << (2 * LIMB_BITS)),))
        carry_lc_prev = carry_terms + ((0, -_CARRY_OFFSET),)
    return r, qr


def residuosity_chain_schedule(p: int) -> list[int]:
    """Exponent bits of (p-1)/2, most significant first."""
    e = (p - 1) // 2
    return [int(c) for c in bin(e)[2:]]


def chain_mul_count(p: int) -> int:
    """Number of emulated multiplications in the full rhs-residue proof:
    x^2, x^3 + b, then the fixed square-and-multiply walk."""
    bits = residuosity_chain_schedule(p)
    return 2 + (len(bits) - 1) + sum(bits[1:])


def euler_criterion_gadget(
    bd: Builder,
    x: EmulatedValue,
    profile_p: int,
    curve_b: int,
    chain: list[tuple[int, int]] | None = None,
) -> list[tuple[int, int]]:
    """Constrain (x^3 + b)^((p-1)/2) == 1 over the emulated field.

    Returns the (q, r) pairs consumed, in schedule order: the x^2 step,
    the x^3 + b step, then one per square/multiply of the exponent walk.
    When ``chain`` is given its pairs are used as the witness verbatim.
    """
    supplied = iter(chain) if chain is not None else None

    def next_qr():
        return next(supplied) if supplied is not None else None

    used = []
    sq, qr = emul_mul(bd, x, x, profile_p, supplied_qr=next_qr())
    used.append(qr)
    rhs, qr = emul_mul(bd, sq, x, profile_p, add_const=curve_b, supplied_qr=next_qr())
    used.append(qr)
    acc = rhs
    bits = residuosity_chain_schedule(profile_p)
    for bit in bits[1:]:
        acc, qr = emul_mul(bd, acc, acc, profile_p, supplied_qr=next_qr())
        used.append(qr)
        if bit:
            acc, qr = emul_mul(bd, acc, rhs, profile_p, supplied_qr=next_qr())
            used.append(qr)
    # Final remainder must be exactly one: limbs (1, 0, 0, 0).
    bd.add_lin(((acc.limbs[0], 1), (0, -1)))
    for i in range(1, NUM_LIMBS):
        bd.add_lin(((acc.limbs[i], 1),))
    return used

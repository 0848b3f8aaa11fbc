"""SHA-256 compression function, both as plain Python and as R1CS gadget.

The gadget synthesizes one compression-function application over 32-bit
words held as lists of 32 bit-LCs (little-endian).  XOR costs one
product per pair of bits, Ch costs one product per bit, Maj two; the
modular additions collapse each round's sums into a single linear
constraint over freshly allocated output and carry bits.  One
application is roughly 26k constraints.

Round constants and the initial state are derived from the fractional
parts of cube/square roots of the first primes with exact integer
arithmetic (no float rounding); the test suite pins the result against
hashlib.
"""

from __future__ import annotations

import math

from blsces.zk.r1cs import LC, Builder

WORD = 32


def _primes(count: int) -> list[int]:
    out, n = [], 2
    while len(out) < count:
        if all(n % q for q in out if q * q <= n):
            out.append(n)
        n += 1
    return out


def _icbrt(n: int) -> int:
    x = 1 << ((n.bit_length() + 2) // 3 + 1)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    return x


def _iv() -> list[int]:
    return [math.isqrt(p << 64) - (math.isqrt(p) << 32) for p in _primes(8)]


def _round_constants() -> list[int]:
    return [_icbrt(p << 96) - (_icbrt(p) << 32) for p in _primes(64)]


SHA256_IV = _iv()
SHA256_K = _round_constants()


def _rotr(x: int, n: int) -> int:
    return ((x >> n) | (x << (WORD - n))) & 0xFFFFFFFF


def sha256_compress(state: list[int], block: bytes) -> list[int]:
    """One plain compression application; used for pre-hashing long
    messages outside the constraint system."""
    w = list(int.from_bytes(block[4 * t: 4 * t + 4], "big") for t in range(16))
    for t in range(16, 64):
        s0 = _rotr(w[t - 15], 7) ^ _rotr(w[t - 15], 18) ^ (w[t - 15] >> 3)
        s1 = _rotr(w[t - 2], 17) ^ _rotr(w[t - 2], 19) ^ (w[t - 2] >> 10)
        w.append((w[t - 16] + s0 + w[t - 7] + s1) & 0xFFFFFFFF)
    a, b, c, d, e, f, g, h = state
    for t in range(64):
        t1 = (h + (_rotr(e, 6) ^ _rotr(e, 11) ^ _rotr(e, 25)) + ((e & f) ^ (~e & g)) + SHA256_K[t] + w[t]) & 0xFFFFFFFF
        t2 = ((_rotr(a, 2) ^ _rotr(a, 13) ^ _rotr(a, 22)) + ((a & b) ^ (a & c) ^ (b & c))) & 0xFFFFFFFF
        a, b, c, d, e, f, g, h = (t1 + t2) & 0xFFFFFFFF, a, b, c, (d + t1) & 0xFFFFFFFF, e, f, g
    return [(s + v) & 0xFFFFFFFF for s, v in zip(state, [a, b, c, d, e, f, g, h])]


def sha256_pad(length: int) -> bytes:
    """Padding bytes appended to a message of ``length`` bytes."""
    rem = (length + 9) % 64
    zeros = (64 - rem) % 64
    return b"\x80" + bytes(zeros) + (8 * length).to_bytes(8, "big")


# ---------------------------------------------------------------------------
# Gadget: words are lists of 32 bit-LCs, little-endian.
# ---------------------------------------------------------------------------

ZERO_LC: LC = ()


def const_word(value: int) -> list[LC]:
    return [(((0, 1),) if (value >> j) & 1 else ZERO_LC) for j in range(WORD)]


def word_from_bits(bits: list[int]) -> list[LC]:
    return [((b, 1),) for b in bits]


def _lc_add(*lcs: LC) -> LC:
    merged: dict[int, int] = {}
    for lc in lcs:
        for var, coeff in lc:
            merged[var] = merged.get(var, 0) + coeff
    return tuple((v, c) for v, c in merged.items() if c)


def _lc_scale(lc: LC, k: int) -> LC:
    return tuple((v, c * k) for v, c in lc)


def _lc_const(lc: LC) -> int | None:
    """Constant value when the LC only touches variable 0, else None."""
    if not lc:
        return 0
    if len(lc) == 1 and lc[0][0] == 0:
        return lc[0][1]
    return None


def xor_lc(bd: Builder, x: LC, y: LC) -> LC:
    """z = x xor y for boolean-valued LCs: z = x + y - 2xy."""
    cx, cy = _lc_const(x), _lc_const(y)
    if cx is not None:
        return _lc_add(y, ZERO_LC) if cx == 0 else _lc_add(((0, 1),), _lc_scale(y, -1))
    if cy is not None:
        return x if cy == 0 else _lc_add(((0, 1),), _lc_scale(x, -1))
    t = bd.alloc(bd.lc_val(x) * bd.lc_val(y) % bd.cs.field if bd.compute else None)
    bd.add_r1(x, y, ((t, 1),))
    return _lc_add(x, y, _lc_scale(((t, 1),), -2))


def xor3_lc(bd: Builder, x: LC, y: LC, z: LC) -> LC:
    return xor_lc(bd, xor_lc(bd, x, y), z)


def word_xor3(bd: Builder, x: list[LC], y: list[LC], z: list[LC]) -> list[LC]:
    return [xor3_lc(bd, a, b, c) for a, b, c in zip(x, y, z)]


def word_rotr(w: list[LC], n: int) -> list[LC]:
    return [w[(j + n) % WORD] for j in range(WORD)]


def word_shr(w: list[LC], n: int) -> list[LC]:
    return [(w[j + n] if j + n < WORD else ZERO_LC) for j in range(WORD)]


def word_ch(bd: Builder, e: list[LC], f: list[LC], g: list[LC]) -> list[LC]:
    """Ch(e,f,g) = g + e*(f - g) bitwise: one product per bit."""
    out = []
    for eb, fb, gb in zip(e, f, g):
        diff = _lc_add(fb, _lc_scale(gb, -1))
        if _lc_const(eb) is not None or not diff:
            ce = _lc_const(eb)
            if ce == 0:
                out.append(gb)
                continue
            if ce == 1:
                out.append(fb)
                continue
        t = bd.alloc(bd.lc_val(eb) * bd.lc_val(diff) % bd.cs.field if bd.compute else None)
        bd.add_r1(eb, diff, ((t, 1),))
        out.append(_lc_add(gb, ((t, 1),)))
    return out


def word_maj(bd: Builder, a: list[LC], b: list[LC], c: list[LC]) -> list[LC]:
    """Maj(a,b,c) = bc + a*(b + c - 2bc) bitwise: two products per bit."""
    out = []
    f = bd.cs.field
    for ab, bb, cb in zip(a, b, c):
        t = bd.alloc(bd.lc_val(bb) * bd.lc_val(cb) % f if bd.compute else None)
        bd.add_r1(bb, cb, ((t, 1),))
        rest = _lc_add(bb, cb, _lc_scale(((t, 1),), -2))
        u = bd.alloc(bd.lc_val(ab) * bd.lc_val(rest) % f if bd.compute else None)
        bd.add_r1(ab, rest, ((u, 1),))
        out.append(_lc_add(((t, 1),), ((u, 1),)))
    return out


def word_add(bd: Builder, *words: list[LC]) -> list[LC]:
    """Sum mod 2^32: allocate 32 result bits plus overflow bits and tie
    them to the operand sum with one linear constraint."""
    total_lc = _lc_add(*(_lc_scale(w[j], 1 << j) for w in words for j in range(WORD)))
    carry_bits = max(1, (len(words) - 1).bit_length())
    value = bd.lc_val(total_lc) if bd.compute else None
    out_bits = bd.bits_of(value, WORD)
    carry = bd.bits_of(value >> WORD if value is not None else None, carry_bits)
    rhs = _lc_add(
        tuple((b, 1 << j) for j, b in enumerate(out_bits)),
        tuple((b, 1 << (WORD + j)) for j, b in enumerate(carry)),
    )
    bd.add_lin(_lc_add(total_lc, _lc_scale(rhs, -1)))
    return [((b, 1),) for b in out_bits]


def sha256_compress_gadget(bd: Builder, state: list[list[LC]], block: list[list[LC]]) -> list[list[LC]]:
    """Synthesize one compression application.

    ``state`` is 8 words, ``block`` 16 words; returns the 8 output
    words.  Word bit-LCs may be constants, fresh variables, or prior
    gadget outputs.
    """
    w = list(block)
    for t in range(16, 64):
        s0 = word_xor3(bd, word_rotr(w[t - 15], 7), word_rotr(w[t - 15], 18), word_shr(w[t - 15], 3))
        s1 = word_xor3(bd, word_rotr(w[t - 2], 17), word_rotr(w[t - 2], 19), word_shr(w[t - 2], 10))
        w.append(word_add(bd, w[t - 16], s0, w[t - 7], s1))
    a, b, c, d, e, f, g, h = state
    for t in range(64):
        big_s1 = word_xor3(bd, word_rotr(e, 6), word_rotr(e, 11), word_rotr(e, 25))
        ch = word_ch(bd, e, f, g)
        t1 = word_add(bd, h, big_s1, ch, const_word(SHA256_K[t]), w[t])
        big_s0 = word_xor3(bd, word_rotr(a, 2), word_rotr(a, 13), word_rotr(a, 22))
        maj = word_maj(bd, a, b, c)
        t2 = word_add(bd, big_s0, maj)
        h, g, f = g, f, e
        e = word_add(bd, d, t1)
        d, c, b = c, b, a
        a = word_add(bd, t1, t2)
    return [word_add(bd, s, v) for s, v in zip(state, [a, b, c, d, e, f, g, h])]

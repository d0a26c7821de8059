"""Exact arithmetic in GF(2^r), the trace map, and the canonical character.

Field elements are integers below q = 2^r encoding polynomial-basis
coefficients little-endian (bit k = coefficient of z^k).  The modulus is an
irreducible degree-r polynomial over GF(2) encoded the same way with bit r
set; the default is the irreducible polynomial with the smallest bitmask.
Every context carries a distinguished element a_param of trace 1, so that
z^2 + z + a_param has no root; it parametrizes the minus-type quadratic
form used by the group modules.

All functions are pure and FieldCtx is immutable, so contexts can be shared
freely across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_R = 16
_TABLE_LIMIT = 256  # largest q with a precomputed multiplication table


@dataclass(frozen=True)
class FieldCtx:
    r: int
    q: int
    modulus: int
    a_param: int
    trace_mask: int  # bit k set iff tr(z^k) = 1


def poly_degree(mask: int) -> int:
    return mask.bit_length() - 1


def _poly_rem(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division of a by b over GF(2)."""
    width = b.bit_length()
    while a.bit_length() >= width:
        a ^= b << (a.bit_length() - width)
    return a


def _raw_mul(x: int, y: int, modulus: int, r: int) -> int:
    """Product of two reduced elements, reducing on the fly."""
    acc = 0
    while y:
        if y & 1:
            acc ^= x
        y >>= 1
        x <<= 1
        if (x >> r) & 1:
            x ^= modulus
    return acc


def smallest_factor(modulus: int, r: int) -> int | None:
    """Smallest nontrivial divisor of a degree-r polynomial, or None."""
    for d in range(1, r // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _poly_rem(modulus, cand) == 0:
                return cand
    return None


def is_irreducible(modulus: int, r: int) -> bool:
    if r < 1 or modulus.bit_length() != r + 1:
        return False
    return smallest_factor(modulus, r) is None


@lru_cache(maxsize=None)
def default_modulus(r: int) -> int:
    for cand in range(1 << r, 1 << (r + 1)):
        if is_irreducible(cand, r):
            return cand
    raise AssertionError("irreducible polynomials exist in every degree")


def _trace_of(x: int, modulus: int, r: int) -> int:
    """x + x^2 + ... + x^(2^(r-1)) computed by repeated squaring."""
    acc = x
    t = x
    for _ in range(r - 1):
        t = _raw_mul(t, t, modulus, r)
        acc ^= t
    return acc


def make_field(r: int, modulus: int | None = None, a_param: int | None = None) -> FieldCtx:
    """Build a GF(2^r) context.

    Defaults: the smallest irreducible degree-r modulus and the smallest
    element of trace 1 as a_param.  Overrides are validated: the modulus
    must be irreducible of degree exactly r and a_param must have trace 1
    (otherwise z^2 + z + a_param would split and the quadratic form would
    degenerate).
    """
    if not 1 <= r <= MAX_R:
        raise ValueError(f"r must be between 1 and {MAX_R}, got {r}")
    q = 1 << r
    if modulus is None:
        modulus = default_modulus(r)
    else:
        if poly_degree(modulus) != r:
            raise ValueError(
                f"modulus 0x{modulus:X} has degree {poly_degree(modulus)}, need exactly {r}"
            )
        factor = smallest_factor(modulus, r)
        if factor is not None:
            raise ValueError(
                f"modulus 0x{modulus:X} is reducible over GF(2): divisible by 0x{factor:X}"
            )
    mask = 0
    for k in range(r):
        bit = _trace_of(1 << k, modulus, r)
        if bit not in (0, 1):
            raise AssertionError("trace escaped GF(2); irreducibility check is broken")
        mask |= bit << k
    if a_param is None:
        a_param = next(x for x in range(q) if (x & mask).bit_count() & 1)
    else:
        if not 0 <= a_param < q:
            raise ValueError(f"a_param 0x{a_param:X} is not an element of GF({q})")
        if (a_param & mask).bit_count() & 1 != 1:
            raise ValueError(f"a_param 0x{a_param:X} has trace 0; the quadratic form needs trace 1")
    return FieldCtx(r=r, q=q, modulus=modulus, a_param=a_param, trace_mask=mask)


def add(ctx: FieldCtx, x: int, y: int) -> int:
    return x ^ y


@lru_cache(maxsize=None)
def _mul_table(modulus: int, r: int) -> tuple[tuple[int, ...], ...]:
    q = 1 << r
    return tuple(tuple(_raw_mul(x, y, modulus, r) for y in range(q)) for x in range(q))


def mul_table(ctx: FieldCtx) -> tuple[tuple[int, ...], ...]:
    """Full q x q product table; only materialized for q <= 256."""
    if ctx.q > _TABLE_LIMIT:
        raise ValueError(f"no product table above q = {_TABLE_LIMIT}")
    return _mul_table(ctx.modulus, ctx.r)


def mul(ctx: FieldCtx, x: int, y: int) -> int:
    if ctx.q <= _TABLE_LIMIT:
        return _mul_table(ctx.modulus, ctx.r)[x][y]
    return _raw_mul(x, y, ctx.modulus, ctx.r)


def fpow(ctx: FieldCtx, x: int, e: int) -> int:
    if e < 0:
        x = inv(ctx, x)
        e = -e
    acc = 1
    while e:
        if e & 1:
            acc = mul(ctx, acc, x)
        x = mul(ctx, x, x)
        e >>= 1
    return acc


def inv(ctx: FieldCtx, x: int) -> int:
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({ctx.q})")
    return fpow(ctx, x, ctx.q - 2)


@lru_cache(maxsize=None)
def inv_table(ctx: FieldCtx) -> tuple[int, ...]:
    # slot 0 is a placeholder so the table indexes by element encoding
    return (0,) + tuple(inv(ctx, x) for x in range(1, ctx.q))


def trace(ctx: FieldCtx, x: int) -> int:
    return (x & ctx.trace_mask).bit_count() & 1


def lambda_char(ctx: FieldCtx, x: int) -> int:
    """The canonical additive character (-1)^tr(x), valued in {+1, -1}."""
    return 1 - 2 * ((x & ctx.trace_mask).bit_count() & 1)


@lru_cache(maxsize=None)
def lambda_table(ctx: FieldCtx) -> tuple[int, ...]:
    return tuple(lambda_char(ctx, x) for x in range(ctx.q))


def theta_subgroup(ctx: FieldCtx) -> frozenset[int]:
    """The image of x -> x^2 + x, an index-2 subgroup of the additive group."""
    return frozenset(mul(ctx, x, x) ^ x for x in range(ctx.q))


def elements(ctx: FieldCtx) -> range:
    return range(ctx.q)


def units(ctx: FieldCtx) -> range:
    return range(1, ctx.q)


def to_hex(x: int) -> str:
    return "0x%X" % x


def parse_hex(text: str) -> int:
    value = int(text, 16)
    if value < 0:
        raise ValueError(f"negative encodings are not field elements: {text}")
    return value

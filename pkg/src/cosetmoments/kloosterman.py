"""Kloosterman-type character sums: brute-force oracles and closed identities.

Everything here is an exact integer computation; the direct sums serve as
the independent oracles against which every closed form in the package is
checked.  Results are cached per (context, arguments) since the same
Kloosterman values feed trace distributions, code weights, and moment
recursions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import isqrt

from .finite_field import (
    FieldCtx,
    inv,
    inv_table,
    lambda_char,
    lambda_table,
    mul,
    mul_table,
    units,
)

ENUM_BUDGET = 10 ** 8  # direct-summation term cap


class BudgetError(ValueError):
    """An enumeration would exceed its declared budget."""


@dataclass(frozen=True)
class MomentSeries:
    m: int
    h_max: int
    values: tuple[int, ...]  # values[h] = sum over a != 0 of K_m(lambda;a)^h


def _check_unit(ctx: FieldCtx, a: int, name: str = "a") -> None:
    if not 0 < a < ctx.q:
        raise ValueError(f"{name} must be a nonzero element of GF({ctx.q}), got {a}")


@lru_cache(maxsize=None)
def kloosterman_sum(ctx: FieldCtx, m: int, a: int) -> int:
    """K_m(lambda;a) by direct summation over (F_q^*)^m."""
    if m < 1:
        raise ValueError(f"dimension m must be positive, got {m}")
    _check_unit(ctx, a)
    if (ctx.q - 1) ** m > ENUM_BUDGET:
        raise BudgetError(
            f"direct K_{m} sum needs {(ctx.q - 1) ** m} terms (budget {ENUM_BUDGET}); "
            "for m = 2 use carlitz_k2 instead"
        )
    lam = lambda_table(ctx)
    invt = inv_table(ctx)
    rng = range(1, ctx.q)
    if m == 1:
        return sum(lam[x ^ mul(ctx, a, invt[x])] for x in rng)
    if m == 2 and ctx.q <= 256:
        tbl = mul_table(ctx)
        total = 0
        for x in rng:
            row = tbl[tbl[a][invt[x]]]  # row[t] = a * x^-1 * t
            total += sum(lam[x ^ y ^ row[invt[y]]] for y in rng)
        return total
    return _kloosterman_generic(ctx, m, a)


def _kloosterman_generic(ctx: FieldCtx, m: int, a: int) -> int:
    lam = lambda_table(ctx)
    total = 0
    for alphas in product(range(1, ctx.q), repeat=m):
        s = 0
        p = 1
        for al in alphas:
            s ^= al
            p = mul(ctx, p, al)
        total += lam[s ^ mul(ctx, a, inv(ctx, p))]
    return total


def carlitz_k2(ctx: FieldCtx, a: int) -> int:
    """The 2-dimensional sum through the identity K_2 = K^2 - q."""
    _check_unit(ctx, a)
    k = kloosterman_sum(ctx, 1, a)
    return k * k - ctx.q


def power_moment_oracle(ctx: FieldCtx, m: int, h_max: int) -> MomentSeries:
    """Exact moments MK_m^h = sum over a != 0 of K_m^h, for h = 0..h_max."""
    if m not in (1, 2):
        raise ValueError(f"moment oracle covers m in {{1, 2}}, got {m}")
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    if m == 1:
        ks = [kloosterman_sum(ctx, 1, a) for a in units(ctx)]
    else:
        ks = [carlitz_k2(ctx, a) for a in units(ctx)]
    values = []
    powers = [1] * len(ks)
    for h in range(h_max + 1):
        values.append(sum(powers))
        powers = [p * k for p, k in zip(powers, ks)]
    return MomentSeries(m=m, h_max=h_max, values=tuple(values))


def kgl_recursive(ctx: FieldCtx, t: int, a: int) -> int:
    """Kloosterman sum over GL(t,q) via its two-step recursion."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    _check_unit(ctx, a)
    if t == 0:
        return 1
    q = ctx.q
    k = kloosterman_sum(ctx, 1, a)
    prev, cur = 1, k
    for s in range(2, t + 1):
        prev, cur = cur, q ** (s - 1) * cur * k + q ** (2 * s - 2) * (q ** (s - 1) - 1) * prev
    return cur


def kgl_closed(ctx: FieldCtx, t: int, a: int) -> int:
    """Closed form of the GL(t,q) Kloosterman sum.

    Sums q^l K^(t+2-2l) times a product over descending exponent chains
    2l-1 <= j_(l-1) <= ... <= j_1 <= t+1; the global prefactor
    q^((t-2)(t+1)/2) is negative-exponent only at t = 1, handled exactly
    with Fraction.
    """
    if t < 1:
        raise ValueError(f"closed form needs t >= 1, got {t}")
    _check_unit(ctx, a)
    q = ctx.q
    k = kloosterman_sum(ctx, 1, a)
    total = 0
    for l in range(1, (t + 2) // 2 + 1):
        if l == 1:
            inner = 1
        else:
            inner = 0
            for chain in combinations_with_replacement(range(2 * l - 1, t + 2), l - 1):
                term = 1
                for nu, j in enumerate(reversed(chain), start=1):
                    term *= q ** (j - 2 * nu) - 1
                inner += term
        total += q ** l * k ** (t + 2 - 2 * l) * inner
    out = Fraction(q) ** ((t - 2) * (t + 1) // 2) * total
    if out.denominator != 1:
        raise AssertionError("closed GL(t,q) sum must be an integer")
    return int(out)


def twisted_sum_check(ctx: FieldCtx, m: int, beta: int) -> tuple[int, int]:
    """Both sides of the twist identity for sum over a of lambda(a*beta) K_m(lambda;a).

    In characteristic two -a*beta = a*beta.  The right side lowers the
    dimension: q K_(m-1)(lambda;beta^-1) + (-1)^(m+1) for beta != 0, where
    K_0(lambda;x) means lambda(x); it degenerates to (-1)^(m+1) at beta = 0.
    """
    if m not in (1, 2):
        raise ValueError(f"the twist check covers m in {{1, 2}}, got {m}")
    if not 0 <= beta < ctx.q:
        raise ValueError(f"beta must be a field element, got {beta}")
    lhs = sum(
        lambda_char(ctx, mul(ctx, a, beta)) * kloosterman_sum(ctx, m, a) for a in units(ctx)
    )
    parity = 1 if m % 2 == 1 else -1  # (-1)^(m+1)
    if beta == 0:
        return lhs, parity
    bi = inv(ctx, beta)
    lower = lambda_char(ctx, bi) if m == 1 else kloosterman_sum(ctx, m - 1, bi)
    return lhs, ctx.q * lower + parity


def artin_schreier_sums(ctx: FieldCtx, beta: int) -> tuple[int, int]:
    """Character sums along the fibers of x -> x^2 + x.

    Returns (S0, S1) with S0 = sum over alpha outside {0,1} of
    lambda(beta/(alpha^2+alpha)) and S1 = sum over all alpha of
    lambda(beta/(alpha^2+alpha+a_param)); the denominators never vanish in
    S1 because a_param has trace 1.  The expected values are K(lambda;beta)-1
    and -K(lambda;beta)-1.
    """
    _check_unit(ctx, beta, "beta")
    s0 = 0
    s1 = 0
    for al in range(ctx.q):
        sq = mul(ctx, al, al) ^ al
        if sq:
            s0 += lambda_char(ctx, mul(ctx, beta, inv(ctx, sq)))
        s1 += lambda_char(ctx, mul(ctx, beta, inv(ctx, sq ^ ctx.a_param)))
    return s0, s1


def range_spectrum(ctx: FieldCtx) -> frozenset[int]:
    """The set of Kloosterman values {K(lambda;a) : a != 0}."""
    if ctx.r < 2:
        raise ValueError("the value-range description requires r >= 2")
    return frozenset(kloosterman_sum(ctx, 1, a) for a in units(ctx))


def predicted_spectrum(q: int) -> frozenset[int]:
    """{tau : tau^2 < 4q, tau = -1 mod 4}, the predicted Kloosterman range."""
    bound = isqrt(4 * q - 1)
    return frozenset(t for t in range(-bound, bound + 1) if t % 4 == 3)

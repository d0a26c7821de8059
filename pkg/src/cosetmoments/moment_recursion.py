"""Power moments of Kloosterman sums from code weight distributions.

The Pless power moment identity ties the h-th weight moments of the big
coset code to its dual's weight distribution.  Since the dual weights are
affine in K(lambda;a) (or in the two-dimensional sum), isolating the top
binomial term turns the identity into a recursion for the power moments
MK^h.  Four series shapes cover the eight coset families; every solved
series is compared against the brute-force moment oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .coset_codes import (
    codeword_weight_closed,
    dual_code_kernel,
    prefix_counts_from_distribution,
    weight_distribution_prefix,
)
from .finite_field import FieldCtx, inv, trace
from .kloosterman import MomentSeries, power_moment_oracle
from .ominus_groups import DoubleCosetSpec, dc_cardinality, trace_distribution

H_MAX_LIMIT = 32


@lru_cache(maxsize=None)
def stirling2(h: int, t: int) -> int:
    """Stirling numbers of the second kind; 0 outside 0 <= t <= h."""
    if t < 0 or t > h:
        return 0
    if h == 0:
        return 1
    if t == 0:
        return 0
    return t * stirling2(h - 1, t) + stirling2(h - 1, t - 1)


def stirling2_alternating(h: int, t: int) -> int:
    """The alternating-sum form (1/t!) sum_j (-1)^(t-j) binom(t,j) j^h."""
    if t < 0 or t > h:
        return 0
    acc = 0
    for j in range(t + 1):
        term = comb(t, j) * j ** h
        acc += -term if (t - j) & 1 else term
    val, rem = divmod(acc, factorial(t))
    if rem:
        raise AssertionError("the alternating sum must be divisible by t!")
    return val


@dataclass(frozen=True)
class SeriesParams:
    """One affine weight shape w(a) = (A/2)(base + c * X_a).

    X_a is K(lambda;a) for label "mk", the two-dimensional sum for "mk2",
    and K(lambda;a)^2 for "mk_even" (whose moments are the even MK^(2h))."""

    label: str
    base: int
    c: int
    oracle_m: int
    oracle_stride: int


def _validate_recursion_domain(spec: DoubleCosetSpec) -> None:
    q = spec.ctx.q
    if spec.family == 3 and spec.sign == "+" and spec.n == 2 and q < 8:
        raise ValueError(
            "the family-3 plus recursion at n = 2 needs q >= 8: at q in {2,4} "
            "the map a -> c(a) has the two-element subfield as kernel"
        )
    if spec.family in (2, 4) and q < 4:
        raise ValueError(f"family-{spec.family} recursions need q >= 4")


def _series_params(spec: DoubleCosetSpec, series: str | None) -> SeriesParams:
    _validate_recursion_domain(spec)
    s = spec.sign_value
    b_cnt = dc_cardinality(spec)[1]
    q = spec.ctx.q
    if spec.family in (1, 3):
        if series not in (None, "mk"):
            raise ValueError(f"family {spec.family} admits only the 'mk' series")
        return SeriesParams("mk", b_cnt, -s, 1, 1)
    if series is None:
        series = "mk2"
    if series == "mk2":
        shift = q if spec.family == 2 else q * q
        return SeriesParams("mk2", b_cnt + s * shift, s, 2, 1)
    if series == "mk_even":
        shift = 0 if spec.family == 2 else q * q - q
        return SeriesParams("mk_even", b_cnt + s * shift, s, 1, 2)
    raise ValueError(f"series must be 'mk2' or 'mk_even', got {series!r}")


def _oracle_moments(ctx: FieldCtx, params: SeriesParams, h_max: int) -> tuple[int, ...]:
    series = power_moment_oracle(ctx, params.oracle_m, params.oracle_stride * h_max)
    return series.values[:: params.oracle_stride]


def _solve_recursion(
    ctx: FieldCtx,
    class_counts: dict[int, int],
    a_cnt: int,
    base: int,
    c: int,
    h_max: int,
) -> tuple[int, ...]:
    """Solve M_h from the weight-moment identity, seeding M_0 = q - 1.

    2^h sum_a w(a)^h equals q * P(h) with P built from the weight prefix;
    expanding w(a)^h binomially and isolating l = h gives the recursion.
    All divisions are exact and asserted."""
    q = ctx.q
    n = sum(class_counts.values())
    prefix = prefix_counts_from_distribution(ctx, class_counts, min(n, h_max))
    values = [q - 1]
    for h in range(1, h_max + 1):
        p_sum = 0
        for j in range(min(n, h) + 1):
            c_j = prefix[j]
            if not c_j:
                continue
            inner = 0
            for t in range(j, min(h, n) + 1):
                inner += factorial(t) * stirling2(h, t) * (1 << (h - t)) * comb(n - j, n - t)
            p_sum += -c_j * inner if j & 1 else c_j * inner
        lead, rem = divmod(q * p_sum, a_cnt ** h)
        if rem:
            raise AssertionError("the moment identity must divide exactly by A^h")
        acc = lead
        for l in range(h):
            acc -= comb(h, l) * base ** (h - l) * c ** l * values[l]
        values.append(c ** h * acc)
    return tuple(values)


@dataclass(frozen=True)
class RecursionReport:
    """Solved series next to its oracle.  For the 'mk_even' series the
    values at index h are the 2h-th power moments."""

    spec: DoubleCosetSpec
    series: str
    h_max: int
    recursion_values: MomentSeries
    oracle_values: MomentSeries | None
    agree: tuple[bool, ...] | None


def _package_report(
    spec: DoubleCosetSpec,
    params: SeriesParams,
    h_max: int,
    values: tuple[int, ...],
    with_oracle: bool,
) -> RecursionReport:
    rec = MomentSeries(m=params.oracle_m, h_max=h_max, values=values)
    if not with_oracle:
        return RecursionReport(spec, params.label, h_max, rec, None, None)
    oracle_vals = _oracle_moments(spec.ctx, params, h_max)
    orc = MomentSeries(m=params.oracle_m, h_max=h_max, values=oracle_vals)
    agree = tuple(x == y for x, y in zip(values, oracle_vals))
    return RecursionReport(spec, params.label, h_max, rec, orc, agree)


def recursive_moments(
    spec: DoubleCosetSpec,
    h_max: int,
    series: str | None = None,
    with_oracle: bool = True,
) -> RecursionReport:
    if not 1 <= h_max <= H_MAX_LIMIT:
        raise ValueError(f"h_max must lie in 1..{H_MAX_LIMIT}")
    params = _series_params(spec, series)
    a_cnt = dc_cardinality(spec)[0]
    counts = trace_distribution(spec, "closed_form")
    values = _solve_recursion(spec.ctx, counts, a_cnt, params.base, params.c, h_max)
    return _package_report(spec, params, h_max, values, with_oracle)


def smallest_case_recursions(
    ctx: FieldCtx, variant: str, h_max: int, with_oracle: bool = True
) -> RecursionReport:
    """The two fully written-out smallest-case specializations.

    Variant "a" is the smallest plus-sign family-1 case with its three
    explicit trace classes of length q^4(q^2-1); variant "b" is the
    smallest minus-sign case of length q+1 with classes (1, 2, 2, ...).
    Both must reproduce recursive_moments at the same parameters."""
    if not 1 <= h_max <= H_MAX_LIMIT:
        raise ValueError(f"h_max must lie in 1..{H_MAX_LIMIT}")
    q = ctx.q
    if variant == "a":
        counts = {0: q * q * (q - 1) * (q * q + q + 1)}
        for beta in range(1, q):
            if trace(ctx, inv(ctx, beta)) == 0:
                counts[beta] = q * q * (q * q - 1) * (q + 1)
            else:
                counts[beta] = q * q * (q - 1) * (q * q + 1)
        a_cnt = q ** 3 * (q - 1)
        base = q * q + q
        c = -1
        spec = DoubleCosetSpec(1, "+", 2, ctx)
    elif variant == "b":
        counts = {0: 1}
        for beta in range(1, q):
            counts[beta] = 2 if trace(ctx, inv(ctx, beta)) else 0
        a_cnt = 1
        base = q + 1
        c = 1
        spec = DoubleCosetSpec(1, "-", 1, ctx)
    else:
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    if sum(counts.values()) != dc_cardinality(spec)[2]:
        raise AssertionError("printed class sizes must sum to the coset size")
    values = _solve_recursion(ctx, counts, a_cnt, base, c, h_max)
    params = SeriesParams("mk", base, c, 1, 1)
    return _package_report(spec, params, h_max, values, with_oracle)


def pless_check(spec: DoubleCosetSpec, h: int) -> tuple[int, int]:
    """(lhs, rhs) of the power moment identity at exponent h >= 1.

    lhs sums w(c(a))^h over nonzero a from the closed weights; rhs runs
    over the weight prefix of the big code with dual dimension r."""
    if h < 1:
        raise ValueError("h must be at least 1")
    kernel = dual_code_kernel(spec)
    if kernel != (0,):
        raise ValueError(
            f"the map a -> c(a) has nontrivial kernel {kernel}: the dual has "
            "fewer than q words and the q-term moment sum is unavailable"
        )
    ctx = spec.ctx
    lhs = sum(codeword_weight_closed(spec, a) ** h for a in range(1, ctx.q))
    n = dc_cardinality(spec)[2]
    prefix = weight_distribution_prefix(spec, min(n, h)).counts
    rhs = Fraction(0)
    for j in range(min(n, h) + 1):
        if not prefix[j]:
            continue
        inner = Fraction(0)
        for t in range(j, min(h, n) + 1):
            inner += (
                factorial(t)
                * stirling2(h, t)
                * Fraction(2) ** (ctx.r - t)
                * comb(n - j, n - t)
            )
        rhs += (-1) ** j * prefix[j] * inner
    if rhs.denominator != 1:
        raise AssertionError("the power-moment sum must be an integer")
    return lhs, int(rhs)


def moment_lhs_expansion(spec: DoubleCosetSpec, h: int, series: str | None = None) -> int:
    """sum_a w(c(a))^h via the binomial expansion in oracle moments."""
    if not 0 <= h <= H_MAX_LIMIT:
        raise ValueError(f"h must lie in 0..{H_MAX_LIMIT}")
    params = _series_params(spec, series)
    moments = _oracle_moments(spec.ctx, params, h)
    a_cnt = dc_cardinality(spec)[0]
    total = sum(
        comb(h, l) * params.base ** (h - l) * params.c ** l * moments[l]
        for l in range(h + 1)
    )
    value, rem = divmod(a_cnt ** h * total, 1 << h)
    if rem:
        raise AssertionError("the weight-moment expansion must be divisible by 2^h")
    return value

"""Binary linear codes built on the double-coset families.

A coset with elements g_1 < ... < g_N (canonical ordering) induces the
length-N words c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) for a in GF(q).
These words form the dual of the code of interest; everything here works
with that q-element dual: closed-form Hamming weights, the exact weight
distribution of the big primal code (prefix by dynamic programming over
trace classes, full via MacWilliams at tiny lengths), and the duality and
kernel checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .finite_field import FieldCtx, mul, trace
from .kloosterman import BudgetError
from .ominus_groups import (
    DoubleCosetSpec,
    dc_cardinality,
    double_coset_elements,
    exp_sum_dc,
    mat_trace,
    trace_distribution,
)

PREFIX_J_LIMIT = 10 ** 3      # largest weight-prefix cutoff
MACWILLIAMS_N_LIMIT = 64      # largest length for a full distribution
MACWILLIAMS_RANK_LIMIT = 16   # largest dual dimension for a full distribution
DUALITY_N_LIMIT = 24          # largest length for the exhaustive duality check

# (family, sign, n, q) whose a -> c(a) kernel is the two-element subfield
DEGENERATE_KERNEL_SPECS = frozenset({(3, "+", 2, 2), (3, "+", 2, 4), (4, "-", 3, 2)})


@lru_cache(maxsize=None)
def _trace_vector(spec: DoubleCosetSpec) -> tuple[int, ...]:
    return tuple(mat_trace(w) for w in double_coset_elements(spec))


def dual_codeword(spec: DoubleCosetSpec, a: int) -> tuple[int, ...]:
    """c(a): the bit sequence tr(a Tr g_j) over the canonical ordering."""
    ctx = spec.ctx
    if not 0 <= a < ctx.q:
        raise ValueError(f"a must be a field element below {ctx.q}")
    return tuple(trace(ctx, mul(ctx, a, t)) for t in _trace_vector(spec))


def codeword_hex(word: tuple[int, ...]) -> str:
    """Hex packing with the first coordinate as the most significant bit."""
    value = 0
    for bit in word:
        value = (value << 1) | bit
    return "0x%0*X" % (max(1, (len(word) + 3) // 4), value)


def codeword_weight_closed(spec: DoubleCosetSpec, a: int) -> int:
    """Hamming weight of c(a) from the closed exponential-sum forms."""
    if not 0 < a < spec.ctx.q:
        raise ValueError("a must be a nonzero field element")
    total = dc_cardinality(spec)[2]
    weight, rem = divmod(total - exp_sum_dc(spec, a, "closed_form"), 2)
    if rem or weight < 0:
        raise AssertionError("weight must be a nonnegative integer")
    return weight


@dataclass(frozen=True)
class WeightPrefix:
    spec: DoubleCosetSpec
    j_max: int
    counts: tuple[int, ...]


def _binomial_prefix(m: int, j_max: int) -> list[int]:
    """binomial(m, nu) for nu = 0..j_max by the falling-factorial recurrence;
    m may be astronomically large."""
    out = [1]
    for nu in range(1, j_max + 1):
        out.append(out[-1] * (m - nu + 1) // nu)
    return out


def prefix_counts_from_distribution(
    ctx: FieldCtx, class_counts: dict[int, int], j_max: int
) -> tuple[int, ...]:
    """C_j for j <= j_max: the number of ways to pick j coordinates, nu_beta
    from the trace-beta class, with the field sum of picked betas zero.
    Dynamic programming over beta in encoding order; characteristic two makes
    the partial sum depend only on the parities of the nu_beta."""
    if not 0 <= j_max <= PREFIX_J_LIMIT:
        raise ValueError(f"j_max must lie in 0..{PREFIX_J_LIMIT}")
    states: dict[int, list[int]] = {0: [1] + [0] * j_max}
    for beta in range(ctx.q):
        binoms = _binomial_prefix(class_counts.get(beta, 0), j_max)
        new: dict[int, list[int]] = {}
        for psum, arr in states.items():
            for nu in range(j_max + 1):
                ways = binoms[nu]
                if not ways:
                    break
                key = psum ^ beta if nu & 1 else psum
                target = new.setdefault(key, [0] * (j_max + 1))
                for j in range(j_max + 1 - nu):
                    if arr[j]:
                        target[j + nu] += arr[j] * ways
        states = new
    counts = tuple(states.get(0, [0] * (j_max + 1)))
    if counts[0] != 1:
        raise AssertionError("the zero codeword must be counted exactly once")
    if any(c < 0 for c in counts):
        raise AssertionError("weight counts must be nonnegative")
    return counts


def weight_distribution_prefix(spec: DoubleCosetSpec, j_max: int) -> WeightPrefix:
    counts = prefix_counts_from_distribution(
        spec.ctx, trace_distribution(spec, "closed_form"), j_max
    )
    return WeightPrefix(spec, j_max, counts)


@lru_cache(maxsize=None)
def _packed_dual_words(spec: DoubleCosetSpec) -> tuple[int, ...]:
    """Distinct words c(a) packed as integers, bit j = coordinate of g_(j+1)."""
    ctx = spec.ctx
    vec = _trace_vector(spec)
    words = set()
    for a in range(ctx.q):
        acc = 0
        for j, t in enumerate(vec):
            if trace(ctx, mul(ctx, a, t)):
                acc |= 1 << j
        words.add(acc)
    return tuple(sorted(words))


def dual_code_rank(spec: DoubleCosetSpec) -> int:
    size = len(_packed_dual_words(spec))
    rank = size.bit_length() - 1
    if 1 << rank != size:
        raise AssertionError("the dual word count must be a power of two")
    return rank


def full_weight_distribution_small(spec: DoubleCosetSpec) -> tuple[int, ...]:
    """Exact distribution of the big code as dual-of-dual: popcount the
    q-element dual, then apply the MacWilliams transform."""
    length = dc_cardinality(spec)[2]
    if length > MACWILLIAMS_N_LIMIT:
        raise BudgetError(f"full distribution needs length <= {MACWILLIAMS_N_LIMIT}")
    words = _packed_dual_words(spec)
    rank = dual_code_rank(spec)
    if rank > MACWILLIAMS_RANK_LIMIT:
        raise BudgetError(f"full distribution needs dual rank <= {MACWILLIAMS_RANK_LIMIT}")
    dual_counts = [0] * (length + 1)
    for w in words:
        dual_counts[w.bit_count()] += 1
    # C_j = (1/|dual|) sum_i B_i [y^j] (1+y)^(length-i) (1-y)^i
    raw = [0] * (length + 1)
    for i, b_i in enumerate(dual_counts):
        if not b_i:
            continue
        for j in range(length + 1):
            coeff = 0
            for t in range(max(0, j - (length - i)), min(i, j) + 1):
                term = comb(i, t) * comb(length - i, j - t)
                coeff += -term if t & 1 else term
            raw[j] += b_i * coeff
    out = []
    for val in raw:
        c_j, rem = divmod(val, len(words))
        if rem or c_j < 0:
            raise AssertionError("MacWilliams transform must yield nonnegative integers")
        out.append(c_j)
    if sum(out) != 1 << (length - rank):
        raise AssertionError("distribution total must be 2^(length - rank)")
    return tuple(out)


def dual_code_kernel(spec: DoubleCosetSpec) -> tuple[int, ...]:
    """Kernel of a -> c(a), from the closed-form trace-class support."""
    ctx = spec.ctx
    support = [beta for beta, cnt in trace_distribution(spec, "closed_form").items() if cnt]
    return tuple(
        a
        for a in range(ctx.q)
        if all(trace(ctx, mul(ctx, a, beta)) == 0 for beta in support)
    )


def delsarte_check(spec: DoubleCosetSpec) -> bool:
    """The binary dual of the code cut out by the field-valued parity
    condition is exactly {c(a)}: rowspace comparison plus kernel audit."""
    ctx = spec.ctx
    vec = _trace_vector(spec)
    n = len(vec)
    if n > DUALITY_N_LIMIT:
        raise BudgetError(f"duality check needs length <= {DUALITY_N_LIMIT}")
    words = set(_packed_dual_words(spec))
    rows = []
    for k in range(ctx.r):
        row = 0
        for j, t in enumerate(vec):
            if (t >> k) & 1:
                row |= 1 << j
        rows.append(row)
    basis: list[int] = []
    for row in rows:
        cur = row
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
            basis.sort(reverse=True)
    span = {0}
    for b in basis:
        span |= {x ^ b for x in span}
    kernel = tuple(
        a for a in range(ctx.q) if all(trace(ctx, mul(ctx, a, t)) == 0 for t in vec)
    )
    key = (spec.family, spec.sign, spec.n, ctx.q)
    expected = (0, 1) if key in DEGENERATE_KERNEL_SPECS else (0,)
    return span == words and kernel == expected and kernel == dual_code_kernel(spec)

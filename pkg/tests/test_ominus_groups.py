"""Minus-type orthogonal groups: enumeration, cells, cardinalities, sums."""

import random

import pytest

from cosetmoments.finite_field import make_field, trace, units
from cosetmoments.kloosterman import BudgetError, kloosterman_sum
from cosetmoments.ominus_groups import (
    DoubleCosetSpec,
    b_r_sum,
    b_r_sum_closed,
    bruhat_cell,
    bruhat_cell_order,
    dc_cardinality,
    double_coset_elements,
    enumerate_gl,
    enumerate_q_minus,
    enumerate_so2,
    exp_sum_dc,
    gauss_binomial,
    gl_order,
    identity_matrix,
    is_isometry_exhaustive,
    isometry_relations,
    mat_inv,
    mat_mul,
    mat_trace,
    o_minus_order,
    p_minus_order,
    q_minus_order,
    theta_minus,
    trace_distribution,
    transpose,
    weyl_elements,
)

CTX2 = make_field(1)
CTX4 = make_field(2)


# --- matrix helpers -------------------------------------------------------


def test_matrix_basics():
    # the trace accumulates diagonal entries with field addition (xor)
    assert mat_trace(identity_matrix(3)) == 1
    assert mat_trace(identity_matrix(2)) == 0
    assert mat_trace(((2, 0), (0, 3))) == 1
    assert transpose(((1, 0), (1, 1))) == ((1, 1), (0, 1))


def test_inverse_round_trip():
    for ctx in (CTX2, CTX4):
        for m in enumerate_gl(ctx, 2):
            assert mat_mul(ctx, m, mat_inv(ctx, m)) == identity_matrix(2)


# --- the quadratic form ---------------------------------------------------


@pytest.mark.parametrize("ctx", (CTX2, CTX4), ids=("q2", "q4"))
def test_form_is_anisotropic_in_dimension_two(ctx):
    zeros = [
        (z1, z2)
        for z1 in range(ctx.q)
        for z2 in range(ctx.q)
        if theta_minus(ctx, 1, (z1, z2)) == 0
    ]
    assert zeros == [(0, 0)]


@pytest.mark.parametrize("n,q", ((1, 2), (1, 4), (2, 2), (2, 4)))
def test_singular_vector_count(n, q):
    """Minus type: q^(2n-1) - q^n + q^(n-1) singular vectors, zero included."""
    ctx = make_field(q.bit_length() - 1)
    from itertools import product

    count = sum(
        theta_minus(ctx, n, v) == 0 for v in product(range(ctx.q), repeat=2 * n)
    )
    assert count == q ** (2 * n - 1) - q ** n + q ** (n - 1)


def test_isometry_checks_agree_on_all_two_by_two():
    for ctx in (CTX2, CTX4):
        mats = [
            ((a, b), (c, d))
            for a in range(ctx.q)
            for b in range(ctx.q)
            for c in range(ctx.q)
            for d in range(ctx.q)
        ]
        for m in mats:
            assert isometry_relations(ctx, 1, m) == is_isometry_exhaustive(ctx, 1, m)


def test_isometry_checks_agree_on_random_four_by_four():
    rng = random.Random(1729)
    for _ in range(200):
        m = tuple(tuple(rng.randrange(2) for _ in range(4)) for _ in range(4))
        assert isometry_relations(CTX2, 2, m) == is_isometry_exhaustive(CTX2, 2, m)


# --- orders ---------------------------------------------------------------


def test_gl_orders():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(3, 2) == 168
    assert gl_order(2, 4) == 180


def test_gauss_binomials():
    assert gauss_binomial(4, 2, 2) == 35
    assert gauss_binomial(3, 1, 4) == 21
    assert gauss_binomial(2, 2, 8) == 1
    assert gauss_binomial(2, 3, 2) == 0
    assert gauss_binomial(3, -1, 2) == 0


def test_group_orders_frozen():
    assert o_minus_order(2, 1) == 6
    assert o_minus_order(2, 2) == 120
    assert o_minus_order(2, 3) == 51840
    assert q_minus_order(2, 2) == 12
    assert q_minus_order(2, 3) == 576
    assert p_minus_order(2, 2) == 2 * q_minus_order(2, 2)


@pytest.mark.parametrize("n,q", ((1, 2), (2, 2), (2, 4), (3, 2), (3, 8), (4, 4)))
def test_cells_account_for_the_whole_group(n, q):
    # 2n cells (n untwisted, n twisted) of equal paired sizes fill O^-(2n,q)
    total = 2 * sum(bruhat_cell_order(q, n, r) for r in range(n))
    assert total == o_minus_order(q, n)


# --- enumerations ---------------------------------------------------------


def test_so2_enumeration():
    for ctx in (CTX2, CTX4, make_field(3)):
        group = enumerate_so2(ctx)
        assert len(group) == ctx.q + 1
        assert identity_matrix(2) in group
        for m in group:
            assert is_isometry_exhaustive(ctx, 1, m)
        # closure
        products = {mat_mul(ctx, x, y) for x in group for y in group}
        assert products == set(group)


def test_so2_frozen_q2():
    assert enumerate_so2(CTX2) == (
        ((0, 1), (1, 1)),
        ((1, 0), (0, 1)),
        ((1, 1), (1, 0)),
    )


def test_q_minus_enumeration_n1_is_so2():
    assert enumerate_q_minus(CTX2, 1) == enumerate_so2(CTX2)


@pytest.mark.parametrize("n,r", ((2, 1), (2, 2), (3, 1)))
def test_q_minus_enumeration(n, r):
    ctx = make_field(r)
    group = enumerate_q_minus(ctx, n)
    assert len(group) == q_minus_order(ctx.q, n)
    assert identity_matrix(2 * n) in group
    for m in group[:: max(1, len(group) // 32)]:
        assert isometry_relations(ctx, n, m)
    members = set(group)
    sample = group[:: max(1, len(group) // 16)]
    for x in sample:
        for y in sample:
            assert mat_mul(ctx, x, y) in members


def test_q_minus_enumeration_budget():
    with pytest.raises(BudgetError):
        enumerate_q_minus(CTX4, 3)


def test_weyl_elements_are_isometric_involutions():
    for n, ctx in ((2, CTX2), (2, CTX4), (3, CTX2)):
        sigmas, rho = weyl_elements(ctx, n)
        assert len(sigmas) == n
        assert sigmas[0] == identity_matrix(2 * n)
        for w in (*sigmas, rho):
            assert isometry_relations(ctx, n, w)
            assert mat_mul(ctx, w, w) == identity_matrix(2 * n)


def test_bruhat_cells_partition_small_group():
    seen: set = set()
    total = 0
    for r in range(2):
        for twisted in (False, True):
            cell = bruhat_cell(CTX2, 2, r, twisted)
            assert len(cell) == bruhat_cell_order(2, 2, r)
            for m in cell[:: max(1, len(cell) // 16)]:
                assert is_isometry_exhaustive(CTX2, 2, m)
            seen.update(cell)
            total += len(cell)
    assert total == 120
    assert len(seen) == 120


# --- double-coset specs ---------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError, match="n even"):
        DoubleCosetSpec(1, "+", 3, CTX2)
    with pytest.raises(ValueError, match="n odd"):
        DoubleCosetSpec(1, "-", 2, CTX2)
    with pytest.raises(ValueError, match="n >= 4"):
        DoubleCosetSpec(4, "+", 2, CTX2)
    with pytest.raises(ValueError, match="n >= 3"):
        DoubleCosetSpec(2, "-", 1, CTX2)
    with pytest.raises(ValueError, match="family"):
        DoubleCosetSpec(5, "+", 2, CTX2)
    with pytest.raises(ValueError, match="sign"):
        DoubleCosetSpec(1, "plus", 2, CTX2)


def test_spec_properties():
    spec = DoubleCosetSpec(3, "+", 2, CTX2)
    assert spec.sigma_index == 0
    assert spec.rho_twisted
    assert spec.sign_value == 1
    spec = DoubleCosetSpec(1, "-", 3, CTX2)
    assert spec.sigma_index == 2
    assert not spec.rho_twisted
    assert spec.sign_value == -1


# closed-form (A, B, N) anchors, cross-checked against full enumeration
CARDINALITY_ANCHORS = {
    (1, "+", 2, 2): (8, 6, 48),
    (2, "+", 2, 2): (4, 3, 12),
    (3, "+", 2, 2): (12, 1, 12),
    (1, "-", 1, 2): (1, 3, 3),
    (1, "-", 3, 2): (1024, 18, 18432),
    (2, "-", 3, 2): (384, 18, 6912),
    (3, "-", 3, 2): (1152, 6, 6912),
    (4, "-", 3, 2): (192, 3, 576),
}


@pytest.mark.parametrize("key", sorted(CARDINALITY_ANCHORS))
def test_cardinality_anchors(key):
    fam, sign, n, q = key
    ctx = make_field(q.bit_length() - 1)
    spec = DoubleCosetSpec(fam, sign, n, ctx)
    assert dc_cardinality(spec) == CARDINALITY_ANCHORS[key]


def test_double_coset_elements_match_cardinality():
    spec = DoubleCosetSpec(1, "+", 2, CTX2)
    cell = double_coset_elements(spec)
    assert len(cell) == dc_cardinality(spec)[2]
    assert cell == bruhat_cell(CTX2, 2, 1, False)


# --- trace distributions and character sums -------------------------------


def test_trace_distribution_closed_equals_enumerated():
    for fam in (1, 2, 3):
        spec = DoubleCosetSpec(fam, "+", 2, CTX4)
        assert trace_distribution(spec, "enumerated") == trace_distribution(spec)


def test_trace_distribution_frozen():
    assert trace_distribution(DoubleCosetSpec(3, "+", 2, CTX2)) == {0: 12, 1: 0}
    assert trace_distribution(DoubleCosetSpec(4, "-", 3, CTX2)) == {0: 576, 1: 0}
    assert trace_distribution(DoubleCosetSpec(3, "+", 2, CTX4)) == {
        0: 80,
        1: 160,
        2: 0,
        3: 0,
    }


def test_trace_distribution_sums_to_coset_size():
    for key in CARDINALITY_ANCHORS:
        fam, sign, n, q = key
        spec = DoubleCosetSpec(fam, sign, n, make_field(q.bit_length() - 1))
        dist = trace_distribution(spec)
        assert sum(dist.values()) == dc_cardinality(spec)[2]
        assert all(v >= 0 for v in dist.values())


def test_minus_n1_distribution_formula():
    """1 at beta = 0, else 2 exactly when tr(1/beta) = 1."""
    from cosetmoments.finite_field import inv

    for r in (1, 2, 3):
        ctx = make_field(r)
        dist = trace_distribution(DoubleCosetSpec(1, "-", 1, ctx))
        assert dist[0] == 1
        for beta in units(ctx):
            assert dist[beta] == 2 * trace(ctx, inv(ctx, beta))


def test_exp_sum_closed_equals_enumerated():
    for fam in (1, 2, 3):
        spec = DoubleCosetSpec(fam, "+", 2, CTX4)
        for a in units(CTX4):
            assert exp_sum_dc(spec, a, "enumerated") == exp_sum_dc(spec, a)


def test_exp_sum_closed_forms():
    """Plus sign: AK for family 1, -AK^2 for family 2; minus sign flips,
    and family 4 carries the q^2 - q shift."""
    q = CTX4.q
    spec1 = DoubleCosetSpec(1, "+", 2, CTX4)
    spec2 = DoubleCosetSpec(2, "+", 2, CTX4)
    spec4 = DoubleCosetSpec(4, "-", 3, CTX4)
    for a in units(CTX4):
        k = kloosterman_sum(CTX4, 1, a)
        assert exp_sum_dc(spec1, a) == dc_cardinality(spec1)[0] * k
        assert exp_sum_dc(spec2, a) == -dc_cardinality(spec2)[0] * k * k
        assert exp_sum_dc(spec4, a) == dc_cardinality(spec4)[0] * (k * k + q * q - q)


def test_exp_sum_validation():
    spec = DoubleCosetSpec(1, "+", 2, CTX2)
    with pytest.raises(ValueError):
        exp_sum_dc(spec, 0)
    with pytest.raises(ValueError):
        exp_sum_dc(spec, 1, "fast")
    with pytest.raises(ValueError):
        trace_distribution(spec, "fast")


# --- the symmetric-matrix character sum -----------------------------------

B_R_ANCHORS = {
    (2, 1): -2,
    (2, 2): 16,
    (2, 3): -224,
    (4, 1): -12,
    (4, 2): 768,
}


@pytest.mark.parametrize("q,dim", sorted(B_R_ANCHORS))
def test_symmetric_sum_closed_anchors(q, dim):
    ctx = make_field(q.bit_length() - 1)
    assert b_r_sum_closed(ctx, dim) == B_R_ANCHORS[(q, dim)]


@pytest.mark.parametrize("q,dim", sorted(B_R_ANCHORS))
def test_symmetric_sum_enumeration_matches_closed(q, dim):
    ctx = make_field(q.bit_length() - 1)
    assert b_r_sum(ctx, dim) == b_r_sum_closed(ctx, dim)


def test_symmetric_sum_is_twist_independent():
    for ctx in (CTX2, CTX4):
        for dim in (1, 2):
            vals = {b_r_sum(ctx, dim, twist=t) for t in units(ctx)}
            assert vals == {b_r_sum_closed(ctx, dim)}


def test_symmetric_sum_budget():
    with pytest.raises(BudgetError):
        b_r_sum(CTX4, 3)

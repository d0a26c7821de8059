"""The minus-type orthogonal groups O^-(2n,q) over GF(2^r).

Implements the defining quadratic form, the isometry conditions, the
parabolic subgroup Q^-, the Weyl-type elements sigma_r and rho, the eight
double-coset families with their closed-form cardinalities, exponential
sums, and trace distributions.  Exhaustive enumeration (budget-gated) is
the oracle for every closed form.

Matrices are tuples of row tuples of field elements; field addition is
XOR throughout.  Enumerations return canonically sorted tuples (row-major
lexicographic on entry encodings) so all derived orderings are
reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .finite_field import FieldCtx, inv, lambda_char, mul, trace
from .kloosterman import BudgetError, kloosterman_sum

Matrix = tuple[tuple[int, ...], ...]

Q_ENUM_BUDGET = 10 ** 4       # largest |Q^-| that may be enumerated
PRODUCT_BUDGET = 10 ** 7      # largest |Q^-|^2 for two-sided products
SCAN_BUDGET = 10 ** 6         # largest q^(2n) for the exhaustive form check
GL_ENUM_BUDGET = 10 ** 6      # largest q^(k^2) candidate pool for GL(k,q)
SYM_SUM_BUDGET = 10 ** 7      # largest term count for the symmetric-matrix sum


# ---------------------------------------------------------------------------
# matrix plumbing


def identity_matrix(size: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(a ^ b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def mat_mul(ctx: FieldCtx, x: Matrix, y: Matrix) -> Matrix:
    yt = tuple(zip(*y))
    out = []
    for row in x:
        orow = []
        for col in yt:
            acc = 0
            for a, b in zip(row, col):
                acc ^= mul(ctx, a, b)
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def mat_vec(ctx: FieldCtx, m: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for row in m:
        acc = 0
        for a, b in zip(row, v):
            acc ^= mul(ctx, a, b)
        out.append(acc)
    return tuple(out)


def mat_trace(m: Matrix) -> int:
    acc = 0
    for i, row in enumerate(m):
        acc ^= row[i]
    return acc


def mat_inv(ctx: FieldCtx, m: Matrix) -> Matrix:
    """Inverse by Gaussian elimination; raises ValueError on singular input."""
    k = len(m)
    aug = [list(m[i]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    for col in range(k):
        piv = next((i for i in range(col, k) if aug[i][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = inv(ctx, aug[col][col])
        aug[col] = [mul(ctx, scale, x) for x in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                fac = aug[i][col]
                aug[i] = [x ^ mul(ctx, fac, y) for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[k:]) for row in aug)


def _is_nonsingular(ctx: FieldCtx, m: Matrix) -> bool:
    try:
        mat_inv(ctx, m)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# the quadratic form and isometry checks


def theta_minus(ctx: FieldCtx, n: int, v: tuple[int, ...]) -> int:
    """The minus-type form: pairing of the two (n-1)-blocks plus an
    anisotropic z1^2 + z1 z2 + a z2^2 tail on the last two coordinates."""
    if len(v) != 2 * n:
        raise ValueError(f"vector must have length {2 * n}, got {len(v)}")
    acc = 0
    for j in range(n - 1):
        acc ^= mul(ctx, v[j], v[n - 1 + j])
    z1, z2 = v[2 * n - 2], v[2 * n - 1]
    acc ^= mul(ctx, z1, z1) ^ mul(ctx, z1, z2) ^ mul(ctx, ctx.a_param, mul(ctx, z2, z2))
    return acc


def is_isometry_exhaustive(ctx: FieldCtx, n: int, m: Matrix) -> bool:
    """theta(Mv) = theta(v) for every vector; budget-gated full scan."""
    if ctx.q ** (2 * n) > SCAN_BUDGET:
        raise BudgetError(f"exhaustive form check needs q^(2n) <= {SCAN_BUDGET}")
    for v in product(range(ctx.q), repeat=2 * n):
        if theta_minus(ctx, n, mat_vec(ctx, m, v)) != theta_minus(ctx, n, v):
            return False
    return True


# Shape-carrying blocks (rows, cols, entries) so the n = 1 case, where the
# (n-1)-sized blocks are empty, falls out of the same code path.
_Block = tuple[int, int, Matrix]


def _blk(m: Matrix, r0: int, c0: int, rows: int, cols: int) -> _Block:
    return rows, cols, tuple(tuple(m[r0 + i][c0 + j] for j in range(cols)) for i in range(rows))


def _btrans(b: _Block) -> _Block:
    rows, cols, e = b
    return cols, rows, tuple(tuple(e[i][j] for i in range(rows)) for j in range(cols))


def _bmul(ctx: FieldCtx, x: _Block, y: _Block) -> _Block:
    rx, cx, ex = x
    ry, cy, ey = y
    if cx != ry:
        raise AssertionError("block shape mismatch")
    out = []
    for i in range(rx):
        row = []
        for j in range(cy):
            acc = 0
            for t in range(cx):
                acc ^= mul(ctx, ex[i][t], ey[t][j])
            row.append(acc)
        out.append(tuple(row))
    return rx, cy, tuple(out)


def _badd(x: _Block, y: _Block) -> _Block:
    rx, cx, ex = x
    ry, cy, ey = y
    if (rx, cx) != (ry, cy):
        raise AssertionError("block shape mismatch")
    return rx, cx, tuple(tuple(a ^ b for a, b in zip(r1, r2)) for r1, r2 in zip(ex, ey))


def _balt(b: _Block) -> bool:
    """Alternating in characteristic two: symmetric with zero diagonal."""
    rows, cols, e = b
    if rows != cols:
        raise AssertionError("alternating check needs a square block")
    for i in range(rows):
        if e[i][i]:
            return False
        for j in range(i + 1, rows):
            if e[i][j] != e[j][i]:
                return False
    return True


def _bident(k: int) -> _Block:
    return k, k, identity_matrix(k)


def _bzero(rows: int, cols: int) -> _Block:
    return rows, cols, tuple((0,) * cols for _ in range(rows))


def isometry_relations(ctx: FieldCtx, n: int, m: Matrix) -> bool:
    """The six block conditions equivalent to preserving the form.

    With M = [[A,B,e],[C,D,f],[g,h,i]] (blocks of sizes n-1, n-1, 2) and
    delta the Gram matrix of the anisotropic tail, eta its polarization:
    three alternating conditions (quadratic parts) and three bilinear
    relations (cross terms).
    """
    if len(m) != 2 * n or any(len(row) != 2 * n for row in m):
        raise ValueError(f"matrix must be {2 * n} x {2 * n}")
    k = n - 1
    delta: _Block = (2, 2, ((1, 1), (0, ctx.a_param)))
    eta: _Block = (2, 2, ((0, 1), (1, 0)))
    blk_a = _blk(m, 0, 0, k, k)
    blk_b = _blk(m, 0, k, k, k)
    blk_e = _blk(m, 0, 2 * k, k, 2)
    blk_c = _blk(m, k, 0, k, k)
    blk_d = _blk(m, k, k, k, k)
    blk_f = _blk(m, k, 2 * k, k, 2)
    blk_g = _blk(m, 2 * k, 0, 2, k)
    blk_h = _blk(m, 2 * k, k, 2, k)
    blk_i = _blk(m, 2 * k, 2 * k, 2, 2)
    ta, tb, tc = _btrans(blk_a), _btrans(blk_b), _btrans(blk_c)
    te, tg, th, ti = _btrans(blk_e), _btrans(blk_g), _btrans(blk_h), _btrans(blk_i)

    def mm(x: _Block, y: _Block) -> _Block:
        return _bmul(ctx, x, y)

    return (
        _balt(_badd(mm(ta, blk_c), mm(mm(tg, delta), blk_g)))
        and _balt(_badd(mm(tb, blk_d), mm(mm(th, delta), blk_h)))
        and _balt(_badd(_badd(mm(te, blk_f), mm(mm(ti, delta), blk_i)), delta))
        and _badd(_badd(mm(ta, blk_d), mm(tc, blk_b)), mm(mm(tg, eta), blk_h)) == _bident(k)
        and _badd(_badd(mm(ta, blk_f), mm(tc, blk_e)), mm(mm(tg, eta), blk_i)) == _bzero(k, 2)
        and _badd(_badd(mm(tb, blk_f), mm(_btrans(blk_d), blk_e)), mm(mm(th, eta), blk_i))
        == _bzero(k, 2)
    )


# ---------------------------------------------------------------------------
# orders and indices


def gl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for j in range(1, n + 1):
        out *= q ** j - 1
    return out


def gauss_binomial(n: int, r: int, q: int) -> int:
    """Gaussian binomial coefficient; 0 outside 0 <= r <= n."""
    if r < 0 or r > n:
        return 0
    num = 1
    den = 1
    for j in range(r):
        num *= q ** (n - j) - 1
        den *= q ** (r - j) - 1
    val, rem = divmod(num, den)
    if rem:
        raise AssertionError("Gaussian binomial must be an integer")
    return val


def so2_order(q: int) -> int:
    return q + 1


def q_minus_order(q: int, n: int) -> int:
    return (q + 1) * gl_order(n - 1, q) * q ** ((n - 1) * (n + 2) // 2)


def p_minus_order(q: int, n: int) -> int:
    return 2 * q_minus_order(q, n)


def o_minus_order(q: int, n: int) -> int:
    out = 2 * q ** (n * n - n) * (q ** n + 1)
    for j in range(1, n):
        out *= q ** (2 * j) - 1
    return out


def bruhat_cell_order(q: int, n: int, r: int) -> int:
    """|Q^- sigma_r Q^-| (equal to its rho-twisted twin) in closed form."""
    out = (q + 1) * q ** (n * n - n)
    for j in range(1, n):
        out *= q ** j - 1
    return out * gauss_binomial(n - 1, r, q) * q ** (r * (r - 1) // 2 + 2 * r)


def parabolic_indices(ctx: FieldCtx, n: int, r: int) -> tuple[int, int]:
    """(order of the sigma_r stabilizer pair subgroup in P^-, index of its
    Q^- analogue), tied by |Q^- sigma_r Q^-| = |Q^-| * index."""
    if not 0 <= r <= n - 1:
        raise ValueError(f"r must lie in 0..{n - 1}, got {r}")
    q = ctx.q
    exp2 = (n - 1) * (n + 2) + r * (2 * n - 3 * r - 5)
    if exp2 % 2:
        raise AssertionError("stabilizer exponent must be even")
    a_ord = 2 * (q + 1) * gl_order(r, q) * gl_order(n - 1 - r, q) * Fraction(q) ** (exp2 // 2)
    if a_ord.denominator != 1:
        raise AssertionError("stabilizer order must be an integer")
    index = gauss_binomial(n - 1, r, q) * q ** (r * (r + 3) // 2)
    return int(a_ord), index


# ---------------------------------------------------------------------------
# constructive enumeration


O2_COSET_REP: Matrix = ((1, 1), (0, 1))  # generates O^-(2,q) over SO^-(2,q)


@lru_cache(maxsize=None)
def enumerate_so2(ctx: FieldCtx) -> tuple[Matrix, ...]:
    """All norm-one elements [[d1, a d2], [d2, d1 + d2]]; exactly q + 1."""
    a = ctx.a_param
    out = []
    for d1 in range(ctx.q):
        for d2 in range(ctx.q):
            norm = mul(ctx, d1, d1) ^ mul(ctx, d1, d2) ^ mul(ctx, a, mul(ctx, d2, d2))
            if norm == 1:
                out.append(((d1, mul(ctx, a, d2)), (d2, d1 ^ d2)))
    if len(out) != so2_order(ctx.q):
        raise AssertionError("norm-one solution count must be q + 1")
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def enumerate_gl(ctx: FieldCtx, k: int) -> tuple[Matrix, ...]:
    if k < 1:
        raise ValueError("enumerate_gl needs k >= 1")
    if ctx.q ** (k * k) > GL_ENUM_BUDGET:
        raise BudgetError(f"GL({k},{ctx.q}) candidate pool exceeds {GL_ENUM_BUDGET}")
    out = []
    for entries in product(range(ctx.q), repeat=k * k):
        m = tuple(entries[i * k : (i + 1) * k] for i in range(k))
        if _is_nonsingular(ctx, m):
            out.append(m)
    if len(out) != gl_order(k, ctx.q):
        raise AssertionError("GL enumeration count disagrees with its order")
    return tuple(sorted(out))


_ETA: Matrix = ((0, 1), (1, 0))


@lru_cache(maxsize=None)
def enumerate_q_minus(ctx: FieldCtx, n: int) -> tuple[Matrix, ...]:
    """Constructive enumeration of Q^-(2n,q) from its parametrization:
    diag(A, tA^-1, i) times a unipotent factor over (A, i, h, B) with
    tB + th delta h alternating.  For n = 1 it degenerates to SO^-(2,q)."""
    size = q_minus_order(ctx.q, n)
    if size > Q_ENUM_BUDGET:
        raise BudgetError(f"|Q^-| = {size} exceeds the enumeration budget {Q_ENUM_BUDGET}")
    if n == 1:
        return enumerate_so2(ctx)
    q = ctx.q
    k = n - 1
    delta: Matrix = ((1, 1), (0, ctx.a_param))
    upper_slots = [(u, v) for u in range(k) for v in range(u + 1, k)]
    out = set()
    for blk_a in enumerate_gl(ctx, k):
        ta_inv = transpose(mat_inv(ctx, blk_a))
        for so2 in enumerate_so2(ctx):
            eta_i = mat_mul(ctx, transpose(so2), mat_mul(ctx, _ETA, so2))
            for hvals in product(range(q), repeat=2 * k):
                h = (hvals[:k], hvals[k:])
                th = transpose(h)
                sym = mat_mul(ctx, th, mat_mul(ctx, delta, h))
                blk_e = mat_mul(ctx, blk_a, mat_mul(ctx, th, eta_i))
                ih = mat_mul(ctx, so2, h)
                for upper in product(range(q), repeat=len(upper_slots)):
                    b = [[0] * k for _ in range(k)]
                    for idx in range(k):
                        b[idx][idx] = sym[idx][idx]
                    for (u, v), val in zip(upper_slots, upper):
                        b[u][v] = val
                        b[v][u] = val ^ sym[u][v] ^ sym[v][u]
                    ab = mat_mul(ctx, blk_a, tuple(tuple(row) for row in b))
                    rows = []
                    for idx in range(k):
                        rows.append(blk_a[idx] + ab[idx] + blk_e[idx])
                    for idx in range(k):
                        rows.append((0,) * k + ta_inv[idx] + (0, 0))
                    for idx in range(2):
                        rows.append((0,) * k + ih[idx] + so2[idx])
                    out.add(tuple(rows))
    if len(out) != size:
        raise AssertionError("parametrization of Q^- must be bijective")
    return tuple(sorted(out))


def weyl_elements(ctx: FieldCtx, n: int) -> tuple[tuple[Matrix, ...], Matrix]:
    """(sigma_0..sigma_(n-1), rho): sigma_r swaps the first r coordinates of
    the two pairing blocks; rho acts as [[1,1],[0,1]] on the tail plane."""
    k = n - 1
    sigmas = []
    for r in range(n):
        perm = list(range(2 * n))
        for j in range(r):
            perm[j], perm[k + j] = perm[k + j], perm[j]
        sigmas.append(
            tuple(tuple(1 if c == perm[rw] else 0 for c in range(2 * n)) for rw in range(2 * n))
        )
    rho_rows = [list(row) for row in identity_matrix(2 * n)]
    rho_rows[2 * n - 2][2 * n - 1] = 1
    rho = tuple(tuple(row) for row in rho_rows)
    return tuple(sigmas), rho


# ---------------------------------------------------------------------------
# double cosets


def _pack_rows(m: Matrix) -> tuple[int, ...]:
    return tuple(sum(bit << j for j, bit in enumerate(row)) for row in m)


def _unpack_rows(packed: tuple[int, ...], size: int) -> Matrix:
    return tuple(tuple((row >> j) & 1 for j in range(size)) for row in packed)


def _packed_mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for bits in x:
        acc = 0
        while bits:
            low = bits & -bits
            acc ^= y[low.bit_length() - 1]
            bits ^= low
        out.append(acc)
    return tuple(out)


def _rho_left_mul(m: Matrix) -> Matrix:
    # only the next-to-last row changes: it absorbs the last row
    rows = list(m)
    rows[-2] = tuple(a ^ b for a, b in zip(rows[-2], rows[-1]))
    return tuple(rows)


@lru_cache(maxsize=None)
def bruhat_cell(ctx: FieldCtx, n: int, r: int, twisted: bool = False) -> tuple[Matrix, ...]:
    """The double coset Q^- sigma_r Q^- (rho-twisted when requested) by
    direct two-sided products with set deduplication."""
    if not 0 <= r <= n - 1:
        raise ValueError(f"r must lie in 0..{n - 1}, got {r}")
    if twisted:
        base = bruhat_cell(ctx, n, r, False)
        return tuple(sorted(_rho_left_mul(w) for w in base))
    qm = enumerate_q_minus(ctx, n)
    if r == 0:
        return qm  # sigma_0 is the identity and Q^- is a group
    if len(qm) ** 2 > PRODUCT_BUDGET:
        raise BudgetError(f"|Q^-|^2 = {len(qm) ** 2} exceeds the product budget {PRODUCT_BUDGET}")
    sigma = weyl_elements(ctx, n)[0][r]
    seen: set = set()
    if ctx.q == 2:
        packed = [_pack_rows(w) for w in qm]
        sig = _pack_rows(sigma)
        lefts = [_packed_mul(x, sig) for x in packed]
        for left in lefts:
            for y in packed:
                seen.add(_packed_mul(left, y))
        return tuple(sorted(_unpack_rows(w, 2 * n) for w in seen))
    lefts = [mat_mul(ctx, x, sigma) for x in qm]
    for left in lefts:
        for y in qm:
            seen.add(mat_mul(ctx, left, y))
    return tuple(sorted(seen))


_SIGMA_SHIFT = {1: 1, 2: 2, 3: 2, 4: 3}
_MIN_N = {
    ("+", 1): 2, ("+", 2): 2, ("+", 3): 2, ("+", 4): 4,
    ("-", 1): 1, ("-", 2): 3, ("-", 3): 3, ("-", 4): 3,
}


@dataclass(frozen=True)
class DoubleCosetSpec:
    family: int
    sign: str
    n: int
    ctx: FieldCtx

    def __post_init__(self) -> None:
        if self.family not in (1, 2, 3, 4):
            raise ValueError(f"family must be 1..4, got {self.family}")
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        parity = 0 if self.sign == "+" else 1
        if self.n % 2 != parity:
            kind = "even" if parity == 0 else "odd"
            raise ValueError(f"sign {self.sign} families need n {kind}, got n = {self.n}")
        least = _MIN_N[(self.sign, self.family)]
        if self.n < least:
            raise ValueError(
                f"family {self.family} with sign {self.sign} needs n >= {least}, got {self.n}"
            )

    @property
    def sigma_index(self) -> int:
        return self.n - _SIGMA_SHIFT[self.family]

    @property
    def rho_twisted(self) -> bool:
        return self.family in (3, 4)

    @property
    def sign_value(self) -> int:
        return 1 if self.sign == "+" else -1


def double_coset_elements(spec: DoubleCosetSpec) -> tuple[Matrix, ...]:
    return bruhat_cell(spec.ctx, spec.n, spec.sigma_index, spec.rho_twisted)


def _oddprod(q: int, half: int) -> int:
    out = 1
    for j in range(1, half + 1):
        out *= q ** (2 * j - 1) - 1
    return out


def _evenprod(q: int, half: int) -> int:
    out = 1
    for j in range(1, half + 1):
        out *= q ** (2 * j) - 1
    return out


def _q_pow_quarter(q: int, numerator: int) -> int:
    e, rem = divmod(numerator, 4)
    if rem:
        raise AssertionError("exponent numerator must be divisible by 4")
    return q ** e


def dc_cardinality(spec: DoubleCosetSpec) -> tuple[int, int, int]:
    """Closed-form (A, B, N) with N = A * B the double-coset size."""
    q, n, fam = spec.ctx.q, spec.n, spec.family
    if spec.sign == "+":
        half = (n - 2) // 2
        pa = _oddprod(q, half)
        pb = _evenprod(q, half)
        if fam == 1:
            a_cnt = _q_pow_quarter(q, 5 * n * n - 2 * n - 4) * (q ** (n - 1) - 1) * pa
            b_cnt = (q + 1) * _q_pow_quarter(q, n * n) * pb
        elif fam == 2:
            a_cnt = _q_pow_quarter(q, 5 * n * n - 2 * n - 8) * gauss_binomial(n - 1, 1, q) * pa
            b_cnt = (q + 1) * _q_pow_quarter(q, (n - 2) ** 2) * (q ** (n - 1) - 1) * pb
        elif fam == 3:
            a_cnt = (q + 1) * _q_pow_quarter(q, 5 * n * n - 2 * n - 8) * gauss_binomial(n - 1, 1, q) * pa
            b_cnt = _q_pow_quarter(q, (n - 2) ** 2) * (q ** (n - 1) - 1) * pb
        else:
            a_cnt = (q + 1) * _q_pow_quarter(q, 5 * n * n - 6 * n - 4) * gauss_binomial(n - 1, 2, q) * pa
            b_cnt = _q_pow_quarter(q, (n - 2) ** 2) * (q ** (n - 1) - 1) * pb
    else:
        half = (n - 1) // 2
        pa = _oddprod(q, half)
        pb = _evenprod(q, half)
        if fam == 1:
            a_cnt = _q_pow_quarter(q, 5 * (n * n - 1)) * pa
            b_cnt = (q + 1) * _q_pow_quarter(q, (n - 1) ** 2) * pb
        elif fam == 2:
            a_cnt = _q_pow_quarter(q, 5 * n * n - 4 * n - 5) * gauss_binomial(n - 1, 1, q) * pa
            b_cnt = (q + 1) * _q_pow_quarter(q, (n - 1) ** 2) * pb
        elif fam == 3:
            a_cnt = (q + 1) * _q_pow_quarter(q, 5 * n * n - 4 * n - 5) * gauss_binomial(n - 1, 1, q) * pa
            b_cnt = _q_pow_quarter(q, (n - 1) ** 2) * pb
        else:
            a_cnt = (
                (q + 1)
                * _q_pow_quarter(q, 5 * n * n - 4 * n - 9)
                * gauss_binomial(n - 1, 2, q)
                * _oddprod(q, (n - 3) // 2)
            )
            b_cnt = (
                _q_pow_quarter(q, (n - 3) ** 2)
                * (q ** (n - 2) - 1)
                * (q ** (n - 1) - 1)
                * _evenprod(q, (n - 3) // 2)
            )
    total = a_cnt * b_cnt
    if total != bruhat_cell_order(q, n, spec.sigma_index):
        raise AssertionError("family cardinality disagrees with the Bruhat cell order")
    return a_cnt, b_cnt, total


# ---------------------------------------------------------------------------
# exponential sums and trace distributions


@lru_cache(maxsize=None)
def _trace_counts(spec: DoubleCosetSpec, mode: str) -> tuple[int, ...]:
    ctx = spec.ctx
    q = ctx.q
    if mode == "enumerated":
        counted = Counter(mat_trace(w) for w in double_coset_elements(spec))
        return tuple(counted.get(beta, 0) for beta in range(q))
    if mode != "closed_form":
        raise ValueError(f"mode must be 'enumerated' or 'closed_form', got {mode!r}")
    a_cnt, b_cnt, _ = dc_cardinality(spec)
    s = spec.sign_value
    fam = spec.family
    out = []
    for beta in range(q):
        if fam in (1, 3):
            if beta == 0:
                eps = 1
            elif trace(ctx, inv(ctx, beta)) == 0:
                eps = q + 1
            else:
                eps = 1 - q
        elif fam == 2:
            if beta == 0:
                eps = -(q * q - q - 1)
            else:
                eps = -(q * kloosterman_sum(ctx, 1, inv(ctx, beta)) - q - 1)
        else:
            if beta == 0:
                eps = -(q ** 3 - q * q - 1)
            else:
                eps = -(q * kloosterman_sum(ctx, 1, inv(ctx, beta)) - q * q - 1)
        count, rem = divmod(a_cnt * (b_cnt + s * eps), q)
        if rem or count < 0:
            raise AssertionError("trace-class count must be a nonnegative integer")
        out.append(count)
    return tuple(out)


def trace_distribution(spec: DoubleCosetSpec, mode: str = "closed_form") -> dict[int, int]:
    """Counts of double-coset elements by matrix trace, keyed by field element."""
    return dict(enumerate(_trace_counts(spec, mode)))


def exp_sum_dc(spec: DoubleCosetSpec, a: int, mode: str = "closed_form") -> int:
    """The character sum of lambda(a * trace) over the double coset."""
    ctx = spec.ctx
    if not 0 < a < ctx.q:
        raise ValueError(f"a must be a nonzero element of GF({ctx.q})")
    if mode == "enumerated":
        dist = trace_distribution(spec, "enumerated")
        return sum(cnt * lambda_char(ctx, mul(ctx, a, beta)) for beta, cnt in dist.items())
    if mode != "closed_form":
        raise ValueError(f"mode must be 'enumerated' or 'closed_form', got {mode!r}")
    a_cnt, _, _ = dc_cardinality(spec)
    k = kloosterman_sum(ctx, 1, a)
    s = spec.sign_value
    if spec.family in (1, 3):
        return s * a_cnt * k
    if spec.family == 2:
        return -s * a_cnt * k * k
    return -s * a_cnt * (k * k + ctx.q * ctx.q - ctx.q)


# ---------------------------------------------------------------------------
# the symmetric-matrix character sum


def _symmetric_matrices(ctx: FieldCtx, r: int):
    slots = [(u, v) for u in range(r) for v in range(u, r)]
    for vals in product(range(ctx.q), repeat=len(slots)):
        m = [[0] * r for _ in range(r)]
        for (u, v), val in zip(slots, vals):
            m[u][v] = val
            m[v][u] = val
        yield tuple(tuple(row) for row in m)


def b_r_sum(ctx: FieldCtx, r: int, twist: int = 1) -> int:
    """Direct double sum of lambda(twist * Tr(delta th B h)) over nonsingular
    symmetric B and all r x 2 matrices h."""
    if r not in (1, 2, 3):
        raise ValueError(f"r must be 1, 2, or 3, got {r}")
    if not 0 < twist < ctx.q:
        raise ValueError("twist must be a nonzero field element")
    q = ctx.q
    if q ** (r * (r + 1) // 2 + 2 * r) > SYM_SUM_BUDGET:
        raise BudgetError("symmetric-matrix sum exceeds its term budget")
    a = ctx.a_param
    total = 0
    for sym in _symmetric_matrices(ctx, r):
        if not _is_nonsingular(ctx, sym):
            continue
        for hvals in product(range(q), repeat=2 * r):
            h = tuple((hvals[2 * t], hvals[2 * t + 1]) for t in range(r))
            x00 = x10 = x11 = 0
            for s_i in range(r):
                for t_i in range(r):
                    bst = sym[s_i][t_i]
                    if not bst:
                        continue
                    x00 ^= mul(ctx, h[s_i][0], mul(ctx, bst, h[t_i][0]))
                    x10 ^= mul(ctx, h[s_i][1], mul(ctx, bst, h[t_i][0]))
                    x11 ^= mul(ctx, h[s_i][1], mul(ctx, bst, h[t_i][1]))
            arg = x00 ^ x10 ^ mul(ctx, a, x11)
            total += lambda_char(ctx, mul(ctx, twist, arg))
    return total


def b_r_sum_closed(ctx: FieldCtx, r: int) -> int:
    """Closed form of the symmetric-matrix sum; independent of the character."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    q = ctx.q
    if r % 2 == 0:
        e, rem = divmod(r * (r + 6), 4)
        if rem:
            raise AssertionError("even-r exponent must be integral")
        return q ** e * _oddprod(q, r // 2)
    e, rem = divmod(r * r + 4 * r - 1, 4)
    if rem:
        raise AssertionError("odd-r exponent must be integral")
    return -(q ** e) * _oddprod(q, (r + 1) // 2)

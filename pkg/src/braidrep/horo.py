"""Horospherical machinery for degenerate contexts: flag bases, unipotent
block patterns, the translation-part map, the commutator pairing, witness
braids, orbit rank scans and the lattice vectors in the center.

Everything lives on the quotient space of an eps0 = 1 context, for a chosen
index m with d | (k_1 + ... + k_m).  The flag basis is

    (w, g_1, ..., g_{m-2}, g_{m+2}, ..., g_{n-1}, g_m)

in quotient coordinates, with w isotropic and orthogonal to the middle block.
In this basis the Gram matrix has the arrow shape

    [ 0    0    -mu ]
    [ 0   G_W    0  ]
    [ mu   0     *  ]

and unipotent elements are exactly the matrices (1, x^T, a; 0, I, x'; 0, 0, 1)
with x' = mu * G_W^{-1} conj(x) and a - conj(a) = mu * (x^T G_W^{-1} conj(x)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclo import CycloNum, euler_phi, zeta
from .errors import (
    BadM,
    ConstraintViolation,
    NoNonzeroPairing,
    NotDegenerate,
    NotParabolicElement,
    NotUnipotentElement,
    ShapeMismatch,
)
from .linalg import (
    CycloMatrix,
    RationalSpan,
    Vector,
    rank_over_rationals,
    realify,
    solve_rational,
)
from .rep import (
    BraidWord,
    RepContext,
    commutator,
    evaluate_word,
    quotient_gram,
    quotient_matrix,
)

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True, eq=False)
class FlagContext:
    ctx: RepContext
    m: int
    w: Vector                      # isotropic line generator, quotient coordinates
    flag_basis: tuple[Vector, ...]
    P: CycloMatrix                 # columns = flag basis in quotient coordinates
    P_inv: CycloMatrix
    gram_quot: CycloMatrix         # descended Gram on g_1, ..., g_{n-2}
    gram_flag: CycloMatrix         # P* gram_quot P, arrow shaped
    G_W: CycloMatrix               # middle (n-4) block of gram_flag
    G_W_inv: CycloMatrix
    mu: CycloNum

    @property
    def middle_size(self) -> int:
        return self.ctx.n - 4

    @property
    def lower_slice(self) -> slice:
        """Middle coordinates carried by g_1 .. g_{m-2}."""
        return slice(0, self.m - 2)

    @property
    def upper_slice(self) -> slice:
        """Middle coordinates carried by g_{m+2} .. g_{n-1}."""
        return slice(self.m - 2, self.ctx.n - 4)


def make_flag(ctx: RepContext, m: int) -> FlagContext:
    """Build the flag data for index m; validates every structural invariant."""
    if ctx.eps0 != 1:
        raise NotDegenerate("flag requires eps0 = 1")
    n = ctx.n
    if not 2 <= m <= n - 2:
        raise BadM(f"need 2 <= m <= {n - 2}, got {m}")
    if ctx.prefix_sums[m] % ctx.d != 0:
        raise BadM(f"d does not divide k_1 + ... + k_{m}")
    d = ctx.d
    zero, one = CycloNum.zero(d), CycloNum.one(d)
    size = n - 2

    def unit(i: int) -> Vector:
        return tuple(one if j == i else zero for j in range(size))

    # w = sum_{i<m} (qbar^{k_1+...+k_i} - 1) g_i, already inside the quotient span
    w = tuple(
        (ctx.qpow(-ctx.prefix_sums[i + 1]) - one) if i < m - 1 else zero
        for i in range(size)
    )

    # class of g_{n-1} rewritten through the radical relation
    c = -(ctx.qpow(-ctx.prefix_sums[n - 1]) - one).inv()
    g_last = tuple(c * (ctx.qpow(-ctx.prefix_sums[i + 1]) - one) for i in range(size))

    flag: list[Vector] = [w]
    flag += [unit(i) for i in range(m - 2)]
    for j in range(m + 2, n):
        flag.append(unit(j - 1) if j <= n - 2 else g_last)
    flag.append(unit(m - 1))
    assert len(flag) == size

    P = CycloMatrix(d, size, size, tuple(flag[col][row] for row in range(size) for col in range(size)))
    P_inv = P.inverse()
    gram_quot = quotient_gram(ctx)
    gram_flag = P.conj_transpose() @ gram_quot @ P

    s = size - 2
    mu = ctx.mu
    # arrow-shape invariants forced by the construction
    assert not gram_flag.entry(0, 0), "w is not isotropic"
    for t in range(1, s + 1):
        assert not gram_flag.entry(0, t) and not gram_flag.entry(t, 0), "w not orthogonal to middle"
        assert not gram_flag.entry(s + 1, t) and not gram_flag.entry(t, s + 1)
    assert gram_flag.entry(0, s + 1) == -mu, "pairing of g_m against w is not -mu"
    assert gram_flag.entry(s + 1, 0) == mu
    G_W = gram_flag.submatrix(range(1, s + 1), range(1, s + 1))
    G_W_inv = G_W.inverse()
    assert G_W.conj_transpose() == -G_W
    return FlagContext(ctx, m, w, tuple(flag), P, P_inv, gram_quot, gram_flag, G_W, G_W_inv, mu)


def flag_matrix(fc: FlagContext, m_quot: CycloMatrix) -> CycloMatrix:
    """Quotient operator rewritten in flag coordinates."""
    if m_quot.rows != fc.ctx.n - 2 or m_quot.cols != fc.ctx.n - 2:
        raise ShapeMismatch("operator is not a quotient-space matrix")
    return fc.P_inv @ m_quot @ fc.P


def _blocks(fc: FlagContext, f: CycloMatrix):
    s = fc.middle_size
    lam = f.entry(0, 0)
    lam_prime = f.entry(s + 1, s + 1)
    x = tuple(f.entry(0, t) for t in range(1, s + 1))          # first row, middle
    x_prime = tuple(f.entry(t, s + 1) for t in range(1, s + 1))  # last column, middle
    corner = f.entry(0, s + 1)
    middle = f.submatrix(range(1, s + 1), range(1, s + 1))
    return lam, lam_prime, x, x_prime, corner, middle


def in_parabolic(fc: FlagContext, m_quot: CycloMatrix) -> bool:
    """Does the operator preserve the flag line < line + middle block?"""
    f = flag_matrix(fc, m_quot)
    s = fc.middle_size
    for t in range(1, s + 2):
        if f.entry(t, 0):
            return False
    for t in range(1, s + 1):
        if f.entry(s + 1, t):
            return False
    return True


def in_unipotent(fc: FlagContext, m_quot: CycloMatrix) -> bool:
    """Block pattern (1, *, *; 0, I, *; 0, 0, 1) plus the forced constraints.

    Raises ConstraintViolation when the pattern holds but either forced
    identity fails; form preservation makes that an implementation fault.
    """
    if not in_parabolic(fc, m_quot):
        return False
    f = flag_matrix(fc, m_quot)
    s = fc.middle_size
    one = CycloNum.one(fc.ctx.d)
    lam, lam_prime, x, x_prime, corner, middle = _blocks(fc, f)
    if lam != one or lam_prime != one:
        return False
    if middle != CycloMatrix.identity(fc.ctx.d, s):
        return False
    expected_prime = tuple(v * fc.mu for v in fc.G_W_inv.apply(tuple(e.conj() for e in x)))
    if x_prime != expected_prime:
        raise ConstraintViolation("last-column block differs from mu * G_W^-1 conj(x)")
    u = _pairing_scalar(fc, x, x)
    if corner - corner.conj() != fc.mu * u:
        raise ConstraintViolation("corner imaginary part differs from the forced pairing")
    return True


def _pairing_scalar(fc: FlagContext, x: Vector, y: Vector) -> CycloNum:
    """x^T . G_W^{-1} . conj(y) as a field element."""
    gy = fc.G_W_inv.apply(tuple(e.conj() for e in y))
    acc = CycloNum.zero(fc.ctx.d)
    for a, b in zip(x, gy):
        if a and b:
            acc = acc + a * b
    return acc


def translation_part(fc: FlagContext, m_quot: CycloMatrix) -> Vector:
    """The first-row middle block of a unipotent element; additive on products."""
    if not in_unipotent(fc, m_quot):
        raise NotUnipotentElement("operator is not in the unipotent group")
    f = flag_matrix(fc, m_quot)
    s = fc.middle_size
    return tuple(f.entry(0, t) for t in range(1, s + 1))


def corner_entry(fc: FlagContext, m_quot: CycloMatrix) -> CycloNum:
    """Top-right corner of the flag form; real for elements of the center."""
    f = flag_matrix(fc, m_quot)
    return f.entry(0, fc.middle_size + 1)


def conjugation_action(fc: FlagContext, a_quot: CycloMatrix, x: Vector) -> Vector:
    """Action of a parabolic element on translation parts: x -> lambda * x * C^-1."""
    if not in_parabolic(fc, a_quot):
        raise NotParabolicElement("conjugation action needs a flag-preserving element")
    f = flag_matrix(fc, a_quot)
    lam, _, _, _, _, middle = _blocks(fc, f)
    return _row_action(fc, lam, middle.inverse(), x)


def _row_action(fc: FlagContext, lam: CycloNum, c_inv: CycloMatrix, x: Vector) -> Vector:
    s = fc.middle_size
    if len(x) != s:
        raise ShapeMismatch(f"translation part must have length {s}")
    zero = CycloNum.zero(fc.ctx.d)
    out = []
    for col in range(s):
        acc = zero
        for row in range(s):
            if x[row] and c_inv.entry(row, col):
                acc = acc + x[row] * c_inv.entry(row, col)
        out.append(lam * acc)
    return tuple(out)


def commutator_pairing(fc: FlagContext, x: Vector, y: Vector) -> CycloNum:
    """The real-valued pairing mu * (u + conj(u)) with u = x^T G_W^{-1} conj(y).

    Antisymmetric, biadditive over Q, takes values in the real subfield; it
    is the corner of the commutator of two unipotent elements with
    translation parts x and y.
    """
    if len(x) != fc.middle_size or len(y) != fc.middle_size:
        raise ShapeMismatch("translation parts of wrong length")
    u = _pairing_scalar(fc, x, y)
    return fc.mu * (u + u.conj())


# -- witness braids -----------------------------------------------------------

def reversed_word(word: BraidWord) -> BraidWord:
    """Letters in reverse order, exponents unchanged.

    Left-to-right evaluation composes pullbacks contravariantly, so the
    matrix of a specific mapping class is obtained from its group word read
    backwards.
    """
    return BraidWord(tuple(reversed(word.letters)))


def witness_lower(fc: FlagContext) -> BraidWord:
    """Commutator of A(m-1, m) with T(m-1), as an evaluation-ready word.

    Unipotent with translation part in the lower block, moving only
    g_{m-2} (by a multiple of w) and g_m.
    """
    m = fc.m
    if m < 3:
        raise BadM(f"lower witness needs m >= 3, got {m}")
    return reversed_word(commutator(BraidWord.A(m - 1, m), BraidWord.T(m - 1)))


def witness_upper(fc: FlagContext) -> BraidWord:
    """Commutator of A(m+1, m+2) with FT(m+2, n), as an evaluation-ready word.

    Unipotent with translation part in the upper block.
    """
    m, n = fc.m, fc.ctx.n
    if n - m < 3:
        raise BadM(f"upper witness needs n - m >= 3, got n - m = {n - m}")
    return reversed_word(commutator(BraidWord.A(m + 1, m + 2), BraidWord.FT(m + 2, n)))


def evaluate_on_quotient(fc: FlagContext, word: BraidWord) -> CycloMatrix:
    return quotient_matrix(fc.ctx, evaluate_word(fc.ctx, word))


# -- orbit machinery ------------------------------------------------------------

def _part_generators(fc: FlagContext, part: str) -> list[BraidWord]:
    m, n = fc.m, fc.ctx.n
    if part == LOWER:
        pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    elif part == UPPER:
        pairs = [(i, j) for i in range(m + 1, n + 1) for j in range(i + 1, n + 1)]
    else:
        raise ValueError(f"part must be {LOWER!r} or {UPPER!r}")
    return [BraidWord.A(i, j) for i, j in pairs]


def _part_slice(fc: FlagContext, part: str) -> slice:
    return fc.lower_slice if part == LOWER else fc.upper_slice


def part_witness(fc: FlagContext, part: str) -> Vector:
    word = witness_lower(fc) if part == LOWER else witness_upper(fc)
    return translation_part(fc, evaluate_on_quotient(fc, word))


def orbit_vectors(fc: FlagContext, part: str, maxlen: int = 6, *, rank_bound: int | None = None):
    """Breadth-first conjugation orbit of the part witness, exact dedup.

    Yields the full middle-coordinate vectors reached by words of length at
    most maxlen in the part generators and their inverses.  Stops early once
    rank_bound many Q-independent vectors have been produced (the rank is
    monotone in maxlen, so early exit cannot change a rank computation).
    """
    start = part_witness(fc, part)
    actions = []
    for word in _part_generators(fc, part):
        mat = evaluate_on_quotient(fc, word)
        f = flag_matrix(fc, mat)
        lam, _, _, _, _, middle = _blocks(fc, f)
        c_inv = middle.inverse()
        actions.append((lam, c_inv))
        actions.append((lam.inv(), middle))
    seen = {start}
    frontier = [start]
    collected = [start]
    span = RationalSpan()
    span.add(start)
    for _ in range(maxlen):
        if rank_bound is not None and span.rank >= rank_bound:
            break
        new_frontier = []
        for v in frontier:
            for lam, c_inv in actions:
                image = _row_action(fc, lam, c_inv, v)
                if image not in seen:
                    seen.add(image)
                    new_frontier.append(image)
                    collected.append(image)
                    span.add(image)
        if not new_frontier:
            break
        frontier = new_frontier
    return collected


def orbit_rank(fc: FlagContext, part: str, maxlen: int = 6) -> int:
    """Q-rank of the orbit restricted to its own coordinate block."""
    phi = euler_phi(fc.ctx.d)
    sl = _part_slice(fc, part)
    width = sl.stop - sl.start
    bound = phi * width
    vectors = orbit_vectors(fc, part, maxlen, rank_bound=bound)
    restricted = [v[sl] for v in vectors]
    if not restricted or width == 0:
        return 0
    return rank_over_rationals(restricted)


# -- lattice vectors in the center ------------------------------------------------

def upper_half_exponents(d: int, k: int) -> tuple[int, ...]:
    """Galois exponents t with gcd(t,d)=1 whose image of q lies in the upper
    half plane under the e^{-2*pi*i/d} embedding: t*k mod d in (d/2, d)."""
    return tuple(t for t in range(1, d) if math.gcd(t, d) == 1 and 2 * ((t * k) % d) > d)


def center_lattice_vectors(fc: FlagContext) -> tuple[list[Vector], int]:
    """Galois-spread commutator values generating a rank phi(d)/2 group.

    Collects a Q-basis of the middle space from the two witness orbits,
    locates a pair with non-vanishing commutator pairing a_q, scales the
    real-subfield basis elements zeta^s + zeta^{-s} by integers so each
    multiple of the chosen orbit vector stays in the generated lattice, and
    emits the vectors (galois(scaled * a_q, t))_t over the upper-half
    exponents, together with their Q-rank.
    """
    ctx = fc.ctx
    d = ctx.d
    phi = euler_phi(d)
    ell = phi // 2
    target = phi * fc.middle_size

    basis: list[Vector] = []
    span = RationalSpan()
    part_bounds = {LOWER: phi * (fc.m - 2), UPPER: phi * (ctx.n - fc.m - 2)}
    for part in (LOWER, UPPER):
        for v in orbit_vectors(fc, part, maxlen=8, rank_bound=part_bounds[part]):
            if span.add(v):
                basis.append(v)
            if span.rank == target:
                break
    if span.rank < target:
        raise NoNonzeroPairing(
            f"orbits span rank {span.rank} < {target}; enlarge the orbit sample"
        )

    pivot = None
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            a_q = commutator_pairing(fc, basis[i], basis[j])
            if a_q:
                pivot = (i, j, a_q)
                break
        if pivot:
            break
    if pivot is None:
        raise NoNonzeroPairing("all pairings among the basis vectors vanish")
    i, j, a_q = pivot

    columns = [realify(b) for b in basis]
    out: list[Vector] = []
    exponents = upper_half_exponents(d, ctx.k)
    for s in range(ell):
        lam = zeta(d, s) + zeta(d, (d - s) % d) if s else CycloNum.one(d) * 2
        scaled = tuple(lam * e for e in basis[i])
        coords = solve_rational(columns, realify(scaled))
        assert coords is not None, "basis does not span its own lattice"
        denom = math.lcm(*(c.denominator for c in coords))
        value = (lam * denom) * a_q
        out.append(tuple(value.galois(t) for t in exponents))
    rank = rank_over_rationals(out)
    return out, rank

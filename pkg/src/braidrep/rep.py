"""Braid-group operators from cyclic covers: contexts, Gram matrices, twists.

A context fixes integers (d, n), a weight vector kappa reduced into
[1, d-1], and an exponent k coprime to d selecting the eigenvalue
q = zeta_d^k.  On the compact-support space with basis g_1, ..., g_{n-1}
we store the anti-Hermitian Gram matrix G with

    G[r][c] = J(g_c, g_r),        J = i * <.,.>,

so that the form evaluates as conj(y)^T G x (linear in x, conjugate-linear
in y) and every operator matrix M acting on column coordinate vectors
satisfies M* G M = G exactly.  Under this layout the radical vector w
(present when eps0 = 1) satisfies G w = 0.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .cyclo import CycloNum, zeta
from .errors import (
    DegenerateBlock,
    DisconnectedCover,
    ExponentDivisible,
    IndexOutOfRange,
    InvalidParameter,
    NotCoprime,
    NotDegenerate,
    NotPrimitive,
    RadicalNotFixed,
)
from .linalg import CycloMatrix, Vector, sesquilinear

# -- braid words -------------------------------------------------------------

Letter = tuple[tuple, int]  # (("A", i, j) | ("T", r) | ("FT", s, r), exponent +-1)

_LETTER_RE = re.compile(
    r"^(?:A\((\d+),(\d+)\)|T\((\d+)\)|FT\((\d+),(\d+)\))(\^-1)?$"
)


@dataclass(frozen=True)
class BraidWord:
    """A word in pair twists A(i,j), prefix twists T(r), block twists FT(s,r).

    Words multiply by concatenation and evaluate left to right.
    """

    letters: tuple[Letter, ...] = ()

    @staticmethod
    def A(i: int, j: int, exp: int = 1) -> BraidWord:
        return BraidWord(((("A", i, j), exp),))

    @staticmethod
    def T(r: int, exp: int = 1) -> BraidWord:
        return BraidWord(((("T", r), exp),))

    @staticmethod
    def FT(s: int, r: int, exp: int = 1) -> BraidWord:
        return BraidWord(((("FT", s, r), exp),))

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __str__(self) -> str:
        parts = []
        for gen, exp in self.letters:
            if gen[0] == "A":
                s = f"A({gen[1]},{gen[2]})"
            elif gen[0] == "T":
                s = f"T({gen[1]})"
            else:
                s = f"FT({gen[1]},{gen[2]})"
            parts.append(s + ("^-1" if exp < 0 else ""))
        return " ".join(parts)


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def parse_word(text: str) -> BraidWord:
    """Parse whitespace-separated letters like "A(1,2) T(3)^-1 FT(2,5)"."""
    letters: list[Letter] = []
    for token in text.split():
        m = _LETTER_RE.match(token)
        if not m:
            raise IndexOutOfRange(f"unparseable word letter {token!r}")
        exp = -1 if m.group(6) else 1
        if m.group(1) is not None:
            letters.append((("A", int(m.group(1)), int(m.group(2))), exp))
        elif m.group(3) is not None:
            letters.append((("T", int(m.group(3))), exp))
        else:
            letters.append((("FT", int(m.group(4)), int(m.group(5))), exp))
    return BraidWord(tuple(letters))


def block_twist_word(s: int, r: int) -> BraidWord:
    """The full twist on punctures s..r as a positive word in the pair twists.

    Letters are ordered so that left-to-right evaluation of the word equals
    the prefix twist matrix when s = 1: operators compose contravariantly
    (pullbacks on cohomology), so the group word prod_{j=s+1}^{r}
    ( A(s,j) A(s+1,j) ... A(j-1,j) ) is emitted in reverse.
    """
    if not 1 <= s < r:
        raise IndexOutOfRange(f"need 1 <= s < r, got ({s}, {r})")
    letters: list[Letter] = []
    for j in range(s + 1, r + 1):
        for i in range(s, j):
            letters.append((("A", i, j), 1))
    return BraidWord(tuple(reversed(letters)))


# -- contexts ----------------------------------------------------------------

def normalize_weights(d: int, kappa_raw: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Reduce raw weights mod d into [1, d-1] and validate the cover."""
    if d < 3:
        raise InvalidParameter(f"modulus d must be >= 3, got {d}")
    if len(kappa_raw) < 3:
        raise InvalidParameter(f"need n >= 3 weights, got {len(kappa_raw)}")
    kappa = tuple(k % d for k in kappa_raw)
    if any(k == 0 for k in kappa):
        raise ExponentDivisible(f"weight divisible by d={d} after reduction: {kappa_raw}")
    if math.gcd(d, *kappa) != 1:
        raise DisconnectedCover(f"gcd(kappa, d) = {math.gcd(d, *kappa)} != 1")
    return kappa


@dataclass(frozen=True, eq=False)
class RepContext:
    """Parameters (d, n, kappa, k) plus derived data for one eigenvalue q."""

    d: int
    n: int
    weights: tuple[int, ...]       # kappa, reduced into [1, d-1]
    k: int                         # q = zeta_d^k, gcd(k, d) = 1
    eps0: int                      # 1 iff d | (k_1 + ... + k_n)
    prefix_sums: tuple[int, ...]   # prefix_sums[r] = k_1 + ... + k_r, index 0..n
    q: CycloNum
    mu: CycloNum                   # (1 - q)(1 - conj(q)), real and positive
    gram: CycloMatrix              # (n-1) x (n-1) anti-Hermitian J-Gram

    def __post_init__(self) -> None:
        object.__setattr__(self, "_letter_cache", {})

    def qpow(self, e: int) -> CycloNum:
        """q^e as a field element (e may be negative)."""
        return zeta(self.d, (self.k * e) % self.d)

    def jform(self, x: Vector, y: Vector) -> CycloNum:
        """The stored sesquilinear form on compact-support coordinates."""
        return sesquilinear(self.gram, x, y)

    def basis_vector(self, i: int) -> Vector:
        """Coordinates of g_i, 1 <= i <= n-1."""
        zero, one = CycloNum.zero(self.d), CycloNum.one(self.d)
        return tuple(one if j == i - 1 else zero for j in range(self.n - 1))


def make_context(d: int, kappa_raw: tuple[int, ...] | list[int], k: int = 1) -> RepContext:
    """Validate parameters and build the Gram matrix on g_1, ..., g_{n-1}."""
    kappa = normalize_weights(d, kappa_raw)
    n = len(kappa)
    if math.gcd(k, d) != 1:
        raise NotPrimitive(f"gcd(k={k}, d={d}) != 1")
    k %= d
    prefix = [0]
    for ki in kappa:
        prefix.append(prefix[-1] + ki)
    eps0 = 1 if prefix[n] % d == 0 else 0

    q = zeta(d, k)
    one = CycloNum.one(d)

    def qp(e: int) -> CycloNum:
        return zeta(d, (k * e) % d)

    mu = (one - qp(1)) * (one - qp(-1))
    zero = CycloNum.zero(d)
    size = n - 1
    rows = [[zero] * size for _ in range(size)]
    for a in range(size):
        ki, kj = kappa[a], kappa[a + 1]
        rows[a][a] = mu * (one - qp(ki + kj)) / ((one - qp(ki)) * (one - qp(kj)))
        if a + 1 < size:
            knext = kappa[a + 1]
            rows[a][a + 1] = mu / (one - qp(-knext))
            rows[a + 1][a] = -(mu / (one - qp(knext)))
    gram = CycloMatrix.from_rows(d, rows)
    return RepContext(d, n, kappa, k, eps0, tuple(prefix), q, mu, gram)


# -- operator construction -----------------------------------------------------

def pair_twist(ctx: RepContext, i: int, j: int) -> CycloMatrix:
    """Matrix of the twist about a disc enclosing punctures i and j.

    Acts as the complex reflection x -> x - c * J(x, u) u with
    u = g_i + sum_{l=i+1}^{j-1} qbar^{k_{i+1}+...+k_l} g_l and
    c = (1 - q^{k_i})(1 - q^{k_j}) / mu; its determinant is q^{k_i + k_j}.
    """
    n = ctx.n
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    d = ctx.d
    one, zero = CycloNum.one(d), CycloNum.zero(d)
    u = [zero] * (n - 1)
    u[i - 1] = one
    for l in range(i + 1, j):
        u[l - 1] = ctx.qpow(-(ctx.prefix_sums[l] - ctx.prefix_sums[i]))
    c = (one - ctx.qpow(ctx.weights[i - 1])) * (one - ctx.qpow(ctx.weights[j - 1])) / ctx.mu
    # rank-one update I - c * u * (u^* G), columns act on coordinates
    ustar_g = [
        sum((u[r].conj() * ctx.gram.entry(r, col) for r in range(n - 1) if u[r]), zero)
        for col in range(n - 1)
    ]
    rows = []
    for a in range(n - 1):
        row = []
        for b in range(n - 1):
            val = one if a == b else zero
            if u[a] and ustar_g[b]:
                val = val - c * u[a] * ustar_g[b]
            row.append(val)
        rows.append(row)
    return CycloMatrix.from_rows(d, rows)


def prefix_twist(ctx: RepContext, r: int) -> CycloMatrix:
    """Matrix of the twist about a disc enclosing punctures 1..r (2 <= r <= n-1).

    Scales g_1, ..., g_{r-1} by q^{k_1+...+k_r}, fixes g_{r+1}, ..., g_{n-1},
    and shears g_r by the weighted sum of the earlier basis vectors.
    """
    n = ctx.n
    if not 2 <= r <= n - 1:
        raise IndexOutOfRange(f"need 2 <= r <= {n - 1}, got {r}")
    d = ctx.d
    one, zero = CycloNum.one(d), CycloNum.zero(d)
    scale = ctx.qpow(ctx.prefix_sums[r])
    rows = [[zero] * (n - 1) for _ in range(n - 1)]
    for a in range(n - 1):
        rows[a][a] = scale if a < r - 1 else one
    for l in range(1, r):
        rows[l - 1][r - 1] = scale * (ctx.qpow(-ctx.prefix_sums[l]) - one)
    return CycloMatrix.from_rows(d, rows)


def evaluate_word(ctx: RepContext, word: BraidWord) -> CycloMatrix:
    """Evaluate a braid word to its exact operator matrix, left to right."""
    result = CycloMatrix.identity(ctx.d, ctx.n - 1)
    cache: dict[Letter, CycloMatrix] = ctx._letter_cache  # type: ignore[attr-defined]
    for letter in word.letters:
        mat = cache.get(letter)
        if mat is None:
            gen, exp = letter
            if gen[0] == "A":
                base = pair_twist(ctx, gen[1], gen[2])
            elif gen[0] == "T":
                base = prefix_twist(ctx, gen[1])
            else:
                if not 1 <= gen[1] < gen[2] <= ctx.n:
                    raise IndexOutOfRange(f"FT{gen[1:]} outside 1..{ctx.n}")
                base = evaluate_word(ctx, block_twist_word(gen[1], gen[2]))
            mat = base if exp == 1 else base.inverse()
            cache[letter] = mat
        result = result @ mat
    return result


# -- radical and quotient -------------------------------------------------------

def radical_vector(ctx: RepContext) -> Vector:
    """Coordinates of w = sum_{i=1}^{n-1} (qbar^{k_1+...+k_i} - 1) g_i.

    Defined when eps0 = 1; spans the kernel of the Gram matrix and is fixed
    by every operator.
    """
    if ctx.eps0 != 1:
        raise NotDegenerate("radical vector exists only when eps0 = 1")
    one = CycloNum.one(ctx.d)
    return tuple(ctx.qpow(-ctx.prefix_sums[i]) - one for i in range(1, ctx.n))


def quotient_gram(ctx: RepContext) -> CycloMatrix:
    """Gram matrix of the descended form on the classes of g_1, ..., g_{n-2}."""
    if ctx.eps0 != 1:
        raise NotDegenerate("quotient requires eps0 = 1")
    idx = list(range(ctx.n - 2))
    return ctx.gram.submatrix(idx, idx)


def _last_basis_rewrite(ctx: RepContext) -> Vector:
    """Quotient coordinates of the class of g_{n-1} via the radical relation."""
    one = CycloNum.one(ctx.d)
    c = -(ctx.qpow(-ctx.prefix_sums[ctx.n - 1]) - one).inv()
    return tuple(c * (ctx.qpow(-ctx.prefix_sums[i]) - one) for i in range(1, ctx.n - 1))


def quotient_matrix(ctx: RepContext, m: CycloMatrix) -> CycloMatrix:
    """Push an operator that fixes the radical down to the n-2 quotient."""
    if ctx.eps0 != 1:
        raise NotDegenerate("quotient requires eps0 = 1")
    w = radical_vector(ctx)
    if m.apply(w) != w:
        raise RadicalNotFixed("operator moves the radical vector")
    rewrite = _last_basis_rewrite(ctx)
    size = ctx.n - 2
    rows = [[None] * size for _ in range(size)]
    for b in range(size):
        col = m.col(b)
        tail = col[size]
        for a in range(size):
            val = col[a]
            if tail:
                val = val + tail * rewrite[a]
            rows[a][b] = val
    return CycloMatrix.from_rows(ctx.d, rows)


# -- two-dimensional lantern block ------------------------------------------------

@dataclass(frozen=True)
class LanternBlock:
    """Restrictions to the 2-dim block complementary to span(g_1..g_{r-3})."""

    A: CycloMatrix                   # prefix twist T(r-1) restricted
    B: CycloMatrix                   # pair twist A(r-1, r) restricted
    C: CycloMatrix                   # q^{k_1+...+k_r} * B^-1 * A^-1
    basis: tuple[Vector, Vector]     # (projected g_{r-2}, g_{r-1}) in full coordinates
    eigenvector: tuple[CycloNum, CycloNum]   # block coordinates
    eigenvalue: CycloNum


def _restrict(ctx: RepContext, m: CycloMatrix, basis: tuple[Vector, Vector]) -> CycloMatrix:
    """2x2 matrix of m on an invariant 2-dim space, columns = image coordinates."""
    u1, u2 = basis
    cols = []
    span = CycloMatrix(ctx.d, len(u1), 2, tuple(x for pair in zip(u1, u2) for x in pair))
    for u in basis:
        img = m.apply(u)
        cols.append(span.solve(img))
    return CycloMatrix.from_rows(ctx.d, [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])


def lantern_block(ctx: RepContext, r: int) -> LanternBlock:
    """Build the 2x2 restrictions A, B and the lantern product C for index r.

    Requires 3 <= r <= n, d not dividing k_1+...+k_{r-2} nor k_1+...+k_r.
    The block is spanned by the J-orthogonal projection of g_{r-2} away from
    span(g_1..g_{r-3}) together with g_{r-1}.
    """
    n = ctx.n
    if not 3 <= r <= n:
        raise IndexOutOfRange(f"need 3 <= r <= {n}, got {r}")
    if ctx.prefix_sums[r - 2] % ctx.d == 0:
        raise DegenerateBlock(f"d | k_1+...+k_{r - 2}")
    if ctx.prefix_sums[r] % ctx.d == 0:
        raise DegenerateBlock(f"d | k_1+...+k_{r}")
    d = ctx.d
    zero = CycloNum.zero(d)

    # project g_{r-2} J-orthogonally away from span(g_1..g_{r-3})
    g_proj = list(ctx.basis_vector(r - 2))
    if r >= 4:
        sub = ctx.gram.submatrix(range(r - 3), range(r - 3))
        rhs = tuple(ctx.gram.entry(l, r - 3) for l in range(r - 3))
        try:
            coeffs = sub.solve(rhs)
        except Exception as exc:
            raise DegenerateBlock(f"projection undefined at r={r}") from exc
        for c_idx, c_val in enumerate(coeffs):
            g_proj[c_idx] = g_proj[c_idx] - c_val
    basis = (tuple(g_proj), ctx.basis_vector(r - 1))

    a_full = prefix_twist(ctx, r - 1)
    b_full = pair_twist(ctx, r - 1, r)
    a_block = _restrict(ctx, a_full, basis)
    b_block = _restrict(ctx, b_full, basis)
    scalar = ctx.qpow(ctx.prefix_sums[r])
    c_block = (b_block.inverse() @ a_block.inverse()).scale(scalar)
    eigenvector = (CycloNum.one(d), ctx.qpow(-ctx.weights[r - 2]))
    eigenvalue = ctx.qpow(ctx.prefix_sums[r - 2] + ctx.weights[r - 1])
    return LanternBlock(a_block, b_block, c_block, basis, eigenvector, eigenvalue)


# -- Galois transport and scalar relation ------------------------------------------

def galois_transport(ctx: RepContext, m: CycloMatrix, t: int) -> CycloMatrix:
    """Apply zeta -> zeta^t entrywise, carrying operators at k to k*t mod d."""
    if math.gcd(t, ctx.d) != 1:
        raise NotCoprime(f"gcd({t}, {ctx.d}) != 1")
    return m.galois(t)


def transported_context(ctx: RepContext, t: int) -> RepContext:
    """The context with the same weights at exponent k*t mod d."""
    if math.gcd(t, ctx.d) != 1:
        raise NotCoprime(f"gcd({t}, {ctx.d}) != 1")
    return make_context(ctx.d, ctx.weights, (ctx.k * t) % ctx.d)


def scalar_relation_holds(ctx: RepContext) -> bool:
    """Check that the last pair twist is a scalar multiple of a prefix twist
    on the quotient: rho(A(n-1, n)) = q^{k_{n-1}+k_n} rho(T(n-2)).

    For n = 3 the prefix twist degenerates to the identity.  Requires eps0 = 1.
    """
    if ctx.eps0 != 1:
        raise NotDegenerate("scalar relation lives on the eps0 = 1 quotient")
    n = ctx.n
    left = quotient_matrix(ctx, pair_twist(ctx, n - 1, n))
    if n >= 4:
        base = quotient_matrix(ctx, prefix_twist(ctx, n - 2))
    else:
        base = CycloMatrix.identity(ctx.d, n - 2)
    scalar = ctx.qpow(ctx.weights[n - 2] + ctx.weights[n - 1])
    return left == base.scale(scalar)

"""Seeded verification suites behind the CLI `verify` command.

Each suite replays a deterministic battery of exact identities on sampled
contexts; a failure names the violated identity and the parameters that
exhibit it.  All randomness flows from the single seed argument.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import criteria, horo
from .cyclo import CycloNum, euler_phi, from_coeffs
from .errors import AmbiguousSign
from .linalg import CycloMatrix, inertia
from .rep import (
    BraidWord,
    RepContext,
    commutator,
    evaluate_word,
    lantern_block,
    make_context,
    pair_twist,
    prefix_twist,
    quotient_gram,
    quotient_matrix,
    radical_vector,
    scalar_relation_holds,
    transported_context,
)

SUITE_NAMES = ("forms", "relations", "lantern", "galois", "horo", "criteria")


@dataclass
class SuiteReport:
    suite: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    by_identity: dict[str, list[int]] = field(default_factory=dict)

    def check(self, ok: bool, identity: str, detail: str = "") -> None:
        tally = self.by_identity.setdefault(identity, [0, 0])
        if ok:
            self.passed += 1
            tally[0] += 1
        else:
            self.failed += 1
            tally[1] += 1
            self.failures.append(f"{identity}" + (f" [{detail}]" if detail else ""))

    def merge(self, other: SuiteReport) -> None:
        self.passed += other.passed
        self.failed += other.failed
        self.failures.extend(other.failures)
        for name, (p, f) in other.by_identity.items():
            tally = self.by_identity.setdefault(name, [0, 0])
            tally[0] += p
            tally[1] += f

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed": self.failed,
            "failures": self.failures,
            "invariants": {
                name: {"passed": p, "failed": f}
                for name, (p, f) in sorted(self.by_identity.items())
            },
        }


def _sample_context(
    rng: random.Random,
    d_range: tuple[int, int] = (3, 10),
    n_range: tuple[int, int] = (3, 6),
    force_eps0: bool = False,
) -> RepContext:
    while True:
        d = rng.randint(*d_range)
        n = rng.randint(*n_range)
        kappa = [rng.randint(1, d - 1) for _ in range(n)]
        if force_eps0:
            last = (-sum(kappa[:-1])) % d
            if last == 0:
                continue
            kappa[-1] = last
        if math.gcd(d, *kappa) != 1:
            continue
        units = [k for k in range(1, d) if math.gcd(k, d) == 1]
        return make_context(d, tuple(kappa), rng.choice(units))


def _all_generators(ctx: RepContext):
    for i, j in itertools.combinations(range(1, ctx.n + 1), 2):
        yield ("A", (i, j), pair_twist(ctx, i, j))
    for r in range(2, ctx.n):
        yield ("T", (r,), prefix_twist(ctx, r))


def _random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    word = BraidWord()
    for _ in range(length):
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        word = word * BraidWord.A(i, j, rng.choice((1, -1)))
    return word


def suite_forms(seed: int, size: int = 1) -> SuiteReport:
    """Form preservation, Gram structure, and the form-inverse identity."""
    rep = SuiteReport("forms")
    rng = random.Random(seed)
    for _ in range(12 * size):
        ctx = _sample_context(rng)
        g = ctx.gram
        tag = f"d={ctx.d} kappa={ctx.weights} k={ctx.k}"
        rep.check(g.conj_transpose() == -g, "gram is anti-Hermitian", tag)
        tri = all(
            not g.entry(a, b)
            for a in range(ctx.n - 1)
            for b in range(ctx.n - 1)
            if abs(a - b) > 1
        )
        rep.check(tri, "gram is tridiagonal", tag)
        rep.check(ctx.mu.is_real() and ctx.mu.embed().real > 0, "mu is real positive", tag)
        g_inv = g.inverse() if ctx.eps0 == 0 else None
        for kind, idx, m in _all_generators(ctx):
            rep.check(
                m.conj_transpose() @ g @ m == g,
                "generator preserves the form (M* G M = G)",
                f"{tag} {kind}{idx}",
            )
            if g_inv is not None:
                rep.check(
                    m.inverse() == g_inv @ m.conj_transpose() @ g,
                    "inverse identity M^-1 = G^-1 M* G",
                    f"{tag} {kind}{idx}",
                )
        word = _random_word(rng, ctx.n, 4)
        m = evaluate_word(ctx, word)
        rep.check(
            m.conj_transpose() @ g @ m == g,
            "random word preserves the form",
            f"{tag} {word}",
        )
    return rep


def suite_relations(seed: int, size: int = 1) -> SuiteReport:
    """Pure-braid commutations, full-twist identity, determinant and orders."""
    rep = SuiteReport("relations")
    rng = random.Random(seed)
    for _ in range(10 * size):
        ctx = _sample_context(rng)
        n, d = ctx.n, ctx.d
        tag = f"d={d} kappa={ctx.weights} k={ctx.k}"
        ident = CycloMatrix.identity(d, n - 1)
        # disjoint and nested supports commute
        quadruples = []
        for i, j, k, l in itertools.combinations(range(1, n + 1), 4):
            quadruples.append(((i, j), (k, l)))   # disjoint: j < k
            quadruples.append(((i, l), (j, k)))   # nested: i < j < k < l
        for (a, b), (c, e) in quadruples:
            word = commutator(BraidWord.A(a, b), BraidWord.A(c, e))
            rep.check(
                evaluate_word(ctx, word) == ident,
                "disjoint/nested pair twists commute",
                f"{tag} A{(a, b)} A{(c, e)}",
            )
        for r in range(2, n):
            rep.check(
                evaluate_word(ctx, BraidWord.FT(1, r)) == prefix_twist(ctx, r),
                "full twist on 1..r equals the prefix twist",
                f"{tag} r={r}",
            )
            m = prefix_twist(ctx, r)
            expected_trace = ctx.qpow(ctx.prefix_sums[r]) * (r - 1) + (n - r)
            rep.check(m.trace() == expected_trace, "prefix twist trace value", f"{tag} r={r}")
        for i, j in itertools.combinations(range(1, n + 1), 2):
            m = pair_twist(ctx, i, j)
            ki, kj = ctx.weights[i - 1], ctx.weights[j - 1]
            rep.check(m.det() == ctx.qpow(ki + kj), "pair twist determinant", f"{tag} ({i},{j})")
            if (ki + kj) % d == 0:
                rep.check(m.is_unipotent(), "pair twist unipotent when d | k_i + k_j", tag)
            else:
                from .cyclo import order_of_power

                expected = order_of_power(d, ctx.k * (ki + kj))
                rep.check(
                    m.multiplicative_order(d) == expected,
                    "pair twist order matches the root of unity",
                    f"{tag} ({i},{j})",
                )
    for _ in range(6 * size):
        ctx = _sample_context(rng, force_eps0=True)
        tag = f"d={ctx.d} kappa={ctx.weights} k={ctx.k}"
        w = radical_vector(ctx)
        rep.check(all(not x for x in ctx.gram.apply(w)), "gram annihilates the radical", tag)
        fixed = all(m.apply(w) == w for _, _, m in _all_generators(ctx))
        rep.check(fixed, "all generators fix the radical vector", tag)
        rep.check(quotient_gram(ctx).rank() == ctx.n - 2, "quotient Gram has full rank", tag)
        rep.check(scalar_relation_holds(ctx), "last pair twist is scalar times prefix twist", tag)
    return rep


def suite_lantern(seed: int, size: int = 1) -> SuiteReport:
    """Two-dimensional block restrictions and the lantern product."""
    rep = SuiteReport("lantern")
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < 20 * size and attempts < 4000:
        attempts += 1
        ctx = _sample_context(rng)
        r = rng.randint(3, ctx.n)
        if ctx.prefix_sums[r - 2] % ctx.d == 0 or ctx.prefix_sums[r] % ctx.d == 0:
            continue
        d = ctx.d
        blk = lantern_block(ctx, r)
        tag = f"d={d} kappa={ctx.weights} k={ctx.k} r={r}"
        zero_c, one_c = CycloNum.zero(d), CycloNum.one(d)
        printed_a = CycloMatrix.from_rows(d, [
            [ctx.qpow(ctx.prefix_sums[r - 2] + ctx.weights[r - 2]),
             ctx.qpow(ctx.weights[r - 2]) - ctx.qpow(ctx.prefix_sums[r - 2] + ctx.weights[r - 2])],
            [zero_c, one_c],
        ])
        printed_b = CycloMatrix.from_rows(d, [
            [one_c, zero_c],
            [one_c - ctx.qpow(ctx.weights[r - 1]),
             ctx.qpow(ctx.weights[r - 2] + ctx.weights[r - 1])],
        ])
        rep.check(blk.A == printed_a, "block restriction of the prefix twist", tag)
        rep.check(blk.B == printed_b, "block restriction of the pair twist", tag)
        scalar = ctx.qpow(ctx.prefix_sums[r])
        rep.check(
            blk.A @ blk.B @ blk.C == CycloMatrix.identity(d, 2).scale(scalar),
            "lantern product is the boundary scalar",
            tag,
        )
        image = blk.C.apply(blk.eigenvector)
        rep.check(
            image == tuple(blk.eigenvalue * x for x in blk.eigenvector),
            "lantern block eigenpair",
            tag,
        )
        done += 1
    return rep


def suite_galois(seed: int, size: int = 1) -> SuiteReport:
    """Entrywise Galois transport equals direct construction at k*t."""
    rep = SuiteReport("galois")
    rng = random.Random(seed)
    for _ in range(8 * size):
        ctx = _sample_context(rng)
        units = [t for t in range(1, ctx.d) if math.gcd(t, ctx.d) == 1]
        tag = f"d={ctx.d} kappa={ctx.weights} k={ctx.k}"
        for t in units:
            sibling = transported_context(ctx, t)
            rep.check(ctx.gram.galois(t) == sibling.gram, "gram transports entrywise", f"{tag} t={t}")
            for i, j in itertools.combinations(range(1, ctx.n + 1), 2):
                rep.check(
                    pair_twist(ctx, i, j).galois(t) == pair_twist(sibling, i, j),
                    "pair twist transports entrywise",
                    f"{tag} t={t} ({i},{j})",
                )
            for r in range(2, ctx.n):
                rep.check(
                    prefix_twist(ctx, r).galois(t) == prefix_twist(sibling, r),
                    "prefix twist transports entrywise",
                    f"{tag} t={t} r={r}",
                )
    return rep


HORO_CASES = (
    (5, (1, 1, 3, 2, 2, 1), 3),
    (7, (1, 1, 5, 2, 2, 3), 3),
)


def horo_report(fc: horo.FlagContext, maxlen: int = 6, seed: int = 0, trials: int = 20) -> tuple[dict, SuiteReport]:
    """Full horospherical battery for one flag context; JSON-able report."""
    rep = SuiteReport("horo")
    ctx = fc.ctx
    rng = random.Random(seed)
    d, n, m = ctx.d, ctx.n, fc.m
    tag = f"d={d} kappa={ctx.weights} k={ctx.k} m={m}"
    phi = euler_phi(d)
    from .cyclo import to_strings

    report: dict = {"d": d, "kappa": list(ctx.weights), "k": ctx.k, "m": m}

    lower_word = horo.witness_lower(fc) if m >= 3 else None
    upper_word = horo.witness_upper(fc) if n - m >= 3 else None
    report["witnesses"] = {
        "lower": str(lower_word) if lower_word else None,
        "upper": str(upper_word) if upper_word else None,
    }

    # parabolic membership of both puncture groups
    lower_gens = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    upper_gens = [(i, j) for i in range(m + 1, n + 1) for j in range(i + 1, n + 1)]
    for i, j in lower_gens + upper_gens:
        mat = quotient_matrix(ctx, pair_twist(ctx, i, j))
        rep.check(horo.in_parabolic(fc, mat), "puncture-group generators preserve the flag", f"{tag} A({i},{j})")

    parts = []
    if lower_word:
        parts.append((horo.LOWER, lower_word, fc.lower_slice))
    if upper_word:
        parts.append((horo.UPPER, upper_word, fc.upper_slice))

    chis = {}
    mats = {}
    for part, word, sl in parts:
        mat = horo.evaluate_on_quotient(fc, word)
        mats[part] = mat
        rep.check(horo.in_unipotent(fc, mat), "witness is unipotent with forced constraints", f"{tag} {part}")
        nu = horo.translation_part(fc, mat)
        chis[part] = nu
        rep.check(any(nu[sl]), "witness translation part is non-zero on its block", f"{tag} {part}")
        other = slice(sl.stop, None) if sl.start == 0 else slice(0, sl.start)
        rep.check(not any(nu[other]), "witness translation part vanishes off its block", f"{tag} {part}")
    report["translation_parts"] = {
        part: [to_strings(x) for x in nu] for part, nu in chis.items()
    }

    # itemized images of the lower witness
    if lower_word:
        one = CycloNum.one(d)
        zero = CycloNum.zero(d)

        def unit(idx: int):
            return tuple(one if t == idx else zero for t in range(n - 2))

        mat = mats[horo.LOWER]
        coef = ctx.qpow(-ctx.weights[m - 1]) - one
        expected = tuple(a + coef * b for a, b in zip(unit(m - 3), fc.w))
        rep.check(mat.apply(unit(m - 3)) == expected,
                  "lower witness shears g_{m-2} by (qbar^{k_m} - 1) w", tag)
        for i in list(range(1, m - 2)) + list(range(m + 2, n - 1)):
            rep.check(mat.apply(unit(i - 1)) == unit(i - 1),
                      "lower witness fixes the untouched basis vectors", f"{tag} g_{i}")

    # translation part is additive; conjugation matches the closed action
    if len(parts) == 2:
        prod = mats[horo.LOWER] @ mats[horo.UPPER]
        rep.check(
            horo.translation_part(fc, prod)
            == tuple(a + b for a, b in zip(chis[horo.LOWER], chis[horo.UPPER])),
            "translation part is additive on products",
            tag,
        )
    all_gens = lower_gens + upper_gens
    base_mat = mats[horo.LOWER] if horo.LOWER in mats else mats[horo.UPPER]
    base_nu = horo.translation_part(fc, base_mat)
    for trial in range(trials):
        word = BraidWord()
        for _ in range(rng.randint(1, 3)):
            i, j = rng.choice(all_gens)
            word = word * BraidWord.A(i, j, rng.choice((1, -1)))
        a_mat = horo.evaluate_on_quotient(fc, word)
        if not horo.in_parabolic(fc, a_mat):
            rep.check(False, "random puncture-group word preserves the flag", f"{tag} {word}")
            continue
        conj = a_mat @ base_mat @ a_mat.inverse()
        rep.check(
            horo.translation_part(fc, conj) == horo.conjugation_action(fc, a_mat, base_nu),
            "conjugation acts by lambda x C^-1 on translation parts",
            f"{tag} {word}",
        )

    # commutator corner equals the pairing
    omega_samples = []
    if len(parts) == 2:
        x, y = chis[horo.LOWER], chis[horo.UPPER]
        comm = (
            mats[horo.LOWER] @ mats[horo.UPPER]
            @ mats[horo.LOWER].inverse() @ mats[horo.UPPER].inverse()
        )
        val = horo.commutator_pairing(fc, x, y)
        rep.check(horo.in_unipotent(fc, comm), "commutator of unipotents is unipotent", tag)
        rep.check(not any(horo.translation_part(fc, comm)),
                  "commutator of unipotents is central", tag)
        rep.check(horo.corner_entry(fc, comm) == val,
                  "commutator corner equals the pairing", tag)
        omega_samples.append(val)

    # pairing values: real, antisymmetric, Galois equivariant
    def rand_vec():
        return tuple(
            from_coeffs(d, [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(phi)])
            for _ in range(fc.middle_size)
        )

    units = [t for t in range(1, d) if math.gcd(t, d) == 1]
    for _ in range(5):
        x, y = rand_vec(), rand_vec()
        val = horo.commutator_pairing(fc, x, y)
        omega_samples.append(val)
        rep.check(val.is_real(), "pairing takes values in the real subfield", tag)
        rep.check(horo.commutator_pairing(fc, y, x) == -val, "pairing is antisymmetric", tag)
        t = rng.choice(units)
        sibling = horo.make_flag(transported_context(ctx, t), m)
        xs = tuple(e.galois(t) for e in x)
        ys = tuple(e.galois(t) for e in y)
        rep.check(
            horo.commutator_pairing(sibling, xs, ys) == val.galois(t),
            "pairing is Galois equivariant",
            f"{tag} t={t}",
        )
    report["omega_samples"] = [to_strings(v) for v in omega_samples]

    # orbit ranks and the lattice vectors in the center
    ranks = {}
    if lower_word:
        ranks["lower"] = horo.orbit_rank(fc, horo.LOWER, maxlen)
        rep.check(ranks["lower"] == phi * (m - 2), "lower orbit reaches full rational rank", tag)
    if upper_word:
        ranks["upper"] = horo.orbit_rank(fc, horo.UPPER, maxlen)
        rep.check(ranks["upper"] == phi * (n - m - 2), "upper orbit reaches full rational rank", tag)
    if lower_word and upper_word:
        rep.check(
            ranks["lower"] + ranks["upper"] == phi * (n - 4),
            "orbit ranks sum to the middle dimension over Q",
            tag,
        )
        vectors, rank = horo.center_lattice_vectors(fc)
        ranks["center"] = rank
        rep.check(rank == phi // 2, "center lattice vectors have rank phi(d)/2", tag)
        rep.check(
            all(e.is_real() for v in vectors for e in v),
            "center lattice vectors are real",
            tag,
        )
        report["center_vectors"] = [[to_strings(e) for e in v] for v in vectors]
    report["ranks"] = ranks
    report["passed"] = rep.passed
    report["failed"] = rep.failed
    report["failures"] = rep.failures
    report["invariants"] = {
        name: {"passed": p, "failed": f}
        for name, (p, f) in sorted(rep.by_identity.items())
    }
    return report, rep


def suite_horo(seed: int, size: int = 1) -> SuiteReport:
    rep = SuiteReport("horo")
    for d, kappa, m in HORO_CASES:
        ctx = make_context(d, kappa, 1)
        fc = horo.make_flag(ctx, m)
        _, sub = horo_report(fc, maxlen=6, seed=seed, trials=10 * size)
        rep.merge(sub)
    return rep


def suite_criteria(seed: int, size: int = 1) -> SuiteReport:
    rep = SuiteReport("criteria")
    rng = random.Random(seed)

    regressions = [
        ((12, (7, 5, 4, 4, 4)), "unknown", None),
        ((12, (7, 6, 5, 3, 3)), "unknown", None),
        ((12, (7, 5, 3, 3, 3, 3)), "unknown", None),
        ((5, (1, 1, 3, 2, 2, 1)), "arithmetic", [1, 2, 3]),
    ]
    for (d, kappa), verdict, witness in regressions:
        v = criteria.arithmeticity_verdict(d, kappa)
        rep.check(v.verdict == verdict, "arithmeticity regression verdict", f"d={d} kappa={kappa}")
        if witness is not None:
            rep.check(v.witness == witness, "arithmeticity witness subset", f"d={d} kappa={kappa}")
    v = criteria.density_verdict(7, (1, 1, 1, 1, 1, 1))
    rep.check(v.verdict == "maximal", "density regression verdict", "d=7 kappa=(1,)*6")

    # signature formula vs numeric inertia of the acting space Gram
    for _ in range(10 * size):
        ctx = _sample_context(rng, d_range=(3, 10), n_range=(3, 6))
        gram = quotient_gram(ctx) if ctx.eps0 == 1 else ctx.gram
        try:
            numeric = inertia(gram, 1e-7)
        except AmbiguousSign:
            rep.check(False, "numeric inertia tolerance is safe", f"d={ctx.d} kappa={ctx.weights} k={ctx.k}")
            continue
        r_q, s_q = criteria.signature(ctx)
        rep.check(
            numeric == (r_q, s_q, 0),
            "closed signature formula matches numeric inertia",
            f"d={ctx.d} kappa={ctx.weights} k={ctx.k}",
        )

    # goodness symmetry under complement
    for _ in range(50 * size):
        n = rng.randint(3, 7)
        denom = rng.randint(2, 12)
        mu = [Fraction(rng.randint(1, denom - 1), denom) for _ in range(n)]
        rep.check(
            criteria.is_good(mu) == criteria.is_good([1 - v for v in mu]),
            "goodness is invariant under complement",
            f"mu={mu}",
        )

    # signature-window scan against the brute-force post-condition
    checked = 0
    while checked < 200 * size:
        n = rng.randint(3, 8)
        x = [Fraction(rng.randint(1, 23), 24) for _ in range(n)]
        if not 1 < sum(x) < n - 1:
            continue
        r = criteria.find_signature_window(x)
        partial = [sum(x[:j]) for j in range(n + 1)]
        ok = (
            3 <= r <= n
            and partial[r - 2].denominator != 1
            and partial[r].denominator != 1
            and 1 < partial[r] - math.floor(partial[r - 2]) < 2
        )
        rep.check(ok, "signature-window post-condition", f"x={x} r={r}")
        checked += 1
    return rep


SUITES = {
    "forms": suite_forms,
    "relations": suite_relations,
    "lantern": suite_lantern,
    "galois": suite_galois,
    "horo": suite_horo,
    "criteria": suite_criteria,
}


def run_suites(names: list[str], seed: int, size: int = 1) -> list[SuiteReport]:
    return [SUITES[name](seed, size) for name in names]

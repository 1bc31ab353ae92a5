"""Inequality verifiers for dilate sums under small doubling, generators
for the structured extremal families, and the default verification corpus.

Every bound with a rational exponent is decided exactly (integer power
comparison); verifiers for unconditional theorems raise BoundViolation on
failure, while the asymptotic lower-bound check is report-only.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import NamedTuple, Optional

import mpmath

from .lemmas import plunnecke_minimizer
from .reports import (BoundReport, BoundViolation, assert_report,
                      make_exact_report, make_lower_report, make_power_report,
                      ratio_float)
from .sets import (EmptySetError, GroupSet, base_embed, dilate_sum_size,
                   difference_set_size, doubling, sumset, sumset_size,
                   tensor_power)

THM1_EXPONENT = Fraction(59, 20)      # 2.95


def c_lambda(lam: int) -> Fraction:
    """Exponent saving (lam-1)/(4+8*lam); 1/20, 1/14, 1/11 at lam = 2, 3, 5."""
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"dilation factor must be positive, got {lam}")
    return Fraction(lam - 1, 4 + 8 * lam)


class FPConstants:
    """High-precision q = 2 log(1+sqrt 2)/log 2 plus the c_lambda savings."""

    def __init__(self, dps: int = 50):
        self.dps = dps
        with mpmath.workdps(dps):
            self.q = 2 * mpmath.log(1 + mpmath.sqrt(2)) / mpmath.log(2)

    @staticmethod
    def c_lambda(lam: int) -> Fraction:
        return c_lambda(lam)


# ---------------------------------------------------------------------------
# generators


def gen_interval(n: int) -> GroupSet:
    """{0, 1, ..., n-1}."""
    n = int(n)
    if n < 1:
        raise ValueError(f"interval size must be positive, got {n}")
    return GroupSet.of_ints(range(n))


def gen_geometric(ratio: int, n: int) -> GroupSet:
    """{1, ratio, ratio^2, ..., ratio^(n-1)}."""
    ratio, n = int(ratio), int(n)
    if ratio < 2 or n < 1:
        raise ValueError("geometric progression needs ratio >= 2 and n >= 1")
    return GroupSet.of_ints(ratio**i for i in range(n))


def gen_hypercube(n: int, embed: bool = True) -> GroupSet:
    """{0,1}^n, by default flattened to Z with a coincidence-preserving
    digit map of order 3 so dilate-sum pipelines apply unchanged."""
    n = int(n)
    if n < 1:
        raise ValueError(f"cube dimension must be positive, got {n}")
    cube = tensor_power(GroupSet.of_ints([0, 1]), n)
    return base_embed(cube, 3) if embed else cube


def gen_gap(steps, sizes) -> GroupSet:
    """Generalized arithmetic progression {sum a_i*steps[i] : 0 <= a_i < sizes[i]}."""
    steps = [int(s) for s in steps]
    sizes = [int(s) for s in sizes]
    if len(steps) != len(sizes) or not steps:
        raise ValueError("steps and sizes must be equal-length, nonempty")
    if any(s < 1 for s in sizes):
        raise ValueError("all sizes must be positive")
    vals = [0]
    for step, size in zip(steps, sizes):
        vals = [v + a * step for v in vals for a in range(size)]
    return GroupSet.of_ints(vals)


def gen_simplex(d: int, T: int) -> GroupSet:
    """{x in Z^d : x_i >= 0, sum x_i <= T}; cardinality C(T+d, d)."""
    d, T = int(d), int(T)
    if d < 1 or T < 0:
        raise ValueError("simplex needs d >= 1 and T >= 0")
    pts = [p for p in itertools.product(range(T + 1), repeat=d) if sum(p) <= T]
    A = GroupSet(d, pts)
    expected = math.comb(T + d, d)
    if len(A) != expected:
        raise RuntimeError(f"simplex size {len(A)} != C({T + d},{d}) = {expected}")
    return A


def gen_random(n: int, universe: int, seed: int) -> GroupSet:
    """n distinct values sampled from [0, universe), reproducible per seed."""
    n, universe = int(n), int(universe)
    if not 1 <= n <= universe:
        raise ValueError(f"need 1 <= n <= universe, got n={n}, universe={universe}")
    rng = random.Random(seed)
    return GroupSet.of_ints(rng.sample(range(universe), n))


# ---------------------------------------------------------------------------
# headline verifiers (theorems: pass is asserted)


def verify_thm1(A: GroupSet, **meta) -> BoundReport:
    """|A + 2*A| <= K^2.95 |A| with K = |A+A|/|A|."""
    stats = doubling(A)
    lhs = dilate_sum_size(A, 2, A)
    rep = make_power_report("thm1", lhs, stats.K, THM1_EXPONENT, stats.size,
                            K=stats.K, size=stats.size, **meta)
    return assert_report(rep)


def verify_thm2(A: GroupSet, **meta) -> BoundReport:
    """|A - 2*A| <= K^2.95 |A| with K = max(|A+A|, |A-A|)/|A|."""
    if A.is_empty():
        raise EmptySetError("verifier needs a nonempty set")
    n = len(A)
    K = Fraction(max(sumset_size(A, A), difference_set_size(A, A)), n)
    lhs = dilate_sum_size(A, -2, A)
    rep = make_power_report("thm2", lhs, K, THM1_EXPONENT, n, K=K, size=n, **meta)
    return assert_report(rep)


def verify_large_dilates(A: GroupSet, lam: int, **meta) -> BoundReport:
    """|A + lam*A| <= K^(lam+1-c_lam) |A|."""
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"dilation factor must be >= 1, got {lam}")
    stats = doubling(A)
    exponent = lam + 1 - c_lambda(lam)
    lhs = dilate_sum_size(A, lam, A)
    rep = make_power_report(f"large-dilates:{lam}", lhs, stats.K, exponent,
                            stats.size, K=stats.K, size=stats.size, **meta)
    return assert_report(rep)


def verify_largeK(A: GroupSet, lam: int = 2, **meta) -> BoundReport:
    """|A + lam*A| <= (K|A|)^(2*lam/(lam+1)) — the sharper large-K regime."""
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"dilation factor must be >= 1, got {lam}")
    stats = doubling(A)
    lhs = dilate_sum_size(A, lam, A)
    exponent = Fraction(2 * lam, lam + 1)
    rep = make_power_report(f"largeK:{lam}", lhs, stats.K * stats.size,
                            exponent, 1, K=stats.K, size=stats.size, **meta)
    return assert_report(rep)


def ruzsa_triangle_check(U: GroupSet, V: GroupSet, W: GroupSet,
                         sign: int = -1, **meta) -> BoundReport:
    """|U ± V| <= |U+W||V+W| / |W| for all nonempty U, V, W."""
    if U.is_empty() or V.is_empty() or W.is_empty():
        raise EmptySetError("triangle check needs nonempty sets")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    lhs = sumset_size(U, V) if sign > 0 else difference_set_size(U, V)
    rhs = Fraction(sumset_size(U, W) * sumset_size(V, W), len(W))
    rep = make_exact_report("ruzsa-triangle", lhs, rhs,
                            size=len(U), **meta)
    rep.details["sign"] = sign
    return assert_report(rep)


def verify_dilate_lemma(A: GroupSet, part: int, lambda1: int,
                        lambda2: Optional[int] = None, j: Optional[int] = None,
                        exact_limit: int = 16, **meta) -> BoundReport:
    """Composite dilate bounds through the ratio minimizer X.

    part 1: |A + (l1 ± l2)*A| <= K |X+l1*A||X+l2*A| / |X| <= K^(l1+l2+1)|A|
    part 2: |A ± (l1*l2)*A|   <= |A+l1*X||X+l2*A| / |X|   <= K^(l1+l2)|A|
    part 3: |A ± l^j*A| <= (|A+l*X|/|X|) (|X+l*X|/|X|)^(j-2) |X+l*A|
                        <= K^(j*l)|A|,  j >= 2

    Both dilate signs are checked.  The K-power bound is asserted always;
    the middle X-expression is asserted when |A| <= exact_limit makes the
    minimizer certificate exhaustive, and skipped otherwise.
    """
    part = int(part)
    lambda1 = int(lambda1)
    stats = doubling(A)
    K, n = stats.K, stats.size

    if part in (1, 2):
        if lambda2 is None or lambda1 < 1 or int(lambda2) < 1:
            raise ValueError("parts 1 and 2 need lambda1, lambda2 >= 1")
        lambda2 = int(lambda2)
    if part == 1:
        lams = (lambda1 + lambda2, lambda1 - lambda2)
        exponent = Fraction(lambda1 + lambda2 + 1)
    elif part == 2:
        lams = (lambda1 * lambda2, -lambda1 * lambda2)
        exponent = Fraction(lambda1 + lambda2)
    elif part == 3:
        if j is None or int(j) < 2 or lambda1 < 1:
            raise ValueError("part 3 needs lambda >= 1 and j >= 2")
        j = int(j)
        lams = (lambda1**j, -(lambda1**j))
        exponent = Fraction(j * lambda1)
    else:
        raise ValueError(f"part must be 1, 2 or 3, got {part}")

    lhs_by_sign = {lam: dilate_sum_size(A, lam, A) for lam in lams}
    lhs = max(lhs_by_sign.values())
    rep = make_power_report(f"dilate-lemma:p{part}", lhs, K, exponent, n,
                            K=K, size=n, **meta)
    rep.details["lhs_by_dilation"] = {str(k): v for k, v in lhs_by_sign.items()}
    certified = n <= exact_limit
    if certified:
        X, _, cert = plunnecke_minimizer(A, A, exact_limit=exact_limit)
        if part == 1:
            mid = K * Fraction(dilate_sum_size(X, lambda1, A)
                               * dilate_sum_size(X, lambda2, A), len(X))
        elif part == 2:
            mid = Fraction(dilate_sum_size(A, lambda1, X)
                           * dilate_sum_size(X, lambda2, A), len(X))
        else:
            mid = (Fraction(dilate_sum_size(A, lambda1, X), len(X))
                   * Fraction(dilate_sum_size(X, lambda1, X), len(X)) ** (j - 2)
                   * dilate_sum_size(X, lambda1, A))
        mid_pass = lhs <= mid
        rep.details["middle"] = {"value": float(mid), "pass": mid_pass,
                                 "certified": cert}
        if cert and not mid_pass:
            raise BoundViolation(make_exact_report(
                f"dilate-lemma:p{part}:middle", lhs, mid, K=K))
    return assert_report(rep)


def large_plunnecke_witness(A: GroupSet, delta, exact_limit: int = 14,
                            **meta) -> tuple[GroupSet, BoundReport]:
    """A large subset Y ⊆ A (|Y| >= (1-delta)|A|) with
    |Y+A+A| <= K^2 |Y| / delta^2 - (1-delta)(2-delta) K^2 |A| / (2 delta^2).

    Existence holds for every A; the exhaustive search (|A| <= exact_limit)
    asserts a witness is found, the greedy fallback only reports.
    """
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0,1), got {delta}")
    stats = doubling(A)
    K, n = stats.K, stats.size
    AA = sumset(A, A)
    floor_size = math.ceil((1 - delta) * n)
    coeff = K * K / delta**2
    penalty = Fraction((1 - delta) * (2 - delta), 2) * K * K / delta**2 * n

    def rhs_for(y_size: int) -> Fraction:
        return coeff * y_size - penalty

    def admissible(Y: GroupSet) -> tuple[bool, int, Fraction]:
        lhs = sumset_size(Y, AA)
        rhs = rhs_for(len(Y))
        return lhs <= rhs, lhs, rhs

    witness = None
    if n <= exact_limit:
        for k in range(n, floor_size - 1, -1):
            for combo in itertools.combinations(A.points, k):
                Y = GroupSet(A.dim, combo)
                ok, lhs, rhs = admissible(Y)
                if ok:
                    witness = (Y, lhs, rhs)
                    break
            if witness:
                break
        if witness is None:
            raise BoundViolation(make_exact_report(
                "large-subset-growth", 1, Fraction(0), K=K))
        mode = "exhaustive"
    else:
        Y = A
        best = None
        while True:
            ok, lhs, rhs = admissible(Y)
            margin = rhs - lhs
            if best is None or margin > best[3]:
                best = (Y, lhs, rhs, margin)
            if ok:
                break
            if len(Y) <= floor_size:
                break
            removals = []
            for p in Y.points:
                Yp = GroupSet(A.dim, [q for q in Y.points if q != p])
                removals.append((sumset_size(Yp, AA), p, Yp))
            _, _, Y = min(removals, key=lambda t: (t[0], t[1]))
        witness = best[:3]
        mode = "greedy"

    Y, lhs, rhs = witness
    rep = BoundReport(id="large-subset-growth", lhs=lhs, rhs=float(rhs),
                      ratio=ratio_float(lhs, float(rhs)), passed=lhs <= rhs,
                      K=K, size=n, **meta)
    rep.details.update({"delta": str(delta), "witness_size": len(Y),
                        "floor": floor_size, "mode": mode})
    if mode == "exhaustive":
        assert_report(rep)
    return Y, rep


# ---------------------------------------------------------------------------
# counting example


def fp_formula(d: int, T: int) -> int:
    """Sign-pattern box count: sum over p+z+n=d of
    multinomial(d; p,z,n) * C(2T, n) * C(T, p)."""
    d, T = int(d), int(T)
    if d < 0 or T < 0:
        raise ValueError("d and T must be nonnegative")
    total = 0
    for p in range(d + 1):
        for z in range(d + 1 - p):
            neg = d - p - z
            total += (math.comb(d, p) * math.comb(d - p, z)
                      * math.comb(2 * T, neg) * math.comb(T, p))
    return total


def simplex_doubling(d: int, T: int) -> Fraction:
    """Exact K = C(2T+d, d) / C(T+d, d) of the lattice simplex."""
    return Fraction(math.comb(2 * T + d, d), math.comb(T + d, d))


def fp_lower_bound_check(d: int, T: int, dps: int = 50, **meta) -> BoundReport:
    """Report-only: |A - 2*A| >= K^q / (2 log2 K) * |A| on the simplex.

    The claim is asymptotic in T, so small instances may legitimately fail;
    the ratio is recorded so growth in d stays visible.
    """
    d, T = int(d), int(T)
    if T < 1:
        raise ValueError("the lower-bound check needs T >= 1")
    A = gen_simplex(d, T)
    n = len(A)
    aa = sumset_size(A, A)
    if aa != math.comb(2 * T + d, d):
        raise RuntimeError("simplex sumset size disagrees with the binomial")
    K = simplex_doubling(d, T)
    lhs = dilate_sum_size(A, -2, A)
    with mpmath.workdps(dps):
        q = 2 * mpmath.log(1 + mpmath.sqrt(2)) / mpmath.log(2)
        Kmp = mpmath.mpf(K.numerator) / mpmath.mpf(K.denominator)
        rhs = mpmath.e ** (q * mpmath.log(Kmp)) / (2 * mpmath.log(Kmp, 2)) * n
        rhs_f = float(rhs)
    rep = make_lower_report("fp-lower", lhs, rhs_f, K=K, size=n, **meta)
    rep.details.update({"d": d, "T": T})
    return rep


def fp_equality_check(d: int, T: int, **meta) -> BoundReport:
    """Box-count formula vs exact |A - 2*A| on the simplex.

    The formula counts every sign pattern inside the coordinate box, some of
    which are unrepresentable for d >= 2, so exact <= formula is the
    invariant that holds; equality status is recorded.
    """
    A = gen_simplex(d, T)
    exact = dilate_sum_size(A, -2, A)
    formula = fp_formula(d, T)
    rep = make_exact_report("fp-equality", exact, Fraction(formula),
                            K=simplex_doubling(d, T), size=len(A), **meta)
    rep.details.update({"d": d, "T": T, "formula": formula,
                        "equal": exact == formula})
    return assert_report(rep)


# ---------------------------------------------------------------------------
# empirical exponents


def exponent_emp(A: GroupSet, lam: int) -> float:
    """Empirical exponent log(|A+lam*A|/|A|) / log K; needs K > 1."""
    stats = doubling(A)
    if stats.K == 1:
        raise ValueError("exponent undefined at K = 1")
    lhs = dilate_sum_size(A, int(lam), A)
    return ((math.log(lhs) - math.log(stats.size))
            / (math.log(stats.sumset_size) - math.log(stats.size)))


def exponent_bracket(lam: int) -> tuple[float, float]:
    """Known bracket for the optimal exponent: cube witness below, the
    proved K-power exponent above."""
    return (math.log(2) / math.log(1.5), float(int(lam) + 1 - c_lambda(lam)))


# ---------------------------------------------------------------------------
# the verification corpus


class CorpusItem(NamedTuple):
    family: str
    params: str
    A: GroupSet


_INTERVAL_SIZES = [1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192,
                   256, 384, 512, 768, 1024, 1536, 2048, 3072, 4096]
_GAP_SHAPES = [
    ((1, 64), (8, 8)),
    ((1, 100), (10, 10)),
    ((3, 1000), (12, 9)),
    ((1, 40, 1600), (5, 5, 5)),
    ((1, 7, 91), (4, 4, 4)),
]


def structured_corpus(max_interval: int = 4096, max_geometric: int = 64,
                      max_cube: int = 10, max_simplex_d: int = 3,
                      max_simplex_T: int = 6) -> list[CorpusItem]:
    items = []
    for n in _INTERVAL_SIZES:
        if n <= max_interval:
            items.append(CorpusItem("interval", f"n={n}", gen_interval(n)))
    for steps, sizes in _GAP_SHAPES:
        items.append(CorpusItem(
            "gap", f"steps={','.join(map(str, steps))};sizes={','.join(map(str, sizes))}",
            gen_gap(steps, sizes)))
    for n in range(2, max_geometric + 1):
        items.append(CorpusItem("geometric", f"ratio=3;n={n}", gen_geometric(3, n)))
    for n in range(2, max_cube + 1):
        items.append(CorpusItem("hypercube", f"n={n};embed=1", gen_hypercube(n)))
    for d in range(1, max_simplex_d + 1):
        for T in range(1, max_simplex_T + 1):
            items.append(CorpusItem("simplex", f"d={d};T={T}", gen_simplex(d, T)))
    return items


def random_corpus(count: int = 1000, max_size: int = 48) -> list[CorpusItem]:
    """Seeded random family: size 8..max_size cycling with the seed, drawn
    from [0, 4n) — dense enough for small K, sparse enough for large."""
    items = []
    span = max_size - 8 + 1
    for seed in range(count):
        n = 8 + seed % span
        items.append(CorpusItem("random", f"n={n};u={4 * n};seed={seed}",
                                gen_random(n, 4 * n, seed)))
    return items


def default_corpus(random_count: int = 1000) -> list[CorpusItem]:
    return structured_corpus() + random_corpus(random_count)

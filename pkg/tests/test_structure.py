"""Structural machinery: translate-cover bound, refined trichotomy with
independent certificate recomputation, uniform-case contraction chains, the
dichotomy, and the partition engine."""

import math
import random
from fractions import Fraction

import pytest

from dilatesums.bounds import gen_geometric, gen_hypercube, gen_interval, gen_random
from dilatesums.lemmas import greedy_cover, plunnecke_minimizer
from dilatesums.sets import (GroupSet, dilate_sum_size, doubling, fiber,
                             sumset_size, tensor_power)
from dilatesums.structure import (basic_bound, main_lemma, rational_root,
                                  refined_greedy, technical, theorem1_partition)


def ints(*vals):
    return GroupSet.of_ints(vals)


from oracles import raw_sum, recheck_refined


# ---------------------------------------------------------------------------
# translate-cover bound


def test_basic_bound_trivial():
    Z = ints(0)
    cov = greedy_cover(Z, Z)
    rep = basic_bound(Z, Z, Z, cov)
    assert rep.lhs == 1 and rep.rhs == 1 and rep.passed


def test_basic_bound_interval_eight():
    A = gen_interval(8)
    cov = greedy_cover(A, A)
    rep = basic_bound(A, A, A, cov)
    assert rep.lhs == 22
    assert rep.rhs == pytest.approx(15 / 8 * 15)


def test_basic_bound_geometric_exhaustive_cover():
    A = gen_geometric(3, 4)
    X, _, cert = plunnecke_minimizer(A, A)
    cov = greedy_cover(X, A)
    rep = basic_bound(A, A, X, cov, x_certified=cert)
    assert rep.passed


def test_basic_bound_requires_subset():
    A = gen_interval(4)
    other = ints(100)
    cov = greedy_cover(A, other)
    with pytest.raises(ValueError):
        basic_bound(A, other, A, cov)


# ---------------------------------------------------------------------------
# refined trichotomy


def test_refined_single_translate_case_i():
    X = gen_random(8, 20, 1)
    A = X.translate((50,))
    rr = refined_greedy(X, A, Fraction(3, 2))
    assert rr.case == "i"
    assert rr.B == A
    assert len(rr.steps) == 1
    recheck_refined(X, A, Fraction(3, 2), rr)


def test_refined_interval_boundary_M():
    X = gen_interval(32)
    K = doubling(X).K               # 63/32; M = K is the largest legal value
    rr = refined_greedy(X, X, K)
    recheck_refined(X, X, K, rr)


def test_refined_hypercube_with_minimizer():
    A = gen_hypercube(5)
    X, _, _ = plunnecke_minimizer(A, A)
    rr = refined_greedy(X, A, 2)
    assert 3 * len(rr.B) >= len(A)
    recheck_refined(X, A, 2, rr)


def test_refined_rejects_large_M():
    X = gen_interval(32)
    with pytest.raises(ValueError):
        refined_greedy(X, X, 2)     # K = 63/32 < 2


def test_refined_random_instances_all_cases_recheck():
    cases = {"i": 0, "ii": 0, "iii": 0}
    for seed in range(40):
        X = gen_random(14, 28, 2 * seed)
        A = gen_random(14, 28, 2 * seed + 1)
        xx = Fraction(sumset_size(X, X), len(X))
        xa = Fraction(sumset_size(X, A), len(X))
        K = max(xx, xa)
        for M in (3, 2):
            if M <= K:
                rr = refined_greedy(X, A, M, K=K)
                recheck_refined(X, A, M, rr)
                cases[rr.case] += 1
                break
    assert sum(cases.values()) >= 30
    assert cases["iii"] > 0        # the uniform case genuinely occurs


# ---------------------------------------------------------------------------
# uniform-case contraction


def test_technical_degenerate_singleton():
    Z = ints(0)
    Bp, T, x0, rep = technical(Z, Z, Z, 1)
    assert Bp == Z and T == Z and x0 == (0,)
    assert rep.bound.passed


def case3_pair(seed, n=16, M=3):
    X = gen_random(n, 2 * n, 2 * seed)
    B = gen_random(n, 2 * n, 2 * seed + 1)
    xx = sumset_size(X, X)
    xb = sumset_size(X, B)
    K = Fraction(max(xx, xb), n)
    if not (M <= K <= n):
        return None
    from dilatesums.lemmas import popular_differences
    pd = popular_differences(X, B)
    cap = M * Fraction(len(B) * len(X), xb)
    floor = Fraction(max(xx, xb), M)
    for d, cnt in pd.members:
        if cnt > cap:
            return None
        if sumset_size(X, fiber(B, X, d)) < floor:
            return None
    return X, B


def test_technical_chain_on_constructed_instances():
    checked = 0
    for seed in range(60):
        pair = case3_pair(seed)
        if pair is None:
            continue
        X, B = pair
        A = X.union(B)
        Bp, T, x0, rep = technical(A, B, X, 3)
        # independent element-by-element chain verification
        BB = raw_sum(Bp.points, Bp.points)
        PPXX = raw_sum(raw_sum(T.points, X.points), X.points)
        two_x0 = tuple(2 * c for c in x0)
        shifted = {tuple(a + b for a, b in zip(p, two_x0)) for p in PPXX}
        assert BB <= shifted
        ABB = raw_sum(A.points, BB)
        rhs = {tuple(a + b for a, b in zip(p, two_x0))
               for p in raw_sum(PPXX, A.points)}
        assert ABB <= rhs
        assert len(ABB) <= len(T) * len(raw_sum(raw_sum(X.points, X.points),
                                                A.points))
        assert Bp.subset_of(B)
        checked += 1
        if checked >= 10:
            break
    assert checked >= 5


def test_technical_rejects_violated_certificates():
    # an interval against itself concentrates its central fibers, breaking
    # the uniform cap
    I = gen_interval(16)
    with pytest.raises(ValueError):
        technical(I, I, I, Fraction(63, 32))


# ---------------------------------------------------------------------------
# dichotomy


def test_main_lemma_single_translate_branch_a():
    X = gen_random(10, 25, 4)
    A = X.union(X.translate((60,)))
    Xm, _, cert = plunnecke_minimizer(A, A)
    K = doubling(A).K
    M = min(rational_root(K, 20) * 2, K)
    B, branch, rep = main_lemma(A, A, Xm, M, x_certified=cert)
    assert branch == "a"
    assert rep.chain.passed
    assert 3 * len(B) >= len(A)


def test_main_lemma_interval_64():
    A = gen_interval(64)
    X, _, cert = plunnecke_minimizer(A, A)
    K = doubling(A).K
    M = rational_root(K, 20)
    B, branch, rep = main_lemma(A, A, X, M, x_certified=cert)
    assert rep.actual == dilate_sum_size(A, 2, B)
    assert rep.chain.lhs <= rep.chain.rhs


def test_main_lemma_geometric_large_K():
    A = gen_geometric(3, 8)
    X, _, cert = plunnecke_minimizer(A, A)
    B, branch, rep = main_lemma(A, A, X, 2, x_certified=cert)
    assert branch in ("a", "b")
    assert rep.actual <= rep.chain.rhs or not rep.chain.passed


def test_main_lemma_reaches_uniform_branch():
    hits = 0
    for seed in range(60):
        pair = case3_pair(seed)
        if pair is None:
            continue
        X, B = pair
        A = X.union(B)
        K = max(doubling(A).K,
                Fraction(sumset_size(X, X), len(X)),
                Fraction(sumset_size(X, A), len(X)))
        if K < 3 or K > len(X):
            continue
        Bres, branch, rep = main_lemma(A, B, X, 3, K=K, x_certified=False)
        if branch == "b":
            hits += 1
            assert rep.technical is not None
            assert rep.chain.passed
            assert Bres.subset_of(B)
        if hits >= 3:
            break
    assert hits >= 1


# ---------------------------------------------------------------------------
# partition engine


def test_partition_singleton():
    tr = theorem1_partition(ints(0))
    assert len(tr.blocks) == 1
    assert tr.total_actual == tr.dilate_sum == 1


def test_partition_interval_64():
    A = gen_interval(64)
    tr = theorem1_partition(A)
    covered = set()
    for rec in tr.blocks:
        assert not (covered & set(rec.block.points))
        covered |= set(rec.block.points)
    assert covered == set(A.points)
    assert tr.total_actual >= tr.dilate_sum
    # union-bound right side recomputed independently
    total = 0
    for rec in tr.blocks:
        doubled = {tuple(2 * c for c in p) for p in rec.block.points}
        total += len(raw_sum(A.points, doubled))
    assert total == tr.total_actual


def test_partition_hypercube_6():
    A = gen_hypercube(6)
    tr = theorem1_partition(A)
    assert tr.total_actual >= tr.dilate_sum
    assert sum(len(b.block) for b in tr.blocks) == len(A)


def test_partition_two_clusters():
    A = gen_interval(16).union(gen_interval(4).translate((1000,)))
    tr = theorem1_partition(A)
    assert sum(len(b.block) for b in tr.blocks) == len(A)
    assert tr.total_actual >= tr.dilate_sum


def test_partition_auto_M_default():
    A = gen_interval(32)
    tr = theorem1_partition(A)
    K = doubling(A).K
    assert 1 <= tr.M <= K
    assert abs(float(tr.M) - float(K) ** 0.05) < 1e-3


def test_partition_explicit_M_too_large():
    with pytest.raises(ValueError):
        theorem1_partition(gen_interval(8), M=10)


def test_partition_random_slice():
    for seed in range(12):
        A = gen_random(8 + seed, 4 * (8 + seed), seed)
        tr = theorem1_partition(A)
        assert sum(len(b.block) for b in tr.blocks) == len(A)
        assert tr.total_actual >= tr.dilate_sum
        assert len(tr.blocks) <= int(10 * float(tr.M) ** 3
                                     * math.log(max(len(A), 2))) + 10


# ---------------------------------------------------------------------------
# tensor multiplicativity


@pytest.mark.parametrize("seed", range(8))
def test_tensor_multiplicativity(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    A = gen_random(n, 4 * n, seed + 300)
    size = len(A)
    aa = sumset_size(A, A)
    a2a = dilate_sum_size(A, 2, A)
    for r in (2, 3):
        Ar = tensor_power(A, r)
        assert len(Ar) == size ** r
        assert sumset_size(Ar, Ar) == aa ** r
        assert dilate_sum_size(Ar, 2, Ar) == a2a ** r


def test_rational_root_brackets():
    K = Fraction(81, 16)
    M = rational_root(K, 20)
    assert 1 <= M <= K
    assert abs(float(M) - float(K) ** 0.05) < 1e-6

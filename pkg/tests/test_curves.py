import random
from collections import defaultdict

import pytest
from hypothesis import given, strategies as st

from hessgraph.curves import (
    INFINITY,
    ModelCurve,
    WeierstrassCurve,
    count_points,
    is_isomorphic,
    is_supersingular,
    trace,
    twist_class_of,
    twist_classes,
)
from hessgraph.field import GF, GF2
from hessgraph.projmaps import projective_line, psi_proj

from conftest import SMALL_PRIMES


def oracle_count(p, A, B):
    sq = defaultdict(int)
    for y in range(p):
        sq[y * y % p] += 1
    return 1 + sum(sq[(x ** 3 + A * x + B) % p] for x in range(p))


def nonsingular(p, A, B):
    return (4 * A ** 3 + 27 * B * B) % p != 0


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 46), st.integers(0, 46))
def test_point_count_matches_enumeration(p, a, b):
    if not nonsingular(p, a, b):
        return
    C = WeierstrassCurve(a, b, GF(p))
    n = count_points(C)
    assert n == oracle_count(p, a, b) == len(C.points())
    assert abs(p + 1 - n) <= 2 * p ** 0.5


@pytest.mark.parametrize("p", [5, 7, 11])
def test_extension_count_matches_trace_recurrence(p):
    F, K = GF(p), GF2(p)
    for a in range(p):
        for b in range(p):
            if not nonsingular(p, a, b):
                continue
            t = p + 1 - oracle_count(p, a, b)
            C2 = WeierstrassCurve(a, b, F).base_change(K)
            assert count_points(C2) == p * p + 1 - (t * t - 2 * p)
            assert len(C2.points()) == count_points(C2)


@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 12), st.integers(0, 12), st.data())
def test_group_law_axioms(p, a, b, data):
    if not nonsingular(p, a, b):
        return
    C = WeierstrassCurve(a, b, GF(p))
    pts = C.points()
    P, Q, R = (data.draw(st.sampled_from(pts)) for _ in range(3))
    assert C.add(P, INFINITY) == P
    assert C.add(P, C.neg(P)) is INFINITY
    assert C.add(P, Q) == C.add(Q, P)
    assert C.add(C.add(P, Q), R) == C.add(P, C.add(Q, R))
    assert C.scalar_mul(len(pts), P) is INFINITY
    assert C.scalar_mul(3, P) == C.add(P, C.add(P, P))


@pytest.mark.parametrize("p", [7, 11, 13])
def test_orders_match_naive(p):
    C = WeierstrassCurve(1, 6, GF(p))
    orders = C.all_orders()
    for P in C.points():
        n, Q = 1, P
        while Q is not INFINITY:
            Q = C.add(Q, P)
            n += 1
        assert orders[P] == n == C.order(P)


def oracle_classes(p):
    """Group all nonsingular (A, B) by (A, B) ~ (u^4 A, u^6 B)."""
    seen, classes = set(), []
    for A in range(p):
        for B in range(p):
            if (A, B) in seen or not nonsingular(p, A, B):
                continue
            cls = {(pow(u, 4, p) * A % p, pow(u, 6, p) * B % p) for u in range(1, p)}
            seen |= cls
            classes.append(cls)
    return classes


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_twist_classes_match_brute_force(p):
    F = GF(p)
    classes = oracle_classes(p)
    assert len(classes) == {1: 2 * p + 6, 5: 2 * p + 2, 7: 2 * p + 4, 11: 2 * p}[p % 12]
    reps = [C for j in F.elements() for C in twist_classes(j, F)]
    assert len(reps) == len(classes)
    for cls in classes:
        keys = {twist_class_of(WeierstrassCurve(A, B, F)).key() for A, B in cls}
        assert len(keys) == 1
    rng = random.Random(p)
    for _ in range(30):
        c1, c2 = rng.choice(classes), rng.choice(classes)
        (A1, B1), (A2, B2) = next(iter(c1)), next(iter(c2))
        assert is_isomorphic(WeierstrassCurve(A1, B1, F), WeierstrassCurve(A2, B2, F)) == (c1 is c2)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_supersingular_trace(p):
    F = GF(p)
    for a in range(p):
        for b in range(p):
            if nonsingular(p, a, b):
                C = WeierstrassCurve(a, b, F)
                assert is_supersingular(C) == (trace(C) % p == 0)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
@pytest.mark.parametrize("k", [-6912, 108, 1])
def test_psi_squared_is_minus_three(p, k):
    M = ModelCurve(k, p)
    C = M.curve
    for P in C.points():
        assert M.psi(M.psi(P)) == C.scalar_mul(-3, P)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_psi_kernel_and_homomorphism(p):
    M = ModelCurve(-6912, p)
    C = M.curve
    T = M.T
    kernel = [P for P in C.points() if M.psi(P) is INFINITY]
    assert set(kernel) == {INFINITY, T, C.neg(T)}
    assert C.scalar_mul(3, T) is INFINITY
    rng = random.Random(p)
    pts = C.points()
    for _ in range(40):
        P, Q = rng.choice(pts), rng.choice(pts)
        assert M.psi(C.add(P, Q)) == C.add(M.psi(P), M.psi(Q))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 23, 29])
def test_projection_identity(p):
    F = GF(p)
    for k in (-6912, 108, 1, 5):
        if k % p == 0:
            continue
        M = ModelCurve(k, p)
        for pt in projective_line(F):
            assert M.pi(M.psi(M.iota(pt))) == psi_proj(k, pt)


@pytest.mark.parametrize("p", [5, 11, 13])
def test_s_set_and_indegree(p):
    M = ModelCurve(-6912, p)
    S = M.s_set()
    assert all(P is INFINITY or P[0].in_base() for P in S)
    # each finite x in F_p lifts to one or two points, plus O
    assert len({None if P is INFINITY else P[0] for P in S}) == p + 1
    for P in S:
        want = sum(1 for Q in S if M.psi(Q) == P)
        assert M.indegree_in_s(P) == want


def test_invalid_curve_rejected():
    with pytest.raises(ValueError):
        WeierstrassCurve(0, 0, GF(7))
    C = WeierstrassCurve(1, 1, GF(7))
    with pytest.raises(ValueError):
        C.add((GF(7)(0), GF(7)(0)), INFINITY)

from hypothesis import given, strategies as st

from hessgraph.field import GF, GF2
from hessgraph.upoly import deflate, evaluate, mul, roots_up_to_quadratic_extension, roots_with_multiplicity


@given(st.sampled_from([5, 7, 11, 13]), st.lists(st.integers(0, 12), min_size=2, max_size=5))
def test_roots_with_multiplicity_match_brute_force(p, coeffs):
    F = GF(p)
    f = [F(c) for c in coeffs]
    if all(c.is_zero() for c in f[1:]):
        return
    roots = roots_with_multiplicity(f, F)
    for x in F.elements():
        assert (x in roots) == evaluate(f, x).is_zero()
    for r, m in roots.items():
        # (x - r)^m divides f, (x - r)^(m+1) does not
        g = f
        for _ in range(m):
            g, rem = deflate(g, r)
            assert rem.is_zero()
        assert not evaluate(g, r).is_zero()


@given(st.sampled_from([5, 7, 11, 13, 17]), st.lists(st.integers(0, 16), min_size=4, max_size=4))
def test_roots_in_quadratic_extension(p, coeffs):
    F, K = GF(p), GF2(p)
    f = [F(c) for c in coeffs]
    if f[3].is_zero() and f[2].is_zero():
        return
    got = set(roots_up_to_quadratic_extension(f, F))
    want = {x for x in K.elements() if evaluate([K(c.v) for c in f], x).is_zero()}
    assert got == want


def test_mul_then_deflate():
    F = GF(7)
    f = mul([F(1), F(1)], [F(-2), F(1)])  # (x+1)(x-2)
    q, rem = deflate(f, F(2))
    assert rem.is_zero() and q == [F(1), F(1)]

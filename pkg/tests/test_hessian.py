import random

import pytest
from hypothesis import given, strategies as st

from hessgraph.curves import WeierstrassCurve, count_points, is_isomorphic, trace
from hessgraph.field import GF, GF2
from hessgraph.hessian import (
    MONOMIALS,
    CubicForm,
    even_trace_preimage,
    hesse_cubic,
    hesse_inflection_points,
    hessian_form,
    hessian_multiplicity_pattern,
    short_weierstrass_from_hessian,
    trace_mod3_edge_check,
    weierstrass_form,
    weierstrass_hessian,
)
from hessgraph.projmaps import ProjPoint, hess_j, lambda_hess


def second_partial(coeffs, i, j, pt):
    """d^2/dx_i dx_j of sum c_m x^m at pt, over the integers."""
    total = 0
    for m, c in zip(MONOMIALS, coeffs):
        e = list(m)
        mult = e[i]
        if not mult:
            continue
        e[i] -= 1
        mult *= e[j]
        if not mult:
            continue
        e[j] -= 1
        term = c * mult
        for v, k in zip(pt, e):
            term *= v ** k
        total += term
    return total


def oracle_hessian_value(coeffs, pt, p):
    M = [[second_partial(coeffs, i, j, pt) for j in range(3)] for i in range(3)]
    (a, b, c), (d, e, f), (g, h, k) = M
    return (a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g)) % p


@given(st.sampled_from([5, 7, 11, 13, 17]), st.lists(st.integers(0, 16), min_size=10, max_size=10),
       st.tuples(st.integers(0, 16), st.integers(0, 16), st.integers(0, 16)))
def test_hessian_form_matches_pointwise_determinant(p, coeffs, pt):
    F = GF(p)
    form = CubicForm.from_coefficients(F, [F(c) for c in coeffs])
    if form.is_zero():
        with pytest.raises(ValueError):
            hessian_form(form)
        return
    H = hessian_form(form)
    assert int(H.evaluate(*(F(v) for v in pt))) == oracle_hessian_value(coeffs, pt, p)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_closed_form_agrees_with_symbolic_reduction(p):
    F = GF(p)
    for a in range(1, p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            C = WeierstrassCurve(a, b, F)
            H = weierstrass_hessian(C)
            assert H.is_elliptic
            assert H.curve == short_weierstrass_from_hessian(C)
            assert H.curve.discriminant() == -C.discriminant() / (27 * C.A ** 6)
            assert ProjPoint(F, H.curve.j_invariant()) == hess_j(ProjPoint(F, C.j_invariant()))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_zero_a_gives_three_lines(p):
    F = GF(p)
    for b in range(1, p):
        C = WeierstrassCurve(0, b, F)
        H = weierstrass_hessian(C)
        assert H.kind == "three_lines"
        assert H.form.proportional_to(hessian_form(weierstrass_form(C))) is not None
        if H.alpha is None:
            assert H.lines_over_extension and not F(-3 * b).is_square()
        else:
            assert H.alpha * H.alpha == F(-3 * b)
        with pytest.raises(ValueError):
            short_weierstrass_from_hessian(C)


def test_pure_cube_has_zero_hessian():
    F = GF(7)
    H = hessian_form(CubicForm(F, {(3, 0, 0): 1}))
    assert H.is_zero()


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_three_lines_law(p):
    F = GF(p)
    rng = random.Random(p)
    done = 0
    while done < 25:
        rows = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
        (a, b, c), (d, e, f), (g, h, i) = rows
        det = (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
        if det == 0:
            continue
        L = CubicForm.product_of_lines(F, rows)
        assert hessian_form(L) == L.scale(F(2 * det * det))
        done += 1


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_hesse_pencil_hessian(p):
    F = GF(p)
    for lam in range(p):
        if (lam ** 3 + 27) % p == 0:
            continue
        H = hessian_form(hesse_cubic(lam, F))
        img = lambda_hess(ProjPoint(F, lam))
        target = CubicForm(F, {(1, 1, 1): 1}) if img.x is None else hesse_cubic(img.x, F)
        assert H.proportional_to(target) is not None
    flexes = hesse_inflection_points(F)
    assert len(set(flexes)) == 9
    for lam in range(p):
        form = hesse_cubic(lam, F)
        assert all(form.evaluate(*pt).is_zero() for pt in flexes)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_multiplicity_patterns(p):
    F = GF(p)
    for jp in range(p):
        pat = hessian_multiplicity_pattern(jp, F)
        # solutions of Hess(j) = j', cleared of denominators
        roots = {j for j in range(p) if (6912 - j) ** 3 % p == (27 * jp * j * j) % p}
        assert {int(r) for r in pat.roots} == roots
    assert hessian_multiplicity_pattern(1728, F).roots == {F(-13824): 2, F(1728): 1}
    assert hessian_multiplicity_pattern(0, F).roots == {F(6912): 3}


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_even_trace_preimage(p):
    F = GF(p)
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            C = WeierstrassCurve(a, b, F)
            if count_points(C) % 2:
                with pytest.raises(ValueError):
                    even_trace_preimage(C)
                continue
            E = even_trace_preimage(C)
            H = weierstrass_hessian(E)
            assert H.is_elliptic and is_isomorphic(H.curve, C)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_traces_agree_mod_three(p):
    F = GF(p)
    for a in range(1, p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            C = WeierstrassCurve(a, b, F)
            assert trace_mod3_edge_check(C)
            H = weierstrass_hessian(C).curve
            assert (trace(C) - trace(H)) % 3 == 0


def test_hessian_over_extension():
    K = GF2(5)
    C = WeierstrassCurve(K(1, 1), K(2), K)
    assert weierstrass_hessian(C).curve == short_weierstrass_from_hessian(C)

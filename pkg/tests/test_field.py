import random

import pytest
from hypothesis import given, strategies as st

from hessgraph.field import GF, GF2, cube_roots, factorize, is_prime, primitive_cube_root, primitive_element

from conftest import SMALL_PRIMES

primes = st.sampled_from(SMALL_PRIMES)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(1000) if is_prime(n)] == [n for n in range(1000) if naive_is_prime(n)]


@given(st.integers(2, 10 ** 6))
def test_factorize_multiplies_back(n):
    f = factorize(n)
    prod = 1
    for q, e in f.items():
        assert naive_is_prime(q)
        prod *= q ** e
    assert prod == n


@given(primes, st.integers(), st.integers(), st.integers(1, 10 ** 6))
def test_prime_field_matches_integers(p, a, b, c):
    F = GF(p)
    x, y = F(a), F(b)
    assert int(x + y) == (a + b) % p
    assert int(x - y) == (a - b) % p
    assert int(x * y) == (a * b) % p
    assert int(x ** c) == pow(a, c, p)
    if b % p:
        assert x / y * y == x


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_sqrt_canonical_and_complete(p):
    F = GF(p)
    squares = {(t * t) % p for t in range(p)}
    for v in range(p):
        r = F(v).sqrt()
        if v in squares:
            assert r is not None and r * r == F(v)
            assert int(r) <= p - int(r) or int(r) == 0
        else:
            assert r is None


def oracle_mul(p, d, x, y):
    (a, b), (c, e) = x, y
    return ((a * c + d * b * e) % p, (a * e + b * c) % p)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_extension_parameters(p):
    K = GF2(p)
    s = K.gen
    assert s * s == K(K.d)
    if p % 3 == 2:
        assert K.d % p == p - 3
    else:
        # smallest non-square
        nonsq = min(v for v in range(2, p) if pow(v, (p - 1) // 2, p) == p - 1)
        assert K.d % p == nonsq


@given(primes, st.data())
def test_extension_multiplication_matches_oracle(p, data):
    K = GF2(p)
    pair = st.tuples(st.integers(0, p - 1), st.integers(0, p - 1))
    x, y = data.draw(pair), data.draw(pair)
    X, Y = K(*x), K(*y)
    assert (X * Y) == K(*oracle_mul(p, K.d, x, y))
    assert (X * Y).norm() == X.norm() * Y.norm() % p
    assert X ** p == X.conjugate()
    if not X.is_zero():
        assert X * X.inverse() == K.one


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_every_base_element_square_in_extension(p):
    K = GF2(p)
    for v in range(p):
        r = K(v).sqrt()
        assert r is not None and r * r == K(v)
    for x in K.elements():
        r = x.sqrt()
        assert (r is not None) == (x.is_zero() or x ** ((p * p - 1) // 2) == K.one)
        if r is not None:
            assert r * r == x


@pytest.mark.parametrize("p", [5, 7, 13, 19])
def test_cube_roots_match_enumeration(p):
    for F in (GF(p), GF2(p)):
        elts = list(F.elements())
        for x in elts:
            want = {y for y in elts if y * y * y == x}
            assert set(cube_roots(x)) == want


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_primitive_elements(p):
    for F in (GF(p), GF2(p)):
        g = primitive_element(F)
        q = F.order
        seen = set()
        cur = F.one
        for _ in range(q - 1):
            seen.add(cur)
            cur = cur * g
        assert len(seen) == q - 1
        eps = primitive_cube_root(F)
        if (q - 1) % 3:
            assert eps is None
        else:
            assert eps != F.one and eps ** 3 == F.one


def test_hash_agrees_between_base_and_extension():
    F, K = GF(11), GF2(11)
    for v in range(11):
        assert K(v) == F(v)
        assert hash(K(v)) == hash(F(v))
    assert len({F(3), K(3)}) == 1


def test_random_is_seeded():
    F = GF(101)
    a = [F.random(random.Random(4)) for _ in range(3)]
    b = [F.random(random.Random(4)) for _ in range(3)]
    assert a == b

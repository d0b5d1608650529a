"""Exact arithmetic in prime fields F_p and their quadratic extensions F_{p^2}.

Elements are small immutable objects carrying a reference to their field.
Integers are accepted as operands wherever an element is expected and are
reduced modulo p.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Optional, Union

__all__ = [
    "is_prime",
    "GF",
    "GF2",
    "PrimeField",
    "QuadraticExtension",
    "Fp",
    "Fp2",
    "legendre",
    "sqrt",
    "cube_roots",
    "primitive_cube_root",
    "factorize",
    "primitive_element",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for n below ~1e12."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class PrimeField:
    """The field F_p with p prime and p not in {2, 3}."""

    def __init__(self, p: int):
        p = int(p)
        if p in (2, 3) or not is_prime(p):
            raise ValueError(f"p={p} must be a prime different from 2 and 3")
        if p >= 1 << 63:
            raise ValueError(f"p={p} exceeds the supported 64-bit range")
        self.p = p
        self.order = p
        self.characteristic = p
        self.degree = 1
        # smallest non-residue, used by Tonelli-Shanks
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        self._nonresidue = z

    def __call__(self, value: Union[int, "Fp"]) -> "Fp":
        if isinstance(value, Fp):
            if value.field.p != self.p:
                raise ValueError("element belongs to a different field")
            return value
        return Fp(self, int(value) % self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    @property
    def zero(self) -> "Fp":
        return Fp(self, 0)

    @property
    def one(self) -> "Fp":
        return Fp(self, 1)

    def elements(self) -> Iterator["Fp"]:
        for v in range(self.p):
            yield Fp(self, v)

    def element(self, index: int) -> "Fp":
        return Fp(self, index)

    def random(self, rng: random.Random, nonzero: bool = False) -> "Fp":
        lo = 1 if nonzero else 0
        return Fp(self, rng.randrange(lo, self.p))

    def contains(self, x: object) -> bool:
        return isinstance(x, Fp) and x.field.p == self.p

    def primitive_cube_root(self) -> Optional["Fp"]:
        return primitive_cube_root(self)


class Fp:
    __slots__ = ("field", "v")

    def __init__(self, field: PrimeField, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise ValueError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, (self.v + o) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, (self.v - o) % self.field.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, (o - self.v) % self.field.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, self.v * o % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.field.p)
        p = self.field.p
        return Fp(self.field, self.v * pow(o, -1, p) % p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.field, o) / self

    def __neg__(self):
        return Fp(self.field, -self.v % self.field.p)

    def __pow__(self, e: int):
        p = self.field.p
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("zero has no inverse")
            return Fp(self.field, pow(pow(self.v, -1, p), -e, p))
        return Fp(self.field, pow(self.v, e, p))

    def inverse(self) -> "Fp":
        return self ** -1

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp):
            return other.v == self.v and other.field.p == self.field.p
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.v)

    def __bool__(self) -> bool:
        return self.v != 0

    def __int__(self) -> int:
        return self.v

    def __repr__(self) -> str:
        return f"Fp({self.v}, {self.field.p})"

    def __str__(self) -> str:
        return str(self.v)

    def is_zero(self) -> bool:
        return self.v == 0

    def index(self) -> int:
        return self.v

    def sort_key(self) -> tuple[int, ...]:
        return (self.v,)

    def in_base(self) -> bool:
        return True

    def legendre(self) -> int:
        if self.v == 0:
            return 0
        p = self.field.p
        return 1 if pow(self.v, (p - 1) // 2, p) == 1 else -1

    def is_square(self) -> bool:
        return self.legendre() >= 0

    def sqrt(self) -> Optional["Fp"]:
        r = _tonelli_shanks(self.v, self.field.p, self.field._nonresidue)
        if r is None:
            return None
        return Fp(self.field, min(r, self.field.p - r))

    def cube_roots(self) -> list["Fp"]:
        return cube_roots(self)


def _tonelli_shanks(n: int, p: int, z: int) -> Optional[int]:
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class QuadraticExtension:
    """F_{p^2} = F_p(s) with s^2 = d for a fixed non-square d.

    d = -3 when -3 is a non-square (p = 2 mod 3), so that the generator s is
    literally sqrt(-3); otherwise the smallest positive non-square.
    """

    def __init__(self, base: PrimeField):
        self.base = base
        p = base.p
        self.p = p
        self.order = p * p
        self.characteristic = p
        self.degree = 2
        if p % 3 == 2:
            self.d = p - 3
        else:
            d = 2
            while pow(d, (p - 1) // 2, p) != p - 1:
                d += 1
            self.d = d

    def __call__(self, a: Union[int, Fp, "Fp2"], b: Union[int, Fp] = 0) -> "Fp2":
        p = self.p
        if isinstance(a, Fp2):
            if a.field.p != p:
                raise ValueError("element belongs to a different field")
            return a
        return Fp2(self, int(a) % p, int(b) % p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuadraticExtension) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF2", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p}^2)"

    @property
    def zero(self) -> "Fp2":
        return Fp2(self, 0, 0)

    @property
    def one(self) -> "Fp2":
        return Fp2(self, 1, 0)

    @property
    def gen(self) -> "Fp2":
        return Fp2(self, 0, 1)

    def elements(self) -> Iterator["Fp2"]:
        p = self.p
        for b in range(p):
            for a in range(p):
                yield Fp2(self, a, b)

    def element(self, index: int) -> "Fp2":
        b, a = divmod(index, self.p)
        return Fp2(self, a, b)

    def random(self, rng: random.Random, nonzero: bool = False) -> "Fp2":
        lo = 1 if nonzero else 0
        return self.element(rng.randrange(lo, self.order))

    def contains(self, x: object) -> bool:
        return isinstance(x, Fp2) and x.field.p == self.p

    def primitive_cube_root(self) -> Optional["Fp2"]:
        return primitive_cube_root(self)


class Fp2:
    """a + b*s in F_p(s), s^2 = d."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadraticExtension, a: int, b: int):
        self.field = field
        self.a = a
        self.b = b

    def _coerce(self, other) -> Optional[tuple[int, int]]:
        if isinstance(other, Fp2):
            if other.field.p != self.field.p:
                raise ValueError("mixing elements of different fields")
            return other.a, other.b
        if isinstance(other, int):
            return other % self.field.p, 0
        if isinstance(other, Fp) and other.field.p == self.field.p:
            return other.v, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2(self.field, (self.a + o[0]) % p, (self.b + o[1]) % p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2(self.field, (self.a - o[0]) % p, (self.b - o[1]) % p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2(self.field, (o[0] - self.a) % p, (o[1] - self.b) % p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        a, b = self.a, self.b
        c, e = o
        return Fp2(self.field, (a * c + self.field.d * b * e) % p, (a * e + b * c) % p)

    __rmul__ = __mul__

    def norm(self) -> int:
        return (self.a * self.a - self.field.d * self.b * self.b) % self.field.p

    def conjugate(self) -> "Fp2":
        return Fp2(self.field, self.a, -self.b % self.field.p)

    def inverse(self) -> "Fp2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        p = self.field.p
        ni = pow(n, -1, p)
        return Fp2(self.field, self.a * ni % p, -self.b * ni % p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Fp2(self.field, o[0], o[1]).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2(self.field, o[0], o[1]) * self.inverse()

    def __neg__(self):
        p = self.field.p
        return Fp2(self.field, -self.a % p, -self.b % p)

    def __pow__(self, e: int):
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp2):
            return self.a == other.a and self.b == other.b and self.field.p == other.field.p
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.field.p
        if isinstance(other, Fp) and other.field.p == self.field.p:
            return self.b == 0 and self.a == other.v
        return NotImplemented

    def __hash__(self) -> int:
        # agrees with the hash of the equal base-field element
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        return f"Fp2({self.a}, {self.b}, {self.field.p})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}s"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def index(self) -> int:
        return self.a + self.b * self.field.p

    def sort_key(self) -> tuple[int, ...]:
        return (self.b, self.a)

    def in_base(self) -> bool:
        return self.b == 0

    def to_base(self) -> Fp:
        if self.b:
            raise ValueError(f"{self} does not lie in GF({self.field.p})")
        return Fp(self.field.base, self.a)

    def legendre(self) -> int:
        # x is a square in F_{p^2} iff its norm is a square in F_p
        n = self.norm()
        if n == 0:
            return 0
        p = self.field.p
        return 1 if pow(n, (p - 1) // 2, p) == 1 else -1

    def is_square(self) -> bool:
        return self.legendre() >= 0

    def sqrt(self) -> Optional["Fp2"]:
        K = self.field
        p = K.p
        base = K.base
        if self.is_zero():
            return K.zero
        if self.b == 0:
            r = Fp(base, self.a).sqrt()
            if r is not None:
                root = K(r.v)
            else:
                # a is a non-square, so a/d is a square and sqrt(a) = sqrt(a/d) * s
                t = Fp(base, self.a) / K.d
                root = K(0, t.sqrt().v)
        else:
            n = _tonelli_shanks(self.norm(), p, base._nonresidue)
            if n is None:
                return None
            half = pow(2, -1, p)
            x = None
            for cand in ((self.a + n) * half % p, (self.a - n) * half % p):
                x = _tonelli_shanks(cand, p, base._nonresidue)
                if x is not None and x != 0:
                    break
            y = self.b * pow(2 * x, -1, p) % p
            root = Fp2(K, x, y)
        neg = -root
        return root if root.sort_key() <= neg.sort_key() else neg

    def cube_roots(self) -> list["Fp2"]:
        return cube_roots(self)


FieldElement = Union[Fp, Fp2]
Field = Union[PrimeField, QuadraticExtension]


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def GF2(p: int) -> QuadraticExtension:
    return QuadraticExtension(GF(p))


def legendre(x: Fp) -> int:
    """Legendre symbol by Euler's criterion: 0, 1 or -1."""
    return x.legendre()


def sqrt(x: FieldElement) -> Optional[FieldElement]:
    """Canonical square root, or None when x is not a square."""
    return x.sqrt()


@lru_cache(maxsize=None)
def _find_noncube(field: Field) -> FieldElement:
    m = field.order - 1
    for i in range(2, field.order):
        z = field.element(i)
        if (z ** (m // 3)) != 1:
            return z
    raise ArithmeticError("no non-cube found")  # pragma: no cover


def cube_roots(x: FieldElement) -> list[FieldElement]:
    """All y with y^3 = x, sorted canonically."""
    field = x.field
    if x.is_zero():
        return [field.zero]
    m = field.order - 1
    if m % 3 != 0:
        # cubing is a bijection; 3 is invertible modulo the group order
        return [x ** pow(3, -1, m)]
    if x ** (m // 3) != 1:
        return []
    s, t = 0, m
    while t % 3 == 0:
        t //= 3
        s += 1
    # y = x^u has y^3 = x * err with err in the 3-Sylow subgroup
    u = pow(3, -1, t)
    y = x ** u
    err = y ** 3 / x
    g = _find_noncube(field) ** t  # generates the 3-Sylow subgroup (order 3^s)
    # discrete log of err base g, base-3 digit by digit
    k = 0
    gi = g.inverse()
    for i in range(s):
        probe = (err * gi ** k) ** (3 ** (s - 1 - i))
        if probe == 1:
            digit = 0
        elif probe == (g ** (3 ** (s - 1))):
            digit = 1
        else:
            digit = 2
        k += digit * 3 ** i
    # x is a cube, so k is divisible by 3
    root = y * gi ** (k // 3)
    eps = g ** (3 ** (s - 1))
    roots = {root, root * eps, root * eps * eps}
    return sorted(roots, key=lambda r: r.sort_key())


def primitive_cube_root(field: Field) -> Optional[FieldElement]:
    """Canonical epsilon with eps^3 = 1, eps != 1; None if the field has none."""
    if (field.order - 1) % 3 != 0:
        return None
    roots = [r for r in cube_roots(field.one) if r != 1]
    return roots[0]


@lru_cache(maxsize=None)
def primitive_element(field: Field) -> FieldElement:
    """Smallest (in element order) generator of the multiplicative group."""
    m = field.order - 1
    primes = list(factorize(m))
    for i in range(1, field.order):
        g = field.element(i)
        if all(g ** (m // q) != 1 for q in primes):
            return g
    raise ArithmeticError("no generator found")  # pragma: no cover

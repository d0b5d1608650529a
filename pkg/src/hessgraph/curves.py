"""Short Weierstrass curves over F_p and F_{p^2}, their twists, and the model
curve y^2 = x^3 + k/4 with its degree-3 endomorphism.

Points are plain tuples ``(x, y)``; the point at infinity is ``INFINITY``
(i.e. ``None``). Keeping points as tuples keeps the exhaustive graph builds
cheap.
"""

from __future__ import annotations

from functools import cached_property
from math import gcd
from typing import Optional

import numpy as np

from .field import (
    GF,
    GF2,
    Field,
    FieldElement,
    Fp,
    Fp2,
    PrimeField,
    QuadraticExtension,
    factorize,
    primitive_element,
)
from .projmaps import ProjPoint

__all__ = [
    "INFINITY",
    "CurvePoint",
    "WeierstrassCurve",
    "ModelCurve",
    "TwistClass",
    "twist",
    "twist_classes",
    "twist_class_of",
    "twist_degree",
    "is_isomorphic",
    "is_supersingular",
    "count_points",
    "trace",
    "MAX_COUNT_FIELD",
]

INFINITY = None
CurvePoint = Optional[tuple]

# exhaustive point counting refuses fields larger than this
MAX_COUNT_FIELD = 10**8


def _elt(field: Field, v) -> FieldElement:
    return field(v) if isinstance(v, int) else v


class WeierstrassCurve:
    """y^2 = x^3 + A x + B over a finite field."""

    def __init__(self, A, B, field: Optional[Field] = None):
        if field is None:
            for c in (A, B):
                if not isinstance(c, int):
                    field = c.field
                    break
            else:
                raise ValueError("field must be given when A and B are both ints")
        A, B = _elt(field, A), _elt(field, B)
        if A.field is not field and A.field != field:
            A = field(A)
        if B.field is not field and B.field != field:
            B = field(B)
        self.field = field
        self.A = A
        self.B = B
        if self.discriminant().is_zero():
            raise ValueError(f"singular curve: 4A^3 + 27B^2 = 0 for A={A}, B={B}")

    def __repr__(self) -> str:
        return f"WeierstrassCurve(A={self.A}, B={self.B}, q={self.field.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeierstrassCurve):
            return NotImplemented
        return self.field == other.field and self.A == other.A and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.field.order, self.A, self.B))

    # invariants

    def discriminant(self) -> FieldElement:
        A, B = self.A, self.B
        return -16 * (4 * A * A * A + 27 * B * B)

    def j_invariant(self) -> FieldElement:
        A = self.A
        return -1728 * (4 * A) ** 3 / self.discriminant()

    # points

    def contains(self, P: CurvePoint) -> bool:
        if P is INFINITY:
            return True
        x, y = P
        return y * y == x * x * x + self.A * x + self.B

    def _check(self, P: CurvePoint) -> None:
        if not self.contains(P):
            raise ValueError(f"point {P} is not on {self!r}")

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P is INFINITY:
            return P
        return (P[0], -P[1])

    def _add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P is INFINITY:
            return Q
        if Q is INFINITY:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2).is_zero():
                return INFINITY
            lam = (3 * x1 * x1 + self.A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        self._check(P)
        self._check(Q)
        return self._add(P, Q)

    def _mul(self, m: int, P: CurvePoint) -> CurvePoint:
        if m < 0:
            return self.neg(self._mul(-m, P))
        acc = INFINITY
        base = P
        while m:
            if m & 1:
                acc = self._add(acc, base)
            base = self._add(base, base)
            m >>= 1
        return acc

    def scalar_mul(self, m: int, P: CurvePoint) -> CurvePoint:
        self._check(P)
        return self._mul(m, P)

    def points(self) -> list:
        """Every point, infinity first, then affine points in x order."""
        field = self.field
        roots: dict = {}
        for y in field.elements():
            roots.setdefault(y * y, []).append(y)
        out: list = [INFINITY]
        A, B = self.A, self.B
        for x in field.elements():
            ys = roots.get(x * x * x + A * x + B)
            if ys:
                for y in sorted(ys, key=lambda e: e.sort_key()):
                    out.append((x, y))
        return out

    # counting and orders

    @cached_property
    def _count(self) -> int:
        return count_points(self)

    def order_of_group(self) -> int:
        return self._count

    def trace(self) -> int:
        return self.field.order + 1 - self._count

    def order(self, P: CurvePoint) -> int:
        """Order of P by descent from the group order."""
        self._check(P)
        n = self._count
        for ell in factorize(n):
            while n % ell == 0 and self._mul(n // ell, P) is INFINITY:
                n //= ell
        return n

    def all_orders(self, pts: Optional[list] = None) -> dict:
        """Orders of every point, by walking cyclic subgroups.

        Walking P, 2P, ..., mP = O gives ord(iP) = m / gcd(i, m) for free, so
        each new walk starts from a point not yet seen.
        """
        if pts is None:
            pts = self.points()
        orders: dict = {INFINITY: 1}
        for P in pts:
            if P in orders:
                continue
            multiples = [P]
            cur = P
            while True:
                cur = self._add(cur, P)
                if cur is INFINITY:
                    break
                multiples.append(cur)
            m = len(multiples) + 1
            for i, Q in enumerate(multiples, start=1):
                if Q not in orders:
                    orders[Q] = m // gcd(i, m)
        return orders

    def base_change(self, field: Field) -> "WeierstrassCurve":
        """The same equation read over a field containing this one."""
        return WeierstrassCurve(field(self.A.v) if isinstance(self.A, Fp) else self.A,
                                field(self.B.v) if isinstance(self.B, Fp) else self.B,
                                field)


# exhaustive point counting, vectorized


def _square_table(p: int) -> np.ndarray:
    chi = np.full(p, -1, dtype=np.int64)
    r = np.arange(p, dtype=np.int64)
    chi[(r * r) % p] = 1
    chi[0] = 0
    return chi


def count_points(C: WeierstrassCurve, field: Optional[Field] = None) -> int:
    """|C(F_q)| = q + 1 + sum over x of chi(x^3 + A x + B)."""
    field = field or C.field
    if field != C.field:
        C = C.base_change(field)
    q = field.order
    if q > MAX_COUNT_FIELD:
        raise ValueError(f"field of size {q} exceeds the exhaustive counting bound")
    p = field.p if isinstance(field, PrimeField) else field.base.p
    chi = _square_table(p)
    if isinstance(field, PrimeField):
        A, B = C.A.v, C.B.v
        x = np.arange(p, dtype=np.int64)
        rhs = ((x * x % p) * x + A * x + B) % p
        return int(q + 1 + chi[rhs].sum())
    d = field.d
    Aa, Ab = C.A.a, C.A.b
    Ba, Bb = C.B.a, C.B.b
    total = 0
    a = np.arange(p, dtype=np.int64)[None, :]
    rows = max(1, (1 << 20) // p)
    for b0 in range(0, p, rows):
        # x = a + b s for a block of b values at once
        b = np.arange(b0, min(p, b0 + rows), dtype=np.int64)[:, None]
        x2a = (a * a + d * (b * b % p)) % p
        x2b = (2 * a * b) % p
        x3a = (x2a * a + d * (x2b * b % p)) % p
        x3b = (x2a * b + x2b * a) % p
        ra = (x3a + Aa * a + d * (Ab * b % p) + Ba) % p
        rb = (x3b + Aa * b + Ab * a + Bb) % p
        norm = (ra * ra - d * (rb * rb % p)) % p
        total += int(chi[norm].sum())
    return q + 1 + total


def trace(C: WeierstrassCurve, field: Optional[Field] = None) -> int:
    field = field or C.field
    return field.order + 1 - count_points(C, field)


def is_supersingular(C: WeierstrassCurve) -> bool:
    f = C.field
    p = f.p if isinstance(f, PrimeField) else f.base.p
    return C.trace() % p == 0


# twists


def twist_degree(j: FieldElement) -> int:
    if j.is_zero():
        return 6
    if j == 1728:
        return 4
    return 2


def twist(C: WeierstrassCurve, D) -> WeierstrassCurve:
    """The D-twist: (D^2 A, D^3 B) generically, (D A, 0) at j=1728, (0, D B) at j=0."""
    D = _elt(C.field, D)
    if D.is_zero():
        raise ValueError("twist parameter D must be nonzero")
    if C.A.is_zero():
        return WeierstrassCurve(C.field.zero, D * C.B, C.field)
    if C.B.is_zero():
        return WeierstrassCurve(D * C.A, C.field.zero, C.field)
    return WeierstrassCurve(D * D * C.A, D * D * D * C.B, C.field)


def base_curve(j: FieldElement) -> WeierstrassCurve:
    """A fixed curve with invariant j, used as the origin of its twist classes."""
    field = j.field
    if j.is_zero():
        return WeierstrassCurve(field.zero, field.one, field)
    if j == 1728:
        return WeierstrassCurve(field.one, field.zero, field)
    c = 1728 - j
    return WeierstrassCurve(3 * j * c, 2 * j * c * c, field)


class TwistClass:
    """A coset of F_q^* / (F_q^*)^n labelling one twist of invariant j."""

    __slots__ = ("j", "n", "index", "D")

    def __init__(self, j: FieldElement, n: int, index: int, D: FieldElement):
        self.j = j
        self.n = n
        self.index = index
        self.D = D

    def key(self) -> tuple:
        return (self.j.index(), self.index)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistClass) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"TwistClass(j={self.j}, n={self.n}, index={self.index})"


def _coset_count(field: Field, n: int) -> int:
    return gcd(n, field.order - 1)


def twist_classes(j, field: Field) -> list[WeierstrassCurve]:
    """One representative curve per F_q-twist class of invariant j."""
    j = _elt(field, j)
    C0 = base_curve(j)
    m = _coset_count(field, twist_degree(j))
    g = primitive_element(field)
    return [twist(C0, g ** i) for i in range(m)]


def _coset_index(z: FieldElement, m: int) -> int:
    """i with z in g^i (F_q^*)^m, where g is the canonical generator."""
    field = z.field
    e = (field.order - 1) // m
    w = primitive_element(field) ** e
    t = z ** e
    cur = field.one
    for i in range(m):
        if cur == t:
            return i
        cur = cur * w
    raise ArithmeticError("coset lookup failed")  # pragma: no cover


def twist_class_of(C: WeierstrassCurve) -> TwistClass:
    """Locate C among the twist classes of its j-invariant."""
    j = C.j_invariant()
    n = twist_degree(j)
    m = _coset_count(C.field, n)
    C0 = base_curve(j)
    if j.is_zero():
        ratio = C.B / C0.B
    elif j == 1728:
        ratio = C.A / C0.A
    else:
        ratio = C.B * C0.A / (C.A * C0.B)
    i = _coset_index(ratio, m)
    return TwistClass(j, n, i, primitive_element(C.field) ** i)


def is_isomorphic(C1: WeierstrassCurve, C2: WeierstrassCurve) -> bool:
    """F_q-isomorphism: equal j and equal twist class."""
    if C1.field != C2.field:
        return False
    if C1.j_invariant() != C2.j_invariant():
        return False
    return twist_class_of(C1).index == twist_class_of(C2).index


# the model curve


class ModelCurve:
    """E_k: y^2 = x^3 + k/4 over F_{p^2}, for k in F_p^*.

    Carries the 3-torsion point T = (0, sqrt(k)/2), the endomorphism psi with
    kernel {O, T, -T}, and the maps between P^1(F_p) and E_k.
    """

    def __init__(self, k, p: int):
        self.base: PrimeField = GF(p)
        self.ext: QuadraticExtension = GF2(p)
        k = self.base(k) if isinstance(k, int) else k
        if isinstance(k, Fp2):
            if not k.in_base():
                raise ValueError("k must lie in the base field")
            k = k.to_base()
        if k.is_zero():
            raise ValueError("k must be nonzero")
        self.p = p
        self.k = k
        self.K = self.ext(k.v)
        self.curve = WeierstrassCurve(self.ext.zero, self.K / 4, self.ext)
        self.sqrt_m3 = self.ext(-3).sqrt()
        self.T = (self.ext.zero, self.curve.B.sqrt())
        self._den = 3 * self.sqrt_m3

    def __repr__(self) -> str:
        return f"ModelCurve(k={self.k}, p={self.p})"

    def psi(self, P: CurvePoint) -> CurvePoint:
        self.curve._check(P)
        return self._psi(P)

    def _psi(self, P: CurvePoint) -> CurvePoint:
        if P is INFINITY:
            return P
        x, y = P
        if x.is_zero():
            return INFINITY  # the kernel points +-T
        x2 = x * x
        x3 = x2 * x
        K = self.K
        return (-(x3 + K) / (3 * x2), -y * (x3 - 2 * K) / (self._den * x3))

    def iota(self, pt: ProjPoint) -> CurvePoint:
        if pt.x is None:
            return INFINITY
        X = pt.x
        X = self.ext(X.v) if isinstance(X, Fp) else X
        return (X, (X * X * X + self.curve.B).sqrt())

    def pi(self, P: CurvePoint) -> ProjPoint:
        """First-coordinate projection, over F_p when the x-coordinate allows."""
        if P is INFINITY:
            return ProjPoint(self.base, None)
        x = P[0]
        if x.in_base():
            return ProjPoint(self.base, x.to_base())
        return ProjPoint(self.ext, x)

    def s_set(self) -> list:
        """All points of E_k(F_{p^2}) with x in F_p, plus infinity."""
        out: list = [INFINITY]
        B = self.curve.B
        for x in self.base.elements():
            X = self.ext(x.v)
            y = (X * X * X + B).sqrt()
            if y.is_zero():
                out.append((X, y))
            else:
                out.append((X, y))
                out.append((X, -y))
        return out

    def in_base_curve(self, P: CurvePoint) -> bool:
        """Is P in E_k(F_p)?"""
        return P is INFINITY or (P[0].in_base() and P[1].in_base())

    def indegree_in_s(self, P: CurvePoint) -> int:
        """Number of points of S mapped to P by psi."""
        self.curve._check(P)
        if P is INFINITY:
            return sum(1 for Q in (INFINITY, self.T, self.curve.neg(self.T)) if self._in_s(Q))
        xP = P[0]
        count = 0
        B = self.curve.B
        # psi(Q) has x-coordinate xP iff x^3 + 3 xP x^2 + k = 0
        for x in self.base.elements():
            X = self.ext(x.v)
            if (X * X * X + 3 * xP * X * X + self.K).is_zero():
                y = (X * X * X + B).sqrt()
                cands = {(X, y), (X, -y)}
                count += sum(1 for Q in cands if self._psi(Q) == P)
        return count

    def _in_s(self, P: CurvePoint) -> bool:
        return P is INFINITY or P[0].in_base()

    def scaled(self, u) -> "ModelCurve":
        """The model curve with parameter u^6 k."""
        u = _elt(self.ext, u)
        if u.is_zero():
            raise ValueError("u must be nonzero")
        k2 = u ** 6 * self.K
        if not k2.in_base():
            raise ValueError("u^6 k must lie in the base field")
        return ModelCurve(k2.to_base(), self.p)

    def phi_u(self, u, P: CurvePoint) -> CurvePoint:
        """(x, y) -> (u^2 x, u^3 y), a point of the model curve for u^6 k."""
        u = _elt(self.ext, u)
        if isinstance(u, Fp):
            u = self.ext(u.v)
        if u.is_zero():
            raise ValueError("u must be nonzero")
        self.curve._check(P)
        if P is INFINITY:
            return P
        return (u * u * P[0], u * u * u * P[1])

    # periodicity

    @cached_property
    def group_order(self) -> int:
        return self.curve.order_of_group()

    def order(self, P: CurvePoint) -> int:
        return self.curve.order(P)

    def is_periodic(self, P: CurvePoint) -> bool:
        return self.order(P) % 3 != 0

    def depth(self, P: CurvePoint) -> int:
        d = 0
        while not self.is_periodic(P):
            P = self._psi(P)
            d += 1
        return d

    def two_torsion(self) -> list:
        """O together with the points (x, 0)."""
        out: list = [INFINITY]
        for x in self.curve.field.elements():
            if (x * x * x + self.curve.B).is_zero():
                out.append((x, self.ext.zero))
        return out

"""Points of the projective line and the rational self-maps acting on them.

All maps are evaluated on homogeneous coordinates, so they are total on
P^1(F_q): no evaluation ever divides by zero.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Optional, Sequence

from .field import Field, FieldElement

__all__ = [
    "ProjPoint",
    "projective_line",
    "f_kl",
    "hess_j",
    "phi",
    "psi_proj",
    "nu",
    "lambda_hess",
    "j_from_lambda",
    "g216_action",
    "g216_word",
    "j_fiber",
    "j_fibers",
    "HESS_K",
    "HESS_L",
    "PENCIL_K",
]

HESS_K = -6912
HESS_L = -27
PENCIL_K = 108


class ProjPoint:
    """A point of P^1 over a field, stored normalized as [x:1] or [1:0]."""

    __slots__ = ("field", "x")

    def __init__(self, field: Field, x: Optional[FieldElement]):
        self.field = field
        self.x = None if x is None else field(x) if isinstance(x, int) else x

    @classmethod
    def infinity(cls, field: Field) -> "ProjPoint":
        return cls(field, None)

    @classmethod
    def from_pair(cls, u: FieldElement, v: FieldElement) -> "ProjPoint":
        field = u.field
        if v.is_zero():
            if u.is_zero():
                raise ValueError("[0:0] is not a projective point")
            return cls(field, None)
        return cls(field, u / v)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def coords(self) -> tuple[FieldElement, FieldElement]:
        f = self.field
        if self.x is None:
            return f.one, f.zero
        return self.x, f.one

    def index(self) -> int:
        """Vertex id: elements in field order, then infinity last."""
        return self.field.order if self.x is None else self.x.index()

    def label(self) -> str:
        return "inf" if self.x is None else str(self.x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x

    def __hash__(self) -> int:
        return hash(None) if self.x is None else hash(self.x)

    def __repr__(self) -> str:
        return f"[{self.label()}:{0 if self.x is None else 1}]" if self.x is not None else "[1:0]"


def projective_line(field: Field) -> Iterator[ProjPoint]:
    """[0:1], [1:1], ..., [q-1:1], [1:0]."""
    for x in field.elements():
        yield ProjPoint(field, x)
    yield ProjPoint(field, None)


def _nonzero(c: FieldElement, name: str) -> None:
    if c.is_zero():
        raise ValueError(f"{name} must be nonzero")


def f_kl(k, l, pt: ProjPoint) -> ProjPoint:
    """[u:v] -> [(u + k v)^3 : l u^2 v]."""
    field = pt.field
    k, l = field(k) if isinstance(k, int) else k, field(l) if isinstance(l, int) else l
    _nonzero(k, "k")
    _nonzero(l, "l")
    u, v = pt.coords()
    s = u + k * v
    return ProjPoint.from_pair(s * s * s, l * u * u * v)


def hess_j(pt: ProjPoint) -> ProjPoint:
    """j -> (6912 - j)^3 / (27 j^2), extended by 0 -> inf and inf -> inf."""
    return f_kl(HESS_K, HESS_L, pt)


def phi(k, k2, pt: ProjPoint) -> ProjPoint:
    """[u:v] -> [k u : k2 v]."""
    field = pt.field
    k, k2 = field(k) if isinstance(k, int) else k, field(k2) if isinstance(k2, int) else k2
    _nonzero(k, "k")
    _nonzero(k2, "k'")
    u, v = pt.coords()
    return ProjPoint.from_pair(k * u, k2 * v)


def psi_proj(k, pt: ProjPoint) -> ProjPoint:
    """[u:v] -> [u^3 + k v^3 : -3 u^2 v]."""
    field = pt.field
    k = field(k) if isinstance(k, int) else k
    _nonzero(k, "k")
    u, v = pt.coords()
    return ProjPoint.from_pair(u * u * u + k * v * v * v, -3 * u * u * v)


def nu(pt: ProjPoint) -> ProjPoint:
    """Coordinatewise cube [u:v] -> [u^3:v^3]."""
    if pt.x is None:
        return pt
    return ProjPoint(pt.field, pt.x * pt.x * pt.x)


def lambda_hess(lam: ProjPoint) -> ProjPoint:
    """Action of the Hessian on the Hesse-pencil parameter."""
    return psi_proj(PENCIL_K, lam)


def j_from_lambda(lam: ProjPoint) -> Optional[ProjPoint]:
    """j(E_lambda), or None for singular members (lambda^3 = -27) and E_inf."""
    if lam.x is None:
        return None
    l3 = lam.x * lam.x * lam.x
    den = l3 + 27
    if den.is_zero():
        return None
    t = 216 - l3
    return ProjPoint(lam.field, l3 * t * t * t / (den * den * den))


def g216_action(gen: str, lam: ProjPoint) -> ProjPoint:
    """Induced action of the Hessian-group generators g3, g4 on lambda."""
    field = lam.field
    if gen == "g3":
        u, v = lam.coords()
        # [lambda:1] -> [3(6 - lambda) : lambda + 3], homogenized
        return ProjPoint.from_pair(3 * (6 * v - u), u + 3 * v)
    if gen == "g4":
        eps = field.primitive_cube_root()
        if eps is None:
            raise ValueError(f"{field!r} has no primitive cube root of unity")
        if lam.x is None:
            return lam
        return ProjPoint(field, eps * eps * lam.x)
    raise ValueError(f"unknown generator {gen!r}; expected 'g3' or 'g4'")


def g216_word(word: Sequence[str], lam: ProjPoint) -> ProjPoint:
    """Apply generators left to right: word ['g3', 'g4'] means g4(g3(lam))."""
    for gen in word:
        lam = g216_action(gen, lam)
    return lam


def j_fiber(j: ProjPoint, field: Field) -> list[ProjPoint]:
    """Every lambda in the field with lambda^3 != -27 and j(E_lambda) = j."""
    out = []
    for x in field.elements():
        lam = ProjPoint(field, x)
        jl = j_from_lambda(lam)
        if jl is not None and jl == j:
            out.append(lam)
    return out


def j_fibers(field: Field) -> dict[ProjPoint, list[ProjPoint]]:
    """All nonempty fibers of lambda -> j(E_lambda) in one pass."""
    out: dict[ProjPoint, list[ProjPoint]] = defaultdict(list)
    for x in field.elements():
        lam = ProjPoint(field, x)
        jl = j_from_lambda(lam)
        if jl is not None:
            out[jl].append(lam)
    return dict(out)


def orbit(lam: ProjPoint, gens: Iterable[str] = ("g3", "g4")) -> set[ProjPoint]:
    """Orbit of lambda under the group generated by `gens`."""
    gens = tuple(gens)
    seen = {lam}
    frontier = [lam]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = g216_action(g, cur)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen

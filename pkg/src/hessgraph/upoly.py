"""Dense univariate polynomials over a field: just enough for root finding.

A polynomial is a list of coefficients, constant term first.
"""

from __future__ import annotations

from typing import Sequence

from .field import Field, FieldElement, GF2, PrimeField


def trim(f: Sequence[FieldElement]) -> list[FieldElement]:
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return f


def evaluate(f: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    acc = x.field.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def mul(f: Sequence[FieldElement], g: Sequence[FieldElement]) -> list[FieldElement]:
    if not f or not g:
        return []
    zero = f[0].field.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def deflate(f: Sequence[FieldElement], r: FieldElement) -> tuple[list[FieldElement], FieldElement]:
    """Synthetic division by (x - r): returns (quotient, remainder)."""
    f = trim(f)
    if not f:
        return [], r.field.zero
    n = len(f) - 1
    q = [r.field.zero] * n
    acc = f[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = f[i] + acc * r
    return q, acc


def multiplicity(f: Sequence[FieldElement], r: FieldElement) -> int:
    f = trim(f)
    m = 0
    while f:
        q, rem = deflate(f, r)
        if not rem.is_zero():
            break
        m += 1
        f = q
    return m


def roots_with_multiplicity(f: Sequence[FieldElement], field: Field) -> dict[FieldElement, int]:
    """Exhaustive root search over every element of `field`."""
    f = trim(f)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    out: dict[FieldElement, int] = {}
    for x in field.elements():
        if evaluate(f, x).is_zero():
            out[x] = multiplicity(f, x)
    return out


def roots_up_to_quadratic_extension(
    f: Sequence[FieldElement], base: PrimeField
) -> dict[FieldElement, int]:
    """Roots in F_{p^2} of f over F_p whose degree is at most 3.

    Roots in F_p are found by exhaustive search; after deflating them the
    remaining factor has degree <= 2 (solved by the quadratic formula) or is an
    irreducible cubic (no roots in F_{p^2}).
    """
    f = trim(f)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    K = GF2(base.p)
    found: dict[FieldElement, int] = {}
    g = f
    for x in base.elements():
        m = multiplicity(g, x)
        if m:
            found[K(x.v)] = m
            for _ in range(m):
                g, _rem = deflate(g, x)
    deg = len(g) - 1
    if deg <= 0:
        return found
    if deg == 1:  # pragma: no cover - linear factors were found above
        raise AssertionError("linear factor survived deflation")
    if deg == 2:
        c, b, a = (K(v.v) for v in g)
        disc = b * b - 4 * a * c
        s = disc.sqrt()
        r1 = (-b + s) / (2 * a)
        r2 = (-b - s) / (2 * a)
        if r1 == r2:  # pragma: no cover - a repeated root would lie in F_p
            found[r1] = found.get(r1, 0) + 2
        else:
            found[r1] = found.get(r1, 0) + 1
            found[r2] = found.get(r2, 0) + 1
        return found
    if deg == 3:
        return found
    raise ValueError("degree above 3 is not supported")

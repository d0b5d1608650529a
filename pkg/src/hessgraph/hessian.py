"""The Hessian of plane cubics, specialised to short Weierstrass curves.

Forms in X, Y, Z are stored as dicts from exponent triples to coefficients.
For a Weierstrass curve the cubic is X^3 + A X Z^2 + B Z^3 - Y^2 Z, so the
affine chart is x = X/Z, y = Y/Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .curves import WeierstrassCurve, trace
from .field import Field, FieldElement, primitive_cube_root
from .upoly import roots_with_multiplicity

__all__ = [
    "MONOMIALS",
    "CubicForm",
    "HessianResult",
    "hessian_form",
    "weierstrass_form",
    "weierstrass_hessian",
    "short_weierstrass_from_hessian",
    "hessian_multiplicity_pattern",
    "MultiplicityPattern",
    "hessian_twist_exponent",
    "even_trace_preimage",
    "trace_mod3_edge_check",
    "hesse_cubic",
    "hesse_inflection_points",
]

# X^3, X^2Y, X^2Z, XY^2, XYZ, XZ^2, Y^3, Y^2Z, YZ^2, Z^3
MONOMIALS: tuple = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)


# bare polynomial helpers on {exponents: coeff}


def _padd(f: dict, g: dict) -> dict:
    out = dict(f)
    for m, c in g.items():
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if not c.is_zero()}


def _pscale(f: dict, s) -> dict:
    return {m: c * s for m, c in f.items() if not (c * s).is_zero()}


def _pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[m] = out[m] + c1 * c2 if m in out else c1 * c2
    return {m: c for m, c in out.items() if not c.is_zero()}


def _pderiv(f: dict, var: int) -> dict:
    out: dict = {}
    for m, c in f.items():
        e = m[var]
        if e == 0:
            continue
        m2 = list(m)
        m2[var] -= 1
        val = c * e
        if not val.is_zero():
            out[tuple(m2)] = val
    return out


def _ppow(f: dict, e: int, one) -> dict:
    out = {(0, 0, 0): one}
    for _ in range(e):
        out = _pmul(out, f)
    return out


class CubicForm:
    """A homogeneous cubic in X, Y, Z over a field.

    The zero form is representable (a Hessian can vanish identically) and is
    reported by ``is_zero``.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict):
        for m in terms:
            if sum(m) != 3:
                raise ValueError(f"monomial {m} is not cubic")
        self.field = field
        self.terms = {m: (field(c) if isinstance(c, int) else c) for m, c in terms.items()}
        self.terms = {m: c for m, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def from_coefficients(cls, field: Field, coeffs: Sequence) -> "CubicForm":
        """Build from the 10 coefficients in ``MONOMIALS`` order."""
        if len(coeffs) != 10:
            raise ValueError("a cubic form has exactly 10 coefficients")
        return cls(field, dict(zip(MONOMIALS, coeffs)))

    @classmethod
    def product_of_lines(cls, field: Field, rows: Sequence[Sequence]) -> "CubicForm":
        """Product of the three linear forms whose coefficients are the rows."""
        prod = None
        for row in rows:
            lf = {}
            for idx, c in enumerate(row):
                c = field(c) if isinstance(c, int) else c
                if not c.is_zero():
                    e = [0, 0, 0]
                    e[idx] = 1
                    lf[tuple(e)] = c
            prod = lf if prod is None else _pmul(prod, lf)
        return cls(field, prod)

    def coefficients(self) -> list:
        zero = self.field.zero
        return [self.terms.get(m, zero) for m in MONOMIALS]

    def coefficient(self, m: tuple) -> FieldElement:
        return self.terms.get(m, self.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicForm) and self.coefficients() == other.coefficients()

    def __repr__(self) -> str:
        names = ("X", "Y", "Z")
        parts = []
        for m in MONOMIALS:
            c = self.terms.get(m)
            if c is None:
                continue
            mono = "".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, m) if e)
            parts.append(f"{c}*{mono}")
        return "CubicForm(" + (" + ".join(parts) or "0") + ")"

    def scale(self, s) -> "CubicForm":
        return CubicForm(self.field, _pscale(self.terms, s))

    def __add__(self, other: "CubicForm") -> "CubicForm":
        return CubicForm(self.field, _padd(self.terms, other.terms))

    def __mul__(self, s) -> "CubicForm":
        return self.scale(s)

    __rmul__ = __mul__

    def evaluate(self, X, Y, Z) -> FieldElement:
        acc = self.field.zero
        for (a, b, c), coef in self.terms.items():
            acc = acc + coef * X ** a * Y ** b * Z ** c
        return acc

    def substitute(self, M: Sequence[Sequence]) -> "CubicForm":
        """F(M (X, Y, Z)^T): variable i becomes sum_j M[i][j] * var_j."""
        one = self.field.one
        lin = []
        for row in M:
            lf = {}
            for j, c in enumerate(row):
                c = self.field(c) if isinstance(c, int) else c
                if not c.is_zero():
                    e = [0, 0, 0]
                    e[j] = 1
                    lf[tuple(e)] = c
            lin.append(lf)
        out: dict = {}
        for (a, b, c), coef in self.terms.items():
            t = _pmul(_pmul(_ppow(lin[0], a, one), _ppow(lin[1], b, one)), _ppow(lin[2], c, one))
            out = _padd(out, _pscale(t, coef))
        return CubicForm(self.field, out)

    def proportional_to(self, other: "CubicForm") -> Optional[FieldElement]:
        """s with self = s * other, or None."""
        if self.is_zero() or other.is_zero():
            return None
        m0 = next(iter(other.terms))
        if m0 not in self.terms:
            return None
        s = self.terms[m0] / other.terms[m0]
        return s if self == other.scale(s) else None


def _det3(M) -> dict:
    (a, b, c), (d, e, f), (g, h, i) = M
    t1 = _pmul(a, _padd(_pmul(e, i), _pscale(_pmul(f, h), -1)))
    t2 = _pmul(b, _padd(_pmul(d, i), _pscale(_pmul(f, g), -1)))
    t3 = _pmul(c, _padd(_pmul(d, h), _pscale(_pmul(e, g), -1)))
    return _padd(_padd(t1, _pscale(t2, -1)), t3)


def hessian_form(F: CubicForm) -> CubicForm:
    """Determinant of the matrix of second partial derivatives of F."""
    if F.is_zero():
        raise ValueError("the zero form has no Hessian")
    first = [_pderiv(F.terms, v) for v in range(3)]
    M = [[_pderiv(first[i], j) for j in range(3)] for i in range(3)]
    return CubicForm(F.field, _det3(M))


def weierstrass_form(C: WeierstrassCurve) -> CubicForm:
    """X^3 + A X Z^2 + B Z^3 - Y^2 Z."""
    f = C.field
    return CubicForm(f, {(3, 0, 0): f.one, (1, 0, 2): C.A, (0, 0, 3): C.B, (0, 2, 1): -f.one})


@dataclass
class HessianResult:
    """Outcome of taking the Hessian of a Weierstrass curve.

    kind is "elliptic", "three_lines" or "singular". For three lines, alpha
    satisfies alpha^2 = -3B when it exists in the field; otherwise the lines
    are only defined over an extension and ``lines_over_extension`` is set.
    """

    kind: str
    curve: Optional[WeierstrassCurve] = None
    form: Optional[CubicForm] = None
    alpha: Optional[FieldElement] = None
    lines_over_extension: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def is_elliptic(self) -> bool:
        return self.kind == "elliptic"


def weierstrass_hessian(C: WeierstrassCurve) -> HessianResult:
    """Short Weierstrass form of Hess(C), or the three-lines case when A = 0."""
    A, B = C.A, C.B
    f = C.field
    if A.is_zero():
        # Hess = -24 X (Y^2 + 3 B Z^2)
        form = CubicForm(f, {(1, 2, 0): f(-24), (1, 0, 2): -72 * B})
        alpha = (-3 * B).sqrt()
        return HessianResult("three_lines", form=form, alpha=alpha,
                             lines_over_extension=alpha is None)
    A2 = A * A
    A3 = A2 * A
    B2 = B * B
    Ap = -(A3 + 9 * B2) / (3 * A2 * A2)
    Bp = -B * (A3 + 6 * B2) / (3 * A3 * A3)
    if (4 * Ap ** 3 + 27 * Bp * Bp).is_zero():  # pragma: no cover - excluded by the discriminant law
        return HessianResult("singular", form=weierstrass_form_raw(f, Ap, Bp))
    return HessianResult("elliptic", curve=WeierstrassCurve(Ap, Bp, f))


def weierstrass_form_raw(f: Field, A, B) -> CubicForm:
    return CubicForm(f, {(3, 0, 0): f.one, (1, 0, 2): A, (0, 0, 3): B, (0, 2, 1): -f.one})


def short_weierstrass_from_hessian(C: WeierstrassCurve) -> WeierstrassCurve:
    """Reduce the symbolic Hessian of C to short Weierstrass form.

    Uses the homogeneous substitution (X, Y, Z) -> (Z, 3A Y, 3X + 3(B/A^2) Z),
    then rescales so the Y^2 Z coefficient is -1. Requires A != 0.
    """
    A, B = C.A, C.B
    if A.is_zero():
        raise ValueError("A = 0: the Hessian is three lines, not a curve")
    f = C.field
    H = hessian_form(weierstrass_form(C))
    z, o = f.zero, f.one
    G = H.substitute([[z, z, o], [z, 3 * A, z], [3 * o, z, 3 * B / (A * A)]])
    c_y2z = G.coefficient((0, 2, 1))
    G = G.scale(-1 / c_y2z)
    if G.coefficient((3, 0, 0)) != 1:  # pragma: no cover - guarded by the tests
        raise ArithmeticError(f"unexpected normal form {G}")
    for m in ((2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (0, 3, 0), (0, 1, 2)):
        if not G.coefficient(m).is_zero():  # pragma: no cover
            raise ArithmeticError(f"unexpected normal form {G}")
    return WeierstrassCurve(G.coefficient((1, 0, 2)), G.coefficient((0, 0, 3)), f)


@dataclass
class MultiplicityPattern:
    """Roots in the field of (j - 6912)^3 + 27 j' j^2, the Hessian fibre over j'."""

    kind: str  # "simple", "double_at" or "triple_at"
    roots: dict  # root -> multiplicity, roots lying in the field only
    repeated: Optional[FieldElement] = None


def hessian_multiplicity_pattern(jp, field: Field) -> MultiplicityPattern:
    """Multiplicity structure of the solutions j of Hess(j) = j'.

    A repeated root of a cubic over the field is always in the field, so an
    exhaustive search is enough to decide the pattern.
    """
    jp = field(jp) if isinstance(jp, int) else jp
    c = field(-6912)
    # (j + c)^3 + 27 j' j^2, constant term first
    poly = [c ** 3, 3 * c * c, 3 * c + 27 * jp, field.one]
    roots = roots_with_multiplicity(poly, field)
    rep = [(r, m) for r, m in roots.items() if m > 1]
    if not rep:
        return MultiplicityPattern("simple", roots)
    r, m = rep[0]
    return MultiplicityPattern("triple_at" if m == 3 else "double_at", roots, r)


def hessian_twist_exponent(j_src, j_dst) -> int:
    """e with Hess(E_D) isomorphic to E'_{D^-e}."""
    if j_src.is_zero():
        raise ValueError("j_src = 0 has no elliptic Hessian")
    if j_dst.is_zero():
        return 3
    if j_dst == 1728 and j_src != 1728:
        return 2
    return 1


def even_trace_preimage(Cp: WeierstrassCurve) -> WeierstrassCurve:
    """A curve E over the same field with Hess(E) equal to Cp.

    Cp needs a rational 2-torsion point (x0, 0). Moving it to the origin gives
    y^2 = x^3 + a x^2 + b x with b != 0, and then A = -1/(3b), B = -a/(27 b^2).
    """
    f = Cp.field
    cubic = [Cp.B, Cp.A, f.zero, f.one]
    roots = sorted(roots_with_multiplicity(cubic, f), key=lambda r: r.sort_key())
    if not roots:
        raise ValueError(f"{Cp!r} has odd order: no rational 2-torsion point")
    x0 = roots[0]
    a = 3 * x0
    b = 3 * x0 * x0 + Cp.A
    return WeierstrassCurve(-1 / (3 * b), -a / (27 * b * b), f)


def trace_mod3_edge_check(C: WeierstrassCurve) -> bool:
    """Do C and its Hessian have the same trace modulo 3?"""
    H = weierstrass_hessian(C)
    if not H.is_elliptic:
        raise ValueError("j = 0: the Hessian is not an elliptic curve")
    return (trace(C) - trace(H.curve)) % 3 == 0


def hesse_cubic(lam, field: Field) -> CubicForm:
    """X^3 + Y^3 + Z^3 + lambda X Y Z."""
    lam = field(lam) if isinstance(lam, int) else lam
    o = field.one
    return CubicForm(field, {(3, 0, 0): o, (0, 3, 0): o, (0, 0, 3): o, (1, 1, 1): lam})


def hesse_inflection_points(field: Field) -> list:
    """The nine common flexes of the Hesse pencil; needs a cube root of unity."""
    eps = primitive_cube_root(field)
    if eps is None:
        raise ValueError(f"{field!r} has no primitive cube root of unity")
    z, o = field.zero, field.one
    out = []
    for w in (o, eps, eps * eps):
        out.append((z, o, -w))
    for w in (o, eps, eps * eps):
        out.append((o, z, -w))
    for w in (o, eps, eps * eps):
        out.append((o, -w, z))
    return out

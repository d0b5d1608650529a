"""Concrete functional graphs: maps on P^1, the endomorphism on curve points,
and the Hessian acting on twist classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

from ..curves import (
    INFINITY,
    ModelCurve,
    base_curve,
    twist,
    twist_class_of,
    twist_degree,
)
from ..field import Field, primitive_element
from ..hessian import weierstrass_hessian
from ..projmaps import (
    ProjPoint,
    f_kl,
    hess_j,
    lambda_hess,
    projective_line,
    psi_proj,
)
from .functional import FunctionalGraph

__all__ = [
    "projective_graph",
    "hessian_graph",
    "fkl_graph",
    "psi_proj_graph",
    "lambda_graph",
    "PointGraph",
    "psi_s_graph",
    "psi_curve_graph",
    "TwistGraph",
    "twist_graph",
]


def projective_graph(field: Field, fn: Callable[[ProjPoint], ProjPoint], name: str = "") -> FunctionalGraph:
    """Graph of a self-map of P^1(F_q); vertex ids follow ``ProjPoint.index``."""
    pts = list(projective_line(field))
    succ = [fn(pt).index() for pt in pts]
    return FunctionalGraph(succ, [pt.label() for pt in pts], name)


def hessian_graph(field: Field) -> FunctionalGraph:
    return projective_graph(field, hess_j, f"hess q={field.order}")


def fkl_graph(field: Field, k, l) -> FunctionalGraph:
    return projective_graph(field, lambda pt: f_kl(k, l, pt), f"F(k={k}, l={l}) q={field.order}")


def psi_proj_graph(field: Field, k) -> FunctionalGraph:
    return projective_graph(field, lambda pt: psi_proj(k, pt), f"Psi(k={k}) q={field.order}")


def lambda_graph(field: Field) -> FunctionalGraph:
    return projective_graph(field, lambda_hess, f"lambda q={field.order}")


@dataclass
class PointGraph:
    """A graph on curve points together with the point behind each vertex.

    For quotient graphs ``points`` holds one representative per class and
    ``index`` maps each x-coordinate (None for O) to its vertex id.
    """

    graph: FunctionalGraph
    points: list
    index: dict  # point (or class key) -> vertex id
    quotient: bool = False

    def vertex_of(self, P) -> int:
        return self.index[_class_key(P) if self.quotient else P]


def _class_key(P):
    return None if P is INFINITY else P[0]


def _point_label(P) -> str:
    return "O" if P is INFINITY else f"({P[0]},{P[1]})"


def _point_sort_key(P) -> tuple:
    # affine points by (x, y), the point at infinity last
    if P is INFINITY:
        return (1,)
    return (0, P[0].sort_key(), P[1].sort_key())


def _point_graph(M: ModelCurve, pts: list, quotient: bool, name: str) -> PointGraph:
    pts = sorted(pts, key=_point_sort_key)
    if quotient:
        reps: list = []
        index: dict = {}
        for P in pts:
            key = _class_key(P)
            if key not in index:
                index[key] = len(reps)
                reps.append(P)
        succ = [index[_class_key(M._psi(P))] for P in reps]
        labels = ["inf" if P is INFINITY else str(P[0]) for P in reps]
        return PointGraph(FunctionalGraph(succ, labels, name), reps, index, True)
    index = {P: i for i, P in enumerate(pts)}
    succ = [index[M._psi(P)] for P in pts]
    return PointGraph(FunctionalGraph(succ, [_point_label(P) for P in pts], name), pts, index, False)


def psi_s_graph(M: ModelCurve, quotient: bool = True) -> PointGraph:
    """psi restricted to S = points with x in F_p.

    With ``quotient`` the vertices are x-coordinates in P^1 order (then O), so
    vertex ids agree with those of the P^1 graphs.
    """
    return _point_graph(M, M.s_set(), quotient, f"psi on S k={M.k} p={M.p}")


def psi_curve_graph(M: ModelCurve, quotient: bool = False, pts: Optional[list] = None) -> PointGraph:
    """psi on all of E_k(F_{p^2})."""
    if pts is None:
        pts = M.curve.points()
    return _point_graph(M, pts, quotient, f"psi on E k={M.k} p^2={M.p ** 2}")


@dataclass
class TwistGraph:
    """The Hessian acting on F_q-isomorphism classes of elliptic curves.

    Vertex v is the twist class ``keys[v] = (j index, coset index)`` with a
    representative curve ``curves[v]``. Classes with j = 0 have no elliptic
    Hessian; they get a self-loop and are listed in ``terminal``.
    """

    graph: FunctionalGraph
    keys: list
    curves: list
    index: dict
    terminal: set


def twist_graph(field: Field) -> TwistGraph:
    keys: list = []
    curves: list = []
    g = primitive_element(field)
    for j in field.elements():
        C0 = base_curve(j)
        m = _coset_count(field, twist_degree(j))
        for i in range(m):
            keys.append((j.index(), i))
            curves.append(twist(C0, g ** i))
    index = {key: v for v, key in enumerate(keys)}
    succ = []
    terminal = set()
    for v, C in enumerate(curves):
        if C.A.is_zero():
            succ.append(v)
            terminal.add(v)
            continue
        H = weierstrass_hessian(C).curve
        tc = twist_class_of(H)
        succ.append(index[(tc.j.index(), tc.index)])
    labels = [f"{field.element(j)}#{i}" for j, i in keys]
    graph = FunctionalGraph(succ, labels, f"twists q={field.order}")
    return TwistGraph(graph, keys, curves, index, terminal)


def _coset_count(field: Field, n: int) -> int:
    return gcd(n, field.order - 1)

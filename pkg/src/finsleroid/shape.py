"""Geometry of the unit body: extremal dimensions, the indicatrix profile
and its closed-form parameterization, and convexity data.

The body is a surface of revolution about the axial direction; everything
here works with the generatrix in the (q, Z) half plane. The profile is
sampled through the polar-style parameter f in [0, pi]:

    q(f) = (sin f / h) * exp(G (f - pi/2) / 2)
    Z(f) = (cos f - (G/2) sin f) * exp(G (f - pi/2) / 2)

which traces the unit level set K = 1 exactly from the north pole (f = 0)
to the south pole (f = pi). The implicit equation K(q, Z) = 1 has no
closed-form resolution Z(q), so sampling goes through f; a bisection
root finder is kept in the test suite as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .core import Param, Space, scalar_forms
from .errors import BadDirection, VertexSingular

__all__ = [
    "ShapeReport",
    "shape_report",
    "indicatrix_point",
    "indicatrix_profile",
    "profile_slopes",
]


@dataclass(frozen=True)
class ShapeReport:
    """Extremal dimensions of the unit body.

    q_star          equatorial radius at Z = 0
    Z1, Z2          south and north poles on the axis
    altitude        Z2 - Z1 = 2 cosh(G pi / 4)
    q_2star         maximal spatial radius (the true half width)
    Z_2star         height at which the width is attained (= -g q_2star)
    width           2 q_2star
    equator_radius  alias of q_2star (radius of the widest section)
    equator_height  alias of Z_2star
    """

    q_star: float
    Z1: float
    Z2: float
    altitude: float
    q_2star: float
    Z_2star: float
    width: float
    equator_radius: float
    equator_height: float


def shape_report(p: Param) -> ShapeReport:
    """Closed-form extremal dimensions for the parameter p.

    The widest point sits where dq/dZ = 0, i.e. Z = -g q; there the
    angular argument reduces to -arctan(G/2) regardless of the sign of g,
    which resolves the branch split (Z_2star >= 0 iff g <= 0).
    """
    G = p.G
    at = math.atan(0.5 * G)
    q_star = math.exp(-0.5 * G * at)
    Z1 = -math.exp(G * math.pi / 4)
    Z2 = math.exp(-G * math.pi / 4)
    q_2star = math.exp(0.5 * G * at)
    Z_2star = -p.g * q_2star
    return ShapeReport(
        q_star=q_star,
        Z1=Z1,
        Z2=Z2,
        altitude=Z2 - Z1,
        q_2star=q_2star,
        Z_2star=Z_2star,
        width=2.0 * q_2star,
        equator_radius=q_2star,
        equator_height=Z_2star,
    )


def _profile_qz(p: Param, f: float) -> Tuple[float, float]:
    e = math.exp(0.5 * p.G * (f - 0.5 * math.pi))
    return math.sin(f) / p.h * e, (math.cos(f) - 0.5 * p.G * math.sin(f)) * e


def indicatrix_point(p: Param, sp: Space, f: float, n: np.ndarray) -> np.ndarray:
    """Unit vector on the level set K = 1 at polar parameter f in [0, pi]
    along the unit spatial direction n (r_ab n^a n^b = 1)."""
    n = np.asarray(n, dtype=float)
    if n.shape != (sp.dim - 1,):
        raise BadDirection(f"direction must have {sp.dim - 1} components")
    nn = float(n @ sp.r_spatial @ n)
    if abs(nn - 1.0) > 1e-10:
        raise BadDirection(f"direction is not unit for the spatial metric: |n|^2 = {nn}")
    if not 0.0 <= f <= math.pi:
        raise ValueError(f"profile parameter must lie in [0, pi], got {f}")
    q, Z = _profile_qz(p, f)
    out = np.empty(sp.dim)
    out[:-1] = n * q
    out[-1] = Z
    return out


def indicatrix_profile(p: Param, n_samples: int) -> np.ndarray:
    """Generatrix polyline: array of (q, Z) rows sampled uniformly in f
    over [0, pi]. Every row satisfies K = 1 exactly."""
    n_samples = int(n_samples)
    if n_samples < 8:
        raise ValueError("need at least 8 samples")
    fs = np.linspace(0.0, math.pi, n_samples)
    out = np.empty((n_samples, 2))
    for i, f in enumerate(fs):
        out[i] = _profile_qz(p, float(f))
    return out


def profile_slopes(p: Param, sp: Space, R: np.ndarray) -> Tuple[float, float]:
    """First and second derivative of the profile Z(q) at a point of
    the unit level set:

        dZ/dq   = -q / (Z + g q)
        d2Z/dq2 = -B / (Z + g q)^3

    At the pole (q = 0) the slope is 0; approaching Z = 0 from above the
    slope tends to -1/g. The vertical-tangent locus Z + g q = 0 is
    rejected.
    """
    f = scalar_forms(p, sp, R)
    q, Z = f.q, float(R[-1])
    denom = Z + p.g * q
    if denom == 0.0:
        raise VertexSingular("vertical tangent: Z + g q = 0")
    return -q / denom, -f.B / denom**3

"""The N = 2 plane: generalized trigonometric functions, indicatrix
length, the second-order profile equation, and the arc-length factor
identities.

With r_11 = 1 the unit level set is the curve
R^1(f) = Sin_g f, R^2(f) = Cos_g f, where

    Cos_g f  = (cos f - (G/2) sin f) / J(f)
    Sin_g f  = sin f / (h J(f))
    Cos*_g f = (cos f + (G/2) sin f) / (h^2 J(f))

with J(f) = exp(-G (f - pi/2) / 2). The exact derivative chain (in f) is

    (Cos_g)'  = -(1/h) Sin_g
    (Sin_g)'  = h Cos*_g
    (Cos*_g)' = (G cos f - (1 - G^2/4) sin f) / (h^2 J)

and arc length along the curve advances as ds = df / h, so the profile
satisfies d2R/ds2 - g dR/ds + R = 0 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import Param

__all__ = [
    "TrigTriple",
    "gen_trig",
    "trig_derivatives",
    "indicatrix_length",
    "rund_residual",
    "landsberg_check",
]


@dataclass(frozen=True)
class TrigTriple:
    cos_g: float
    sin_g: float
    cos_star: float


def _j(p: Param, f: float) -> float:
    return math.exp(-0.5 * p.G * (f - 0.5 * math.pi))


def gen_trig(p: Param, f: float) -> TrigTriple:
    """Generalized trigonometric values at parameter f in [0, pi]."""
    J = _j(p, f)
    G, h = p.G, p.h
    return TrigTriple(
        cos_g=(math.cos(f) - 0.5 * G * math.sin(f)) / J,
        sin_g=math.sin(f) / (h * J),
        cos_star=(math.cos(f) + 0.5 * G * math.sin(f)) / (h * h * J),
    )


def trig_derivatives(p: Param, f: float) -> TrigTriple:
    """Exact f-derivatives of the triple (same field order)."""
    J = _j(p, f)
    G, h = p.G, p.h
    t = gen_trig(p, f)
    return TrigTriple(
        cos_g=-t.sin_g / h,
        sin_g=h * t.cos_star,
        cos_star=(G * math.cos(f) - (1.0 - 0.25 * G * G) * math.sin(f)) / (h * h * J),
    )


def indicatrix_length(p: Param) -> float:
    """Total arc length of the plane indicatrix: 2 pi / h (= 2 pi iff g = 0)."""
    return 2.0 * math.pi / p.h


def _curve(p: Param, f: float):
    """R(f), dR/df, d2R/df2 on the unit level set (K = 1, r = identity)."""
    J = _j(p, f)
    G, h = p.G, p.h
    s, c = math.sin(f), math.cos(f)
    R = np.array([s / (h * J), (c - 0.5 * G * s) / J])
    dR = np.array([(c + 0.5 * G * s) / (h * J), -s / (h * h * J)])
    d2R = np.array([(G * c - (1.0 - 0.25 * G * G) * s) / (h * J),
                    -(c + 0.5 * G * s) / (h * h * J)])
    return R, dR, d2R


def rund_residual(p: Param, f_samples: Iterable[float],
                  cartan_scalar: Optional[float] = None) -> float:
    """Max norm residual of d2R/ds2 + I dR/ds + R over the given samples,
    with ds = df/h. The residual vanishes for I = -g (the default); any
    other I is a negative control."""
    I = -p.g if cartan_scalar is None else float(cartan_scalar)
    h = p.h
    worst = 0.0
    for f in f_samples:
        R, dR, d2R = _curve(p, float(f))
        res = h * h * d2R + I * h * dR + R
        worst = max(worst, float(np.max(np.abs(res))))
    return worst


def landsberg_check(p: Param, f_samples: Iterable[float]) -> dict:
    """Arc-length factor identities along the plane indicatrix.

    Returns the worst deviations of
      "wronskian":   R^2 dR^1/df - R^1 dR^2/df - K^2/(h J^2)   (K = 1)
      "sqrt_det":    sqrt(det g_pq) - J^2   (via the metric module)
      "convexity":   the curvature ratio minus 1/h^2 (constant)
    All vanish identically; the arc-length element is df / h.
    """
    from .core import Space
    from .tensors import metric

    sp = Space.euclidean(2)
    h = p.h
    worst_w = worst_d = worst_c = 0.0
    for f in f_samples:
        f = float(f)
        R, dR, d2R = _curve(p, f)
        J = _j(p, f)
        worst_w = max(worst_w, abs(R[1] * dR[0] - R[0] * dR[1] - 1.0 / (h * J * J)))
        if 1e-9 < f < math.pi - 1e-9:  # metric needs q > 0
            det = float(np.linalg.det(metric(p, sp, R)))
            worst_d = max(worst_d, abs(math.sqrt(det) - J * J))
        num = d2R[1] * dR[0] - dR[1] * d2R[0]
        den = dR[1] * R[0] - R[1] * dR[0]
        worst_c = max(worst_c, abs(num / den - 1.0 / (h * h)))
    return {"wronskian": worst_w, "sqrt_det": worst_d, "convexity": worst_c}

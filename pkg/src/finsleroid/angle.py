"""Angle, scalar product, perpendicularity, two-point length, and the
first-order parallelogram law with its exact numeric companion.

The angle between two vectors is 1/h times the Euclidean angle of their
images under the norm-preserving map; it is normalized so the classical
cosine theorem holds verbatim with anisotropic lengths. It ranges over
[0, pi/h].
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Param, Space, scalar_forms
from .errors import CollinearVectors, DegenerateVector, NoConvergence
from .geodesic import _clamped_arccos, _space_for

__all__ = [
    "AnglePair",
    "fins_angle",
    "qe_angle",
    "axis_angle",
    "equator_angle",
    "perpendicular_companion",
    "parallelogram_sum",
    "parallelogram_diff",
    "parallelogram_exact",
    "parallelogram_residuals",
]


@dataclass(frozen=True)
class AnglePair:
    """Angle data for a vector pair: the angle alpha in [0, pi/h], the
    scalar product K1 K2 cos(alpha), and the squared two-point length
    K1^2 + K2^2 - 2 K1 K2 cos(alpha)."""

    alpha: float
    scalar_product: float
    ominus_sq: float


def fins_angle(p: Param, sp: Space, R1: np.ndarray, R2: np.ndarray) -> AnglePair:
    """Angle, scalar product, and squared two-point length of two vectors.

    alpha = (1/h) arccos[(A1 A2 + h^2 r_be R1^b R2^e) / sqrt(B1 B2)],
    which coincides with qe_angle of the sigma images.
    """
    f1 = scalar_forms(p, sp, R1)
    f2 = scalar_forms(p, sp, R2)
    spatial = float(R1[:-1] @ sp.r_spatial @ R2[:-1])
    cos_e = (f1.A * f2.A + p.h**2 * spatial) / math.sqrt(f1.B * f2.B)
    alpha = _clamped_arccos(cos_e) / p.h
    product = f1.K * f2.K * math.cos(alpha)
    ominus_sq = f1.K**2 + f2.K**2 - 2.0 * product
    return AnglePair(alpha=alpha, scalar_product=product, ominus_sq=ominus_sq)


def qe_angle(p: Param, t1: np.ndarray, t2: np.ndarray,
             space: Optional[Space] = None) -> float:
    """Image-space angle: (1/h) times the Euclidean angle of t1, t2."""
    sp = _space_for(t1, space)
    n1 = sp.norm(np.asarray(t1, dtype=float))
    n2 = sp.norm(np.asarray(t2, dtype=float))
    if n1 == 0.0 or n2 == 0.0:
        raise DegenerateVector("angle undefined for the zero vector")
    return _clamped_arccos(sp.dot(np.asarray(t1, float), np.asarray(t2, float))
                           / (n1 * n2)) / p.h


def axis_angle(p: Param, sp: Space, R: np.ndarray) -> float:
    """Angle between R and the positive axial direction:
    (1/h) arccos(A / sqrt(B)). Equals fins_angle(R, e_N).alpha."""
    f = scalar_forms(p, sp, R)
    return _clamped_arccos(f.A / math.sqrt(f.B)) / p.h


def equator_angle(p: Param, sp: Space, R: np.ndarray) -> float:
    """Angle between R and its own equatorial direction:
    (1/h) arccos(L / sqrt(B)). Needs q > 0 for the direction to exist."""
    f = scalar_forms(p, sp, R)
    if f.q == 0.0:
        raise DegenerateVector("equatorial direction undefined on the axis")
    return _clamped_arccos(f.L / math.sqrt(f.B)) / p.h


def perpendicular_companion(p: Param, sp: Space, R: np.ndarray,
                            seed: Optional[np.ndarray] = None,
                            tol: float = 1e-12) -> np.ndarray:
    """A vector at angle pi/2 from R (so the scalar product vanishes).

    Built by Gram-Schmidt against R in the background metric, then a 1-D
    bisection rotation in the span so fins_angle hits pi/2 exactly.
    """
    R = sp.check_vector(np.asarray(R, dtype=float))
    if seed is None:
        seed = np.zeros(sp.dim)
        seed[int(np.argmin(np.abs(R)))] = 1.0
    seed = sp.check_vector(np.asarray(seed, dtype=float))
    rr = sp.dot(R, R)
    w = seed - R * sp.dot(R, seed) / rr
    if sp.norm(w) < 1e-12 * sp.norm(seed):
        raise CollinearVectors("seed is parallel to R")
    w = w / sp.norm(w)
    e = R / sp.norm(R)

    def ang(theta: float) -> float:
        v = math.cos(theta) * e + math.sin(theta) * w
        return fins_angle(p, sp, R, v).alpha - 0.5 * math.pi

    lo, hi = 0.0, math.pi  # ang(0) = -pi/2 < 0; ang(pi) = pi/h - pi/2 > 0
    flo = ang(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = ang(mid)
        if abs(fm) < tol or hi - lo < 1e-16:
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    return math.cos(theta) * e + math.sin(theta) * w


# ---------------------------------------------------------------------------
# parallelogram law
# ---------------------------------------------------------------------------

def _pair_data(sp: Space, t1: np.ndarray, t2: np.ndarray):
    a11 = sp.dot(t1, t1)
    a22 = sp.dot(t2, t2)
    a12 = sp.dot(t1, t2)
    gram = a11 * a22 - a12 * a12
    if gram <= (a11 * a22) * 1e-24:
        raise CollinearVectors("parallelogram needs independent vectors")
    return a11, a22, a12, math.sqrt(gram)


def _euclid_angle(sp: Space, x: np.ndarray, y: np.ndarray) -> float:
    return _clamped_arccos(sp.dot(x, y) / (sp.norm(x) * sp.norm(y)))


def _mix_coeff(sp: Space, x: np.ndarray, y: np.ndarray, u: float) -> float:
    """m(x, y): coefficient of x in the first-order sum correction."""
    s = x + y
    e_x = _euclid_angle(sp, x, s)
    e_y = _euclid_angle(sp, y, s)
    return (sp.dot(x, y) * e_x - sp.dot(y, y) * e_y) / u


def parallelogram_sum(p: Param, t1: np.ndarray, t2: np.ndarray,
                      space: Optional[Space] = None) -> np.ndarray:
    """First-order anisotropic sum:
    t1 + t2 + (1/h - 1) (m(t1,t2) t1 + m(t2,t1) t2).

    Accurate to O(k^2) in k = 1/h - 1; a warning is issued for k > 0.2.
    """
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t2 = sp.check_vector(np.asarray(t2, dtype=float))
    k = 1.0 / p.h - 1.0
    if k > 0.2:
        warnings.warn(f"first-order sum with large k = 1/h - 1 = {k:.3f}",
                      stacklevel=2)
    _, _, _, u = _pair_data(sp, t1, t2)
    return t1 + t2 + k * (_mix_coeff(sp, t1, t2, u) * t1
                          + _mix_coeff(sp, t2, t1, u) * t2)


def parallelogram_diff(p: Param, t1: np.ndarray, t3: np.ndarray,
                       space: Optional[Space] = None) -> np.ndarray:
    """First-order anisotropic difference t3 - t1 + (1/h - 1) s(t1, t3).

    The correction satisfies (t3 - t1 . s) = u arccos of the (t1, t3)
    angle and (t1 . s) = u arccos of the (t3 - t1, t3) angle.
    """
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t3 = sp.check_vector(np.asarray(t3, dtype=float))
    k = 1.0 / p.h - 1.0
    if k > 0.2:
        warnings.warn(f"first-order difference with large k = 1/h - 1 = {k:.3f}",
                      stacklevel=2)
    _, _, _, u = _pair_data(sp, t1, t3)
    d = t3 - t1
    e1 = _euclid_angle(sp, t1, t3)
    e2 = _euclid_angle(sp, d, t3)
    svec = ((sp.dot(t1, t1) * e1 - sp.dot(d, t1) * e2) * d
            + (sp.dot(d, d) * e2 - sp.dot(d, t1) * e1) * t1) / u
    return d + k * svec


def parallelogram_residuals(p: Param, t1: np.ndarray, t2: np.ndarray,
                            t3: np.ndarray,
                            space: Optional[Space] = None) -> np.ndarray:
    """Residuals of the two defining cosine-law equations for the sum
    candidate t3. Both vanish at the exact anisotropic sum."""
    sp = _space_for(t1, space)
    a11 = sp.dot(t1, t1)
    a22 = sp.dot(t2, t2)
    a33 = sp.dot(t3, t3)
    n3 = math.sqrt(a33)
    r1 = (n3 - (a22 - a11) / n3
          - 2.0 * math.sqrt(a11) * math.cos(_euclid_angle(sp, t1, t3) / p.h))
    r2 = (n3 - (a11 - a22) / n3
          - 2.0 * math.sqrt(a22) * math.cos(_euclid_angle(sp, t2, t3) / p.h))
    return np.array([r1, r2])


def parallelogram_exact(p: Param, t1: np.ndarray, t2: np.ndarray,
                        space: Optional[Space] = None,
                        tol: float = 1e-12, max_iter: int = 100) -> np.ndarray:
    """Exact anisotropic sum t3 = x t1 + y t2 by damped Newton on the
    residual system, seeded at (x, y) = (1, 1)."""
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t2 = sp.check_vector(np.asarray(t2, dtype=float))
    _pair_data(sp, t1, t2)

    def res(xy: np.ndarray) -> np.ndarray:
        return parallelogram_residuals(p, t1, t2, xy[0] * t1 + xy[1] * t2, space=sp)

    xy = np.array([1.0, 1.0])
    r = res(xy)
    for _ in range(max_iter):
        if np.max(np.abs(r)) < tol:
            return xy[0] * t1 + xy[1] * t2
        eps = 1e-7
        jac = np.empty((2, 2))
        for j in range(2):
            dxy = np.zeros(2)
            dxy[j] = eps
            jac[:, j] = (res(xy + dxy) - res(xy - dxy)) / (2 * eps)
        try:
            step = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence("singular Newton system") from exc
        lam = 1.0
        while lam > 1e-6:
            trial = xy - lam * step
            rt = res(trial)
            if np.max(np.abs(rt)) < np.max(np.abs(r)):
                xy, r = trial, rt
                break
            lam *= 0.5
        else:
            xy = xy - step
            r = res(xy)
    if np.max(np.abs(r)) < 1e-10:
        return xy[0] * t1 + xy[1] * t2
    raise NoConvergence(f"parallelogram solver stalled at residual {np.max(np.abs(r)):.2e}")

"""Two-vector metric tensors: the image-space tensor n_pq(g; t1, t2) with
its frame and covariant conversion, and the anisotropic-picture tensor
G_pq(g; R, S) with the scalar-product gradients.

Both tensors are mixed second derivatives of the corresponding two-vector
scalar product and collapse to the one-vector metric tensors in the
coincidence limit. Near-coincident pairs (relative Gram root below
COINCIDENCE_TOL) are routed to the one-vector tensor instead of
evaluating 0/0 forms. The threshold sits at 1e-7: the subtractive Gram
forms carry relative noise of order sqrt(machine eps) ~ 1.5e-8 at exact
coincidence, so a tighter cut would trigger nondeterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import Param, Space, scalar_forms
from .errors import (CollinearVectors, DegenerateW, NegativeRadicand,
                     SingularXi)
from .geodesic import _clamped_arccos, _space_for
from .quasieuclid import n_metric
from .tensors import grad_covector, metric

__all__ = [
    "COINCIDENCE_TOL",
    "TwoVectorTensor",
    "n2",
    "n2_frame",
    "covector_pair",
    "invert_covector_pair",
    "g2",
    "scalar_grad",
]

COINCIDENCE_TOL = 1e-7


@dataclass(frozen=True)
class TwoVectorTensor:
    """components[p, q] plus the scalar data entering them: the two mixing
    coefficients A1, A2 and the Gram root u(t1, t2)."""

    components: np.ndarray
    A1: float
    A2: float
    u: float


def _pair(sp: Space, t1: np.ndarray, t2: np.ndarray):
    a11 = sp.dot(t1, t1)
    a22 = sp.dot(t2, t2)
    a12 = sp.dot(t1, t2)
    return a11, a22, a12, a11 * a22 - a12 * a12


def n2(p: Param, t1: np.ndarray, t2: np.ndarray,
       space: Optional[Space] = None) -> TwoVectorTensor:
    """Two-vector tensor n_pq(g; t1, t2), the mixed Hessian of the
    image-space scalar product |t1||t2| cos(alpha)."""
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t2 = sp.check_vector(np.asarray(t2, dtype=float))
    a11, a22, a12, gram = _pair(sp, t1, t2)
    if gram <= a11 * a22 * COINCIDENCE_TOL**2:
        nm = n_metric(p, sp, t1)
        return TwoVectorTensor(components=nm.low, A1=1.0 - 1.0 / p.h**2,
                               A2=0.0, u=0.0)
    u = math.sqrt(gram)
    h = p.h
    alpha = _clamped_arccos(a12 / math.sqrt(a11 * a22)) / h
    sa, ca = math.sin(alpha), math.cos(alpha)
    A1 = ca - a12 * sa / (h * u)
    A2 = ca / h - a12 * sa / u
    d1 = (a11 * t2 - a12 * t1) / u
    d2 = (a22 * t1 - a12 * t2) / u
    r = sp.r_full
    n1n2 = math.sqrt(a11) * math.sqrt(a22)
    comp = (a11 * a22 / (h * n1n2) * (sa / u) * r
            + A1 * np.outer(r @ t1, r @ t2) / n1n2
            - A2 * np.outer(r @ d1, r @ d2) / (h * n1n2))
    return TwoVectorTensor(components=comp, A1=A1, A2=A2, u=u)


def n2_frame(p: Param, t1: np.ndarray, t2: np.ndarray,
             base_frame: Optional[np.ndarray] = None,
             space: Optional[Space] = None) -> np.ndarray:
    """Pair-adapted frame f[R, p] = f^R_p(g; t1, t2).

    The frame reproduces the closed-form contractions with t1^p, t2^p and
    with the frame components t1^R, t2^R exactly. The pair expansion
    sum_R f^R_p(t1, t2) f^R_q(t2, t1) recovers the symmetric part of
    n_pq(t1, t2) exactly; its antisymmetric defect is
    (A2/h) (t1_p t2_q - t2_p t1_q) / (|t1||t2|).

    Raises NegativeRadicand outside the validity region of the radicals.
    """
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t2 = sp.check_vector(np.asarray(t2, dtype=float))
    a11, a22, a12, gram = _pair(sp, t1, t2)
    if gram <= a11 * a22 * COINCIDENCE_TOL**2:
        raise CollinearVectors("frame needs independent vectors")
    u = math.sqrt(gram)
    h = p.h
    base = sp.base_frame if base_frame is None else np.asarray(base_frame, float)
    alpha = _clamped_arccos(a12 / math.sqrt(a11 * a22)) / h
    sa, ca = math.sin(alpha), math.cos(alpha)
    if sa / u < 0.0:
        raise NegativeRadicand("sin(alpha)/u negative")
    z = math.sqrt(a11 * a22 * sa / u)
    A1 = ca - a12 * sa / (h * u)
    A2 = ca / h - a12 * sa / u
    rad1 = h * a12 * ca + u * sa          # = z^2 + a12 h A1
    rad2 = a12 * ca / h + u * sa          # = z^2 + a12 A2
    if rad1 < 0.0 or rad2 < 0.0:
        raise NegativeRadicand("frame radicand negative for this configuration")
    br1 = h * A1 / (z + math.sqrt(rad1))
    br2 = A2 / (z + math.sqrt(rad2))
    r = sp.r_full
    d1 = (a11 * t2 - a12 * t1) / u
    d2 = (a22 * t1 - a12 * t2) / u
    f = (z * base + br1 * np.outer(base @ t2, r @ t1)
         - br2 * np.outer(base @ d1, r @ d2))
    return f / math.sqrt(h * math.sqrt(a11) * math.sqrt(a22))


def covector_pair(p: Param, t1: np.ndarray, t2: np.ndarray,
                  space: Optional[Space] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Covariant conversion (T1, T2) of the pair, returned raised to
    vectors: lowering T1 with r gives n_pq(t1, t2) t2^q, and lowering T2
    gives t1^p n_pq(t1, t2)."""
    sp = _space_for(t1, space)
    t1 = sp.check_vector(np.asarray(t1, dtype=float))
    t2 = sp.check_vector(np.asarray(t2, dtype=float))
    a11, a22, a12, gram = _pair(sp, t1, t2)
    if gram <= a11 * a22 * 1e-28:
        raise CollinearVectors("covector pair needs independent vectors")
    u = math.sqrt(gram)
    h = p.h
    alpha = _clamped_arccos(a12 / math.sqrt(a11 * a22)) / h
    sa, ca = math.sin(alpha), math.cos(alpha)
    d1 = (a11 * t2 - a12 * t1) / u
    d2 = (a22 * t1 - a12 * t2) / u
    n1, n2_ = math.sqrt(a11), math.sqrt(a22)
    T1 = (n2_ / n1) * ca * t1 + (n2_ / (h * n1)) * sa * d1
    T2 = (n1 / n2_) * ca * t2 + (n1 / (h * n2_)) * sa * d2
    return T1, T2


def invert_covector_pair(p: Param, T1: np.ndarray, T2: np.ndarray,
                         alpha: float,
                         space: Optional[Space] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Recover (t1, t2) from (T1, T2) at the known pair angle alpha."""
    sp = _space_for(T1, space)
    T1 = sp.check_vector(np.asarray(T1, dtype=float))
    T2 = sp.check_vector(np.asarray(T2, dtype=float))
    b11, b22, b12, gram = _pair(sp, T1, T2)
    if b11 == 0.0 or b22 == 0.0 or gram <= b11 * b22 * 1e-28:
        raise SingularXi("inversion coefficient vanishes for collinear covectors")
    uT = math.sqrt(gram)
    h = p.h
    sa, ca = math.sin(alpha), math.cos(alpha)
    cc = ca * ca + sa * sa / h**2
    D1 = (b11 * T2 - b12 * T1) / uT
    D2 = (b22 * T1 - b12 * T2) / uT
    t1 = (math.sqrt(b22) / math.sqrt(b11)) * (ca * T1 + sa * D1 / h) / cc
    t2 = (math.sqrt(b11) / math.sqrt(b22)) * (ca * T2 + sa * D2 / h) / cc
    return t1, t2


# ---------------------------------------------------------------------------
# anisotropic-picture two-vector tensor
# ---------------------------------------------------------------------------

def _rs_pieces(p: Param, sp: Space, R: np.ndarray, S: np.ndarray):
    fR = scalar_forms(p, sp, R)
    fS = scalar_forms(p, sp, S)
    spatial = float(R[:-1] @ sp.r_spatial @ S[:-1])
    P = fR.A * fS.A + p.h**2 * spatial
    # stable Gram form of the two-vector root
    W2 = fR.B * fS.B - P * P
    return fR, fS, spatial, P, W2


def _m_vector(p: Param, sp: Space, R: np.ndarray, S: np.ndarray,
              fR, fS, spatial: float) -> np.ndarray:
    """M_p(g; R, S): simplified gradient components; M_p R^p = 0."""
    g = p.g
    rR = sp.r_spatial @ R[:-1]
    rS = sp.r_spatial @ S[:-1]
    out = np.empty(sp.dim)
    out[-1] = fR.q**2 * fS.A - spatial * fR.A
    out[:-1] = (-R[-1] * fS.A * rR + fR.B * rS
                - spatial * (fR.q + 0.5 * g * R[-1]) * rR / fR.q)
    return out


def _s_covector(p: Param, sp: Space, R: np.ndarray, S: np.ndarray) -> np.ndarray:
    fR, fS, spatial, P, W2 = _rs_pieces(p, sp, R, S)
    W = math.sqrt(W2)
    M = _m_vector(p, sp, R, S, fR, fS, spatial)
    return M * fR.K / (W * fR.B)


def _s_matrix(p: Param, sp: Space, R: np.ndarray, S: np.ndarray) -> np.ndarray:
    """s_pq(g; R, S) = K(S) d s_p(R, S) / d S^q, fully analytic."""
    g, h = p.g, p.h
    fR, fS, spatial, P, W2 = _rs_pieces(p, sp, R, S)
    W = math.sqrt(W2)
    rR = sp.r_spatial @ R[:-1]
    rS = sp.r_spatial @ S[:-1]
    n = sp.dim
    dAS = np.empty(n)
    dAS[-1] = 1.0
    dAS[:-1] = 0.5 * g * rS / fS.q
    dBS = np.empty(n)
    dBS[-1] = 2.0 * S[-1] + g * fS.q
    dBS[:-1] = (g * S[-1] / fS.q + 2.0) * rS
    dsp = np.empty(n)
    dsp[-1] = 0.0
    dsp[:-1] = rR
    dP = fR.A * dAS + h * h * dsp
    dW = (fR.B * dBS - 2.0 * P * dP) / (2.0 * W)
    M = _m_vector(p, sp, R, S, fR, fS, spatial)
    dM = np.empty((n, n))  # dM[p, q] = d M_p / d S^q
    dM[-1, :] = fR.q**2 * dAS - fR.A * dsp
    coef = (fR.q + 0.5 * g * R[-1]) / fR.q
    for q in range(n):
        dM[:-1, q] = -R[-1] * rR * dAS[q] - dsp[q] * coef * rR
        if q < n - 1:
            dM[:-1, q] += fR.B * sp.r_spatial[:, q]
    ds = (fR.K / fR.B) * (dM / W - np.outer(M, dW) / W2)
    return fS.K * ds


def g2(p: Param, sp: Space, R: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Two-vector metric tensor G_pq(g; R, S), the mixed Hessian of the
    anisotropic scalar product K(R) K(S) cos(alpha(R, S)).

    Near-coincident pairs (relative two-vector root below COINCIDENCE_TOL)
    return the one-vector metric at R. Symmetry: G_pq(R, S) = G_qp(S, R);
    the pullback of n2 through the sigma Jacobians reproduces it exactly.
    """
    R = sp.check_vector(np.asarray(R, dtype=float))
    S = sp.check_vector(np.asarray(S, dtype=float))
    fR, fS, spatial, P, W2 = _rs_pieces(p, sp, R, S)
    if W2 <= fR.B * fS.B * COINCIDENCE_TOL**2:
        # near-coincident pair: the limit is the one-vector tensor
        return metric(p, sp, R)
    h = p.h
    alpha = _clamped_arccos(P / math.sqrt(fR.B * fS.B)) / h
    sa, ca = math.sin(alpha), math.cos(alpha)
    Rlow = grad_covector(p, sp, R)
    Slow = grad_covector(p, sp, S)
    s_RS = _s_covector(p, sp, R, S)
    s_SR = _s_covector(p, sp, S, R)
    spq = _s_matrix(p, sp, R, S)
    return ((np.outer(Rlow, Slow) / (fR.K * fS.K) - h * h * np.outer(s_RS, s_SR)) * ca
            + h * (np.outer(Rlow, s_SR) / fR.K + np.outer(s_RS, Slow) / fS.K + spq) * sa)


def scalar_grad(p: Param, sp: Space, R: np.ndarray,
                S: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Gradients of the anisotropic scalar product with respect to R^p and
    S^q. As S -> R the R-gradient tends to the covector R_p."""
    R = sp.check_vector(np.asarray(R, dtype=float))
    S = sp.check_vector(np.asarray(S, dtype=float))
    fR, fS, spatial, P, W2 = _rs_pieces(p, sp, R, S)
    if W2 <= fR.B * fS.B * COINCIDENCE_TOL**2:
        raise DegenerateW("two-vector root vanished; gradients undefined")
    h = p.h
    alpha = _clamped_arccos(P / math.sqrt(fR.B * fS.B)) / h
    sa, ca = math.sin(alpha), math.cos(alpha)
    product = fR.K * fS.K * ca
    Rlow = grad_covector(p, sp, R)
    Slow = grad_covector(p, sp, S)
    dR = Rlow * product / fR.K**2 + h * fS.K * _s_covector(p, sp, R, S) * sa
    dS = Slow * product / fS.K**2 + h * fR.K * _s_covector(p, sp, S, R) * sa
    return dR, dS

"""Parameter algebra, characteristic scalar forms, and the Finsleroid
metric function.

The geometry lives on an N-dimensional vector space split into an
(N-1)-dimensional spatial part and a distinguished axial direction.
Vectors are plain 1-D numpy arrays with the axial component stored last:
``R = (R^1, ..., R^{N-1}, Z)``.

The anisotropy is controlled by a single parameter ``g`` in (-2, 2).
At g = 0 everything collapses to the Euclidean geometry of the input
metric; as |g| -> 2 the unit body stretches toward a cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import DegenerateVector, OutOfRange

__all__ = [
    "Param",
    "Space",
    "ScalarForms",
    "make_param",
    "scalar_forms",
    "fmf",
]


@dataclass(frozen=True)
class Param:
    """Characteristic parameter g with its derived constants.

    h = sqrt(1 - g^2/4), G = g/h, and the two conjugate root pairs
    g_plus/g_minus (roots of the characteristic form in -Z/q) and
    g_up_plus/g_up_minus (their mirror under g -> -g).
    """

    g: float
    h: float
    G: float
    g_plus: float
    g_minus: float
    g_up_plus: float
    g_up_minus: float

    def mirrored(self) -> "Param":
        """The parameter set for -g."""
        return make_param(-self.g)


def make_param(g: float) -> Param:
    """Build a Param from the characteristic parameter g in (-2, 2)."""
    g = float(g)
    if not -2.0 < g < 2.0 or not math.isfinite(g):
        raise OutOfRange(f"characteristic parameter must satisfy |g| < 2, got {g}")
    h = math.sqrt(1.0 - 0.25 * g * g)
    return Param(
        g=g,
        h=h,
        G=g / h,
        g_plus=0.5 * g + h,
        g_minus=0.5 * g - h,
        g_up_plus=-0.5 * g + h,
        g_up_minus=-0.5 * g - h,
    )


class Space:
    """Dimension N plus the spatial metric matrix r_ab ((N-1) x (N-1)).

    The full background tensor r_pq extends r_ab by a unit axial slot
    (r_NN = 1, r_Na = 0). The matrix must be symmetric positive definite.
    """

    def __init__(self, dim: int, r_spatial: Optional[np.ndarray] = None):
        dim = int(dim)
        if dim < 2:
            raise ValueError(f"dimension must be >= 2, got {dim}")
        if r_spatial is None:
            r_spatial = np.eye(dim - 1)
        r_spatial = np.array(r_spatial, dtype=float)  # own copy: frozen below
        if r_spatial.shape != (dim - 1, dim - 1):
            raise ValueError(
                f"spatial metric must be {(dim - 1, dim - 1)}, got {r_spatial.shape}"
            )
        if not np.allclose(r_spatial, r_spatial.T, rtol=0, atol=1e-12):
            raise ValueError("spatial metric must be symmetric")
        if np.any(np.linalg.eigvalsh(r_spatial) <= 0):
            raise ValueError("spatial metric must be positive definite")
        self.dim = dim
        self.r_spatial = r_spatial
        self.r_spatial.setflags(write=False)

    @classmethod
    def euclidean(cls, dim: int) -> "Space":
        return cls(dim, np.eye(dim - 1))

    @cached_property
    def r_full(self) -> np.ndarray:
        r = np.zeros((self.dim, self.dim))
        r[:-1, :-1] = self.r_spatial
        r[-1, -1] = 1.0
        r.setflags(write=False)
        return r

    @cached_property
    def r_spatial_inv(self) -> np.ndarray:
        inv = np.linalg.inv(self.r_spatial)
        inv = 0.5 * (inv + inv.T)
        inv.setflags(write=False)
        return inv

    @cached_property
    def r_full_inv(self) -> np.ndarray:
        inv = np.zeros((self.dim, self.dim))
        inv[:-1, :-1] = self.r_spatial_inv
        inv[-1, -1] = 1.0
        inv.setflags(write=False)
        return inv

    @cached_property
    def base_frame(self) -> np.ndarray:
        """Cholesky-derived orthonormal frame: frame[P, q] with
        sum_P frame[P, p] frame[P, q] = r_pq."""
        f = np.linalg.cholesky(self.r_full).T
        f.setflags(write=False)
        return f

    @cached_property
    def base_frame_inv(self) -> np.ndarray:
        """Dual frame: sum_P inv[P, p] inv[P, q] = r^pq."""
        f = np.linalg.inv(np.linalg.cholesky(self.r_full))
        f.setflags(write=False)
        return f

    def dual(self) -> "Space":
        """Space whose spatial metric is the inverse matrix (covector side)."""
        return Space(self.dim, self.r_spatial_inv)

    def dot(self, x: np.ndarray, y: np.ndarray) -> float:
        """Full background product r_pq x^p y^q."""
        return float(x[:-1] @ self.r_spatial @ y[:-1] + x[-1] * y[-1])

    def norm(self, x: np.ndarray) -> float:
        return math.sqrt(max(self.dot(x, x), 0.0))

    def spatial_norm(self, R: np.ndarray) -> float:
        """q = sqrt(r_ab R^a R^b) of the spatial part."""
        Rs = R[:-1]
        return math.sqrt(max(float(Rs @ self.r_spatial @ Rs), 0.0))

    def check_vector(self, R: np.ndarray) -> np.ndarray:
        R = np.asarray(R, dtype=float)
        if R.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}, got shape {R.shape}")
        if not np.all(np.isfinite(R)):
            raise ValueError("vector has non-finite components")
        return R

    def __repr__(self) -> str:  # pragma: no cover
        return f"Space(dim={self.dim})"


@dataclass(frozen=True)
class ScalarForms:
    """Characteristic scalars of a vector.

    q   spatial norm of R
    B   characteristic quadratic form Z^2 + g q Z + q^2 (always > 0)
    A   axial combination Z + g q / 2
    L   spatial combination q + g Z / 2
    Phi angular argument in [-pi/2, pi/2]
    J   exponential factor exp(G Phi / 2)
    K   metric function value sqrt(B) J
    w, Q, E are the Z-scaled variants q/Z, B/Z^2, 1 + g w / 2 and are
    None on the equatorial plane Z = 0.
    """

    q: float
    w: Optional[float]
    B: float
    Q: Optional[float]
    E: Optional[float]
    A: float
    L: float
    Phi: float
    J: float
    K: float


def scalar_forms(p: Param, sp: Space, R: np.ndarray) -> ScalarForms:
    """Evaluate all characteristic scalars at a nonzero vector."""
    R = sp.check_vector(R)
    q = sp.spatial_norm(R)
    Z = float(R[-1])
    if q == 0.0 and Z == 0.0:
        raise DegenerateVector("scalar forms are undefined at the origin")
    g, h, G = p.g, p.h, p.G
    B = Z * Z + g * q * Z + q * q
    A = Z + 0.5 * g * q
    L = q + 0.5 * g * Z
    if q > 0.0:
        # branch-free form: agrees with the +-pi/2 split and is continuous
        # across Z = 0 at fixed q
        Phi = math.atan2(A, h * q)
    else:
        Phi = math.copysign(0.5 * math.pi, Z)
    J = math.exp(0.5 * G * Phi)
    K = math.sqrt(B) * J
    if Z != 0.0:
        w = q / Z
        Q = B / (Z * Z)
        E = 1.0 + 0.5 * g * w
    else:
        w = Q = E = None
    return ScalarForms(q=q, w=w, B=B, Q=Q, E=E, A=A, L=L, Phi=Phi, J=J, K=K)


def fmf(p: Param, sp: Space, R: np.ndarray) -> float:
    """Finsleroid metric function K(g; R), the anisotropic norm of R."""
    return scalar_forms(p, sp, R).K

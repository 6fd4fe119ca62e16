"""Minkowski 3-space primitives and the hyperboloid model of H².

The ambient form has signature (-,+,+); the hyperbolic plane is the upper
sheet {<x,x> = -1, x1 > 0} and carries curvature -1 throughout.  Plane curves
are unit-speed with the Frenet system

    gamma'' = gamma + kappa * N,      N' = -kappa * gamma',

and the generic constructors fix the normal as N = J(gamma') where J is the
rotation u -> x ⊠ u of the tangent plane; the signed curvature is then
kappa = <gamma'', J(gamma')>.  Closed-form constructors (horocycles) take an
explicit normal sign instead, since both orientations occur as generating
curves of product hypersurfaces.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import autodiff as ad

ETA3 = np.diag([-1.0, 1.0, 1.0])

POINT_TOL = 1e-12
TANGENT_TOL = 1e-12
FRAME_TOL = 1e-10


def lorentz_inner(a, b):
    """Lorentzian inner product -a1*b1 + a2*b2 + a3*b3 (any scalar type)."""
    return -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2]


def lorentz_cross(a, b):
    """Lorentzian cross product, orthogonal (in the Lorentz form) to both args."""
    x = a[2] * b[1] - a[1] * b[2]
    y = a[2] * b[0] - a[0] * b[2]
    z = a[0] * b[1] - a[1] * b[0]
    if isinstance(x, (int, float, np.floating)):
        return np.array([x, y, z], dtype=float)
    return [x, y, z]


@dataclass(frozen=True)
class H2Point:
    """Point of H² in the hyperboloid model.

    The constraint residual is judged relative to the squared point size:
    far from the origin, evaluating -x1² + x2² + x3² + 1 in doubles cancels
    terms of order |x|², so an absolute bar would reject exact points.
    """

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        object.__setattr__(self, "v", v)
        scale = max(1.0, float(v @ v))
        if abs(lorentz_inner(v, v) + 1.0) > POINT_TOL * scale:
            raise ValueError(f"not on the hyperboloid: <v,v>={lorentz_inner(v, v)!r}")
        if v[0] <= 0.0:
            raise ValueError("lower sheet: x1 must be positive")

    @staticmethod
    def from_timelike(v) -> "H2Point":
        """Normalize a timelike vector with positive first component onto H²."""
        v = np.asarray(v, dtype=float)
        n2 = -lorentz_inner(v, v)
        if n2 <= 0.0:
            raise ValueError("vector is not timelike")
        return H2Point(v / math.sqrt(n2))


@dataclass(frozen=True)
class H2Tangent:
    """Tangent vector of H² at a base point."""

    base: H2Point
    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        object.__setattr__(self, "u", u)
        scale = max(1.0, float(np.linalg.norm(self.base.v) * np.linalg.norm(u)))
        if abs(lorentz_inner(self.base.v, u)) > TANGENT_TOL * scale:
            raise ValueError("vector is not tangent at the base point")


def complex_structure(x: H2Point, u, tol: float = 1e-9):
    """Rotation J_x u = x ⊠ u of the tangent plane at x; J² = -Id."""
    if abs(lorentz_inner(x.v, u)) > tol:
        raise ValueError("complex_structure: input is not tangent at x")
    return lorentz_cross(x.v, u)


def h2_exp(p: H2Point, w, l: float = 1.0, tol: float = 1e-9) -> H2Point:
    """Geodesic exponential: flow from p for parameter l with velocity w."""
    w = np.asarray(w, dtype=float)
    if abs(lorentz_inner(p.v, w)) > tol:
        raise ValueError("h2_exp: velocity is not tangent at p")
    n2 = lorentz_inner(w, w)
    nrm = math.sqrt(max(n2, 0.0))
    if nrm * abs(l) == 0.0:
        return p
    return H2Point(math.cosh(nrm * l) * p.v + math.sinh(nrm * l) * w / nrm)


@dataclass(frozen=True)
class CurveState:
    """Frenet data of a unit-speed plane curve at one parameter value."""

    gamma: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    kappa: float

    def __post_init__(self):
        for name in ("gamma", "tangent", "normal"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        scale = max(1.0, float(self.gamma @ self.gamma))
        if self.frame_residual() > FRAME_TOL * scale:
            raise ValueError("curve frame is not Lorentz-orthonormal")

    def frame_residual(self) -> float:
        g, t, n = self.gamma, self.tangent, self.normal
        return max(
            abs(lorentz_inner(g, g) + 1.0),
            abs(lorentz_inner(t, t) - 1.0),
            abs(lorentz_inner(n, n) - 1.0),
            abs(lorentz_inner(g, t)),
            abs(lorentz_inner(g, n)),
            abs(lorentz_inner(t, n)),
        )

    @property
    def point(self) -> H2Point:
        return H2Point(self.gamma)


class PlaneCurve:
    """Unit-speed curve in H² queryable at float or AD parameter values."""

    def state(self, r: float) -> CurveState:
        raise NotImplementedError

    def kappa_prime(self, r: float) -> float:
        return 0.0

    def jet(self, r):
        """Curve point and normal at a scalar/dual/hyper-dual parameter.

        Derivatives come from the Frenet relations, so no differentiation of
        the underlying integrator is needed: gamma'' = gamma + kappa N and
        N'' = -kappa' gamma' - kappa gamma''.
        """
        r0 = ad.value(r)
        st = self.state(r0)
        gdd = st.gamma + st.kappa * st.normal
        kp = self.kappa_prime(r0)
        ndd = -kp * st.tangent - st.kappa * gdd
        nd = -st.kappa * st.tangent
        g = [ad.compose_jet(st.gamma[i], st.tangent[i], gdd[i], r) for i in range(3)]
        n = [ad.compose_jet(st.normal[i], nd[i], ndd[i], r) for i in range(3)]
        return g, n


class GeodesicCurve(PlaneCurve):
    """The geodesic through (1,0,0) with constant normal (0,0,1); kappa = 0."""

    kappa = 0.0

    def state(self, r: float) -> CurveState:
        ch, sh = math.cosh(r), math.sinh(r)
        return CurveState(
            gamma=np.array([ch, sh, 0.0]),
            tangent=np.array([sh, ch, 0.0]),
            normal=np.array([0.0, 0.0, 1.0]),
            kappa=0.0,
        )


class HorocycleCurve(PlaneCurve):
    """The horocycle {-x1 + x3 = -1} with an explicit normal orientation.

    sign=+1 reproduces N(r) = (-r²/2, -r, (2-r²)/2) with curvature +1, and
    sign=-1 the opposite normal with curvature -1.
    """

    def __init__(self, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        self.kappa = float(sign)

    def state(self, r: float) -> CurveState:
        gamma = np.array([(2.0 + r * r) / 2.0, r, r * r / 2.0])
        tangent = np.array([r, 1.0, r])
        normal = self.sign * np.array([-r * r / 2.0, -r, (2.0 - r * r) / 2.0])
        return CurveState(gamma=gamma, tangent=tangent, normal=normal, kappa=self.kappa)


class _MirroredHorocycle(PlaneCurve):
    """Curvature -1 closed form under the N = J(T) convention."""

    kappa = -1.0

    def state(self, r: float) -> CurveState:
        gamma = np.array([1.0 + r * r / 2.0, r, -r * r / 2.0])
        tangent = np.array([r, 1.0, -r])
        normal = np.array([r * r / 2.0, r, 1.0 - r * r / 2.0])
        return CurveState(gamma=gamma, tangent=tangent, normal=normal, kappa=-1.0)


def constant_kappa(c: float) -> Callable:
    """Curvature function that is constant in the arc-length parameter."""

    def k(_r):
        return c

    return k


class FrenetIntegratedCurve(PlaneCurve):
    """Curve of prescribed curvature kappa(r) by RK4 integration from (1,0,0).

    The state (gamma, T) is stepped with fixed step h and re-orthonormalized
    after every step (re-impose <gamma,gamma>=-1, <gamma,T>=0, <T,T>=1); the
    normal is N = J(T) so the Frenet system closes without carrying N.
    States at knot multiples of the cache stride are grown outward from r=0
    in a fixed order, which keeps results independent of the query history.
    """

    def __init__(self, kappa: Callable, h: float = 1e-3, stride: float = 0.064):
        self.kappa = kappa
        self.h = float(h)
        self.stride = float(stride)
        y0 = (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
        self._knots = {0: y0}
        self._kmin = 0
        self._kmax = 0
        self._lock = threading.Lock()

    def kappa_prime(self, r: float) -> float:
        out = self.kappa(ad.Dual(r, np.array([1.0])))
        if isinstance(out, ad.Dual):
            return float(out.d[0])
        return 0.0

    def _rhs(self, r, gamma, t):
        k = float(ad.value(self.kappa(r)))
        return t, gamma + k * lorentz_cross(gamma, t)

    def _rk4_step(self, r, gamma, t, h):
        k1g, k1t = self._rhs(r, gamma, t)
        k2g, k2t = self._rhs(r + h / 2, gamma + h / 2 * k1g, t + h / 2 * k1t)
        k3g, k3t = self._rhs(r + h / 2, gamma + h / 2 * k2g, t + h / 2 * k2t)
        k4g, k4t = self._rhs(r + h, gamma + h * k3g, t + h * k3t)
        gamma = gamma + h / 6 * (k1g + 2 * k2g + 2 * k3g + k4g)
        t = t + h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t)
        return self._renormalize(gamma, t)

    @staticmethod
    def _renormalize(gamma, t):
        gamma = gamma / math.sqrt(-lorentz_inner(gamma, gamma))
        t = t + lorentz_inner(t, gamma) * gamma
        t = t / math.sqrt(lorentz_inner(t, t))
        return gamma, t

    def _integrate(self, r0, gamma, t, r1):
        span = r1 - r0
        n = max(1, int(math.ceil(abs(span) / self.h)))
        h = span / n
        r = r0
        for _ in range(n):
            gamma, t = self._rk4_step(r, gamma, t, h)
            r += h
        return gamma, t

    def _ensure_knot(self, k: int):
        while self._kmax < k:
            g, t = self._knots[self._kmax]
            nxt = self._integrate(self._kmax * self.stride, g, t, (self._kmax + 1) * self.stride)
            self._kmax += 1
            self._knots[self._kmax] = nxt
        while self._kmin > k:
            g, t = self._knots[self._kmin]
            nxt = self._integrate(self._kmin * self.stride, g, t, (self._kmin - 1) * self.stride)
            self._kmin -= 1
            self._knots[self._kmin] = nxt

    def state(self, r: float) -> CurveState:
        k = int(math.floor(r / self.stride)) if r >= 0 else int(math.ceil(r / self.stride))
        with self._lock:
            self._ensure_knot(k)
            gamma, t = self._knots[k]
        if r != k * self.stride:
            gamma, t = self._integrate(k * self.stride, gamma, t, r)
        normal = lorentz_cross(gamma, t)
        return CurveState(gamma=gamma, tangent=t, normal=normal,
                          kappa=float(ad.value(self.kappa(r))))


def curve_of_constant_curvature(kappa0: float) -> PlaneCurve:
    """Closed forms for kappa in {0, +1, -1}; RK4 integration otherwise."""
    if kappa0 == 0.0:
        return GeodesicCurve()
    if kappa0 == 1.0:
        return HorocycleCurve(+1)
    if kappa0 == -1.0:
        return _MirroredHorocycle()
    return FrenetIntegratedCurve(constant_kappa(kappa0))


def constant_curvature_curve(kappa0: float, r: float) -> CurveState:
    """Frenet state at arc length r of the constant-curvature curve."""
    return curve_of_constant_curvature(kappa0).state(r)


def horocycle_with_normal_sign(r: float, sign: int) -> CurveState:
    """Exact horocycle state with the requested normal orientation."""
    return HorocycleCurve(sign).state(r)


def parallel_curve_curvature(kappa, l):
    """Curvature of the parallel curve at normal distance l.

    Flowing gamma -> cosh(l) gamma + sinh(l) N turns curvature kappa into
    (kappa cosh l - sinh l) / (cosh l - kappa sinh l); poles are focal values.
    """
    ch, sh = math.cosh(l), math.sinh(l)
    return (kappa * ch - sh) / (ch - kappa * sh)

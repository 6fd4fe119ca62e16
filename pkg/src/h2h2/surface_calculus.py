"""Generic calculus for immersed hypersurfaces of H² × H².

A hypersurface is a chart map (u¹,u²,u³) -> (p, q) into the product of
hyperboloids, evaluable at scalar, dual, and hyper-dual arguments.  One
hyper-dual pass gives the exact 6x3 Jacobian and 6x3x3 Hessian of the chart,
from which the induced metric, unit normal, second fundamental form, shape
operator, and principal curvatures follow.

Second derivatives of the chart are enough for Christoffel symbols; the
third-order quantities (intrinsic curvature, covariant derivatives of the
shape operator) use central finite differences of AD-exact data, optionally
Richardson-refined.

The second fundamental form is computed from the ambient identity
b_ij = <d_i d_j Phi, N>: N is orthogonal to the position directions (p,0) and
(0,q), so the component of d_i d_j Phi normal to H² x H² (which lies along
those directions) drops out of the pairing and no tangential projection of
the Hessian is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import autodiff as ad
from .lorentz import ETA3
from .product_space import ETA6, P6, ProductPoint, ProductTangent, ambient_inner

RANK_SIGMA_MIN = 1e-6
NORMAL_TOL = 1e-10


class ChartRankError(ValueError):
    """The chart differential is rank-deficient at the requested point."""


class NormalSpaceError(ValueError):
    """The normal space at the requested point is not one-dimensional."""


class DegenerateProductAngleError(ValueError):
    """C² = 1: the tangential part V of PN vanishes."""


@dataclass(frozen=True)
class Hypersurface:
    """Chart map of an immersed hypersurface with optional closed-form normal.

    ``chart`` takes a 3-sequence of scalars (float / Dual / HyperDual) and
    returns the two hyperboloid factors as 3-sequences of the same scalar
    type.  ``normal_hint``, when present, returns the 6 ambient components of
    a (not necessarily normalized) normal field in the same generic way; it
    fixes the orientation used everywhere downstream.
    """

    chart: Callable
    domain: tuple
    normal_hint: Optional[Callable] = None
    name: str = ""

    def point(self, u) -> np.ndarray:
        p, q = self.chart([float(x) for x in u])
        return np.array([ad.value(x) for x in (*p, *q)], dtype=float)

    def product_point(self, u) -> ProductPoint:
        return ProductPoint.from_ambient(self.point(u))

    def jet(self, u) -> "ChartJet":
        return chart_jet(self, u)

    def constraint_residual(self, u) -> float:
        """Deviation of both factors from their hyperboloid constraints."""
        x = self.point(u)
        return max(
            abs(x[:3] @ ETA3 @ x[:3] + 1.0),
            abs(x[3:] @ ETA3 @ x[3:] + 1.0),
        )


@dataclass(frozen=True)
class ChartJet:
    """Value, Jacobian, and Hessian of a chart at one parameter point."""

    u: np.ndarray
    val: np.ndarray   # (6,)
    jac: np.ndarray   # (6,3)
    hess: np.ndarray  # (6,3,3)


def chart_jet(M: Hypersurface, u) -> ChartJet:
    u = np.asarray(u, dtype=float)
    xs = ad.hyperdual_variables(u)
    p, q = M.chart(xs)
    val = np.zeros(6)
    jac = np.zeros((6, 3))
    hess = np.zeros((6, 3, 3))
    for i, c in enumerate((*p, *q)):
        if isinstance(c, ad.HyperDual):
            val[i] = c.val
            jac[i] = c.d
            hess[i] = c.dd
        else:
            val[i] = float(c)
    return ChartJet(u=u, val=val, jac=jac, hess=hess)


def _normal_from_constraints(jet: ChartJet) -> np.ndarray:
    rows = np.zeros((5, 6))
    rows[0, :3] = ETA3 @ jet.val[:3]
    rows[1, 3:] = ETA3 @ jet.val[3:]
    rows[2:] = (ETA6 @ jet.jac).T
    _, s, vt = np.linalg.svd(rows)
    if s[4] < 1e-6 * s[0]:
        raise NormalSpaceError("normal nullspace is not one-dimensional")
    v = vt[5]
    n2 = ambient_inner(v, v)
    if n2 <= 0.0:
        raise NormalSpaceError("normal direction is not spacelike")
    return v / math.sqrt(n2)


def _fix_normal_sign(n: np.ndarray, align_with: Optional[np.ndarray]) -> np.ndarray:
    if align_with is not None:
        return n if float(n @ ETA6 @ align_with) >= 0.0 else -n
    for c in n:
        if abs(c) > 1e-9:
            return n if c > 0.0 else -n
    return n


class PointGeometry:
    """Per-point bundle: tangent basis, metric, normal, shape operator.

    Attributes
    ----------
    u : chart coordinates (3,)
    val, jac : ambient position (6,) and chart Jacobian (6,3)
    g : induced metric (3,3); A : shape operator in the coordinate basis
    lambdas : principal curvatures, ascending
    N, V : ambient unit normal and tangential part of PN (6,)
    C, H, rho, K : product angle, mean, scalar, and Gauss-Kronecker curvature
    """

    def __init__(self, M: Hypersurface, jet: ChartJet, N: np.ndarray):
        self.surface = M
        self.u = jet.u
        self.val = jet.val
        self.jac = jet.jac
        self.hess = jet.hess

        g = jet.jac.T @ ETA6 @ jet.jac
        self.g = 0.5 * (g + g.T)
        evals = np.linalg.eigvalsh(self.g)
        if evals[0] <= RANK_SIGMA_MIN ** 2:
            raise ChartRankError(
                f"chart differential is rank-deficient (sigma_min={math.sqrt(max(evals[0], 0.0)):.3e})"
            )
        self.sigma_min = math.sqrt(evals[0])

        self.N = N
        if abs(ambient_inner(N, N) - 1.0) > NORMAL_TOL:
            raise NormalSpaceError("normal is not unit")
        if np.max(np.abs(jet.jac.T @ ETA6 @ N)) > NORMAL_TOL:
            raise NormalSpaceError("normal is not orthogonal to the tangent basis")

        etaN = ETA6 @ N
        b = np.einsum("aij,a->ij", jet.hess, etaN)
        self.b = 0.5 * (b + b.T)
        self.A = np.linalg.solve(self.g, self.b)

        # principal curvatures: Cholesky-reduce b x = lambda g x and symmetrize
        L = np.linalg.cholesky(self.g)
        Y = np.linalg.solve(L, self.b)
        Z = np.linalg.solve(L, Y.T).T
        self.frame_asymmetry = float(np.max(np.abs(Z - Z.T)))
        Zs = 0.5 * (Z + Z.T)
        lambdas, W = np.linalg.eigh(Zs)
        self.lambdas = lambdas
        self.principal_coords = np.linalg.solve(L.T, W)   # columns, g-orthonormal
        self.principal_ambient = jet.jac @ self.principal_coords

        PN = P6 @ N
        self.C = float(PN @ ETA6 @ N)
        self.V = PN - self.C * N
        self.H = float(np.trace(Zs))
        self.K = float(np.linalg.det(Zs))
        self.norm_A_sq = float(np.trace(Zs @ Zs))
        self.rho = -2.0 + self.H ** 2 - self.norm_A_sq

        if abs(ambient_inner(self.V, self.V) - (1.0 - self.C ** 2)) > 1e-9:
            raise NormalSpaceError("|V|^2 != 1 - C^2 beyond tolerance")

    # -- typed views ------------------------------------------------------
    @property
    def point(self) -> ProductPoint:
        return ProductPoint.from_ambient(self.val)

    @property
    def basis(self) -> list[ProductTangent]:
        return [ProductTangent.from_ambient(self.point, self.jac[:, i]) for i in range(3)]

    @property
    def normal(self) -> ProductTangent:
        return ProductTangent.from_ambient(self.point, self.N)

    @property
    def v_tangent(self) -> ProductTangent:
        return ProductTangent.from_ambient(self.point, self.V)

    # -- linear algebra on ambient vectors --------------------------------
    def coords(self, w) -> np.ndarray:
        """Chart components of an ambient tangent vector."""
        return np.linalg.solve(self.g, self.jac.T @ (ETA6 @ np.asarray(w, float)))

    def from_coords(self, xi) -> np.ndarray:
        return self.jac @ np.asarray(xi, float)

    def project(self, w) -> np.ndarray:
        """Orthogonal projection of an ambient vector onto the tangent space."""
        return self.from_coords(self.coords(w))

    def shape_apply(self, w) -> np.ndarray:
        """A w for an ambient tangent vector w."""
        return self.from_coords(self.A @ self.coords(w))

    def T_apply(self, w) -> np.ndarray:
        """Tangential part of P: T w = P w - <w, V> N."""
        w = np.asarray(w, float)
        return P6 @ w - ambient_inner(w, self.V) * self.N

    def metric(self, w1, w2) -> float:
        return ambient_inner(w1, w2)


def point_geometry(M: Hypersurface, u, align_normal_with: Optional[np.ndarray] = None) -> PointGeometry:
    """Full per-point geometry bundle of a hypersurface chart.

    The normal orientation comes from ``M.normal_hint`` when present;
    otherwise the nullspace normal is signed to make its first nonzero
    ambient coordinate positive, or aligned with ``align_normal_with``
    (used by difference schemes to keep the orientation continuous).
    """
    jet = chart_jet(M, u)
    g = jet.jac.T @ ETA6 @ jet.jac
    low = float(np.linalg.eigvalsh(0.5 * (g + g.T))[0])
    if low <= RANK_SIGMA_MIN ** 2:
        raise ChartRankError(
            f"chart differential is rank-deficient (sigma_min={math.sqrt(max(low, 0.0)):.3e})")
    if M.normal_hint is not None:
        raw = M.normal_hint([float(x) for x in u])
        n = np.array([ad.value(x) for x in raw], dtype=float)
        n = n / math.sqrt(ambient_inner(n, n))
        if align_normal_with is not None:
            n = _fix_normal_sign(n, align_normal_with)
    else:
        n = _normal_from_constraints(jet)
        n = _fix_normal_sign(n, align_normal_with)
    return PointGeometry(M, jet, n)


# ---------------------------------------------------------------------------
# product angle, V, and the tangential operator T
# ---------------------------------------------------------------------------

def product_angle_C(N: ProductTangent) -> float:
    """Product angle C = <PN, N> of a unit normal; agrees with <J1 N, J2 N>."""
    from .product_space import apply_J1, apply_J2, apply_P, product_metric

    if abs(product_metric(N, N) - 1.0) > 1e-9:
        raise ValueError("product_angle_C requires a unit vector")
    c_p = product_metric(apply_P(N), N)
    c_j = product_metric(apply_J1(N), apply_J2(N))
    if abs(c_p - c_j) > 1e-12:
        raise ArithmeticError(f"<PN,N> and <J1N,J2N> disagree: {c_p} vs {c_j}")
    return c_p


def vector_V(N: ProductTangent) -> ProductTangent:
    """Tangential part V = PN - CN of the normal."""
    from .product_space import apply_P, product_metric

    PN = apply_P(N)
    c = product_metric(PN, N)
    return ProductTangent(N.base, PN.v1 - c * N.v1, PN.v2 - c * N.v2)


def tangential_T(pg: PointGeometry, X, tol: float = 1e-8) -> np.ndarray:
    """T X = P X - <PX, N> N = P X - <X, V> N for X tangent to the surface."""
    x = np.asarray(X, float)
    if np.max(np.abs(x - pg.project(x))) > tol or abs(ambient_inner(x, pg.N)) > tol:
        raise ValueError("tangential_T: input is not tangent to the hypersurface")
    px = P6 @ x
    first = px - ambient_inner(px, pg.N) * pg.N
    second = px - ambient_inner(x, pg.V) * pg.N
    if np.max(np.abs(first - second)) > 1e-10:
        raise ArithmeticError("the two expressions for T disagree")
    return first


# ---------------------------------------------------------------------------
# intrinsic quantities from the metric
# ---------------------------------------------------------------------------

def christoffels(M: Hypersurface, u, jet: Optional[ChartJet] = None) -> np.ndarray:
    """Christoffel symbols Gamma[l, i, j] of the induced metric (AD-exact)."""
    jet = jet if jet is not None else chart_jet(M, u)
    g = jet.jac.T @ ETA6 @ jet.jac
    etaJ = ETA6 @ jet.jac
    dg = np.einsum("aki,aj->kij", jet.hess, etaJ) + np.einsum("ai,akj->kij", etaJ, jet.hess)
    g_inv = np.linalg.inv(0.5 * (g + g.T))
    # Gamma^l_ij = 1/2 g^{lm} (d_i g_{jm} + d_j g_{im} - d_m g_{ij})
    term = np.empty((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for m in range(3):
                term[m, i, j] = dg[i, j, m] + dg[j, i, m] - dg[m, i, j]
    return 0.5 * np.einsum("lm,mij->lij", g_inv, term)


def _central(f, u, m, h, richardson):
    e = np.zeros(3)
    e[m] = 1.0

    def diff(hh):
        return (f(u + hh * e) - f(u - hh * e)) / (2.0 * hh)

    if richardson:
        return (4.0 * diff(h / 2.0) - diff(h)) / 3.0
    return diff(h)


def gauss_residual(M: Hypersurface, u, h: float = 1e-4, richardson: bool = True) -> float:
    """Max-norm residual of the Gauss equation over coordinate triples.

    The intrinsic curvature R(d_i, d_j) d_k is assembled from Christoffel
    symbols and their finite-difference derivatives and compared, as an
    ambient vector, against the algebraic right-hand side built from the
    tangential operator T and the shape operator.
    """
    u = np.asarray(u, dtype=float)
    pg = point_geometry(M, u)
    gam = christoffels(M, u)
    dgam = np.stack([_central(lambda x: christoffels(M, x), u, m, h, richardson)
                     for m in range(3)])  # dgam[m] = d_m Gamma

    Tb = np.stack([pg.T_apply(pg.jac[:, i]) for i in range(3)])   # (3,6)
    Ab = np.stack([pg.from_coords(pg.A[:, i]) for i in range(3)])  # (3,6)

    res = 0.0
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(3):
                r_coeff = (dgam[i][:, j, k] - dgam[j][:, i, k]
                           + gam[:, i, :] @ gam[:, j, k] - gam[:, j, :] @ gam[:, i, k])
                lhs = pg.jac @ r_coeff
                rhs = (-0.5 * (pg.g[j, k] * pg.jac[:, i] - pg.g[i, k] * pg.jac[:, j]
                               + ambient_inner(Tb[j], pg.jac[:, k]) * Tb[i]
                               - ambient_inner(Tb[i], pg.jac[:, k]) * Tb[j])
                       + pg.b[j, k] * Ab[i] - pg.b[i, k] * Ab[j])
                res = max(res, float(np.max(np.abs(lhs - rhs))))
    return res


def codazzi_residual(M: Hypersurface, u, h: float = 1e-4, richardson: bool = True) -> float:
    """Max-norm residual of the Codazzi equation over coordinate pairs."""
    u = np.asarray(u, dtype=float)
    pg = point_geometry(M, u)
    gam = christoffels(M, u)

    def a_field(x):
        return point_geometry(M, x, align_normal_with=pg.N).A

    dA = np.stack([_central(a_field, u, m, h, richardson) for m in range(3)])

    def cov(i):
        return dA[i] + gam[:, i, :] @ pg.A - pg.A @ gam[:, i, :]

    covs = [cov(i) for i in range(3)]
    Tb = np.stack([pg.T_apply(pg.jac[:, i]) for i in range(3)])
    res = 0.0
    for i in range(3):
        for j in range(i + 1, 3):
            lhs = pg.jac @ (covs[i][:, j] - covs[j][:, i])
            rhs = -0.5 * (ambient_inner(pg.jac[:, i], pg.V) * Tb[j]
                          - ambient_inner(pg.jac[:, j], pg.V) * Tb[i])
            res = max(res, float(np.max(np.abs(lhs - rhs))))
    return res


def angle_derivative_residuals(M: Hypersurface, u, h: float = 1e-4) -> tuple[float, float]:
    """Residuals of grad C = -2AV and nabla_X V = C A X - T A X.

    grad C is the chart gradient of C lifted through the inverse metric;
    nabla_X V is the tangential projection of the ambient derivative of V,
    taken along each coordinate direction.
    """
    u = np.asarray(u, dtype=float)
    pg = point_geometry(M, u)

    def c_field(x):
        return np.array([point_geometry(M, x, align_normal_with=pg.N).C])

    dC = np.array([_central(c_field, u, m, h, True)[0] for m in range(3)])
    grad_C = pg.jac @ np.linalg.solve(pg.g, dC)
    res1 = float(np.max(np.abs(grad_C + 2.0 * pg.shape_apply(pg.V))))

    def v_field(x):
        return point_geometry(M, x, align_normal_with=pg.N).V

    res2 = 0.0
    for i in range(3):
        dV = _central(v_field, u, i, h, True)
        nabla_v = pg.project(dV)
        ax = pg.from_coords(pg.A[:, i])
        rhs = pg.C * ax - pg.T_apply(ax)
        res2 = max(res2, float(np.max(np.abs(nabla_v - rhs))))
    return res1, res2


# ---------------------------------------------------------------------------
# algebraic curvature operators from the point bundle
# ---------------------------------------------------------------------------

def gauss_curvature_operator(pg: PointGeometry, X, Y, Z) -> np.ndarray:
    """R(X,Y)Z by the Gauss equation (algebraic in T, A, and the metric)."""
    X, Y, Z = (np.asarray(w, float) for w in (X, Y, Z))
    TX, TY = pg.T_apply(X), pg.T_apply(Y)
    AX, AY = pg.shape_apply(X), pg.shape_apply(Y)
    return (-0.5 * (ambient_inner(Y, Z) * X - ambient_inner(X, Z) * Y
                    + ambient_inner(TY, Z) * TX - ambient_inner(TX, Z) * TY)
            + ambient_inner(AY, Z) * AX - ambient_inner(AX, Z) * AY)


def ricci(pg: PointGeometry, X, Y) -> float:
    """Ricci curvature of the hypersurface along a pair of tangents."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    TX = pg.T_apply(X)
    AX = pg.shape_apply(X)
    A2X = pg.shape_apply(AX)
    return float(-0.5 * (ambient_inner(X, Y) - pg.C * ambient_inner(TX, Y)
                         + ambient_inner(X, pg.V) * ambient_inner(Y, pg.V))
                 + pg.H * ambient_inner(AX, Y) - ambient_inner(A2X, Y))


def sectional(pg: PointGeometry, X, Y) -> float:
    """Sectional curvature of the tangent plane spanned by X and Y."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    num = ambient_inner(gauss_curvature_operator(pg, X, Y, Y), X)
    den = (ambient_inner(X, X) * ambient_inner(Y, Y) - ambient_inner(X, Y) ** 2)
    if abs(den) < 1e-12:
        raise ValueError("sectional: degenerate plane")
    return float(num / den)


# ---------------------------------------------------------------------------
# covariant differentiation of tangent fields (shared by the frame checks)
# ---------------------------------------------------------------------------

def covariant_derivative(pg: PointGeometry, direction_coords, fld: Callable,
                         h: float = 1e-3, richardson: bool = True) -> np.ndarray:
    """nabla of an ambient tangent field along a chart direction.

    ``fld`` maps chart coordinates to ambient 6-vectors tangent to the
    hypersurface; the flat central difference along the straight chart line
    is projected back onto the tangent space, which recovers the intrinsic
    Levi-Civita derivative.
    """
    u = pg.u
    xi = np.asarray(direction_coords, float)

    def diff(hh):
        return (fld(u + hh * xi) - fld(u - hh * xi)) / (2.0 * hh)

    d = (4.0 * diff(h / 2.0) - diff(h)) / 3.0 if richardson else diff(h)
    return pg.project(d)

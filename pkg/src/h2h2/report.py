"""Verification suites, machine-readable reports, and table data.

Every check result carries the tolerance it was judged against; defaults sit
in ``DEFAULT_TOLERANCES`` and can be overridden per run.  AD-exact algebraic
checks and finite-difference-based checks deliberately get different bars.

Reports are deterministic for a fixed (config, seed): sampling uses a seeded
Sobol sequence over the chart box, results are ordered by check name, and
JSON is emitted with sorted keys, so two runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.stats import qmc

from . import model_zoo as mz
from . import parallel_flow as pf
from . import surface_calculus as sc
from .product_space import ETA3, ProductPoint, apply_isometry, group_element_B, group_element_G


class ConfigError(ValueError):
    """Invalid suite configuration (maps to CLI exit code 2)."""


DEFAULT_TOLERANCES = {
    "V_derivative_identity": 1e-7,
    "av_zero": 1e-8,
    "chart_constraints": 1e-10,
    "chart_rank": 1.0,
    "codazzi_equation": 1e-5,
    "detq_derivatives_high": 1e-3,
    "detq_derivatives_low": 1e-6,
    "frame_identities": 1e-6,
    "gauss_equation": 1e-4,
    "grad_C_identity": 1e-7,
    "isoparametric_spread": 1e-8,
    "lorentz_form_preservation": 1e-12,
    "m_tau_constraint": 1e-10,
    "m_tau_tube_identity": 1e-10,
    "mean_curvature_two_forms": 1e-9,
    "minor_sum_rho": 1e-10,
    "oracle_C": 1e-9,
    "oracle_lambda": 1e-7,
    "oracle_normal": 1e-9,
    "orbit_match": 1e-10,
    "parallel_lambda_closed_form": 1e-8,
    "parallel_shape_consistency": 1e-6,
    "shape_self_adjoint": 1e-9,
    "tanh_profile": 1e-10,
}


@dataclass
class SuiteConfig:
    """Run configuration: model, sampling, tolerances, parallel grid, output."""

    model: mz.ModelSpec
    samples: int = 200
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    l_grid: tuple = (-1.0, 1.0, 0.1)
    out: Optional[str] = None
    fmt: str = "json"

    def validate(self):
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if len(self.l_grid) != 3 or self.l_grid[2] <= 0:
            raise ConfigError("l-grid step must be > 0")
        for name, tol in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance name {name!r}")
            if tol <= 0:
                raise ConfigError("tolerances must be positive")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown output format {self.fmt!r}")

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])

    def grid(self) -> np.ndarray:
        a, b, h = self.l_grid
        n = int(math.floor((b - a) / h + 1e-9)) + 1
        return a + h * np.arange(n)

    def as_dict(self) -> dict:
        # the output destination is not part of the verification run, and
        # embedding it would break byte-identical reports across paths
        return {
            "model": self.model.as_dict(),
            "samples": self.samples,
            "seed": self.seed,
            "tolerances": {k: self.tol(k) for k in sorted(DEFAULT_TOLERANCES)},
            "l_grid": list(self.l_grid),
        }


@dataclass
class CheckResult:
    """One named check: residual, tolerance, verdict (None = skipped)."""

    name: str
    max_residual: Optional[float]
    tolerance: float
    passed: Optional[bool]
    n_samples: int
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "n_samples": self.n_samples,
            "notes": self.notes,
        }


def sobol_points(domain, n: int, seed: int) -> np.ndarray:
    """Seeded low-discrepancy samples of the chart box (reproducible)."""
    lo = np.array([d[0] for d in domain], dtype=float)
    hi = np.array([d[1] for d in domain], dtype=float)
    m = max(int(math.ceil(math.log2(max(n, 1)))), 0)
    eng = qmc.Sobol(d=3, scramble=True, seed=seed)
    pts = eng.random_base2(m=m)[:n] if n > 1 else eng.random(1)
    return qmc.scale(pts, lo, hi)


def _judged(name, residual, tol, n, notes="") -> CheckResult:
    return CheckResult(name=name, max_residual=float(residual), tolerance=tol,
                       passed=bool(residual <= tol), n_samples=n, notes=notes)


def _skipped(name, tol, notes) -> CheckResult:
    return CheckResult(name=name, max_residual=None, tolerance=tol,
                       passed=None, n_samples=0, notes=notes)


def run_verify_suite(cfg: SuiteConfig) -> list[CheckResult]:
    """The full identity suite for one model; results ordered by check name."""
    cfg.validate()
    surface, oracle = mz.build_model(cfg.model)
    pts = sobol_points(surface.domain, cfg.samples, cfg.seed)
    n_fd = min(50, cfg.samples)
    n_par = min(10, cfg.samples)
    n_frame = min(3, cfg.samples)
    results: list[CheckResult] = []
    degenerate = abs(oracle.C) >= 1.0 - 1e-9

    pgs = [sc.point_geometry(surface, u) for u in pts]

    # ---- chart validity --------------------------------------------------
    results.append(_judged(
        "chart_constraints",
        max(surface.constraint_residual(u) for u in pts),
        cfg.tol("chart_constraints"), len(pts)))
    sig = min(pg.sigma_min for pg in pgs)
    results.append(_judged(
        "chart_rank", sc.RANK_SIGMA_MIN / sig, cfg.tol("chart_rank"), len(pts),
        notes=f"residual is {sc.RANK_SIGMA_MIN:g}/sigma_min; sigma_min={sig:.3e}"))

    # ---- oracle agreement ------------------------------------------------
    results.append(_judged(
        "oracle_lambda",
        max(float(np.max(np.abs(pg.lambdas - oracle.lambdas(u)))) for pg, u in zip(pgs, pts)),
        cfg.tol("oracle_lambda"), len(pts)))
    results.append(_judged(
        "oracle_C",
        max(abs(pg.C - oracle.C) for pg in pgs),
        cfg.tol("oracle_C"), len(pts)))

    def normal_dev(pg, u):
        n_svd = sc._normal_from_constraints(sc.chart_jet(surface, u))
        if float(n_svd @ sc.ETA6 @ pg.N) < 0.0:
            n_svd = -n_svd
        return float(np.max(np.abs(n_svd - pg.N)))

    results.append(_judged(
        "oracle_normal",
        max(normal_dev(pg, u) for pg, u in zip(pgs, pts)),
        cfg.tol("oracle_normal"), len(pts),
        notes="nullspace normal vs closed form, up to the recorded sign"))

    # ---- pointwise operator identities ------------------------------------
    results.append(_judged(
        "shape_self_adjoint",
        max(pg.frame_asymmetry for pg in pgs),
        cfg.tol("shape_self_adjoint"), len(pts)))
    results.append(_judged(
        "av_zero",
        max(float(np.linalg.norm(pg.shape_apply(pg.V))) for pg in pgs),
        cfg.tol("av_zero"), len(pts)))

    def minor_defect(pg):
        lam = pg.lambdas
        e2 = 2.0 * (lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2])
        return abs(e2 - (pg.rho + 2.0))

    results.append(_judged(
        "minor_sum_rho",
        max(minor_defect(pg) for pg in pgs),
        cfg.tol("minor_sum_rho"), len(pts),
        notes="2(H12+H13+H23) = rho + 2 via the principal frame"))

    # ---- structural equations (finite-difference based) -------------------
    r1 = r2 = 0.0
    for u in pts[:n_fd]:
        a, b = sc.angle_derivative_residuals(surface, u)
        r1, r2 = max(r1, a), max(r2, b)
    results.append(_judged("grad_C_identity", r1, cfg.tol("grad_C_identity"), n_fd))
    results.append(_judged("V_derivative_identity", r2, cfg.tol("V_derivative_identity"), n_fd))
    results.append(_judged(
        "gauss_equation",
        max(sc.gauss_residual(surface, u) for u in pts[:n_fd]),
        cfg.tol("gauss_equation"), n_fd))
    results.append(_judged(
        "codazzi_equation",
        max(sc.codazzi_residual(surface, u) for u in pts[:n_fd]),
        cfg.tol("codazzi_equation"), n_fd))

    # ---- parallel flow ----------------------------------------------------
    lgrid = cfg.grid()
    if degenerate:
        for name in ("mean_curvature_two_forms", "detq_derivatives_low", "detq_derivatives_high",
                     "parallel_shape_consistency"):
            results.append(_skipped(name, cfg.tol(name),
                                    "skipped: degenerate product angle (C^2 = 1)"))
    else:
        frames = [pf.adapted_frame(pg) for pg in pgs[:n_par]]
        dev_h = 0.0
        for af in frames:
            for l in (-0.6, 0.37, 0.8):
                if abs(pf.detq_expansion(af, l)) < 1e-6:
                    continue
                q = pf.q_matrix(af, l)
                h_tr = -float(np.trace(np.linalg.solve(q, pf.q_prime(af, l))))
                h_det = -pf.detq_expansion_prime(af, l) / pf.detq_expansion(af, l)
                dev_h = max(dev_h, abs(h_tr - h_det))
        results.append(_judged("mean_curvature_two_forms", dev_h, cfg.tol("mean_curvature_two_forms"), n_par))

        lo = hi = 0.0
        for af, pg in zip(frames, pgs[:n_par]):
            closed = pf.detq_derivatives_at_0(af, pg.rho)
            numeric = pf.detq_derivatives_numeric(af)
            lo = max(lo, abs(closed[1] - numeric[1]), abs(closed[2] - numeric[2]))
            hi = max(hi, *(abs(closed[k] - numeric[k]) for k in (4, 6, 8)))
        results.append(_judged("detq_derivatives_low", lo,
                               cfg.tol("detq_derivatives_low"), n_par, notes="orders 1,2"))
        results.append(_judged("detq_derivatives_high", hi,
                               cfg.tol("detq_derivatives_high"), n_par, notes="orders 4,6,8"))

        dev = 0.0
        for u, pg, af in zip(pts[:n_frame], pgs[:n_frame], frames[:n_frame]):
            for l in (0.25, -0.4):
                pgl = sc.point_geometry(pf.parallel_surface(surface, l), u)
                dev = max(dev, float(np.max(np.abs(pgl.lambdas - pf.parallel_lambdas(af, l)))),
                          abs(pgl.H - pf.mean_curvature_of_parallel(af, l)))
        results.append(_judged(
            "parallel_shape_consistency", dev, cfg.tol("parallel_shape_consistency"),
            n_frame, notes="parallel shape operator vs direct recomputation on the parallel chart"))

    if cfg.model.kind not in ("M_kk", "M_1m1", "M_11"):
        results.append(_skipped("parallel_lambda_closed_form", cfg.tol("parallel_lambda_closed_form"),
                                "skipped: not a two-curve product model"))
    elif _constant_curvature_pair(cfg.model) is None:
        results.append(_skipped("parallel_lambda_closed_form", cfg.tol("parallel_lambda_closed_form"),
                                "skipped: closed form needs constant curvatures"))
    else:
        dev = _parallel_lambda_closed_dev(cfg, surface, pgs[:n_par])
        results.append(_judged("parallel_lambda_closed_form", dev,
                               cfg.tol("parallel_lambda_closed_form"), n_par))

    # ---- isoparametric scan ------------------------------------------------
    scan = pf.isoparametric_scan(surface, pts[:min(8, cfg.samples)], lgrid,
                                 tol=cfg.tol("isoparametric_spread"))
    spread = max(scan.max_h_spread, scan.max_lambda_spread)
    notes = f"mode={scan.mode}"
    if scan.excluded:
        notes += f"; focal l excluded: {[round(l, 6) for l in scan.excluded]}"
    if oracle.constant_curvatures:
        results.append(_judged("isoparametric_spread", spread,
                               cfg.tol("isoparametric_spread"),
                               min(8, cfg.samples), notes=notes))
    else:
        ok = spread <= cfg.tol("isoparametric_spread")
        results.append(CheckResult(
            name="isoparametric_spread", max_residual=float(spread),
            tolerance=cfg.tol("isoparametric_spread"), passed=None,
            n_samples=min(8, cfg.samples),
            notes=notes + "; informational: generic curvature functions are not "
                          "isoparametric, spread above tolerance is expected "
                          f"(within tol: {ok})"))

    # ---- frame identities ---------------------------------------------------
    if degenerate:
        results.append(_skipped("frame_identities", cfg.tol("frame_identities"),
                                "skipped: degenerate product angle (C^2 = 1)"))
    else:
        worst = 0.0
        skipped_items = set()
        for u in pts[:n_frame]:
            rep = pf.frame_identity_checks(surface, u)
            worst = max(worst, rep.max_residual())
            skipped_items.update(it.name for it in rep.items if it.skipped)
        notes = ""
        if skipped_items:
            notes = "hypothesis-guarded skips: " + ", ".join(sorted(skipped_items))
        results.append(_judged("frame_identities", worst,
                               cfg.tol("frame_identities"), n_frame, notes=notes))

    # ---- model-specific checks ----------------------------------------------
    results.extend(_model_specific_checks(cfg, surface, oracle))

    results.sort(key=lambda r: r.name)
    return results


def _parallel_lambda_closed_dev(cfg, surface, pgs) -> float:
    """Closed-form parallel principal curvatures vs the Q-matrix spectrum."""
    spec = cfg.model
    dev = 0.0
    for pg in pgs:
        af = pf.adapted_frame(pg)
        for l in (0.3, -0.45):
            lam = pf.parallel_lambdas(af, l)
            closed = _closed_parallel_lambdas(spec, pg.u, l)
            if closed is None:
                continue
            dev = max(dev, float(np.max(np.abs(lam - closed))))
    return dev


def _constant_curvature_pair(spec: mz.ModelSpec):
    """Constant curvature pair of a product model, or None if generic."""
    if spec.kind == "M_1m1":
        return 1.0, -1.0
    if spec.kind == "M_11":
        return 1.0, 1.0
    if spec.kind == "M_kk":
        k1 = spec.params["kappa"]
        k2 = spec.params["kappa_tilde"]
        k1 = mz.parse_kappa(k1) if isinstance(k1, str) else k1
        k2 = mz.parse_kappa(k2) if isinstance(k2, str) else k2
        if callable(k1) or callable(k2):
            return None
        return float(k1), float(k2)
    return None


def _closed_parallel_lambdas(spec: mz.ModelSpec, u, l: float):
    """Shifted-argument closed form of the parallel principal curvatures."""
    pair = _constant_curvature_pair(spec)
    if pair is None:
        return None
    k1, k2 = pair
    c = float(spec.params["c"])
    t = float(u[0])
    a1 = math.sqrt(c) * t + math.sqrt(1.0 - c) * l
    a2 = math.sqrt(1.0 - c) * t - math.sqrt(c) * l
    lam2 = -math.sqrt(1.0 - c) * (math.sinh(a1) - math.cosh(a1) * k1) / (
        math.cosh(a1) - math.sinh(a1) * k1)
    lam3 = math.sqrt(c) * (math.sinh(a2) - math.cosh(a2) * k2) / (
        math.cosh(a2) - math.sinh(a2) * k2)
    return np.sort(np.array([0.0, lam2, lam3]))


def _model_specific_checks(cfg: SuiteConfig, surface, oracle) -> list[CheckResult]:
    out = []
    kind = cfg.model.kind
    tol_orbit = cfg.tol("orbit_match")
    tol_form = cfg.tol("lorentz_form_preservation")
    tol_tau = cfg.tol("m_tau_constraint")
    tol_tube = cfg.tol("m_tau_tube_identity")
    tol_tanh = cfg.tol("tanh_profile")

    if kind in ("M_1m1", "M_11"):
        c = float(cfg.model.params["c"])
        element = group_element_G if kind == "M_1m1" else group_element_B
        seed_pt = ProductPoint.from_ambient(np.array([1.0, 0, 0, 1.0, 0, 0]))
        grid = [np.linspace(d[0], d[1], 5) for d in surface.domain]
        dev = 0.0
        form = 0.0
        for t in grid[0]:
            for r in grid[1]:
                for s in grid[2]:
                    g = element(c, t, r, s)
                    form = max(form, g.lorentz_defect())
                    img = apply_isometry(g, seed_pt).ambient
                    dev = max(dev, float(np.max(np.abs(img - surface.point([t, r, s])))))
        out.append(_judged("orbit_match", dev, tol_orbit, 125,
                           notes="orbit of the horocycle subgroup through the diagonal point"))
        out.append(_judged("lorentz_form_preservation", form, tol_form, 125))
    else:
        out.append(_skipped("orbit_match", tol_orbit, "skipped: no orbit construction"))
        out.append(_skipped("lorentz_form_preservation", tol_form,
                            "skipped: no orbit construction"))

    if kind == "M_tau":
        tau = float(cfg.model.params["tau"])
        pts = sobol_points(surface.domain, min(cfg.samples, 100), cfg.seed)
        dev = 0.0
        for u in pts:
            x = surface.point(u)
            dev = max(dev, abs(float(x[:3] @ ETA3 @ x[3:]) - tau))
        out.append(_judged("m_tau_constraint", dev, tol_tau, len(pts)))
        radius = mz.mtau_focal_radius(tau)
        out.append(_judged("m_tau_tube_identity",
                           abs(math.cosh(math.sqrt(2.0) * radius) + tau),
                           tol_tube, 1,
                           notes="tube radius arccosh(-tau)/sqrt(2)"))
    else:
        out.append(_skipped("m_tau_constraint", tol_tau, "skipped: not a level-set model"))
        out.append(_skipped("m_tau_tube_identity", tol_tube, "skipped: not a level-set model"))

    if kind == "M_kk":
        k1 = cfg.model.params.get("kappa")
        k1 = mz.parse_kappa(k1) if isinstance(k1, str) else k1
        if isinstance(k1, (int, float)) and abs(float(k1)) < 1.0:
            c = float(cfg.model.params["c"])
            tgrid = np.linspace(-1.0, 1.0, 41)
            out.append(_judged("tanh_profile",
                               mz.tanh_profile_check(c, float(k1), tgrid),
                               tol_tanh, len(tgrid)))
        else:
            out.append(_skipped("tanh_profile", tol_tanh,
                                "skipped: first curvature not a constant in (-1,1)"))
    else:
        out.append(_skipped("tanh_profile", tol_tanh,
                            "skipped: not a two-curve product model"))
    return out


def summarize(results: list[CheckResult]) -> dict:
    return {
        "passed": sum(1 for r in results if r.passed is True),
        "failed": sum(1 for r in results if r.passed is False),
        "skipped": sum(1 for r in results if r.passed is None),
    }


def report_payload(cfg: SuiteConfig, results: list[CheckResult]) -> dict:
    return {
        "config": cfg.as_dict(),
        "results": [r.as_dict() for r in results],
        "summary": summarize(results),
    }


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_csv(results: list[CheckResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "max_residual", "tolerance", "pass", "n_samples", "notes"])
    for r in results:
        w.writerow([r.name,
                    "" if r.max_residual is None else repr(r.max_residual),
                    repr(r.tolerance),
                    "" if r.passed is None else str(r.passed).lower(),
                    r.n_samples, r.notes])
    return buf.getvalue()


def write_atomic(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        f.write(text)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# parallel-flow table (cmd parallel)
# ---------------------------------------------------------------------------

def parallel_rows(cfg: SuiteConfig) -> list[dict]:
    cfg.validate()
    surface, _ = mz.build_model(cfg.model)
    pts = sobol_points(surface.domain, min(8, cfg.samples), cfg.seed)
    scan = pf.isoparametric_scan(surface, pts, cfg.grid())
    rows = []
    for r in scan.rows:
        rows.append({
            "l": r.l,
            "H_mean": None if math.isnan(r.h_mean) else r.h_mean,
            "H_spread": None if math.isnan(r.h_spread) else r.h_spread,
            "lambda_spread": None if math.isnan(r.lambda_spread) else r.lambda_spread,
            "min_abs_detQ": r.min_abs_detq,
            "focal": r.focal,
        })
    return rows


# ---------------------------------------------------------------------------
# Poincaré-disk dump (reporting aid)
# ---------------------------------------------------------------------------

def poincare_project(x) -> tuple[float, float]:
    """Hyperboloid point -> Poincaré disk: (x2, x3) / (1 + x1)."""
    return (float(x[1] / (1.0 + x[0])), float(x[2] / (1.0 + x[0])))


def poincare_lift(dx: float, dy: float) -> np.ndarray:
    """Disk point back to the hyperboloid (inverse of poincare_project)."""
    r2 = dx * dx + dy * dy
    if r2 >= 1.0:
        raise ValueError("point outside the open disk")
    return np.array([(1.0 + r2) / (1.0 - r2), 2.0 * dx / (1.0 - r2),
                     2.0 * dy / (1.0 - r2)])


def poincare_dump(model: mz.ModelSpec, path: str, grid_n: int = 6, line_n: int = 80):
    """CSV of chart grids and coordinate lines projected to the two disks."""
    surface, _ = mz.build_model(model)
    dom = surface.domain
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["factor", "u1", "u2", "u3", "disk_x", "disk_y"])

    def emit(u):
        x = surface.point(u)
        for factor, part in ((1, x[:3]), (2, x[3:])):
            dx, dy = poincare_project(part)
            w.writerow([factor, repr(float(u[0])), repr(float(u[1])), repr(float(u[2])),
                        repr(dx), repr(dy)])

    axes = [np.linspace(d[0], d[1], grid_n) for d in dom]
    for u1 in axes[0]:
        for u2 in axes[1]:
            for u3 in axes[2]:
                emit((u1, u2, u3))
    center = [0.5 * (d[0] + d[1]) for d in dom]
    for axis in range(3):
        for v in np.linspace(dom[axis][0], dom[axis][1], line_n):
            u = list(center)
            u[axis] = v
            emit(u)
    write_atomic(path, buf.getvalue())


# ---------------------------------------------------------------------------
# tables (cmd table)
# ---------------------------------------------------------------------------

CATALOG_SWEEP = [
    mz.ModelSpec("M_Gamma", {"kappa_gamma": k}) for k in (0.0, 0.5, 1.0, 2.0)
] + [
    mz.ModelSpec("M_1m1", {"c": c}) for c in (0.1, 0.25, 0.5, 0.75, 0.9)
] + [
    mz.ModelSpec("M_11", {"c": c}) for c in (0.1, 0.25, 0.5, 0.75, 0.9)
] + [
    mz.ModelSpec("M_tau", {"tau": t}) for t in (-1.5, -2.0, -5.0)
]

TABLE_MODELS = [
    mz.ModelSpec("M_11", {"c": 0.3}),
    mz.ModelSpec("M_1m1", {"c": 0.6}),
    mz.ModelSpec("M_tau", {"tau": -2.0}),
]


def _center(surface) -> np.ndarray:
    return np.array([0.5 * (d[0] + d[1]) for d in surface.domain])


def curvature_catalog_rows() -> list[dict]:
    rows = []
    for spec in CATALOG_SWEEP:
        surface, oracle = mz.build_model(spec)
        pg = sc.point_geometry(surface, _center(surface))
        rows.append({
            "model": surface.name,
            "C": pg.C,
            "lambda1": pg.lambdas[0], "lambda2": pg.lambdas[1], "lambda3": pg.lambdas[2],
            "H": pg.H, "rho": pg.rho, "K": pg.K,
        })
    return rows


def detq_table_rows() -> list[dict]:
    rows = []
    for spec in TABLE_MODELS:
        surface, _ = mz.build_model(spec)
        pg = sc.point_geometry(surface, _center(surface))
        af = pf.adapted_frame(pg)
        closed = pf.detq_derivatives_at_0(af, pg.rho)
        numeric = pf.detq_derivatives_numeric(af)
        for k in pf.DETQ_ORDERS:
            rows.append({"model": surface.name, "k": k, "closed_form": closed[k],
                         "numeric": numeric[k], "abs_diff": abs(closed[k] - numeric[k])})
    return rows


def lemma_residual_rows() -> list[dict]:
    rows = []
    specs = TABLE_MODELS + [mz.ModelSpec("M_1m1", {"c": 0.5})]
    for spec in specs:
        surface, _ = mz.build_model(spec)
        rep = pf.frame_identity_checks(surface, _center(surface))
        for it in rep.items:
            rows.append({"model": surface.name, "identity": it.name,
                         "residual": it.residual,
                         "status": "skipped" if it.skipped else "checked",
                         "reason": it.reason})
    return rows

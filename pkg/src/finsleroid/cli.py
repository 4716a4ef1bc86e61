"""Command-line front end.

Subcommands: eval | angle | geodesic | indicatrix | figures | check.
Exit codes: 0 ok, 1 check failure, 2 bad input, 3 geometric singularity,
4 I/O error.

Configuration comes from flags or from a single JSON document
(--config FILE); flags win on conflict. All numeric CSV fields are
written with 17 significant digits so they round-trip; identical
configuration produces byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import angle as angle_mod
from . import cospace, geodesic, plane, quasieuclid, shape, tensors
from .core import Param, Space, fmf, make_param, scalar_forms
from .errors import FinsleroidError, OutOfRange

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SINGULAR = 3
EXIT_IO = 4

FIGURE_G_VALUES = (0.2, -0.2, 0.4, -0.4, 0.6, -0.6)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_floats(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise ValueError(f"cannot parse number list {text!r}") from exc


def _build_space(dim: Optional[int], r_text: Optional[str],
                 vec: Optional[np.ndarray]) -> Space:
    if dim is None:
        if vec is None:
            raise ValueError("need --dim or --vec to fix the dimension")
        dim = len(vec)
    if r_text:
        vals = _parse_floats(r_text)
        m = dim - 1
        if len(vals) != m * m:
            raise ValueError(f"--r needs {m * m} entries for dimension {dim}")
        return Space(dim, vals.reshape(m, m))
    return Space.euclidean(dim)


def _emit(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header: List[str], rows: List[List[float]],
         comments: Optional[List[str]] = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _svg(polylines: List[Tuple[str, np.ndarray]]) -> str:
    pts = np.vstack([poly for _, poly in polylines])
    lo = pts.min(axis=0) - 0.1
    hi = pts.max(axis=0) + 0.1
    width, height = hi - lo
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo[0]:.6f} '
        f'{-hi[1]:.6f} {width:.6f} {height:.6f}">'
    ]
    styles = {"body": 'fill="none" stroke="black" stroke-width="0.01"',
              "circle": 'fill="none" stroke="gray" stroke-width="0.005"'}
    for name, poly in polylines:
        coords = " ".join(f"{x:.6f},{-z:.6f}" for x, z in poly)
        style = styles.get(name, styles["body"])
        parts.append(f'<polyline id="{name}" {style} points="{coords}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    p = make_param(args.g)
    vec = _parse_floats(args.vec)
    sp = _build_space(args.dim, args.r, vec)
    f = scalar_forms(p, sp, vec)
    record = {
        "K": f.K,
        "H_dual": cospace.fhf(p, sp, cospace.to_costate(p, sp, vec)),
        "Phi": f.Phi,
        "B": f.B,
        "metric_det": tensors.metric_det(p, sp, vec),
        "indicatrix_curvature": p.h**2,
    }
    if args.json:
        _emit(args.out, json.dumps(record, sort_keys=True) + "\n")
    else:
        _emit(args.out, "".join(f"{k}: {_fmt(v)}\n" for k, v in record.items()))
    return EXIT_OK


def cmd_angle(args) -> int:
    p = make_param(args.g)
    v1 = _parse_floats(args.vec)
    v2 = _parse_floats(args.vec2)
    sp = _build_space(args.dim, args.r, v1)
    pair = angle_mod.fins_angle(p, sp, v1, v2)
    record = {"alpha": pair.alpha, "scalar_product": pair.scalar_product,
              "ominus_sq": pair.ominus_sq, "alpha_max": math.pi / p.h}
    if args.json:
        _emit(args.out, json.dumps(record, sort_keys=True) + "\n")
    else:
        _emit(args.out, "".join(f"{k}: {_fmt(v)}\n" for k, v in record.items()))
    return EXIT_OK


def cmd_geodesic(args) -> int:
    p = make_param(args.g)
    R1 = _parse_floats(args.vec)
    R2 = _parse_floats(args.vec2)
    sp = _build_space(args.dim, args.r, R1)
    bd = geodesic.connect(p, quasieuclid.sigma(p, sp, R1),
                          quasieuclid.sigma(p, sp, R2), space=sp)
    n = max(2, args.samples)
    rows = []
    for s in np.linspace(0.0, bd.delta_s, n):
        t, _ = geodesic.qe_geodesic_at(bd, float(s))
        R = quasieuclid.mu(p, sp, t)
        rows.append([float(s), *R.tolist(), fmf(p, sp, R)])
    header = ["s"] + [f"R_{i + 1}" for i in range(sp.dim)] + ["K"]
    comments = [f"a={_fmt(bd.a)}", f"b={_fmt(bd.b)}",
                f"delta_s={_fmt(bd.delta_s)}", f"alpha={_fmt(bd.alpha)}"]
    _emit(args.out, _csv(header, rows, comments))
    return EXIT_OK


def _profile_rows(p: Param, n: int) -> List[List[float]]:
    fs = np.linspace(0.0, math.pi, n)
    prof = shape.indicatrix_profile(p, n)
    return [[float(f), float(q), float(z)] for f, (q, z) in zip(fs, prof)]


def cmd_indicatrix(args) -> int:
    p = make_param(args.g)
    n = max(8, args.samples)
    _emit(args.out, _csv(["f", "q", "Z"], _profile_rows(p, n),
                         [f"g={_fmt(args.g)}"]))
    return EXIT_OK


def cmd_figures(args) -> int:
    outdir = Path(args.out or "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    n = max(8, args.samples)
    fs = np.linspace(0.0, math.pi, n)
    circle = np.column_stack([np.sin(fs), np.cos(fs)])
    written = []
    for g in FIGURE_G_VALUES:
        p = make_param(g)
        prof = shape.indicatrix_profile(p, n)
        name = f"indicatrix_g{g:+.1f}"
        if args.format == "svg":
            path = outdir / f"{name}.svg"
            path.write_text(_svg([("body", prof), ("circle", circle)]))
        else:
            rows = [[float(f), float(q), float(z), float(cq), float(cz)]
                    for f, (q, z), (cq, cz) in zip(fs, prof, circle)]
            path = outdir / f"{name}.csv"
            path.write_text(_csv(["f", "q", "Z", "circle_q", "circle_Z"], rows,
                                 [f"g={_fmt(g)}"]))
        written.append(path)
    gs = np.linspace(-1.9, 1.9, 191)
    reports = [shape.shape_report(make_param(float(g))) for g in gs]
    path = outdir / "equator_radius_curve.csv"
    path.write_text(_csv(["g", "q_star"],
                         [[float(g), r.q_star] for g, r in zip(gs, reports)]))
    written.append(path)
    path = outdir / "width_height_curve.csv"
    path.write_text(_csv(["g", "Z_2star"],
                         [[float(g), r.Z_2star] for g, r in zip(gs, reports)]))
    written.append(path)
    sys.stdout.write("".join(f"{p}\n" for p in written))
    return EXIT_OK


# ---------------------------------------------------------------------------
# check battery
# ---------------------------------------------------------------------------

def _rand_vec(rng, sp: Space, min_q: float = 0.2) -> np.ndarray:
    while True:
        v = rng.normal(size=sp.dim)
        if sp.spatial_norm(v) > min_q and sp.norm(v) > min_q:
            return v


def _check_battery(rng, inject_fault: bool) -> List[Tuple[str, float, float]]:
    """Run every identity check; returns (name, residual, default_tol)."""
    results = []

    def run(name, tol, fn):
        results.append((name, float(fn()), tol))

    def param_for(g: float) -> Param:
        p = make_param(g)
        if inject_fault:
            p = dataclasses.replace(p, h=p.h + 1e-3)
        return p

    sp3 = Space.euclidean(3)
    samples = [(param_for(float(rng.uniform(-1.8, 1.8))), _rand_vec(rng, sp3))
               for _ in range(40)]

    def form_identities():
        worst = 0.0
        for p, R in samples:
            f = scalar_forms(p, sp3, R)
            worst = max(worst, abs(f.A**2 + p.h**2 * f.q**2 - f.B) / f.B,
                        abs(f.L**2 + p.h**2 * R[-1]**2 - f.B) / f.B)
        return worst
    run("form_identities", 1e-12, form_identities)

    def homogeneity():
        worst = 0.0
        for p, R in samples[:20]:
            K = fmf(p, sp3, R)
            for lam in (0.5, 2.0, 10.0):
                worst = max(worst, abs(fmf(p, sp3, lam * R) - lam * K) / (lam * K))
        return worst
    run("homogeneity", 1e-12, homogeneity)

    def euler_identity():
        worst = 0.0
        for p, R in samples:
            K2 = fmf(p, sp3, R) ** 2
            worst = max(worst, abs(tensors.grad_covector(p, sp3, R) @ R - K2) / K2)
        return worst
    run("euler_identity", 1e-11, euler_identity)

    def det_law():
        worst = 0.0
        for p, R in samples:
            d = np.linalg.det(tensors.metric(p, sp3, R))
            worst = max(worst, abs(d - tensors.metric_det(p, sp3, R)) / abs(d))
        return worst
    run("metric_det_law", 1e-10, det_law)

    def metric_hessian():
        worst = 0.0
        eps = 1e-5
        for p, R in samples[:8]:
            gm = tensors.metric(p, sp3, R)
            H = np.empty((3, 3))
            for i in range(3):
                for j in range(3):
                    def k2(di, dj):
                        x = R.copy()
                        x[i] += di
                        x[j] += dj
                        return 0.5 * fmf(p, sp3, x) ** 2
                    H[i, j] = (k2(eps, eps) - k2(eps, -eps)
                               - k2(-eps, eps) + k2(-eps, -eps)) / (4 * eps * eps)
            worst = max(worst, np.max(np.abs(gm - H)) / np.max(np.abs(gm)))
        return worst
    run("metric_hessian", 1e-5, metric_hessian)

    def cartan_contraction():
        worst = 0.0
        for p, R in samples:
            if abs(p.g) < 1e-3:
                continue
            ct = tensors.cartan(p, sp3, R)
            K2 = fmf(p, sp3, R) ** 2
            worst = max(worst, abs(K2 * (ct.covector @ ct.vector)
                                   - 9 * p.g**2 / 4) / (9 * p.g**2 / 4))
        return worst
    run("cartan_contraction", 1e-10, cartan_contraction)

    def curvature_constant():
        worst = 0.0
        for p, R in samples[:12]:
            s_star = tensors.curvature_S(p, sp3, R).s_star
            worst = max(worst, abs(1.0 + s_star - p.h**2))
        return worst
    run("curvature_constant", 1e-12, curvature_constant)

    def duality():
        worst = 0.0
        for p, R in samples:
            K = fmf(p, sp3, R)
            worst = max(worst, abs(cospace.fhf(p, sp3, cospace.to_costate(p, sp3, R)) - K) / K)
            worst = max(worst, abs(cospace.fhf(p, sp3, R)
                                   - fmf(param_for(-p.g), sp3, R)) / K)
        return worst
    run("duality", 1e-9, duality)

    def qe_roundtrip():
        worst = 0.0
        for p, R in samples:
            t = quasieuclid.sigma(p, sp3, R)
            worst = max(worst, float(np.max(np.abs(quasieuclid.mu(p, sp3, t) - R))),
                        abs(quasieuclid.snorm(sp3, t) - fmf(p, sp3, R)))
        return worst
    run("qe_roundtrip", 1e-10, qe_roundtrip)

    def metric_pullback():
        worst = 0.0
        for p, R in samples[:12]:
            jac = quasieuclid.sigma_jacobian(p, sp3, R)
            nm = quasieuclid.n_metric(p, sp3, quasieuclid.sigma(p, sp3, R))
            gm = tensors.metric(p, sp3, R)
            worst = max(worst, np.max(np.abs(jac @ nm.low @ jac.T - gm)) / np.max(np.abs(gm)))
        return worst
    run("metric_pullback", 1e-10, metric_pullback)

    def geodesic_norm_law():
        worst = 0.0
        for p, R in samples[:10]:
            R2 = _rand_vec(rng, sp3)
            try:
                bd = geodesic.connect(p, quasieuclid.sigma(p, sp3, R),
                                      quasieuclid.sigma(p, sp3, R2), space=sp3)
            except FinsleroidError:
                continue
            for s in np.linspace(0.1, 0.9, 5) * bd.delta_s:
                t, _ = geodesic.qe_geodesic_at(bd, float(s))
                S2 = bd.a**2 + 2 * bd.b * s + s * s
                worst = max(worst, abs(sp3.dot(t, t) - S2) / S2)
        return worst
    run("geodesic_norm_law", 1e-10, geodesic_norm_law)

    def angle_laws():
        worst = 0.0
        for p, R in samples[:10]:
            R2 = _rand_vec(rng, sp3)
            pair = angle_mod.fins_angle(p, sp3, R, R2)
            t1 = quasieuclid.sigma(p, sp3, R)
            t2 = quasieuclid.sigma(p, sp3, R2)
            worst = max(worst, abs(pair.alpha - angle_mod.qe_angle(p, t1, t2, space=sp3)))
            try:
                bd = geodesic.connect(p, t1, t2, space=sp3)
                worst = max(worst, abs(pair.ominus_sq - bd.delta_s**2))
            except FinsleroidError:
                pass
        return worst
    run("angle_laws", 1e-9, angle_laws)

    def shape_mirror():
        worst = 0.0
        for g in (0.2, 0.4, 0.6):
            prof_p = shape.indicatrix_profile(param_for(g), 64)
            prof_m = shape.indicatrix_profile(param_for(-g), 64)
            flipped = prof_m[::-1].copy()
            flipped[:, 1] *= -1.0
            worst = max(worst, float(np.max(np.abs(prof_p - flipped))))
        return worst
    run("shape_mirror", 1e-10, shape_mirror)

    def plane_identities():
        worst = 0.0
        fs = np.linspace(0.05, math.pi - 0.05, 40)
        for g in (0.0, 0.4, -0.6, 1.2):
            p = param_for(g)
            worst = max(worst, plane.rund_residual(p, fs))
            chk = plane.landsberg_check(p, fs)
            worst = max(worst, chk["wronskian"], chk["convexity"])
        return worst
    run("plane_identities", 1e-8, plane_identities)

    return results


def cmd_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    tol_over = {}
    for item in args.tol or []:
        key, _, val = item.partition("=")
        if not val:
            raise ValueError(f"--tol expects KEY=VAL, got {item!r}")
        tol_over[key] = float(val)
    results = _check_battery(rng, args.inject_fault)
    checks = []
    all_ok = True
    for name, residual, tol in results:
        tol = tol_over.get(name, tol)
        ok = residual <= tol
        all_ok &= ok
        checks.append({"name": name, "residual": residual, "tol": tol,
                       "pass": bool(ok)})
    if args.json:
        report = {"seed": args.seed, "fault_injected": bool(args.inject_fault),
                  "checks": checks, "pass": bool(all_ok)}
        _emit(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"seed: {args.seed}"]
        for c in checks:
            status = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{c['name']:<22} {c['residual']:.3e}  tol {c['tol']:.1e}  {status}")
        lines.append("overall: " + ("PASS" if all_ok else "FAIL"))
        _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_common(sub, *, vec=False, vec2=False, samples=None):
    sub.add_argument("--g", type=float, default=None, help="characteristic parameter")
    sub.add_argument("--dim", type=int, default=None, help="dimension N")
    sub.add_argument("--r", type=str, default=None,
                     help="comma list of the (N-1)^2 spatial metric entries")
    if vec:
        sub.add_argument("--vec", type=str, default=None, help="vector, comma separated")
    if vec2:
        sub.add_argument("--vec2", type=str, default=None, help="second vector")
    if samples is not None:
        sub.add_argument("--samples", type=int, default=None)
        sub.set_defaults(_samples_default=samples)
    sub.add_argument("--format", choices=("csv", "json", "svg"), default=None)
    sub.add_argument("--out", type=str, default=None, help="output path")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--tol", action="append", default=None, metavar="KEY=VAL")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--config", type=str, default=None,
                     help="JSON document with the same keys; flags win")
    sub.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)


def _apply_config(args) -> None:
    if not getattr(args, "config", None):
        return
    doc = json.loads(Path(args.config).read_text())
    for key, val in doc.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"unknown config key {key!r}")
        cur = getattr(args, attr)
        if cur is None or cur is False:  # flag absent: config value applies
            if attr == "tol" and isinstance(val, dict):
                val = [f"{k}={v}" for k, v in val.items()]
            setattr(args, attr, val)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finsleroid",
                                 description="Finsleroid geometry toolkit")
    subs = ap.add_subparsers(dest="command", required=True)
    handlers = {}

    s = subs.add_parser("eval", help="metric function and tensor scalars at a vector")
    _add_common(s, vec=True)
    handlers["eval"] = cmd_eval

    s = subs.add_parser("angle", help="angle and scalar product of two vectors")
    _add_common(s, vec=True, vec2=True)
    handlers["angle"] = cmd_angle

    s = subs.add_parser("geodesic", help="closed-form geodesic samples as CSV")
    _add_common(s, vec=True, vec2=True, samples=50)
    handlers["geodesic"] = cmd_geodesic

    s = subs.add_parser("indicatrix", help="unit-body generatrix as CSV")
    _add_common(s, samples=181)
    handlers["indicatrix"] = cmd_indicatrix

    s = subs.add_parser("figures", help="emit the standard figure data files")
    _add_common(s, samples=361)
    handlers["figures"] = cmd_figures

    s = subs.add_parser("check", help="run the identity suite")
    _add_common(s)
    handlers["check"] = cmd_check

    ap.set_defaults(_handlers=handlers)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _apply_config(args)
        if args.seed is None:
            args.seed = 0
        if args.format is None:
            args.format = "csv"
        if getattr(args, "samples", "absent") is None:
            args.samples = args._samples_default
        if args.command in ("eval", "angle", "geodesic", "indicatrix") and args.g is None:
            raise ValueError("--g is required")
        if getattr(args, "vec", None) is None and args.command in (
                "eval", "angle", "geodesic"):
            raise ValueError("--vec is required")
        if getattr(args, "vec2", None) is None and args.command in ("angle", "geodesic"):
            raise ValueError("--vec2 is required")
        handler = args._handlers[args.command]
        return handler(args)
    except (OutOfRange, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FinsleroidError as exc:
        print(f"geometric singularity: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end: ``python -m dnls_scattering <subcommand> ...``.

Exit status is 0 on success, 1 when a module raises (the diagnostic names the
module), and 2 for usage errors.  JSON output is deterministic: sorted keys,
shortest round-trip floats, complex numbers as [re, im].
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np
import yaml

from . import acceptance, evolution, scattering, simplex, spectral, variation
from . import words as W
from .errors import DNLSError
from .potential import CONFIG_KEYS, GridPotential, from_config, from_csv
from .scattering import SpectralPoint


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------------ serialization

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_jsonable(float(obj.real)), _jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ config

def _parse_complex(s: str) -> complex:
    try:
        return complex(str(s).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse spectral parameter {s!r}") from None


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a mapping")
    return data


def _potential(args, cfg: dict) -> GridPotential:
    if getattr(args, "potential_csv", None):
        return from_csv(Path(args.potential_csv).read_text())
    params = dict(cfg.get("potential", {}))
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return from_config(params)


def _points(args, cfg: dict) -> list[SpectralPoint]:
    lams = args.lam if args.lam else cfg.get("lambda")
    ray = args.ray if args.ray else cfg.get("ray")
    pts: list[SpectralPoint] = []
    if lams:
        pts += [SpectralPoint(_parse_complex(v)) for v in lams]
    if ray:
        if isinstance(ray, dict):
            ray = [ray["zeta_min"], ray["zeta_max"], ray["count"]]
        zmin, zmax, count = float(ray[0]), float(ray[1]), int(float(ray[2]))
        if count < 1 or zmin <= 0 or zmax < zmin:
            raise UsageError("ray needs 0 < zeta_min <= zeta_max and count >= 1")
        pts += [SpectralPoint.on_ray(z) for z in np.geomspace(zmin, zmax, count)]
    if not pts:
        raise UsageError("no spectral parameters given (use --lambda or --ray)")
    return pts


def _zetas(args, cfg: dict, default: tuple[float, float, int]) -> np.ndarray:
    ray = args.ray or cfg.get("ray")
    if isinstance(ray, dict):
        ray = [ray["zeta_min"], ray["zeta_max"], ray["count"]]
    zmin, zmax, count = (float(ray[0]), float(ray[1]), int(float(ray[2]))) if ray else default
    if count < 2 or zmin <= 0 or zmax <= zmin:
        raise UsageError("ray needs 0 < zeta_min < zeta_max and count >= 2")
    return np.geomspace(zmin, zmax, count)


def _param(args, cfg: dict, name: str, default):
    val = getattr(args, name, None)
    if val is None:
        val = cfg.get(name, default)
    return val


def _positive(name: str, value: float) -> float:
    if not value > 0:
        raise UsageError(f"{name} must be positive")
    return value


# ------------------------------------------------------------------ subcommands

def cmd_scatter(args, cfg) -> int:
    q = _potential(args, cfg)
    pts = _points(args, cfg)
    tol = _positive("ode-tol", float(_param(args, cfg, "ode_tol", scattering.ODE_TOL)))
    results = scattering.lambda_sweep(q, pts, tol, workers=args.threads)
    failures = [r for r in results if isinstance(r, Exception)]
    fmt = args.format or cfg.get("format", "csv")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re_lambda", "im_lambda", "re_s11", "im_s11", "re_s21", "im_s21", "unitarity_defect", "est_error"])
        for p, r in zip(pts, results):
            if isinstance(r, Exception):
                w.writerow([repr(p.lam.real), repr(p.lam.imag)] + ["nan"] * 6)
            else:
                w.writerow([repr(v) for v in (p.lam.real, p.lam.imag, r.s11.real, r.s11.imag, r.s21.real,
                                              r.s21.imag, r.unitarity_defect, r.est_error)])
        text = buf.getvalue()
    else:
        rows = []
        for p, r in zip(pts, results):
            if isinstance(r, Exception):
                rows.append({"lambda": p.lam, "error": f"{type(r).__name__}: {r}"})
            else:
                rows.append({"lambda": p.lam, "s11": r.s11, "s21": r.s21,
                             "unitarity_defect": r.unitarity_defect, "est_error": r.est_error})
        text = dumps({"points": rows})
    _emit(text, args.output)
    for f in failures:
        print(f"error [{f.module}]: {f}", file=sys.stderr)
    return 1 if failures else 0


def cmd_expand(args, cfg) -> int:
    q = _potential(args, cfg)
    pts = _points(args, cfg)
    J = int(_param(args, cfg, "J", 4))
    if not 1 <= J <= simplex.MAX_LOG_J:
        raise UsageError(f"J must be in 1..{simplex.MAX_LOG_J}")
    tol = _positive("ode-tol", float(_param(args, cfg, "ode_tol", 1e-12)))
    out = []
    for p in pts:
        res = simplex.series_vs_ode(q, p, J, tol)
        t = res["terms"]
        out.append({
            "lambda": p.lam,
            "s_terms": t.s_terms,
            "b_terms": t.b_terms,
            "partial_sums": t.partial_sums,
            "log_partial_sums": t.log_partial_sums(),
            "quad_errors": t.quad_errors,
            "identity_defects": t.identity_defects,
            "s11_ode": res["s11_ode"],
            "picard_defects": res["picard_defects"],
            "log_defects": res["log_defects"],
        })
    _emit(dumps({"J": J, "points": out}), args.output)
    return 0


def cmd_words(args, cfg) -> int:
    deg = int(_param(args, cfg, "max_degree", 3))
    if not 1 <= deg <= 7:
        raise UsageError("max-degree must be in 1..7")
    logs = W.log_series(deg)
    fmt = args.format or "text"
    if fmt == "json":
        text = dumps({str(j): {w: str(c) for w, c in L.items()} for j, L in enumerate(logs, start=1)})
    else:
        text = "".join(f"degree {j}: {L.pretty()}\n" for j, L in enumerate(logs, start=1))
    _emit(text, args.output)
    return 0


def cmd_asymptote(args, cfg) -> int:
    q = _potential(args, cfg)
    z = _zetas(args, cfg, (20.0, 200.0, 10))
    tol = _positive("ode-tol", float(_param(args, cfg, "ode_tol", 1e-12)))
    H = spectral.conserved(q)
    fit = spectral.asymptotic_fit(q, z, ode_tol=tol)
    lim = spectral.limit_check(q, z, ode_tol=tol)
    payload = {
        "conserved": {"H0": H.H0, "H1": H.H1, "H2": H.H2},
        "fit": {"D": fit.D, "D1": fit.D1, "D2": fit.D2, "residual": fit.residual, "condition": fit.condition},
        "expected": {"D1": fit.D1_expected, "D2": fit.D2_expected},
        "defects": {"D1": fit.D1_defect, "D2": fit.D2_defect,
                    "D1_relative": fit.D1_relative, "D2_relative": fit.D2_relative},
        "ray": [{"zeta": float(zz), "log_s11_bar": L, "limit_defect": d}
                for zz, L, d in zip(z, fit.log_s11_bar, lim.defect)],
        "limit_slope": lim.slope,
    }
    _emit(dumps(payload), args.output)
    return 0


def cmd_evolve(args, cfg) -> int:
    q = _potential(args, cfg)
    T = float(_param(args, cfg, "T", 0.25))
    dt = _positive("dt", float(_param(args, cfg, "dt", 1e-4)))
    if T < 0:
        raise UsageError("T must be nonnegative")
    every = int(_param(args, cfg, "record_every", max(1, int(round(T / dt / 20))) if T > 0 else 1))
    state = evolution.evolve(q, T, dt, record_every=every)
    payload: dict = {
        "T": T, "dt": dt, "steps": state.step_count, "mass_drift": state.mass_drift,
        "series": [{"t": t, "H0": h0, "H1": h1, "H2": h2} for t, h0, h1, h2 in state.history],
    }
    if args.lam or args.ray or cfg.get("lambda") or cfg.get("ray"):
        rep = evolution.isospectrality_report(q, T, dt, _points(args, cfg))
        payload["isospectrality"] = [
            {"lambda": r.lam, "s11_defect": r.s11_defect, "s21_defect": r.s21_defect,
             "s21_defect_reversed": r.s21_defect_reversed} for r in rep.rows]
        payload["conserved_drift"] = rep.drifts
    _emit(dumps(payload), args.output)
    return 0


def cmd_norms(args, cfg) -> int:
    p = float(_param(args, cfg, "p", 2.0))
    if not p > 1:
        raise UsageError("p must exceed 1")
    payload: dict = {"p": p}
    if args.input:
        f = variation.StepFunction.from_json_text(Path(args.input).read_text())
        payload["vp_norm"] = variation.vp_norm(f, p) if f.N <= variation.MAX_EXACT_N else None
        payload["vp_norm_lower_bound"] = variation.vp_norm_lower_bound(f, p)
        if args.q_exp is not None:
            payload["monotone"] = variation.vp_monotonicity_check(f, p, float(args.q_exp))
        if args.kernel:
            k = json.loads(Path(args.kernel).read_text())
            g = variation.DiscreteKernel(tuple(k["offsets"]), tuple(k["weights"]))
            rep = variation.convolution_bound_check(g, f, p)
            payload["convolution"] = {"lhs": rep.lhs, "rhs": rep.rhs, "violated": rep.violated}
    if args.random:
        rng = np.random.default_rng(args.seed if args.seed is not None else 0)
        mismatch = violations = 0
        for _ in range(args.random):
            f = variation.random_step_function(rng, int(rng.integers(2, 11)))
            a, b = variation.vp_norm(f, p), variation.vp_norm_lower_bound(f, p)
            mismatch += abs(a - b) > 1e-12 * max(1.0, a)
            g = variation.random_kernel(rng, int(rng.integers(1, 4)))
            h = variation.random_step_function(rng, int(rng.integers(2, 5)))
            violations += variation.convolution_bound_check(g, h, p).violated
        payload["sweep"] = {"instances": args.random, "dp_mismatches": mismatch, "violations": violations}
    if len(payload) == 1:
        raise UsageError("norms needs --input or --random")
    _emit(dumps(payload), args.output)
    return 0


def cmd_verify(args, cfg) -> int:
    suite = args.suite or cfg.get("suite", "fast")
    results = acceptance.run_suite(suite, seed=args.seed, report=lambda r: print(r.line(), flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if args.output:
        Path(args.output).write_text(dumps([{"number": r.number, "name": r.name, "passed": r.passed,
                                             "seconds": r.seconds, "details": r.details} for r in results]))
    return 0 if passed == len(results) else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML or JSON run configuration")
    common.add_argument("--seed", type=int, help="seed for randomized sweeps")
    common.add_argument("--output", "-o", help="write results here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--threads", type=int, help="worker threads (default: DNLS_THREADS or 1)")

    pot = _Parser(add_help=False)
    pot.add_argument("--family", choices=["gaussian", "sech"])
    pot.add_argument("--amplitude-re", dest="amplitude_re", type=float)
    pot.add_argument("--amplitude-im", dest="amplitude_im", type=float)
    pot.add_argument("--width", type=float)
    pot.add_argument("--chirp", type=float)
    pot.add_argument("--x-min", dest="x_min", type=float)
    pot.add_argument("--x-max", dest="x_max", type=float)
    pot.add_argument("--n", type=int)
    pot.add_argument("--potential-csv", dest="potential_csv", help="CSV with columns x, re_q, im_q")

    lam = _Parser(add_help=False)
    lam.add_argument("--lambda", dest="lam", action="append", help="spectral parameter, e.g. 0.7 or 0.5+0.5j")
    lam.add_argument("--ray", nargs=3, metavar=("ZMIN", "ZMAX", "COUNT"),
                     help="points lambda = e^{i pi/4} sqrt(zeta/2), zeta geometric in [ZMIN, ZMAX]")
    lam.add_argument("--ode-tol", dest="ode_tol", type=float)

    parser = _Parser(prog="dnls_scattering", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("scatter", parents=[common, pot, lam], help="s11, s21 on a list of lambda (CSV)")
    p = sub.add_parser("expand", parents=[common, pot, lam], help="Picard and log series vs the ODE (JSON)")
    p.add_argument("-J", dest="J", type=int)
    p = sub.add_parser("words", parents=[common], help="shuffle-log coefficients by degree")
    p.add_argument("--max-degree", dest="max_degree", type=int)
    sub.add_parser("asymptote", parents=[common, pot, lam], help="conserved quantities and D1, D2 fit (JSON)")
    p = sub.add_parser("evolve", parents=[common, pot, lam], help="DNLS evolution and isospectrality (JSON)")
    p.add_argument("-T", dest="T", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--record-every", dest="record_every", type=int)
    p = sub.add_parser("norms", parents=[common], help="V^p norms of a step function (JSON)")
    p.add_argument("--input", help="step-function JSON: {breakpoints: [...], values: [[re, im], ...]}")
    p.add_argument("-p", dest="p", type=float)
    p.add_argument("--q-exp", dest="q_exp", type=float, help="second exponent for the monotonicity check")
    p.add_argument("--kernel", help="kernel JSON: {offsets: [...], weights: [...]}")
    p.add_argument("--random", type=int, help="run a random sweep of this many instances")
    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--suite", choices=["fast", "full"])
    return parser


COMMANDS = {
    "scatter": cmd_scatter, "expand": cmd_expand, "words": cmd_words, "asymptote": cmd_asymptote,
    "evolve": cmd_evolve, "norms": cmd_norms, "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args.config)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DNLSError as exc:
        print(f"error [{exc.module}]: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

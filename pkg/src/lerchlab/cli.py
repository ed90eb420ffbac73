"""Command-line driver: eval, scan, probe, random, bergman, phi.

Configs are line-oriented ``key = value`` text with ``#`` comments;
command-line flags override file values.  Output headers echo the
effective config, and echoed headers parse back as configs, so any
output file can reproduce its own run.  Exit codes: 0 success, 1
computation error (pole, non-convergence, empty window), 2 usage or
config error.  CSV uses '.' decimals and 17 significant digits, which
round-trips doubles exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .bergman import (
    BergmanDomain,
    BergmanElement,
    TupleElement,
    divergence_diagnostic,
    phi_pair_sum,
)
from .errors import ComputationError, EmptyWindowError
from .lerch import LerchParameters, StripPoint, eval_continued, eval_derivative
from .randomseries import RandomSeriesConfig, eval_random_series, sample_phases, tail_estimate
from .search import JointTarget, ScanConfig, dense_image_probe, scan, scan_distances, report_from_distances
from .strip import CompactSet, TargetPolynomial

_DEFAULT_ALPHA = 1.0 / math.pi


def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def read_config(path: str) -> dict:
    """Parse key = value lines; '# key = value' output headers also parse."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line.startswith("#"):
                line = line.lstrip("#").strip()
            if not line or "=" not in line:
                continue
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def parse_complex(text: str) -> complex:
    return complex(text.replace(" ", ""))


def parse_bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_list(text: str):
    return [item.strip() for item in text.split(",") if item.strip()]


def _csv_text(config: dict, columns, rows) -> str:
    lines = [f"# {k} = {v}" for k, v in sorted(config.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_text(config: dict, result: dict) -> str:
    return json.dumps({"config": config, "result": result}, sort_keys=True, indent=2) + "\n"


def _emit(args, config: dict, result: dict, columns, rows) -> None:
    if args.out:
        text = (
            _json_text(config, result)
            if args.format == "json"
            else _csv_text(config, columns, rows)
        )
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ----------------------------- eval ---------------------------------------


def _cmd_eval(args) -> int:
    p = LerchParameters(args.alpha, args.lam)
    s = StripPoint(args.sigma, args.t)
    if args.deriv == 0:
        res = eval_continued(s, p, args.precision)
    else:
        res = eval_derivative(s, p, args.deriv, args.precision)
    config = {
        "subcommand": "eval",
        "sigma": _fmt(args.sigma),
        "t": _fmt(args.t),
        "alpha": _fmt(args.alpha),
        "lambda": _fmt(args.lam),
        "deriv": str(args.deriv),
        "precision": _fmt(args.precision),
    }
    result = {
        "value_re": res.value.real,
        "value_im": res.value.imag,
        "abs_error_bound": res.abs_error_bound,
        "terms_used": res.terms_used,
    }
    print(f"value = {_fmt(res.value.real)} + {_fmt(res.value.imag)}j")
    print(f"abs_error_bound = {_fmt(res.abs_error_bound)}")
    print(f"terms_used = {res.terms_used}")
    _emit(args, config, result,
          ["value_re", "value_im", "abs_error_bound", "terms_used"],
          [[res.value.real, res.value.imag, res.abs_error_bound, res.terms_used]])
    return 0


# ----------------------------- scan ---------------------------------------


def _target_from_config(cfg: dict) -> JointTarget:
    alpha = float(cfg.get("alpha", _fmt(_DEFAULT_ALPHA)))
    lams = [float(v) for v in parse_list(cfg["lambdas"])]
    comps = []
    for i in range(1, len(lams) + 1):
        pre = f"component.{i}."
        shape = cfg.get(pre + "shape", "disk")
        bs = int(cfg.get(pre + "boundary_samples", "256"))
        it = int(cfg.get(pre + "interior_samples", "64"))
        if shape == "disk":
            k = CompactSet.disk(
                parse_complex(cfg[pre + "center"]),
                float(cfg[pre + "radius"]),
                boundary_samples=bs,
                interior_samples=it,
            )
        elif shape == "rectangle":
            k = CompactSet.rectangle(
                parse_complex(cfg[pre + "lo"]),
                parse_complex(cfg[pre + "hi"]),
                boundary_samples=bs,
                interior_samples=it,
            )
        else:
            raise ValueError(f"unknown shape {shape!r} for component {i}")
        coeffs = [parse_complex(v) for v in parse_list(cfg[pre + "target_coeffs"])]
        center = parse_complex(cfg.get(pre + "target_center", "0"))
        comps.append((k, TargetPolynomial(tuple(coeffs), center)))
    params = [LerchParameters(alpha, lam) for lam in lams]
    return JointTarget(tuple(comps), tuple(params))


def _scan_effective_config(cfg: dict) -> dict:
    out = dict(cfg)
    out["subcommand"] = "scan"
    out.setdefault("alpha", _fmt(_DEFAULT_ALPHA))
    out.setdefault("tau_step", "0.05")
    out.setdefault("refine", "false")
    out.setdefault("threads", str(os.cpu_count() or 1))
    out.setdefault("engine_target", "1e-07")
    for i in range(1, len(parse_list(cfg["lambdas"])) + 1):
        pre = f"component.{i}."
        out.setdefault(pre + "shape", "disk")
        out.setdefault(pre + "boundary_samples", "256")
        out.setdefault(pre + "interior_samples", "64")
        out.setdefault(pre + "target_center", "0")
    return out


def _lprime_estimate(tgt: JointTarget, sc: ScanConfig) -> float:
    """Sampled sup of |dL/ds| over the components at a few shift heights.

    A heuristic (sampled, factor-2 inflated) stand-in for the derivative
    bound on an enlarged compact; printed so users can judge whether
    tau_step resolves epsilon-hits.
    """
    worst = 0.0
    for j in range(tgt.m):
        pts = tgt.samples(j)
        probes = [pts[0], pts[len(pts) // 2]]
        for tau in (0.0, sc.tau_max / 2.0):
            for pt in probes:
                d = eval_derivative(
                    StripPoint(pt.real, pt.imag + tau), tgt.params[j], 1, 1e-6
                )
                worst = max(worst, abs(d.value))
    return 2.0 * worst


def _cmd_scan(args) -> int:
    cfg = read_config(args.config) if args.config else {}
    for key, val in (
        ("epsilon", args.epsilon),
        ("tau_max", args.tau_max),
        ("tau_step", args.tau_step),
        ("refine", args.refine),
        ("threads", args.threads),
    ):
        if val is not None:
            cfg[key] = str(val)
    if "lambdas" not in cfg:
        raise ValueError("scan needs a config with a 'lambdas' entry")
    cfg.pop("subcommand", None)
    effective = _scan_effective_config(cfg)
    tgt = _target_from_config(cfg)
    sc = ScanConfig(
        tau_max=float(cfg["tau_max"]),
        tau_step=float(effective["tau_step"]),
        epsilon=float(cfg["epsilon"]),
        refine=parse_bool(effective["refine"]),
    )
    threads = int(effective["threads"])
    engine_target = float(effective["engine_target"])

    # sampled derivative bound over the enlarged compacts: a hit interval
    # has width ~ epsilon / sup|L'|, which justifies (or not) the grid step
    lp = _lprime_estimate(tgt, sc)
    print(
        f"lprime_estimate = {_fmt(lp)} "
        f"(hit interval width ~ epsilon/lprime = {_fmt(sc.epsilon / lp)}, "
        f"tau_step = {_fmt(sc.tau_step)})"
    )

    if args.trace:
        distances = scan_distances(tgt, sc, threads, engine_target)
        report = report_from_distances(distances, sc)
        taus = sc.tau_step * np.arange(sc.n_grid)
        trace_rows = [[float(t), float(d)] for t, d in zip(taus, distances)]
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(_csv_text(effective, ["tau", "distance"], trace_rows))
        if sc.refine:
            report = scan(tgt, sc, threads, engine_target)
    else:
        report = scan(tgt, sc, threads, engine_target)

    print(
        f"density = {_fmt(report.density)} best_tau = {_fmt(report.best_tau)} "
        f"best_distance = {_fmt(report.best_distance)}"
    )
    rows = [[lo, hi] for lo, hi in report.hit_intervals]
    result = report.to_json_dict()
    _emit(args, effective, result, ["interval_lo", "interval_hi"], rows)
    return 0


# ----------------------------- probe --------------------------------------


def _cmd_probe(args) -> int:
    lams = [float(v) for v in parse_list(args.lambdas)]
    params = [LerchParameters(args.alpha, lam) for lam in lams]
    targets = [parse_complex(v) for v in parse_list(args.targets)]
    res = dense_image_probe(
        params, args.sigma, args.derivs, targets,
        args.epsilon, args.t_max, args.t_step,
    )
    config = {
        "subcommand": "probe",
        "alpha": _fmt(args.alpha),
        "lambdas": args.lambdas,
        "sigma": _fmt(args.sigma),
        "derivs": str(args.derivs),
        "targets": args.targets,
        "epsilon": _fmt(args.epsilon),
        "t_max": _fmt(args.t_max),
        "t_step": _fmt(args.t_step),
    }
    result = {
        "t_best": res.t_best,
        "distance": res.distance,
        "n_hits": res.n_hits,
        "n_grid": res.n_grid,
    }
    print(f"t_best = {_fmt(res.t_best)} distance = {_fmt(res.distance)}")
    _emit(args, config, result,
          ["t_best", "distance", "n_hits", "n_grid"],
          [[res.t_best, res.distance, res.n_hits, res.n_grid]])
    return 0


# ----------------------------- random -------------------------------------


def _cmd_random(args) -> int:
    p = LerchParameters(args.alpha, args.lam)
    cfg = RandomSeriesConfig(args.n, p)
    s = StripPoint(args.sigma, args.t)
    omega = sample_phases(args.seed, args.n)
    value = eval_random_series(s, cfg, omega)
    tail = tail_estimate(cfg, s)
    config = {
        "subcommand": "random",
        "seed": str(args.seed),
        "n": str(args.n),
        "alpha": _fmt(args.alpha),
        "lambda": _fmt(args.lam),
        "sigma": _fmt(args.sigma),
        "t": _fmt(args.t),
    }
    result = {
        "value_re": value.real,
        "value_im": value.imag,
        "tail_estimate": tail,
    }
    print(f"value = {_fmt(value.real)} + {_fmt(value.imag)}j")
    print(f"tail_estimate = {_fmt(tail)}")
    _emit(args, config, result,
          ["value_re", "value_im", "tail_estimate"],
          [[value.real, value.imag, tail]])
    return 0


# ----------------------------- bergman ------------------------------------


def _domain_from_config(cfg: dict) -> BergmanDomain:
    shape = cfg.get("domain.shape", "rectangle")
    order = int(cfg.get("domain.order", "40"))
    if shape == "rectangle":
        return BergmanDomain.rectangle(
            parse_complex(cfg["domain.lo"]), parse_complex(cfg["domain.hi"]), order
        )
    if shape == "disk":
        return BergmanDomain.disk(
            parse_complex(cfg["domain.center"]), float(cfg["domain.radius"]), order
        )
    raise ValueError(f"unknown domain shape {shape!r}")


def _cmd_bergman(args) -> int:
    cfg = read_config(args.config)
    cfg.pop("subcommand", None)
    alpha = float(cfg.get("alpha", _fmt(_DEFAULT_ALPHA)))
    lams = [float(v) for v in parse_list(cfg["lambdas"])]
    domain = _domain_from_config(cfg)
    elements = []
    for i in range(1, len(lams) + 1):
        pre = f"element.{i}."
        coeffs = [parse_complex(v) for v in parse_list(cfg[pre + "coeffs"])]
        center = parse_complex(cfg.get(pre + "center", "0"))
        elements.append(BergmanElement(tuple(coeffs), center))
    g = TupleElement(tuple(elements))
    params = [LerchParameters(alpha, lam) for lam in lams]
    x_grid = [float(v) for v in parse_list(cfg["x_grid"])]
    scale = float(cfg.get("window_scale", "1"))
    w_exp = cfg.get("window_exponent")
    report = divergence_diagnostic(
        g, params, domain, x_grid,
        window_scale=scale,
        window_exponent=int(w_exp) if w_exp else None,
    )
    if all(r.window_empty for r in report.rows):
        raise EmptyWindowError(
            "every requested window is empty; widen window_scale or move x_grid"
        )
    effective = dict(cfg)
    effective["subcommand"] = "bergman"
    effective.setdefault("alpha", _fmt(alpha))
    effective.setdefault("window_scale", _fmt(scale))
    rows = [
        [r.x, r.s, r.s1, r.abs_s2, r.envelope, r.cum_sum] for r in report.rows
    ]
    result = json.loads(report.to_json())
    print(f"rows = {len(report.rows)} sigma2 = {_fmt(report.sigma2)}")
    _emit(args, effective, result, list(report.CSV_COLUMNS), rows)
    return 0


# ----------------------------- phi ----------------------------------------


def _cmd_phi(args) -> int:
    value = phi_pair_sum(args.theta, args.t)
    config = {
        "subcommand": "phi",
        "theta": _fmt(args.theta),
        "t": _fmt(args.t),
    }
    result = {"value_re": value.real, "value_im": value.imag}
    print(f"phi = {_fmt(value.real)} + {_fmt(value.imag)}j")
    _emit(args, config, result,
          ["value_re", "value_im"], [[value.real, value.imag]])
    return 0


# ----------------------------- parser -------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lerchlab",
        description="Numerical laboratory for Lerch zeta-functions",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("eval", help="evaluate L(s; alpha, lambda) or a derivative")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--deriv", type=int, default=0)
    p.add_argument("--precision", type=float, default=1e-10,
                   help="target absolute error bound")
    add_output(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("scan", help="vertical shift scan for a joint target")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--tau-max", dest="tau_max", type=float, default=None)
    p.add_argument("--tau-step", dest="tau_step", type=float, default=None)
    p.add_argument("--refine", default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--trace", default=None, help="write per-tau distance CSV here")
    add_output(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("probe", help="dense-image probe of the derivative vector")
    p.add_argument("--alpha", type=float, default=_DEFAULT_ALPHA)
    p.add_argument("--lambdas", required=True, help="comma-separated lambda list")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--derivs", type=int, required=True, help="orders per component")
    p.add_argument("--targets", required=True, help="comma-separated complex targets")
    p.add_argument("--epsilon", type=float, default=1e-1)
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--t-step", dest="t_step", type=float, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("random", help="evaluate the truncated random series")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=_DEFAULT_ALPHA)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0 / 3.0)
    p.add_argument("--sigma", type=float, default=0.75)
    p.add_argument("--t", type=float, default=0.0)
    add_output(p)
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("bergman", help="windowed sums / divergence diagnostic")
    p.add_argument("--config", required=True)
    add_output(p)
    p.set_defaults(func=_cmd_bergman)

    p = sub.add_parser("phi", help="closed-form geometric phase sum")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_phi)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ComputationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

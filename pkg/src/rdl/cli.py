"""Command-line front end: bounds, tradeoff points, sweeps, simulation.

Exit codes partition failure causes: 0 success, 2 validation error,
3 infeasible distortion target, 4 unwritable output path.

Inputs may come from flags, from a config file (``--config``), or both,
with precedence flags > file > environment (``RDL_SEED``) > defaults.
The config file is either INI-style sections or a JSON object with the
same section/key names; see the README for the exact grammar.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from decimal import Decimal

from .errors import InfeasibleDistortion, InvalidParams, RdlError
from .model import SystemParams, derive
from .sim import Directions, SimConfig, run
from .tradeoff import DistortionRequest, direction_1, direction_2
from .tradeoff import tradeoff as eval_tradeoff

CSV_HEADER = "d,rate_bits,leakage_bits,regime,s"

# Relative offset keeping sweep grids off the infinite-rate endpoint.
SWEEP_EDGE_OFFSET = 1e-6


def _fmt(x: float) -> str:
    """CSV/text number format: 12 significant digits, plain decimal point."""
    return f"{x:.12g}"


def _jnum(x):
    """JSON value for a possibly-absent or infinite number."""
    if x is None:
        return None
    if math.isinf(x):
        return "inf"
    return float(x)


def _fail(message) -> None:
    print(f"rdl: error: {message}", file=sys.stderr)


def _emit(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(f"cannot write output path {out_path!r}: {exc}")
        return 4
    return 0


# ----------------------------------------------------------------------
# Config-file ingestion
# ----------------------------------------------------------------------

def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidParams(f"cannot read config file {path!r}: {exc}") from None
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParams(f"config file {path!r} is not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or not all(isinstance(v, dict) for v in obj.values()):
            raise InvalidParams(f"config file {path!r} must be an object of sections")
        return obj
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise InvalidParams(f"config file {path!r} is not valid INI: {exc}") from None
    return {section: dict(parser.items(section)) for section in parser.sections()}


def _cfg_get(cfg: dict, section: str, key: str):
    return cfg.get(section, {}).get(key)


def _to_float(value, name: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(out):
        raise InvalidParams(f"{name} must be finite, got {value!r}")
    return out


def _to_int(value, name: str) -> int:
    if isinstance(value, bool):
        raise InvalidParams(f"{name} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    try:
        return int(str(value), 10)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be an integer, got {value!r}") from None


def _build_params(args, cfg: dict) -> SystemParams:
    values = {}
    for name in ("alpha", "beta", "sigma1_sq", "sigma2_sq"):
        flag_value = getattr(args, name)
        file_value = _cfg_get(cfg, "system", name)
        value = flag_value if flag_value is not None else file_value
        if value is None:
            flag = "--" + name.replace("_", "-")
            raise InvalidParams(f"missing parameter {name} (set {flag} or [system] {name})")
        values[name] = _to_float(value, name)
    return SystemParams(**values)


def _resolve_distortion(spec, lo: float, hi: float, name: str) -> float:
    """Resolve a distortion request: number, 'min', 'max', or 'frac:t'."""
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return _to_float(spec, name)
    text = str(spec).strip().lower()
    if text == "min":
        return lo
    if text == "max":
        return hi
    if text.startswith("frac:"):
        t = _to_float(text[len("frac:"):], f"{name} fraction")
        if not 0.0 <= t <= 1.0:
            raise InvalidParams(f"{name} fraction must be in [0, 1], got {t}")
        return lo + t * (hi - lo)
    return _to_float(text, name)


def _resolve_request(args, cfg: dict, q) -> DistortionRequest:
    d1_spec = args.d1 if args.d1 is not None else _cfg_get(cfg, "request", "d1")
    d2_spec = args.d2 if args.d2 is not None else _cfg_get(cfg, "request", "d2")
    d1 = _resolve_distortion(d1_spec if d1_spec is not None else "max",
                             q.d_min_1, q.d_max_1, "d1")
    d2 = _resolve_distortion(d2_spec if d2_spec is not None else "max",
                             q.d_min_2, q.d_max_2, "d2")
    return DistortionRequest(d1=d1, d2=d2)


def _resolve_seed(args, cfg: dict) -> int:
    if args.seed is not None:
        return args.seed
    file_seed = _cfg_get(cfg, "sim", "seed")
    if file_seed is not None:
        return _to_int(file_seed, "seed")
    env_seed = os.environ.get("RDL_SEED")
    if env_seed is not None:
        return _to_int(env_seed, "RDL_SEED")
    return 0


# ----------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------

def _bounds_payload(params: SystemParams, q) -> dict:
    return {
        "alpha": params.alpha,
        "beta": params.beta,
        "sigma1_sq": params.sigma1_sq,
        "sigma2_sq": params.sigma2_sq,
        "v1": q.v1,
        "v2": q.v2,
        "e": q.e,
        "det": q.det,
        "k1": q.k1,
        "k2": q.k2,
        "l1": q.l1,
        "l2": q.l2,
        "d_min_1": q.d_min_1,
        "d_max_1": q.d_max_1,
        "d_min_2": q.d_min_2,
        "d_max_2": q.d_max_2,
        "l1_min": q.l1_min,
        "l1_max": q.l1_max,
        "l2_min": q.l2_min,
        "l2_max": q.l2_max,
    }


def cmd_bounds(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    params = _build_params(args, cfg)
    q = derive(params)
    if args.format == "json":
        text = json.dumps(_bounds_payload(params, q), indent=2) + "\n"
    else:
        text = (
            f"distortion state 1: d_min_1={_fmt(q.d_min_1)} d_max_1={_fmt(q.d_max_1)}\n"
            f"distortion state 2: d_min_2={_fmt(q.d_min_2)} d_max_2={_fmt(q.d_max_2)}\n"
            f"leakage state 1 (bits): l1_min={_fmt(q.l1_min)} l1_max={_fmt(q.l1_max)}\n"
            f"leakage state 2 (bits): l2_min={_fmt(q.l2_min)} l2_max={_fmt(q.l2_max)}\n"
        )
    return _emit(text, args.out)


def _point_payload(d1: float, d2: float, point) -> dict:
    return {
        "d1": d1,
        "d2": d2,
        "r1": _jnum(point.r1),
        "r2": _jnum(point.r2),
        "leak1": _jnum(point.leak1),
        "leak2": _jnum(point.leak2),
        "regime1": point.regime1.value,
        "regime2": point.regime2.value,
        "s1": _jnum(point.s1),
        "s2": _jnum(point.s2),
    }


def cmd_tradeoff(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    params = _build_params(args, cfg)
    q = derive(params)
    request = _resolve_request(args, cfg, q)
    point = eval_tradeoff(params, request)
    text = json.dumps(_point_payload(request.d1, request.d2, point), indent=2) + "\n"
    code = _emit(text, args.out)
    if code != 0:
        return code
    infeasible = "infeasible" in (point.regime1.value, point.regime2.value)
    return 3 if infeasible else 0


def _sweep_range(cfg: dict) -> tuple[float, float]:
    raw = _cfg_get(cfg, "sweep", "range")
    if raw is None:
        return 0.0, 1.0
    if isinstance(raw, str):
        parts = raw.split(",")
    elif isinstance(raw, (list, tuple)):
        parts = list(raw)
    else:
        raise InvalidParams(f"[sweep] range must be 'lo,hi', got {raw!r}")
    if len(parts) != 2:
        raise InvalidParams(f"[sweep] range must have two entries, got {raw!r}")
    lo = _to_float(parts[0], "[sweep] range lo")
    hi = _to_float(parts[1], "[sweep] range hi")
    if not (0.0 <= lo < hi <= 1.0):
        raise InvalidParams(f"[sweep] range must satisfy 0 <= lo < hi <= 1, got {raw!r}")
    return lo, hi


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    params = _build_params(args, cfg)
    q = derive(params)

    target = args.target if args.target is not None else _cfg_get(cfg, "sweep", "target")
    if target not in ("d1", "d2"):
        raise InvalidParams(f"sweep target must be 'd1' or 'd2', got {target!r}")
    points = args.points if args.points is not None else _cfg_get(cfg, "sweep", "points")
    points = _to_int(points if points is not None else 50, "points")
    if points < 2:
        raise InvalidParams(f"points must be >= 2, got {points}")

    if target == "d2":
        lo_bound, hi_bound, evaluate = q.d_min_2, q.d_max_2, direction_1
    else:
        lo_bound, hi_bound, evaluate = q.d_min_1, q.d_max_1, direction_2
    width = hi_bound - lo_bound
    if width <= 0.0:
        raise InvalidParams(
            f"feasible {target} interval is degenerate "
            f"([{lo_bound}, {hi_bound}]); nothing to sweep"
        )
    t_lo, t_hi = _sweep_range(cfg)
    if t_lo == 0.0:
        t_lo = SWEEP_EDGE_OFFSET
    lo = lo_bound + t_lo * width
    hi = hi_bound if t_hi == 1.0 else lo_bound + t_hi * width

    rows = []
    for i in range(points):
        d = hi if i == points - 1 else lo + (hi - lo) * i / (points - 1)
        # Evaluate at the emitted 12-digit value so rows round-trip exactly;
        # keep the final zero-rate endpoint on its own side of the branch.
        rounded = float(_fmt(d))
        if d >= hi_bound > rounded:
            quantized = Decimal(_fmt(d))
            rounded = float(quantized + Decimal(1).scaleb(quantized.as_tuple().exponent))
        outcome = evaluate(q, rounded)
        rows.append((rounded, outcome))

    if args.format == "json":
        payload = [
            {
                "d": d,
                "rate_bits": _jnum(outcome.rate),
                "leakage_bits": _jnum(outcome.leakage),
                "regime": outcome.regime.value,
                "s": _jnum(outcome.s) if outcome.s is not None else "inf",
            }
            for d, outcome in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [CSV_HEADER]
        for d, outcome in rows:
            s_text = _fmt(outcome.s) if outcome.s is not None else "inf"
            lines.append(
                f"{_fmt(d)},{_fmt(outcome.rate)},{_fmt(outcome.leakage)},"
                f"{outcome.regime.value},{s_text}"
            )
        text = "\n".join(lines) + "\n"
    return _emit(text, args.out)


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    params = _build_params(args, cfg)
    q = derive(params)
    request = _resolve_request(args, cfg, q)

    n = args.n if args.n is not None else _cfg_get(cfg, "sim", "n")
    n = _to_int(n if n is not None else 100_000, "n")
    seed = _resolve_seed(args, cfg)
    directions = args.directions if args.directions is not None else _cfg_get(cfg, "sim", "directions")
    directions = str(directions) if directions is not None else "both"
    workers = args.workers if args.workers is not None else _cfg_get(cfg, "sim", "workers")
    workers = _to_int(workers if workers is not None else 1, "workers")

    config = SimConfig(params=params, request=request, n=n, seed=seed,
                       directions=directions, workers=workers)
    report = run(config)
    payload = {
        "empirical_d1": report.empirical_d1,
        "empirical_d2": report.empirical_d2,
        "empirical_leak1": report.empirical_leak1,
        "empirical_leak2": report.empirical_leak2,
        "std_err_d1": report.std_err_d1,
        "std_err_d2": report.std_err_d2,
        "target_d1": report.target_d1,
        "target_d2": report.target_d2,
        "n": report.n,
        "seed": report.seed,
        "directions": report.directions.value,
        "analytic": _point_payload(request.d1, request.d2, report.analytic),
    }
    text = json.dumps(payload, indent=2) + "\n"
    return _emit(text, args.out)


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _add_system_flags(sub) -> None:
    sub.add_argument("--alpha", type=float, default=None, help="cross-coupling gain alpha (>= 0)")
    sub.add_argument("--beta", type=float, default=None, help="cross-coupling gain beta (>= 0)")
    sub.add_argument("--sigma1-sq", dest="sigma1_sq", type=float, default=None,
                     help="measurement-noise variance at terminal 1 (> 0)")
    sub.add_argument("--sigma2-sq", dest="sigma2_sq", type=float, default=None,
                     help="measurement-noise variance at terminal 2 (> 0)")
    sub.add_argument("--config", default=None, metavar="PATH",
                     help="INI or JSON config file (flags win over file values)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write output to PATH instead of stdout")


def _add_request_flags(sub) -> None:
    sub.add_argument("--d1", default=None,
                     help="target distortion for state 1: number, 'min', 'max', or 'frac:t'")
    sub.add_argument("--d2", default=None,
                     help="target distortion for state 2: number, 'min', 'max', or 'frac:t'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdl",
        description="Rate-distortion-leakage tradeoff for a two-terminal "
                    "coupled Gaussian measurement model.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    bounds = commands.add_parser("bounds", help="print distortion and leakage bounds")
    _add_system_flags(bounds)
    bounds.add_argument("--format", choices=["text", "json"], default="text")
    bounds.set_defaults(handler=cmd_bounds)

    tradeoff_cmd = commands.add_parser("tradeoff", help="evaluate one operating point")
    _add_system_flags(tradeoff_cmd)
    _add_request_flags(tradeoff_cmd)
    tradeoff_cmd.add_argument("--format", choices=["json"], default="json")
    tradeoff_cmd.set_defaults(handler=cmd_tradeoff)

    sweep = commands.add_parser("sweep", help="emit rate/leakage over a distortion grid")
    _add_system_flags(sweep)
    sweep.add_argument("--target", choices=["d1", "d2"], default=None,
                       help="which distortion to sweep")
    sweep.add_argument("--points", type=int, default=None, help="grid size (>= 2)")
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.set_defaults(handler=cmd_sweep)

    simulate = commands.add_parser("simulate", help="run a seeded Monte Carlo check")
    _add_system_flags(simulate)
    _add_request_flags(simulate)
    simulate.add_argument("--n", "--samples", dest="n", type=int, default=None,
                          help="samples per run (>= 100)")
    simulate.add_argument("--seed", type=int, default=None,
                          help="64-bit master seed (default: RDL_SEED env, then 0)")
    simulate.add_argument("--directions", default=None,
                          choices=[d.value for d in Directions],
                          help="which transmissions happen (default: both)")
    simulate.add_argument("--workers", type=int, default=None,
                          help="threads for chunk evaluation; does not affect results")
    simulate.add_argument("--format", choices=["json"], default="json")
    simulate.set_defaults(handler=cmd_simulate)

    for sub in (bounds, tradeoff_cmd, sweep):
        sub.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except InfeasibleDistortion as exc:
        _fail(exc)
        return 3
    except RdlError as exc:
        _fail(exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())

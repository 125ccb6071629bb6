"""``trirec`` command-line front end.

Every command reads one coefficient family (a JSON file, inline JSON, or
confluent Heun parameters), runs one operation and writes JSON or CSV to
stdout or ``--out``.  Exit status: 0 success, 1 bad configuration,
2 domain error, 3 no witness found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import boundary_diag as bd
from .classification import classify
from .decomposition import Mode, decomposition_check, report_to_json
from .errors import TrirecError, WitnessNotFound
from .heun import HeunParams, gauss_boundary_test, heun_family, hypergeometric_reduction
from .recurrence_core import CoefficientFamily, family_from_dict, family_to_dict
from .scalars import format_scalar, parse_scalar
from .series_eval import eval_series

__all__ = ["main", "build_parser", "RunConfig", "ConfigError"]

COMMANDS = ("classify", "eval", "heun", "scan-boundary", "decompose-check", "witness")
HEUN_FLAGS = ("alpha", "beta", "gamma", "delta", "q")

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_WITNESS = 0, 1, 2, 3


class ConfigError(Exception):
    """Invalid command line; the message names the offending flag."""


@dataclass
class RunConfig:
    command: str
    family: CoefficientFamily | None = None
    heun: HeunParams | None = None
    mode: str = "exact"
    output: str = "json"
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trirec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, family=True):
        if family:
            p.add_argument("--family", metavar="FILE", help="family JSON file")
            p.add_argument("--family-json", metavar="TEXT", help="inline family JSON")
            p.add_argument("--heun", action="store_true", help="use the Heun parameter flags")
        for name in HEUN_FLAGS:
            p.add_argument(f"--{name}", metavar="VALUE")
        p.add_argument("--lambda-root", choices=("0", "1-gamma"), default=None)
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--out", metavar="FILE", help="write here instead of stdout")

    p = sub.add_parser("classify", help="kind, disc radius and boundary verdict")
    common(p)

    for name, helptext in (("eval", "sum the series inside the disc"),
                           ("heun", "confluent Heun series at a point")):
        p = sub.add_parser(name, help=helptext)
        common(p, family=(name == "eval"))
        p.add_argument("--x", default="0")
        p.add_argument("--lam", default=None, help="series exponent (eval only)")
        p.add_argument("--tol", default="1e-12")
        p.add_argument("--M-max", dest="M_max", default="100000")

    p = sub.add_parser("scan-boundary", help="absolute partial sums on the boundary")
    common(p)
    p.add_argument("--side", choices=[s.value for s in bd.Side], default=bd.Side.THM_ONE.value)
    p.add_argument("--checkpoints", default="1000,10000,100000")
    p.add_argument("--x-abs", dest="x_abs", default=None)

    p = sub.add_parser("decompose-check", help="exact regrouping identity of the majorant")
    common(p)
    p.add_argument("--N", default="10")
    p.add_argument("--M", default="12")
    p.add_argument("--x", default="1")
    p.add_argument("--grouping", choices=[m.value for m in Mode], default=Mode.GROUP_BY_B.value)

    p = sub.add_parser("witness", help="validated inequality parameters")
    common(p)
    p.add_argument("--eps", default="1/1000")
    p.add_argument("--scan-limit", dest="scan_limit", default="100000")
    p.add_argument("--K", default="1/2")
    p.add_argument("--eta", default=None, help="also evaluate the lower bound at this eta")
    p.add_argument("--p-max", dest="p_max", default="1")
    p.add_argument("--M", default=None, help="truncation depth of the lower bound")
    return parser


# --- option parsing --------------------------------------------------------


def _int(value, flag, minimum=None) -> int:
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{flag}: expected an integer, got {value!r}") from None
    if minimum is not None and v < minimum:
        raise ConfigError(f"--{flag}: must be >= {minimum}")
    return v


def _scalar(value, flag):
    try:
        return parse_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"--{flag}: cannot parse {value!r} as a number") from None


def _positive_float(value, flag) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{flag}: expected a number, got {value!r}") from None
    if not v > 0:
        raise ConfigError(f"--{flag}: must be > 0")
    return v


def _checkpoints(text) -> list[int]:
    try:
        Ms = [int(s) for s in str(text).split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"--checkpoints: expected comma-separated integers, got {text!r}") from None
    if not Ms or Ms[0] < 0 or any(b <= a for a, b in zip(Ms, Ms[1:])):
        raise ConfigError("--checkpoints: must be nonnegative and strictly increasing")
    return Ms


def _heun_params(args) -> HeunParams:
    values = {}
    for name in HEUN_FLAGS:
        raw = getattr(args, name)
        if raw is not None:
            values[name] = _scalar(raw, name)
    try:
        return HeunParams(**values, lambda_root=args.lambda_root or "0")
    except ValueError as exc:
        raise ConfigError(f"--lambda-root: {exc}") from None


def _family(args) -> tuple[CoefficientFamily, HeunParams | None]:
    if args.command == "heun":
        p = _heun_params(args)
        return heun_family(p), p
    heun_given = args.heun or any(getattr(args, n) is not None for n in HEUN_FLAGS)
    sources = [name for name, present in (("--family", args.family is not None),
                                          ("--family-json", args.family_json is not None),
                                          ("--heun", heun_given)) if present]
    if len(sources) != 1:
        got = ", ".join(sources) if sources else "none"
        raise ConfigError(f"--family/--family-json/--heun: exactly one family source required (got {got})")
    if heun_given:
        p = _heun_params(args)
        return heun_family(p), p
    flag = sources[0]
    try:
        if args.family is not None:
            text = Path(args.family).read_text()
        else:
            text = args.family_json
        return family_from_dict(json.loads(text)), None
    except OSError as exc:
        raise ConfigError(f"{flag}: cannot read {args.family!r}: {exc.strerror}") from None
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise ConfigError(f"{flag}: invalid family document: {exc}") from None


# --- commands --------------------------------------------------------------


def _kv_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(doc):
        v = doc[k]
        w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def _cmd_classify(cfg: RunConfig) -> str:
    doc = classify(cfg.family).to_dict()
    return _kv_csv(doc) if cfg.output == "csv" else _dump(doc)


def _eval_doc(cfg: RunConfig, lam) -> tuple[dict, object]:
    o = cfg.options
    run = eval_series(cfg.family, lam=lam, x=o["x"], tol=o["tol"], M_max=o["M_max"])
    doc = {
        "x": format_scalar(o["x"]),
        "lambda": format_scalar(lam),
        "value": format_scalar(run.value),
        "truncation_error_bound": repr(run.truncation_error_bound),
        "terms": run.M + 1,
        "converged": run.converged,
    }
    return doc, run


def _cmd_eval(cfg: RunConfig) -> str:
    lam = cfg.options["lam"]
    if lam is None:
        lam = cfg.heun.lam if cfg.heun is not None else 0
    doc, run = _eval_doc(cfg, lam)
    return run.to_csv() if cfg.output == "csv" else _dump(doc)


def _cmd_heun(cfg: RunConfig) -> str:
    p = cfg.heun
    doc, run = _eval_doc(cfg, p.lam)
    doc["family"] = family_to_dict(cfg.family)
    doc["class"] = classify(cfg.family).to_dict()
    if p.beta == 0:
        a, b, c = hypergeometric_reduction(p)
        doc["hypergeometric"] = {
            "a": format_scalar(a), "b": format_scalar(b), "c": format_scalar(c),
            "gauss_boundary": gauss_boundary_test(a, b, c).value,
        }
    return run.to_csv() if cfg.output == "csv" else _dump(doc)


def _cmd_scan(cfg: RunConfig) -> str:
    o = cfg.options
    scan = bd.boundary_scan(cfg.family, o["side"], o["checkpoints"], o["x_abs"])
    return scan.to_csv() if cfg.output == "csv" else scan.to_json() + "\n"


def _cmd_decompose(cfg: RunConfig) -> str:
    o = cfg.options
    report = decomposition_check(cfg.family, o["N"], o["M"], o["x"], o["grouping"],
                                 exact=(cfg.mode == "exact"))
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "lhs", "rhs", "difference"])
        for i, (a, b) in enumerate(zip(report["lhs_coeffs"], report["rhs_coeffs"])):
            w.writerow([i, format_scalar(a), format_scalar(b), format_scalar(a - b)])
        return buf.getvalue()
    return report_to_json(report) + "\n"


def _cmd_witness(cfg: RunConfig) -> str:
    o = cfg.options
    w = bd.find_witness(cfg.family, o["eps"], o["scan_limit"], o["K"])
    if cfg.output == "csv":
        return w.to_csv()
    doc = w.to_dict()
    if o["eta"] is not None:
        M = o["M"] if o["M"] is not None else w.scan_limit
        doc["lower_bound"] = repr(bd.lower_bound_witness(w, o["eta"], o["p_max"], M))
        doc["lower_bound_args"] = {"eta": repr(o["eta"]), "p_max": o["p_max"], "M": M}
    return _dump(doc)


_DISPATCH = {
    "classify": _cmd_classify,
    "eval": _cmd_eval,
    "heun": _cmd_heun,
    "scan-boundary": _cmd_scan,
    "decompose-check": _cmd_decompose,
    "witness": _cmd_witness,
}


def _options(args) -> dict:
    c = args.command
    o = {}
    if c in ("eval", "heun"):
        o["x"] = _scalar(args.x, "x")
        o["lam"] = _scalar(args.lam, "lam") if args.lam is not None else None
        o["tol"] = _positive_float(args.tol, "tol")
        o["M_max"] = _int(args.M_max, "M-max", 1)
    elif c == "scan-boundary":
        o["side"] = args.side
        o["checkpoints"] = _checkpoints(args.checkpoints)
        o["x_abs"] = _positive_float(args.x_abs, "x-abs") if args.x_abs is not None else None
    elif c == "decompose-check":
        o["N"] = _int(args.N, "N", 1)
        o["M"] = _int(args.M, "M", 0)
        o["x"] = _scalar(args.x, "x")
        o["grouping"] = args.grouping
    elif c == "witness":
        o["eps"] = _scalar(args.eps, "eps")
        if not 0 < o["eps"] < 1:
            raise ConfigError("--eps: must lie in (0, 1)")
        o["K"] = _scalar(args.K, "K")
        if not 0 < o["K"] < 1:
            raise ConfigError("--K: must lie in (0, 1)")
        o["scan_limit"] = _int(args.scan_limit, "scan-limit", 2)
        o["eta"] = _positive_float(args.eta, "eta") if args.eta is not None else None
        o["p_max"] = _int(args.p_max, "p-max", 0)
        o["M"] = _int(args.M, "M", 0) if args.M is not None else None
    return o


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    options = _options(args)
    family, heun = _family(args)
    return RunConfig(args.command, family, heun, args.mode, args.output, options)


def run(cfg: RunConfig) -> str:
    return _DISPATCH[cfg.command](cfg)


def main(argv=None) -> int:
    out_path = None
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        cfg = parse_config(argv)
        out_path = build_parser().parse_known_args(argv)[0].out
        text = run(cfg)
    except ConfigError as exc:
        print(f"trirec: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WitnessNotFound as exc:
        print(f"trirec: WitnessNotFound: {exc}", file=sys.stderr)
        return EXIT_WITNESS
    except TrirecError as exc:
        print(f"trirec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    blab list
    blab calibrate --alphas 0,1 [--out FILE]
    blab run EXPERIMENT [--config FILE] [--out FILE] [--seed N] [--format csv|tsv]

Exit codes: 0 pass, 1 fail, 2 configuration, calibration or convergence error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields

from .halfplane import DomainError
from .harness import REGISTRY, SweepSpec, default_cfg
from .kernels import CalibrationError, calibrate_c_alpha, set_calibration
from .quadrature import ConvergenceError, QuadConfig

CALIBRATION_FILE = "blab_calibration.txt"

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# key=value files


def read_kv(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def write_kv(path: str, kv: dict[str, str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for k in sorted(kv):
            fh.write(f"{k}={kv[k]}\n")


def _floats(v: str) -> tuple[float, ...]:
    return tuple(float(x) for x in v.split(",") if x.strip())


def _complexes(v: str) -> tuple[complex, ...]:
    return tuple(complex(x.strip().replace(" ", "")) for x in v.split(",") if x.strip())


def _bool(v: str) -> bool:
    if v.lower() in ("1", "true", "yes"):
        return True
    if v.lower() in ("0", "false", "no"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


_SWEEP_PARSERS = {
    "lambda_grid": _floats, "R_grid": _floats, "w_grid": _complexes, "k_list": _floats,
    "l_list": _floats, "j_list": _floats, "mirror": _bool, "samples": int,
    "threshold": float, "seed": int,
}
_QUAD_PARSERS = {
    "rel_tol": float, "abs_tol": float, "max_depth": int, "truncation_radius": float,
    "boundary_floor": float,
}
assert set(_SWEEP_PARSERS) == {f.name for f in fields(SweepSpec)}


def parse_config(kv: dict[str, str]) -> tuple[dict, dict]:
    """Split overrides into (sweep, quad) dicts, type-checking every value."""
    sweep, quad = {}, {}
    for k, v in kv.items():
        if k in _SWEEP_PARSERS:
            target, parse = sweep, _SWEEP_PARSERS[k]
        elif k in _QUAD_PARSERS:
            target, parse = quad, _QUAD_PARSERS[k]
        else:
            raise ConfigError(f"unknown config key {k!r}")
        try:
            target[k] = parse(v)
        except ValueError as e:
            raise ConfigError(f"bad value for {k}: {v!r} ({e})") from None
    return sweep, quad


def load_calibration(path: str) -> int:
    """Install constants from a calibration file; returns how many were read."""
    kv = read_kv(path)
    n = 0
    for k, v in kv.items():
        if k.startswith("c_alpha[") and k.endswith("]"):
            set_calibration(float(k[8:-1]), complex(v))
            n += 1
    return n


def _fmt_complex(c: complex) -> str:
    return f"({c.real:.17g}{c.imag:+.17g}j)"


# --------------------------------------------------------------------------
# commands


def cmd_list(out=None) -> int:
    out = out or sys.stdout
    for exp in REGISTRY.values():
        print(f"{exp.id} - {exp.anchor}", file=out)
    return EXIT_PASS


def cmd_calibrate(alphas, path: str, out=None) -> int:
    out = out or sys.stdout
    kv = read_kv(path) if os.path.exists(path) else {}
    for a in alphas:
        c = calibrate_c_alpha(a, QuadConfig(rel_tol=1e-7, tail_decay=6.0))
        kv[f"c_alpha[{a:g}]"] = _fmt_complex(c)
        print(f"alpha={a:g} c_alpha={_fmt_complex(c)} |c_alpha| pi={abs(c) * 3.141592653589793:.9f}",
              file=out)
    write_kv(path, kv)
    return EXIT_PASS


def cmd_run(exp_id: str, config: str | None, out_path: str | None, seed: int | None,
            fmt: str = "csv", calibration: str | None = None, out=None) -> int:
    out = out or sys.stdout
    if exp_id not in REGISTRY:
        raise ConfigError(f"unknown experiment {exp_id!r}; see 'blab list'")
    sweep_kw, quad_kw = parse_config(read_kv(config)) if config else ({}, {})
    if seed is not None:
        sweep_kw["seed"] = seed
    sweep = SweepSpec(**sweep_kw)
    cfg = default_cfg(exp_id, **quad_kw)
    if calibration and os.path.exists(calibration):
        load_calibration(calibration)
    report = REGISTRY[exp_id].run(sweep, cfg)
    text = report.to_csv("\t" if fmt == "tsv" else ",")
    path = out_path or f"{exp_id}.{fmt}"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(report.summary(), file=out)
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blab", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    sub.add_parser("list", help="list experiments")
    c = sub.add_parser("calibrate", help="compute kernel constants c_alpha")
    c.add_argument("--alphas", default="0", help="comma list, e.g. 0,1")
    c.add_argument("--out", default=CALIBRATION_FILE)
    r = sub.add_parser("run", help="run one experiment")
    r.add_argument("experiment")
    r.add_argument("--config", help="flat key=value file of sweep/quadrature overrides")
    r.add_argument("--out", help="CSV path (default: EXPERIMENT.csv)")
    r.add_argument("--seed", type=int)
    r.add_argument("--format", choices=("csv", "tsv"), default="csv")
    r.add_argument("--calibration", default=CALIBRATION_FILE,
                   help="constants file written by 'calibrate' (used if present)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "list":
            return cmd_list()
        if args.cmd == "calibrate":
            return cmd_calibrate(_floats(args.alphas), args.out)
        return cmd_run(args.experiment, args.config, args.out, args.seed, args.format,
                       args.calibration)
    except (ConfigError, DomainError, ConvergenceError, CalibrationError, ValueError,
            OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

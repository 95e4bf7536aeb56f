"""Batch command line driver: JSON in, JSON/CSV out, deterministic output.

Subcommands::

    lpkit norm zn|z|sigma|isometry   --p P --in FILE [--poly FILE] ...
    lpkit config saturate|leq|sup|inf|classify|equiv --in FILE [--in FILE] ...
    lpkit isom decompose|periods|trivialize|sigma    --in FILE ...
    lpkit sweep --kind zn|z --in FILE (--p-grid A:B:S | --n-grid N1,N2,...) ...

Exit codes: 0 success (wide brackets included), 2 schema violation or bad
grid, 3 precondition violation, 4 empty lattice meet.  All numbers are
serialized with 17 significant digits; repeated runs with the same
configuration (including seed) produce byte-identical output.  Timing
columns in sweeps are zero unless --timings is passed, keeping the default
output reproducible.  LPKIT_THREADS caps internal parallelism (execution is
sequential, so any cap is honored) and is echoed in the audit block.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .cyclic import CyclicElement, fpzn_norm
from .lamperti import (
    AmbiguousExponentError,
    AtomicSpace,
    NotSpatialError,
    SpatialIsometry,
    decompose,
    fpv_norm,
    gauge_trivialize,
    periods,
    spectral_configuration_of,
)
from .pnorm import NormEstimate, as_exponent
from .specconf import (
    EmptyMeetError,
    SpectralConfiguration,
    canonically_equivalent,
    classify,
    fpsigma_norm,
    lattice_inf,
    lattice_sup,
    leq,
    saturate,
)
from .zline import LaurentPolynomial, cyclic_lower, fpz_norm

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3
EXIT_EMPTY_MEET = 4


class SchemaError(ValueError):
    pass


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite value in output")
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, 17 significant digits for floats."""
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in sorted(obj.items()))
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if obj is None:
        return "null"
    return json.dumps(obj)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot parse {path}: {exc}") from exc


def _parse(loader, obj, what: str):
    try:
        return loader(obj)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise SchemaError(f"bad {what}: {exc}") from exc


def _threads_cap() -> int:
    raw = os.environ.get("LPKIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _audit(args: argparse.Namespace, **extra) -> dict:
    out = {
        "version": __version__,
        "threads_cap": _threads_cap(),
    }
    for key in ("command", "kind", "op", "p", "tol", "n_max", "resolution",
                "seed", "mode", "format"):
        if hasattr(args, key) and getattr(args, key) is not None:
            out[key] = getattr(args, key)
    for key in ("inputs", "poly"):
        val = getattr(args, key, None)
        if val:
            out[key] = val
    out.update(extra)
    return out


def _require_seed(args) -> int:
    if args.seed is None:
        raise SchemaError("--seed is required when a randomized path can run")
    return args.seed


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _estimate_payload(est: NormEstimate) -> dict:
    return est.to_json()


def _cmd_norm(args) -> int:
    p = args.p
    as_exponent(p)  # p < 1 is a precondition violation, not a schema problem
    randomized = p not in (1.0, 2.0)
    seed = args.seed if not randomized else _require_seed(args)
    seed = 0 if seed is None else seed

    if args.kind == "zn":
        x = _parse(CyclicElement.from_json, _load_json(args.inputs[0]), "cyclic element")
        est = fpzn_norm(x, p, seed=seed)
        payload = _estimate_payload(est)
    elif args.kind == "z":
        f = _parse(LaurentPolynomial.from_json, _load_json(args.inputs[0]), "polynomial")
        est = fpz_norm(f, p, tol=args.tol, n_max=args.n_max, seed=seed)
        payload = _estimate_payload(est)
    elif args.kind == "sigma":
        if not args.poly:
            raise SchemaError("norm sigma needs --poly")
        config = _parse(SpectralConfiguration.from_json, _load_json(args.inputs[0]),
                        "configuration")
        f = _parse(LaurentPolynomial.from_json, _load_json(args.poly), "polynomial")
        est = fpsigma_norm(f, config, p, resolution=args.resolution,
                           n_max=args.n_max, seed=seed)
        payload = _estimate_payload(est)
    else:  # isometry
        if not args.poly:
            raise SchemaError("norm isometry needs --poly")
        v = _parse(SpatialIsometry.from_json, _load_json(args.inputs[0]), "isometry")
        f = _parse(LaurentPolynomial.from_json, _load_json(args.poly), "polynomial")
        mode = args.mode or "both"
        result = fpv_norm(f, v, p, mode, seed=seed, n_max=args.n_max)
        if mode == "both":
            direct, via = result
            slack = 1e-9 * max(1.0, direct.upper, via.upper)  # roundoff guard
            payload = {
                "direct": _estimate_payload(direct),
                "via_sigma": _estimate_payload(via),
                "overlap": direct.overlaps(via, slack),
            }
        else:
            payload = _estimate_payload(result)

    if args.format == "csv":
        if "direct" in payload:
            header = "direct_lower,direct_upper,via_lower,via_upper,overlap"
            row = ",".join([
                _fmt_float(payload["direct"]["lower"]),
                _fmt_float(payload["direct"]["upper"]),
                _fmt_float(payload["via_sigma"]["lower"]),
                _fmt_float(payload["via_sigma"]["upper"]),
                "true" if payload["overlap"] else "false",
            ])
        else:
            header = "lower,upper,method"
            row = ",".join([_fmt_float(payload["lower"]), _fmt_float(payload["upper"]),
                            payload["method"]])
        _emit(args, header + "\n" + row + "\n")
        return EXIT_OK

    payload["config"] = _audit(args)
    _emit(args, dumps(payload) + "\n")
    return EXIT_OK


def _cmd_config(args) -> int:
    configs = [
        _parse(SpectralConfiguration.from_json, _load_json(path), "configuration")
        for path in args.inputs
    ]
    op = args.op
    if op in ("leq", "equiv") and len(configs) != 2:
        raise SchemaError(f"config {op} needs exactly two --in files")
    if op in ("saturate", "classify") and len(configs) != 1:
        raise SchemaError(f"config {op} needs exactly one --in file")

    if args.format == "csv":
        raise SchemaError("config subcommands emit JSON only")

    if op == "saturate":
        payload = {"result": saturate(configs[0]).to_json()}
    elif op == "leq":
        payload = {
            "result": leq(configs[0], configs[1]),
            "saturated_inputs": configs[0].is_saturated and configs[1].is_saturated,
        }
    elif op == "sup":
        payload = {"result": lattice_sup(configs).to_json()}
    elif op == "inf":
        payload = {"result": lattice_inf(configs).to_json()}
    elif op == "classify":
        if args.p is None:
            raise SchemaError("config classify needs --p")
        payload = {"result": classify(configs[0], args.p).to_json()}
    else:  # equiv
        payload = {"result": canonically_equivalent(configs[0], configs[1])}

    payload["config"] = _audit(args)
    _emit(args, dumps(payload) + "\n")
    return EXIT_OK


def _cmd_isom(args) -> int:
    obj = _load_json(args.inputs[0])
    if args.op == "decompose":
        if args.p is None:
            raise SchemaError("isom decompose needs --p")
        space = _parse(lambda o: AtomicSpace(np.array(o["weights"], dtype=float)), obj, "space")
        matrix = _parse(
            lambda o: np.array([[complex(re, im) for re, im in row] for row in o["matrix"]]),
            obj, "matrix")
        v = decompose(matrix, space, args.p, tol=args.tol)
        payload = {"result": v.to_json()}
    else:
        v = _parse(SpatialIsometry.from_json, obj, "isometry")
        if args.op == "periods":
            payload = {"result": periods(v).to_json()}
        elif args.op == "trivialize":
            g, vp = gauge_trivialize(v)
            payload = {"result": {"gauge": [[z.real, z.imag] for z in g],
                                  "isometry": vp.to_json()}}
        else:  # sigma
            payload = {"result": spectral_configuration_of(v).to_json()}
    payload["config"] = _audit(args)
    _emit(args, dumps(payload) + "\n")
    return EXIT_OK


def _parse_p_grid(spec: str) -> list[float]:
    try:
        start, stop, step = (float(tok) for tok in spec.split(":"))
    except ValueError as exc:
        raise SchemaError(f"bad --p-grid {spec!r}, expected START:STOP:STEP") from exc
    if step <= 0 or stop < start:
        raise SchemaError("empty p grid")
    out = []
    k = 0
    while start + k * step <= stop + 1e-12:
        out.append(round(start + k * step, 12))
        k += 1
    if not out:
        raise SchemaError("empty p grid")
    return out


def _parse_n_grid(spec: str) -> list[int]:
    try:
        out = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise SchemaError(f"bad --n-grid {spec!r}") from exc
    if not out or any(n < 1 for n in out):
        raise SchemaError("empty or invalid n grid")
    return out


def _cmd_sweep(args) -> int:
    seed = _require_seed(args)
    if bool(args.p_grid) == bool(args.n_grid):
        raise SchemaError("declare exactly one of --p-grid or --n-grid")
    if args.p is not None:
        as_exponent(args.p)
    if args.p_grid:
        for p in _parse_p_grid(args.p_grid):
            as_exponent(p)

    rows = []
    if args.kind == "zn":
        x = _parse(CyclicElement.from_json, _load_json(args.inputs[0]), "cyclic element")
        if args.n_grid:
            raise SchemaError("sweep zn varies p; use --p-grid")
        for p in _parse_p_grid(args.p_grid):
            t0 = time.perf_counter()
            est = fpzn_norm(x, p, seed=seed)
            ms = (time.perf_counter() - t0) * 1000.0
            rows.append((p, x.n, est.lower, est.upper, ms if args.timings else 0.0))
    else:
        f = _parse(LaurentPolynomial.from_json, _load_json(args.inputs[0]), "polynomial")
        if args.p_grid:
            for p in _parse_p_grid(args.p_grid):
                t0 = time.perf_counter()
                est = fpz_norm(f, p, tol=args.tol, n_max=args.n_max, seed=seed)
                ms = (time.perf_counter() - t0) * 1000.0
                rows.append((p, args.n_max, est.lower, est.upper, ms if args.timings else 0.0))
        else:
            if args.p is None:
                raise SchemaError("sweep z over --n-grid needs --p")
            full = fpz_norm(f, args.p, tol=args.tol, n_max=max(_parse_n_grid(args.n_grid)),
                            seed=seed)
            for n in _parse_n_grid(args.n_grid):
                t0 = time.perf_counter()
                low = cyclic_lower(f, n, args.p)
                ms = (time.perf_counter() - t0) * 1000.0
                rows.append((args.p, n, low, full.upper, ms if args.timings else 0.0))

    lines = ["p,n,lower,upper,runtime_ms"]
    for p, n, lo, hi, ms in rows:
        lines.append(
            f"{_fmt_float(p)},{n},{_fmt_float(lo)},{_fmt_float(hi)},{_fmt_float(ms)}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpkit", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="FILE", help="input JSON file (repeatable)")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        if seed:
            sp.add_argument("--seed", type=int, default=None)

    p_norm = sub.add_parser("norm", help="norm brackets")
    p_norm.add_argument("kind", choices=["zn", "z", "sigma", "isometry"])
    p_norm.add_argument("--p", type=float, required=True)
    p_norm.add_argument("--tol", type=float, default=1e-6)
    p_norm.add_argument("--n-max", dest="n_max", type=int, default=512)
    p_norm.add_argument("--resolution", type=float, default=1.0 / 2048)
    p_norm.add_argument("--poly", help="Laurent polynomial JSON (sigma/isometry)")
    p_norm.add_argument("--mode", choices=["direct", "via-sigma", "both"], default=None)
    common(p_norm)
    p_norm.set_defaults(func=_cmd_norm)

    p_cfg = sub.add_parser("config", help="spectral configuration algebra")
    p_cfg.add_argument("op", choices=["saturate", "leq", "sup", "inf", "classify", "equiv"])
    p_cfg.add_argument("--p", type=float, default=None)
    common(p_cfg, seed=False)
    p_cfg.set_defaults(func=_cmd_config)

    p_isom = sub.add_parser("isom", help="isometry analysis")
    p_isom.add_argument("op", choices=["decompose", "periods", "trivialize", "sigma"])
    p_isom.add_argument("--p", type=float, default=None)
    p_isom.add_argument("--tol", type=float, default=1e-9)
    common(p_isom, seed=False)
    p_isom.set_defaults(func=_cmd_isom)

    p_sweep = sub.add_parser("sweep", help="grid sweeps to CSV")
    p_sweep.add_argument("--kind", choices=["zn", "z"], required=True)
    p_sweep.add_argument("--p", type=float, default=None)
    p_sweep.add_argument("--p-grid", dest="p_grid", default=None, metavar="START:STOP:STEP")
    p_sweep.add_argument("--n-grid", dest="n_grid", default=None, metavar="N1,N2,...")
    p_sweep.add_argument("--tol", type=float, default=1e-6)
    p_sweep.add_argument("--n-max", dest="n_max", type=int, default=512)
    p_sweep.add_argument("--timings", action="store_true",
                         help="measure runtimes (breaks byte-reproducibility)")
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except EmptyMeetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_MEET
    except (NotSpatialError, AmbiguousExponentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

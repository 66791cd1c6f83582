"""Command-line surface: synthesize, verify, sample, catalog.

Exit codes are stable so shell pipelines can gate on them:

    0   success, all requested checks within bounds
    2   argument, file or format errors (including unknown gates)
    3   a matrix that must be unitary is not
    4   a verification bound was exceeded
    5   the loop does not close (open-loop controller document)
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .catalog import GateCatalogEntry, catalog_get, catalog_names
from .config import DEFAULT_TOL, Tolerances
from .document import (
    canonical_dumps,
    controller_document,
    decode_matrix,
    document_controller,
    encode_matrix,
    loads,
)
from .errors import (
    DimensionError,
    HolosynthError,
    NonUnitaryHolonomy,
    NonUnitaryInput,
    OpenLoop,
    ParamShapeMismatch,
    UnknownGate,
)
from .extremal import curve_samples, evaluate_controller
from .synth import SynthesisParams, synthesize
from .verify import cross_validate, sample_loop

HOLONOMY_BOUND = 1e-10
CLOSURE_BOUND = 1e-10
ORACLE_BOUND = 2e-3
DEFAULT_SCHEDULE = (10**3, 10**4, 10**5)


def _csv_floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip() != "")

def _csv_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holosynth",
        description="Synthesize and verify optimal holonomic gate controllers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    syn = sub.add_parser("synthesize", help="build a controller for a gate")
    _gate_source(syn)
    _synth_options(syn)
    syn.add_argument("--oracle", action="store_true",
                     help="also run the numeric transport oracle (slow)")
    syn.add_argument("--steps", type=_csv_ints, default=None,
                     metavar="N[,N...]", help="oracle refinement schedule")
    syn.add_argument("--out", metavar="FILE", help="write document here instead of stdout")
    syn.set_defaults(func=cmd_synthesize)

    ver = sub.add_parser("verify", help="oracle-check a controller document")
    ver.add_argument("--doc", required=True, metavar="FILE",
                     help="controller document to verify")
    ver.add_argument("--steps", type=_csv_ints, default=None,
                     metavar="N[,N...]", help="oracle refinement schedule")
    ver.add_argument("--bound", type=float, default=None,
                     help="max allowed finest-grid oracle deviation")
    ver.add_argument("--tolerance", type=float, default=None,
                     help="override the validation tolerance")
    ver.add_argument("--config", metavar="FILE",
                     help="JSON file of default flag values")
    ver.add_argument("--out", metavar="FILE", help="write report here instead of stdout")
    ver.set_defaults(func=cmd_verify)

    smp = sub.add_parser("sample", help="emit the curve of a controller as CSV")
    _gate_source(smp)
    _synth_options(smp)
    smp.add_argument("--doc", metavar="FILE", help="sample an existing document")
    smp.add_argument("--steps", type=int, default=None, metavar="N",
                     help="number of uniform time steps (default 100)")
    smp.add_argument("--out", metavar="FILE", help="write CSV here instead of stdout")
    smp.set_defaults(func=cmd_sample)

    cat = sub.add_parser("catalog", help="inspect the named gate catalog")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    lst = cat_sub.add_parser("list", help="list known gate names")
    lst.set_defaults(func=cmd_catalog_list)
    shw = cat_sub.add_parser("show", help="print one catalog entry")
    shw.add_argument("name")
    shw.add_argument("--seed", type=int, default=0)
    shw.set_defaults(func=cmd_catalog_show)

    return parser


def _gate_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gate", metavar="NAME", help="catalog gate name")
    p.add_argument("--matrix", metavar="FILE",
                   help="JSON matrix file {rows, cols, data: [[re, im], ...]}")


def _synth_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--phases", type=_csv_floats, default=None, metavar="CSV",
                   help="per-channel free phases (radians)")
    p.add_argument("--windings", type=_csv_ints, default=None, metavar="CSV",
                   help="per-channel winding numbers (>= 1)")
    p.add_argument("--paper-order", action="store_true",
                   help="reorder channels into the gate's tabulated layout")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for random-<k> catalog gates (default 0)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the validation tolerance")
    p.add_argument("--config", metavar="FILE",
                   help="JSON file of default flag values")


_CONFIG_KEYS = ("phases", "windings", "steps", "bound", "seed", "tolerance")


def _apply_config(args) -> None:
    """Fill unset flags from the optional JSON config file.

    Explicit command-line flags always win; the config only supplies
    values for flags the user left out.
    """
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path, "r", encoding="utf-8") as fh:
        config = loads(fh.read())
    unknown = set(config) - set(_CONFIG_KEYS)
    if unknown:
        raise ParamShapeMismatch(
            f"unknown config keys: {', '.join(sorted(unknown))}"
        )
    for key in _CONFIG_KEYS:
        if key in config and getattr(args, key, None) is None and hasattr(args, key):
            value = config[key]
            if key in ("phases",):
                value = tuple(float(x) for x in value)
            elif key in ("windings",):
                value = tuple(int(x) for x in value)
            elif key == "steps":
                if isinstance(value, list):
                    value = tuple(int(x) for x in value)
                else:
                    value = int(value)
            elif key == "bound" or key == "tolerance":
                value = float(value)
            elif key == "seed":
                value = int(value)
            setattr(args, key, value)


def _tol(args) -> Tolerances:
    if getattr(args, "tolerance", None) is not None:
        return DEFAULT_TOL.with_validation(args.tolerance)
    return DEFAULT_TOL


def _load_gate(args) -> tuple[np.ndarray, str | None, GateCatalogEntry | None]:
    if args.gate and args.matrix:
        raise UnknownGate("give either --gate or --matrix, not both")
    if args.gate:
        seed = args.seed if args.seed is not None else 0
        entry = catalog_get(args.gate, seed=seed)
        return entry.matrix, entry.name, entry
    if args.matrix:
        with open(args.matrix, "r", encoding="utf-8") as fh:
            matrix = decode_matrix(loads(fh.read()))
        return matrix, None, None
    raise UnknownGate("one of --gate or --matrix is required")


def _params(args, k: int) -> SynthesisParams:
    phases = args.phases if args.phases is not None else (0.0,) * k
    windings = args.windings if args.windings is not None else (1,) * k
    if len(phases) != k or len(windings) != k:
        raise ParamShapeMismatch(
            f"gate has {k} channels but got {len(phases)} phases "
            f"and {len(windings)} windings"
        )
    return SynthesisParams(phases=phases, windings=windings)


def _run_synthesis(args):
    gate, gate_name, entry = _load_gate(args)
    tol = _tol(args)
    params = _params(args, gate.shape[0])
    order = signs = None
    if args.paper_order and entry is not None:
        order = entry.paper_order
        signs = entry.paper_signs
    result = synthesize(gate, params, channel_order=order,
                        channel_signs=signs, tol=tol)
    return result, params, gate_name, tol


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_synthesize(args) -> int:
    _apply_config(args)
    result, params, gate_name, tol = _run_synthesis(args)
    report = evaluate_controller(result.controller, result.gate, tol=tol)
    oracle = None
    if args.oracle:
        schedule = _as_schedule(args.steps, DEFAULT_SCHEDULE)
        oracle = cross_validate(result.controller, result.gate,
                                steps_schedule=schedule, tol=tol)
    doc = controller_document(
        result, report, params,
        gate_name=gate_name,
        paper_order=bool(args.paper_order),
        oracle=oracle,
    )
    _emit(canonical_dumps(doc), args.out)
    ok = (report.holonomy_error < HOLONOMY_BOUND
          and report.loop_defect < CLOSURE_BOUND)
    if oracle is not None:
        ok = ok and oracle.deviation < ORACLE_BOUND
    if not ok:
        print(
            f"verification failed: holonomy_error={report.holonomy_error:.3e} "
            f"closure_defect={report.loop_defect:.3e}",
            file=sys.stderr,
        )
        return 4
    return 0


def _as_schedule(steps, fallback) -> tuple[int, ...]:
    if steps is None:
        return fallback
    if isinstance(steps, int):
        return (steps,)
    return tuple(steps)


def cmd_verify(args) -> int:
    _apply_config(args)
    with open(args.doc, "r", encoding="utf-8") as fh:
        doc = loads(fh.read())
    ctrl, gate = document_controller(doc)
    tol = _tol(args)
    schedule = _as_schedule(args.steps, DEFAULT_SCHEDULE)
    bound = args.bound if args.bound is not None else ORACLE_BOUND
    oracle = cross_validate(ctrl, gate, steps_schedule=schedule, tol=tol)
    slope = oracle.convergence_order_estimate
    report = {
        "deviation": float(oracle.deviation),
        "steps": int(oracle.steps),
        "slope": None if np.isnan(slope) else float(slope),
        "anomalous": bool(oracle.anomalous),
        "schedule": [int(s) for s in oracle.schedule],
        "deviations": [float(d) for d in oracle.deviations],
        "target_error": float(oracle.target_error),
        "gamma_numeric": encode_matrix(oracle.gamma_numeric),
        "gamma_analytic": encode_matrix(oracle.gamma_analytic),
    }
    _emit(canonical_dumps(report), args.out)
    if oracle.deviation >= bound:
        print(
            f"oracle deviation {oracle.deviation:.3e} >= bound {bound:.3e}",
            file=sys.stderr,
        )
        return 4
    return 0


def cmd_sample(args) -> int:
    _apply_config(args)
    if args.doc:
        with open(args.doc, "r", encoding="utf-8") as fh:
            ctrl, _ = document_controller(loads(fh.read()))
    else:
        result, _, _, _ = _run_synthesis(args)
        ctrl = result.controller
    steps = args.steps if args.steps is not None else 100
    if not isinstance(steps, int):
        raise ParamShapeMismatch("sample takes a single integer step count")
    if steps < 2:
        raise ParamShapeMismatch("--steps must be >= 2")
    loop = sample_loop(ctrl, steps, _tol(args))
    frames = curve_samples(ctrl, loop.times)
    n, k = ctrl.n, ctrl.k
    header = ["t"]
    for i in range(n):
        for j in range(k):
            header += [f"v_re_{i}_{j}", f"v_im_{i}_{j}"]
    for i in range(n):
        for j in range(n):
            header += [f"p_re_{i}_{j}", f"p_im_{i}_{j}"]
    bloch = k == 1 and n == 2
    if bloch:
        header += ["r1", "r2", "r3"]
    lines = [",".join(header)]
    for idx, t in enumerate(loop.times):
        row = [repr(float(t))]
        for z in frames[idx].reshape(-1):
            row += [repr(float(z.real)), repr(float(z.imag))]
        p = loop.projectors[idx]
        for z in p.reshape(-1):
            row += [repr(float(z.real)), repr(float(z.imag))]
        if bloch:
            row += [
                repr(float(2.0 * p[0, 1].real)),
                repr(float(-2.0 * p[0, 1].imag)),
                repr(float((p[0, 0] - p[1, 1]).real)),
            ]
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_catalog_list(args) -> int:
    for name in catalog_names():
        print(name)
    return 0


def cmd_catalog_show(args) -> int:
    entry = catalog_get(args.name, seed=args.seed)
    doc = {
        "name": entry.name,
        "dim": entry.dim,
        "matrix": encode_matrix(entry.matrix),
        "paper_order": list(entry.paper_order) if entry.paper_order else None,
        "paper_signs": list(entry.paper_signs) if entry.paper_signs else None,
    }
    sys.stdout.write(canonical_dumps(doc))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NonUnitaryInput,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OpenLoop, NonUnitaryHolonomy) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except (UnknownGate, DimensionError, ParamShapeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HolosynthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

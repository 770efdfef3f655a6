"""Command-line front end: JSON in on a file or stdin, JSON out on stdout.

Subcommands: map, little-group, trace, verify, boost, tangent. Diagnostics
go to stderr; the exit status is the ``exit_code`` of the raised error
(2 input, 3 invariant, 4 E(2) fault, 5 chart), or 1 for a failed verify.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

import numpy as np

from . import codec
from .charts import (
    FIDUCIAL,
    Chart,
    LightlikeMomentum,
    charted,
    charts_of,
    default_chart,
    factor_little_group,
    standard_element,
    transform_lightlike,
    wigner_phase,
)
from .core import (
    IDENTITY,
    TOL_E2,
    TOL_INVARIANT,
    boost_su2,
    check_sl2c,
    lorentz_residual,
    rotation_su2,
    spinor_map,
    transform_four_vector,
    unit_vector,
)
from .errors import ChartViolation, InputError, KinematicsError
from .massive import (
    MassiveMomentum,
    boost_massive,
    parity_massive,
    transport_massive,
    wigner_rotation_massive,
)
from .polarization import (
    PolarizationState,
    chart_phases,
    convert_chart,
    parity_op,
    tangent_field,
    transport_factors,
)
from .verify import run_battery


# -- input helpers ----------------------------------------------------------


def read_json(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def single_tol(args, default: float) -> float:
    if not args.tol:
        return default
    if len(args.tol) > 1:
        raise InputError("--tol takes a single value for this subcommand")
    try:
        tol = float(args.tol[0])
    except ValueError as exc:
        raise InputError(f"--tol expects a number, got {args.tol[0]!r}") from exc
    if not tol > 0:
        raise InputError("--tol must be positive")
    return tol


def chart_flag(value: str | None) -> Chart | None:
    return None if value in (None, "auto") else Chart(value)


def parse_lambdas(values) -> list[int]:
    out = []
    for v in values or ["1"]:
        for part in str(v).split(","):
            try:
                lam = int(part)
            except ValueError as exc:
                raise InputError(f"--lambda expects integers, got {part!r}") from exc
            if lam < 1:
                raise InputError("--lambda values must be positive")
            out.append(lam)
    return out


def momentum_from_json(v, chart: Chart | None):
    """A charted momentum object, or a four-vector given with ``--chart``."""
    if isinstance(v, dict):
        return codec.charted_from_json(v)
    p = LightlikeMomentum.from_four_vector(codec.four_vector_from_json(v))
    if chart is not None:
        if chart not in charts_of(p):
            raise ChartViolation(f"chart {chart.value} is not admissible for {list(v)}")
        return charted(p, chart)
    return charted(p)


def sl2c_from_json(v, tol: float = TOL_INVARIANT) -> np.ndarray:
    return check_sl2c(codec.matrix_from_json(v), tol)


def phase_list(h, lambdas):
    return [{"lambda": lam, "phase": codec.complex_to_json(wigner_phase(h, lam))} for lam in lambdas]


# -- subcommands ------------------------------------------------------------


def cmd_map(args) -> int:
    data = read_json(args.input)
    if isinstance(data, dict):
        data = data.get("A", data.get("matrix"))
    A = sl2c_from_json(data, single_tol(args, TOL_INVARIANT))
    L = spinor_map(A)
    emit({"lorentz": codec.real_matrix_to_json(L), "metric_residual": float(lorentz_residual(L))})
    return 0


def cmd_little_group(args) -> int:
    data = read_json(args.input)
    if not isinstance(data, dict) or "p" not in data or "A" not in data:
        raise InputError("little-group input needs fields 'p' and 'A'")
    tol = single_tol(args, TOL_E2)
    cp = momentum_from_json(data["p"], None)
    A = sl2c_from_json(data["A"])
    out_chart = chart_flag(args.chart)
    if "chart_out" in data:
        out_chart = chart_flag(data["chart_out"])
    fac = factor_little_group(cp, A, out_chart, args.family, tol)
    emit(
        {
            "p_in": codec.charted_to_json(cp),
            "p_out": codec.charted_to_json(fac.target),
            "h": codec.e2_to_json(fac.element),
            "phases": phase_list(fac.element, parse_lambdas(args.lam)),
        }
    )
    return 0


def step_matrix(step) -> tuple[str, np.ndarray | None]:
    if step in ("parity", "convert_chart"):
        return step, None
    if not isinstance(step, dict) or len(step) != 1:
        raise InputError(f"trace step must be a single-key object or 'parity'/'convert_chart', got {step!r}")
    (kind, body), = step.items()
    if kind in ("parity", "convert_chart"):
        return kind, None
    if kind == "rotation":
        axis = unit_vector(np.asarray(codec._get(body, "axis", "rotation"), dtype=float), 1e-9)
        return kind, rotation_su2(axis / np.linalg.norm(axis), codec._num(codec._get(body, "angle", "rotation"), "angle"))
    if kind == "boost":
        axis = unit_vector(np.asarray(codec._get(body, "axis", "boost"), dtype=float), 1e-9)
        return kind, boost_su2(axis / np.linalg.norm(axis), codec._num(codec._get(body, "rapidity", "boost"), "rapidity"))
    if kind == "sl2c":
        return kind, sl2c_from_json(body.get("matrix", body) if isinstance(body, dict) else body)
    raise InputError(f"unknown trace step kind {kind!r}")


def pick_chart(st: PolarizationState, A, policy: Chart | None, events: list, index: int) -> Chart:
    q = transform_lightlike(st.cp.p, A)
    allowed = charts_of(q)
    natural = default_chart(q)
    if len(allowed) == 1:
        events.append({"step": index, "event": "single_chart", "chart": natural.value})
    if policy is None:
        return natural
    if policy not in allowed:
        events.append({"step": index, "event": "forced_chart_unavailable", "requested": policy.value, "chart": natural.value})
        return natural
    if policy is not natural:
        events.append({"step": index, "event": "forced_chart", "chart": policy.value, "default": natural.value})
    return policy


def trace_polarization(st: PolarizationState, steps, policy, tol) -> dict:
    acc = np.ones(2, dtype=np.complex128)
    source = [st.lam, -st.lam]
    events: list = []
    rows = [{"index": 0, "op": "initial", "state": codec.state_to_json(st)}]
    for i, step in enumerate(steps, start=1):
        kind, A = step_matrix(step)
        row = {"index": i, "op": kind}
        if kind == "parity":
            st = parity_op(st)
            acc = acc[::-1].copy()
            source = source[::-1]
        elif kind == "convert_chart":
            phases = chart_phases(st, st.cp.chart.other())
            st = convert_chart(st)
            acc = acc * phases
        else:
            chart = pick_chart(st, A, policy, events, i)
            fac, phases = transport_factors(st, A, chart, tol)
            st = PolarizationState(fac.target, st.lam, *(st.amps * phases))
            acc = acc * phases
            row["h"] = codec.e2_to_json(fac.element)
        row["state"] = codec.state_to_json(st)
        row["phases"] = [codec.complex_to_json(z) for z in acc]
        row["source_helicities"] = list(source)
        rows.append(row)
    return {
        "kind": "polarization",
        "steps": rows,
        "phases": [codec.complex_to_json(z) for z in acc],
        "source_helicities": list(source),
        "events": events,
        "norm_residual": abs(float(np.linalg.norm(st.amps)) - 1.0),
    }


def trace_massive(st, steps) -> dict:
    acc = IDENTITY.copy()
    sign = 1
    rows = [{"index": 0, "op": "initial", "state": codec.state_to_json(st)}]
    for i, step in enumerate(steps, start=1):
        kind, A = step_matrix(step)
        row = {"index": i, "op": kind}
        if kind == "convert_chart":
            raise InputError("convert_chart applies only to massless states")
        if kind == "parity":
            st = parity_massive(st)
            sign *= st.eta
        else:
            a = wigner_rotation_massive(st.momentum, A)
            st = transport_massive(st, A)
            acc = a @ acc
            row["wigner_rotation"] = codec.matrix_to_json(a)
        row["state"] = codec.state_to_json(st)
        rows.append(row)
    return {
        "kind": "massive",
        "steps": rows,
        "wigner_rotation": codec.matrix_to_json(acc),
        "parity_sign": sign,
        "events": [],
        "norm_residual": abs(float(np.linalg.norm(st.amps)) - 1.0),
    }


def cmd_trace(args) -> int:
    script = read_json(args.input)
    if not isinstance(script, dict):
        raise InputError("trace script must be a JSON object")
    steps = codec._get(script, "steps", "trace script")
    if not isinstance(steps, list) or not steps:
        raise InputError("trace script needs a non-empty list of steps")
    options = script.get("options") or {}
    policy = chart_flag(args.chart if args.chart is not None else options.get("chart", "auto"))
    tol = single_tol(args, float(options.get("tol", TOL_E2)))
    # validate every step before transporting anything
    for step in steps:
        step_matrix(step)
    st = codec.state_from_json(codec._get(script, "initial", "trace script"))
    if isinstance(st, PolarizationState):
        emit(trace_polarization(st, steps, policy, tol))
    else:
        emit(trace_massive(st, steps))
    return 0


def parse_overrides(items) -> dict[str, float]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"verify --tol expects name=value, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise InputError(f"tolerance for {name!r} is not a number: {value!r}") from exc
    return out


def cmd_verify(args) -> int:
    report = run_battery(args.seed, args.samples, parse_overrides(args.tol))
    emit(report)
    for row in report["checks"]:
        if not row["passed"]:
            print(f"FAIL {row['name']}: residual {row['max_residual']} > {row['threshold']}", file=sys.stderr)
    return 0 if report["passed"] else 1


def _is_lightlike(v) -> bool:
    return abs(v[0] - float(np.linalg.norm(v[1:]))) <= 1e-8 * abs(v[0])


def cmd_boost(args) -> int:
    data = read_json(args.input)
    if isinstance(data, dict) and "m" in data:
        p = MassiveMomentum(codec._num(data["m"], "m"), tuple(codec._num(x, "p") for x in data.get("p", ())))
        L, fid, target = boost_massive(p), [p.m, 0.0, 0.0, 0.0], p.four_vector
        out = {"kind": "massive"}
    elif isinstance(data, list) and not _is_lightlike(codec.four_vector_from_json(data)):
        v = codec.four_vector_from_json(data)
        m2 = v[0] ** 2 - v[1:] @ v[1:]
        if v[0] <= 0 or m2 <= 0:
            raise InputError("four-vector is neither forward timelike nor lightlike")
        p = MassiveMomentum(math.sqrt(m2), tuple(v[1:]))
        L, fid, target = boost_massive(p), [p.m, 0.0, 0.0, 0.0], p.four_vector
        out = {"kind": "massive"}
    else:
        cp = momentum_from_json(data, chart_flag(args.chart))
        L, fid, target = standard_element(cp, args.family), FIDUCIAL, cp.p.four_vector
        out = {"kind": "lightlike", "p": codec.charted_to_json(cp), "family": args.family}
    img = transform_four_vector(L, fid)
    out["matrix"] = codec.matrix_to_json(L)
    out["image"] = codec.four_vector_to_json(img)
    out["residual"] = float(np.max(np.abs(img - target)) / target[0])
    emit(out)
    return 0


def cmd_tangent(args) -> int:
    cp = momentum_from_json(read_json(args.input), chart_flag(args.chart))
    e = tangent_field(cp)
    emit(
        {
            "p": codec.charted_to_json(cp),
            "e": [float(x) for x in e],
            "orthogonality": abs(float(e @ cp.p.direction)),
            "norm_residual": abs(float(np.linalg.norm(e)) - 1.0),
        }
    )
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wignerpol", description="Lorentz spinor kinematics and massless polarization phases.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, chart=False, tol=True, family=False, lam=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if name != "verify":
            p.add_argument("input", nargs="?", default=None, help="JSON file (default: stdin)")
        if tol:
            p.add_argument("--tol", action="append", help="tolerance override")
        if chart:
            p.add_argument("--chart", choices=["auto", "N", "S"], default=None)
        if family:
            p.add_argument("--family", choices=["std", "alt"], default="std", help="standard-element family")
        if lam:
            p.add_argument("--lambda", dest="lam", action="append", help="helicity labels, repeatable or comma separated")
        return p

    add("map", cmd_map, "Lorentz matrix of an SL(2,C) element")
    add("little-group", cmd_little_group, "E(2) factor and Wigner phases", chart=True, family=True, lam=True)
    add("trace", cmd_trace, "apply a script of transformations to a state", chart=True)
    v = add("verify", cmd_verify, "run the randomized invariant battery")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--samples", type=int, default=1000)
    add("boost", cmd_boost, "standard element for a momentum", chart=True, family=True, tol=False)
    add("tangent", cmd_tangent, "tangent field e(p)", chart=True, tol=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except KinematicsError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

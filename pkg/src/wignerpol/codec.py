"""JSON wire formats.

Complex numbers travel as ``[re, im]`` and matrices row-major. Floats are
written with Python's shortest round-trip repr, so decode followed by
encode reproduces the same bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .charts import Chart, ChartedMomentum, LightlikeMomentum
from .core import E2Element
from .errors import InputError
from .massive import MassiveMomentum, SpinState
from .polarization import PolarizationState


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(", ", ": "))


def _num(x, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"{what}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"{what}: non-finite value")
    return x


def _get(d, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{what}: missing field {key!r}")
    return d[key]


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v, what: str = "complex") -> complex:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"{what}: expected [re, im], got {v!r}")
    return complex(_num(v[0], what), _num(v[1], what))


def four_vector_to_json(p) -> list[float]:
    return [float(x) for x in np.asarray(p, dtype=float)]


def four_vector_from_json(v) -> np.ndarray:
    if not isinstance(v, (list, tuple)) or len(v) != 4:
        raise InputError(f"four-vector: expected [p0, p1, p2, p3], got {v!r}")
    return np.array([_num(x, "four-vector") for x in v])


def matrix_to_json(A) -> list:
    A = np.asarray(A, dtype=np.complex128)
    return [[complex_to_json(z) for z in row] for row in A]


def matrix_from_json(v) -> np.ndarray:
    if not isinstance(v, (list, tuple)) or len(v) != 2 or any(not isinstance(r, (list, tuple)) or len(r) != 2 for r in v):
        raise InputError("matrix: expected [[[re,im],[re,im]],[[re,im],[re,im]]]")
    return np.array([[complex_from_json(z, "matrix entry") for z in row] for row in v], dtype=np.complex128)


def real_matrix_to_json(L) -> list:
    return [[float(x) for x in row] for row in np.asarray(L, dtype=float)]


def e2_to_json(h: E2Element) -> dict:
    return {"phi": h.phi, "alpha": complex_to_json(h.alpha)}


def e2_from_json(d) -> E2Element:
    return E2Element(_num(_get(d, "phi", "E2"), "phi"), complex_from_json(_get(d, "alpha", "E2"), "alpha"))


def charted_to_json(cp: ChartedMomentum) -> dict:
    theta, phi = cp.p.angles
    return {"p0": cp.p.p0, "theta": theta, "phi": phi, "chart": cp.chart.value}


def charted_from_json(d) -> ChartedMomentum:
    what = "charted momentum"
    chart = _get(d, "chart", what)
    if chart not in ("N", "S"):
        raise InputError(f"{what}: chart must be 'N' or 'S', got {chart!r}")
    p = LightlikeMomentum(
        _num(_get(d, "p0", what), "p0"),
        _num(_get(d, "theta", what), "theta"),
        _num(_get(d, "phi", what), "phi"),
    )
    return ChartedMomentum(p, Chart(chart))


def polarization_to_json(st: PolarizationState) -> dict:
    d = charted_to_json(st.cp)
    d["lambda"] = st.lam
    d["amps"] = [complex_to_json(st.c_plus), complex_to_json(st.c_minus)]
    return d


def polarization_from_json(d) -> PolarizationState:
    cp = charted_from_json(d)
    lam = _get(d, "lambda", "polarization state")
    if isinstance(lam, bool) or not isinstance(lam, int):
        raise InputError(f"polarization state: lambda must be a positive integer, got {lam!r}")
    amps = _get(d, "amps", "polarization state")
    if not isinstance(amps, (list, tuple)) or len(amps) != 2:
        raise InputError("polarization state: amps must hold two complex numbers")
    return PolarizationState(cp, lam, complex_from_json(amps[0]), complex_from_json(amps[1]))


def spin_state_to_json(st: SpinState) -> dict:
    return {
        "s": st.s,
        "m": st.momentum.m,
        "p": list(st.momentum.p),
        "eta": st.eta,
        "amps": [complex_to_json(c) for c in st.amplitudes],
    }


def spin_state_from_json(d) -> SpinState:
    what = "spin state"
    p = _get(d, "p", what)
    if not isinstance(p, (list, tuple)) or len(p) != 3:
        raise InputError(f"{what}: p must be [p1, p2, p3]")
    eta = _get(d, "eta", what) if "eta" in d else 1
    if eta not in (1, -1) or isinstance(eta, bool):
        raise InputError(f"{what}: eta must be +1 or -1")
    amps = _get(d, "amps", what)
    if not isinstance(amps, (list, tuple)):
        raise InputError(f"{what}: amps must be a list")
    momentum = MassiveMomentum(_num(_get(d, "m", what), "m"), tuple(_num(x, "p") for x in p))
    return SpinState(_num(_get(d, "s", what), "s"), momentum, tuple(complex_from_json(c) for c in amps), int(eta))


def state_from_json(d):
    """Dispatch on shape: ``lambda`` marks a polarization state, ``s`` a spin state."""
    if isinstance(d, dict) and "lambda" in d:
        return polarization_from_json(d)
    if isinstance(d, dict) and "s" in d:
        return spin_state_from_json(d)
    raise InputError("state: expected a polarization state (with 'lambda') or a spin state (with 's')")


def state_to_json(st) -> dict:
    if isinstance(st, PolarizationState):
        return polarization_to_json(st)
    return spin_state_to_json(st)

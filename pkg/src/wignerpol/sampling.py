"""Random inputs for property checks.

SL(2,C) samples are exponentials of traceless matrices whose real and
imaginary parts are uniform in [-1, 1]; energies are log-uniform in
[1e-3, 1e3] and directions uniform on the sphere.
"""

from __future__ import annotations

import math

import numpy as np

from .charts import Chart, ChartedMomentum, LightlikeMomentum, charts_of
from .core import sl2c_exp
from .massive import MassiveMomentum, SpinState
from .polarization import PolarizationState

P0_RANGE = (1e-3, 1e3)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_sl2c(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    shape = () if n is None else (n,)
    M = rng.uniform(-1, 1, shape + (2, 2)) + 1j * rng.uniform(-1, 1, shape + (2, 2))
    tr = 0.5 * (M[..., 0, 0] + M[..., 1, 1])
    M[..., 0, 0] -= tr
    M[..., 1, 1] -= tr
    return sl2c_exp(M)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return np.array([[q[0] + 1j * q[3], q[2] + 1j * q[1]], [-q[2] + 1j * q[1], q[0] - 1j * q[3]]])


def random_energy(rng: np.random.Generator) -> float:
    lo, hi = P0_RANGE
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def random_direction(rng: np.random.Generator) -> tuple[float, float]:
    return math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * math.pi)


def random_lightlike(rng: np.random.Generator) -> LightlikeMomentum:
    return LightlikeMomentum(random_energy(rng), *random_direction(rng))


def random_charted(rng: np.random.Generator, chart: Chart | None = None) -> ChartedMomentum:
    p = random_lightlike(rng)
    charts = sorted(charts_of(p))
    if chart is None or chart not in charts:
        chart = charts[rng.integers(len(charts))]
    return ChartedMomentum(p, chart)


def random_amplitudes(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return z / np.linalg.norm(z)


def random_polarization(rng: np.random.Generator, lam: int = 1, chart: Chart | None = None) -> PolarizationState:
    c = random_amplitudes(rng, 2)
    return PolarizationState(random_charted(rng, chart), lam, c[0], c[1])


def random_massive(rng: np.random.Generator) -> MassiveMomentum:
    m = float(math.exp(rng.uniform(math.log(0.1), math.log(10.0))))
    mag = m * float(math.exp(rng.uniform(math.log(1e-3), math.log(1e2))))
    t, f = random_direction(rng)
    return MassiveMomentum(m, (mag * math.sin(t) * math.cos(f), mag * math.sin(t) * math.sin(f), mag * math.cos(t)))


def random_spin_state(rng: np.random.Generator, s: float | None = None) -> SpinState:
    if s is None:
        s = rng.integers(0, 7) / 2
    c = random_amplitudes(rng, int(round(2 * s)) + 1)
    return SpinState(s, random_massive(rng), tuple(c), int(rng.choice([-1, 1])))

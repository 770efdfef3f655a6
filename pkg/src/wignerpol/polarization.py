"""Parity-doubled polarization space at fixed lightlike momentum.

A :class:`PolarizationState` holds the amplitudes of the helicity ``+lam``
and ``-lam`` kets of one chart. Parity maps ``|p, +-lam>`` of one chart to
``|p~, -+lam>`` of the other. Lorentz transformations multiply each
helicity component by its Wigner phase. The action of a pi-rotation about
the tangent field ``e(p)`` composed with parity is the helicity swap times
``exp(i pi lam)``. It is computed from those two rules, never postulated,
and supplies the ``s1``/``s2`` analogues at each fixed momentum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from .charts import (
    Chart,
    ChartedMomentum,
    LightlikeMomentum,
    charts_of,
    factor_little_group,
    in_overlap,
    wigner_phase,
)
from .core import (
    TOL_E2,
    TOL_INVARIANT,
    cis,
    rotation_su2,
    su2_a,
)
from .errors import InvariantViolation, NotInOverlap

log = logging.getLogger(__name__)

E1 = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class PolarizationState:
    cp: ChartedMomentum
    lam: int = 1
    c_plus: complex = 1 + 0j
    c_minus: complex = 0j

    def __post_init__(self):
        if self.lam != int(self.lam) or int(self.lam) < 1:
            raise InvariantViolation(f"helicity label must be a positive integer, got {self.lam!r}")
        object.__setattr__(self, "lam", int(self.lam))
        object.__setattr__(self, "c_plus", complex(self.c_plus))
        object.__setattr__(self, "c_minus", complex(self.c_minus))
        norm = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(norm - 1) > TOL_INVARIANT:
            raise InvariantViolation(f"polarization amplitudes are not unit norm: {norm!r}")

    @property
    def amps(self) -> np.ndarray:
        return np.array([self.c_plus, self.c_minus])

    @property
    def helicities(self) -> tuple[int, int]:
        return self.lam, -self.lam

    def with_amps(self, amps) -> PolarizationState:
        return replace(self, c_plus=complex(amps[0]), c_minus=complex(amps[1]))


def tangent_field(cp: ChartedMomentum) -> np.ndarray:
    """Unit vector orthogonal to ``p``, smooth on the chart.

    ``N``: ``n(pi/2, 0) - 2 sin(theta/2) cos(phi) n(theta/2, phi)``;
    ``S``: ``n(pi/2, 0) - 2 cos(theta/2) cos(phi) n((pi + theta)/2, phi)``.
    """
    c, s = cp.p.half_angles()
    z = cp.p.eiphi()
    cosphi = z.real
    if cp.chart is Chart.N:
        half = np.array([s * z.real, s * z.imag, c])
        return E1 - 2.0 * s * cosphi * half
    half = np.array([c * z.real, c * z.imag, -s])
    return E1 - 2.0 * c * cosphi * half


def conjugation_identity(theta: float, phi: float) -> np.ndarray:
    """``a(theta,phi)^-1 exp(i pi e.sigma/2) a(theta,phi) exp(i pi s2/2)`` on chart N.

    Equals ``-i s3`` for every admissible direction.
    """
    e = tangent_field(ChartedMomentum(LightlikeMomentum(1.0, theta, phi), Chart.N))
    a = su2_a(theta, phi)
    return a.conj().T @ rotation_su2(e, math.pi) @ a @ rotation_su2([0.0, 1.0, 0.0], math.pi)


def parity_op(st: PolarizationState) -> PolarizationState:
    """``P|p, +-lam> = |p~, -+lam>'`` and back: swap amplitudes, invert, toggle chart."""
    cp = ChartedMomentum(st.cp.p.tilde(), st.cp.chart.other())
    return PolarizationState(cp, st.lam, st.c_minus, st.c_plus)


def chart_phases(st: PolarizationState, to: Chart) -> np.ndarray:
    """Amplitude multipliers for re-expressing ``st`` in chart ``to``.

    The kets obey ``|p, h>' = exp(-2 i h phi) |p, h>``, so amplitudes go the
    other way: ``exp(+2 i h phi)`` from N to S.
    """
    if to is st.cp.chart:
        return np.ones(2, dtype=np.complex128)
    phi = st.cp.p.angles[1]
    sign = 1 if to is Chart.S else -1
    return np.array([cis(sign * 2 * h * phi) for h in st.helicities])


def convert_chart(st: PolarizationState) -> PolarizationState:
    if not in_overlap(st.cp.p):
        raise NotInOverlap("chart conversion needs a momentum in the overlap of both charts")
    to = st.cp.chart.other()
    amps = st.amps * chart_phases(st, to)
    return PolarizationState(ChartedMomentum(st.cp.p, to), st.lam, amps[0], amps[1])


def transport_factors(st: PolarizationState, A, chart: Chart | None = None, tol: float = TOL_E2):
    """Little-group factor of ``A`` at ``st`` and the two helicity phases it induces."""
    fac = factor_little_group(st.cp, A, chart, tol=tol)
    phases = np.array([wigner_phase(fac.element, h) for h in st.helicities])
    return fac, phases


def transport_massless(
    st: PolarizationState, A, chart_policy: Chart | None = None, tol: float = TOL_E2
) -> PolarizationState:
    """Apply ``U(A)``: move to ``p' = Lambda(A) p`` and multiply by Wigner phases.

    ``chart_policy=None`` picks the chart of ``p'`` with the larger pole margin.
    """
    if chart_policy is not None:
        log.info("output chart forced to %s", Chart(chart_policy).value)
    fac, phases = transport_factors(st, A, chart_policy, tol)
    if len(charts_of(fac.target.p)) == 1:
        log.info("image momentum lies on a pole ray; only chart %s applies", fac.target.chart.value)
    amps = st.amps * phases
    return PolarizationState(fac.target, st.lam, amps[0], amps[1])


def rotated_parity_action(cp: ChartedMomentum, lam: int = 1, tol: float = TOL_E2) -> tuple[np.ndarray, float]:
    """Matrix of ``exp(i pi e(p).J) P`` on the helicity basis at ``cp``.

    Each basis ket is sent through parity, then transported by the
    pi-rotation about the chart's tangent field back into the same chart.
    Returns the matrix and the relative distance between the returned
    momentum and ``p``.
    """
    R = rotation_su2(tangent_field(cp), math.pi)
    cols = []
    drift = 0.0
    for amps in ((1, 0), (0, 1)):
        st = PolarizationState(cp, lam, *amps)
        out = transport_massless(parity_op(st), R, cp.chart, tol)
        drift = max(drift, float(np.max(np.abs(out.cp.p.four_vector - cp.p.four_vector)) / cp.p.p0))
        cols.append(out.amps)
    return np.array(cols).T, drift


def sigma_ops(cp: ChartedMomentum, lam: int = 1) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pauli-matrix realizations ``(S1, S2, S3)`` on the helicity basis at ``cp``.

    ``S3`` is helicity over ``lam``. With ``K = exp(i pi e(p).J) P``, the
    photon case gives ``S1 = -K`` and ``S2 = i S3 K``. For other ``lam`` the
    factor ``exp(i pi lam)`` in ``K`` is divided out instead of the fixed
    sign, which is an extrapolation of the photon assignment.
    """
    if lam != 1:
        log.info("sigma_ops at lam=%d extrapolates the photon (lam=1) identification", lam)
    K, _ = rotated_parity_action(cp, lam)
    sign = -1.0 if lam % 2 else 1.0
    S3 = np.diag([1.0, -1.0]).astype(np.complex128)
    S1 = sign * K
    S2 = 1j * S3 @ (-S1)
    return S1, S2, S3


def helicity_matrix(lam: int) -> np.ndarray:
    """``J.p/p0`` on the basis ``(|p, +lam>, |p, -lam>)``."""
    return np.diag([float(lam), -float(lam)]).astype(np.complex128)


def no_global_su2_check(p: ChartedMomentum, q: ChartedMomentum) -> dict:
    """Describe the two ``S1`` realizations at ``p`` and ``q``.

    Both are ``-exp(i pi e.J) P`` but with different rotation axes whenever
    the tangent vectors differ, so the two polarization SU(2)s are not
    images of one rotation group. This is a report, not a proof.
    """
    ep, eq = tangent_field(p), tangent_field(q)
    angle = math.atan2(float(np.linalg.norm(np.cross(ep, eq))), float(ep @ eq))
    return {
        "p": {"angles": list(p.p.angles), "chart": p.chart.value, "e": ep.tolist()},
        "q": {"angles": list(q.p.angles), "chart": q.chart.value, "e": eq.tolist()},
        "s1_realization": "-exp(i pi e(p).J) P",
        "axis_angle": angle,
        "same_axis": bool(angle < 1e-12),
    }


__all__ = [
    "PolarizationState",
    "tangent_field",
    "conjugation_identity",
    "parity_op",
    "chart_phases",
    "convert_chart",
    "transport_factors",
    "transport_massless",
    "rotated_parity_action",
    "sigma_ops",
    "helicity_matrix",
    "no_global_su2_check",
]

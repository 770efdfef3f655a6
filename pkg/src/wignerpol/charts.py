"""Two-chart atlas on the forward light cone and massless little-group factorization.

``N`` covers every direction except the south pole, ``S`` every direction
except the north pole. Each chart carries its own family of standard
elements carrying ``(1, 0, 0, 1)`` to ``p``; on the overlap the families
differ by a right E(2) factor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    IDENTITY,
    TOL_E2,
    TWO_PI,
    E2Element,
    cis,
    e2_recognize,
    inv2,
    su2_a_from_half,
    transform_four_vector,
)
from .errors import ChartViolation, InvariantViolation, NotInOverlap

POLE_MARGIN = 1e-12
FIDUCIAL = np.array([1.0, 0.0, 0.0, 1.0])


class Chart(str, enum.Enum):
    N = "N"
    S = "S"

    def other(self) -> Chart:
        return Chart.S if self is Chart.N else Chart.N


@dataclass(frozen=True)
class LightlikeMomentum:
    """Positive lightlike momentum stored as energy plus direction.

    The direction is ``n(theta, phi)``, or ``-n(theta, phi)`` when
    ``inverted`` is set. The flag lets spatial inversion flip a bit instead
    of recomputing angles, so inverting twice gives back identical fields.
    Use :attr:`angles` for the effective polar angles.
    """

    p0: float
    theta: float
    phi: float = 0.0
    inverted: bool = False

    def __post_init__(self):
        p0, theta, phi = float(self.p0), float(self.theta), float(self.phi)
        if not all(math.isfinite(x) for x in (p0, theta, phi)):
            raise InvariantViolation("lightlike momentum must have finite energy and angles")
        if p0 < 1e-12:
            raise InvariantViolation(f"energy {p0!r} is not positive")
        if not 0.0 <= theta <= math.pi:
            raise InvariantViolation(f"polar angle {theta!r} outside [0, pi]")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI or theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "inverted", bool(self.inverted))

    @classmethod
    def from_four_vector(cls, p, rtol: float = 1e-8) -> LightlikeMomentum:
        """Project a numerically lightlike four-vector back onto the cone."""
        p = np.asarray(p, dtype=float)
        r = math.sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3])
        if p[0] <= 0 or abs(p[0] - r) > rtol * p[0]:
            raise InvariantViolation(f"four-vector {p.tolist()} is not positive lightlike within {rtol:.0e}")
        theta = math.atan2(math.hypot(p[1], p[2]), p[3])
        phi = math.atan2(p[2], p[1])
        return cls(r, theta, phi)

    def tilde(self) -> LightlikeMomentum:
        return LightlikeMomentum(self.p0, self.theta, self.phi, not self.inverted)

    @property
    def angles(self) -> tuple[float, float]:
        if not self.inverted:
            return self.theta, self.phi
        if self.theta in (0.0, math.pi):
            return math.pi - self.theta, 0.0
        phi = self.phi + math.pi
        return math.pi - self.theta, phi - TWO_PI if phi >= TWO_PI else phi

    def half_angles(self) -> tuple[float, float]:
        """``(cos(theta/2), sin(theta/2))`` of the effective polar angle."""
        h = cis(0.5 * self.theta)
        c, s = h.real, h.imag
        return (s, c) if self.inverted else (c, s)

    def eiphi(self) -> complex:
        z = cis(self.phi)
        return -z if self.inverted and self.theta not in (0.0, math.pi) else z

    @property
    def p_plus(self) -> float:
        c, _ = self.half_angles()
        return 2.0 * self.p0 * c * c

    @property
    def p_minus(self) -> float:
        _, s = self.half_angles()
        return 2.0 * self.p0 * s * s

    @property
    def p_perp(self) -> complex:
        """``p1 + i p2``."""
        c, s = self.half_angles()
        return 2.0 * self.p0 * s * c * self.eiphi()

    @property
    def direction(self) -> np.ndarray:
        c, s = self.half_angles()
        z = 2.0 * s * c * self.eiphi()
        return np.array([z.real, z.imag, c * c - s * s])

    @property
    def four_vector(self) -> np.ndarray:
        return np.concatenate([[self.p0], self.p0 * self.direction])


def _admissible(p: LightlikeMomentum, chart: Chart) -> bool:
    c, s = p.half_angles()
    # 1 + cos(theta) = 2 cos^2(theta/2), 1 - cos(theta) = 2 sin^2(theta/2)
    return (2 * c * c if chart is Chart.N else 2 * s * s) > POLE_MARGIN


@dataclass(frozen=True)
class ChartedMomentum:
    p: LightlikeMomentum
    chart: Chart

    def __post_init__(self):
        chart = Chart(self.chart)
        object.__setattr__(self, "chart", chart)
        if not _admissible(self.p, chart):
            raise ChartViolation(f"chart {chart.value} is not admissible at theta = {self.p.angles[0]!r}")


def charts_of(p: LightlikeMomentum) -> set[Chart]:
    return {c for c in Chart if _admissible(p, c)}


def in_overlap(p: LightlikeMomentum) -> bool:
    return len(charts_of(p)) == 2


def default_chart(p: LightlikeMomentum) -> Chart:
    """``N`` on the closed northern hemisphere, ``S`` below it."""
    c, s = p.half_angles()
    return Chart.N if c * c >= s * s else Chart.S


def charted(p: LightlikeMomentum, chart: Chart | None = None) -> ChartedMomentum:
    return ChartedMomentum(p, default_chart(p) if chart is None else chart)


def transform_lightlike(p: LightlikeMomentum, A) -> LightlikeMomentum:
    return LightlikeMomentum.from_four_vector(transform_four_vector(A, p.four_vector))


def coset_rep(cp: ChartedMomentum) -> np.ndarray:
    """Standard element built as rotation after boost along the 3-axis.

    ``N``: ``a(theta, phi) exp(ln(p0) s3 / 2)``.
    ``S``: ``a(theta - pi, phi) exp(-ln(p0) s3 / 2) i s2``.
    """
    p = cp.p
    c, s = p.half_angles()
    z = p.eiphi()
    r = math.sqrt(p.p0)
    if cp.chart is Chart.N:
        return su2_a_from_half(c, s, z) @ np.diag([r, 1 / r])
    # a(theta - pi, phi): cos -> sin(theta/2), sin -> -cos(theta/2)
    rot = su2_a_from_half(s, -c, z)
    return rot @ np.diag([1 / r, r]) @ np.array([[0, 1], [-1, 0]], dtype=np.complex128)


def coset_rep_alt(cp: ChartedMomentum) -> np.ndarray:
    """Boost-like standard elements.

    ``N``: ``((1,0,0,-1) + p).sigma / sqrt(2 p_+)``.
    ``S``: ``((1,0,0,1) - p).sigma s1 / sqrt(2 p_-)``.
    """
    p = cp.p
    pp, pm, w = p.p_plus, p.p_minus, p.p_perp
    if cp.chart is Chart.N:
        m = np.array([[pp, w.conjugate()], [w, 2.0 + pm]], dtype=np.complex128)
        return m / math.sqrt(2 * pp)
    m = np.array([[-w.conjugate(), 2.0 - pp], [-pm, -w]], dtype=np.complex128)
    return m / math.sqrt(2 * pm)


def standard_element(cp: ChartedMomentum, family: str = "std") -> np.ndarray:
    if family == "std":
        return coset_rep(cp)
    if family == "alt":
        return coset_rep_alt(cp)
    raise ValueError(f"unknown family {family!r}")


def _require_overlap(p: LightlikeMomentum) -> None:
    if not in_overlap(p):
        raise NotInOverlap(f"direction theta = {p.angles[0]!r} is not in the chart overlap")


def overlap_element(p: LightlikeMomentum) -> E2Element:
    """``h`` with ``coset_rep(p, S) == coset_rep(p, N) @ h``: ``h(2(pi - phi), 0)``."""
    _require_overlap(p)
    return E2Element(2.0 * (math.pi - p.angles[1]), 0j)


def overlap_element_alt(p: LightlikeMomentum) -> E2Element:
    """``h`` with ``coset_rep_alt(p, S) == coset_rep_alt(p, N) @ h``."""
    _require_overlap(p)
    # 1 - p3 written as (1 - p0) + p_- to avoid cancellation near the poles
    one_minus_p3 = (1.0 - p.p0) + p.p_minus
    return E2Element(2.0 * (math.pi - p.angles[1]), 2.0 * one_minus_p3 / abs(p.p_perp))


def alt_offset(cp: ChartedMomentum) -> E2Element:
    """``h`` with ``coset_rep_alt(cp) == coset_rep(cp) @ h``; always a pure translation.

    ``N``: ``h(0, (1 + 1/p0) tan(theta/2) e^{-i phi})``;
    ``S``: ``h(0, (1 - 1/p0) cot(theta/2) e^{i phi})``.
    """
    p = cp.p
    c, s = p.half_angles()
    z = p.eiphi()
    if cp.chart is Chart.N:
        return E2Element(0.0, (1 + 1 / p.p0) * (s / c) * z.conjugate())
    return E2Element(0.0, (1 - 1 / p.p0) * (c / s) * z)


def _central_sign(A) -> int:
    if np.array_equal(A, IDENTITY):
        return 1
    if np.array_equal(A, -IDENTITY):
        return -1
    return 0


class LittleGroupFactor(NamedTuple):
    target: ChartedMomentum
    matrix: np.ndarray
    element: E2Element


def factor_little_group(
    cp: ChartedMomentum,
    A,
    chart_out: Chart | None = None,
    family: str = "std",
    tol: float = TOL_E2,
) -> LittleGroupFactor:
    """Factor ``A l_in(p) = l_out(p') h`` and return ``p'``, the raw product and ``h``.

    The central elements ``+-1`` fix every momentum; they keep ``p`` as stored
    and, within one chart, give ``h(0, 0)`` or ``h(2 pi, 0)`` exactly.
    """
    A = np.asarray(A, dtype=np.complex128)
    sign = _central_sign(A)
    q = cp.p if sign else transform_lightlike(cp.p, A)
    if chart_out is None:
        chart_out = default_chart(q)
    elif not _admissible(q, Chart(chart_out)):
        raise ChartViolation(f"requested output chart {Chart(chart_out).value} is not admissible at the image momentum")
    target = ChartedMomentum(q, chart_out)
    if sign and target.chart is cp.chart:
        return LittleGroupFactor(target, sign * IDENTITY, E2Element(0.0 if sign > 0 else TWO_PI))
    M = inv2(standard_element(target, family)) @ A @ standard_element(cp, family)
    return LittleGroupFactor(target, M, e2_recognize(M, tol))


def little_group(cp: ChartedMomentum, A, chart_out: Chart | None = None, tol: float = TOL_E2) -> E2Element:
    return factor_little_group(cp, A, chart_out, tol=tol).element


def wigner_phase(h: E2Element, lam: int) -> complex:
    """``exp(i lam phi)`` as ``(e^{i phi/2})^(2 lam)``; the sign ambiguity of ``h`` cancels."""
    if lam != int(lam):
        raise ValueError("helicity must be an integer")
    return cis(0.5 * h.phi) ** (2 * int(lam))


def defining_residual(cp: ChartedMomentum, family: str = "std") -> float:
    """Relative error of ``Lambda(l(p)) (1,0,0,1)`` against ``p``."""
    L = standard_element(cp, family)
    img = transform_four_vector(L, FIDUCIAL)
    return float(np.max(np.abs(img - cp.p.four_vector)) / cp.p.p0)


__all__ = [
    "Chart",
    "LightlikeMomentum",
    "ChartedMomentum",
    "charts_of",
    "in_overlap",
    "default_chart",
    "charted",
    "transform_lightlike",
    "coset_rep",
    "coset_rep_alt",
    "standard_element",
    "overlap_element",
    "overlap_element_alt",
    "alt_offset",
    "factor_little_group",
    "little_group",
    "wigner_phase",
    "defining_residual",
    "LittleGroupFactor",
    "FIDUCIAL",
    "POLE_MARGIN",
]

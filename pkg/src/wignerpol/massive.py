"""Timelike kinematics: Hermitian standard boost, Wigner rotation, spin-s
representation matrices, state transport and parity.

States are sharp-momentum amplitude vectors indexed ``s3 = s, s-1, ..., -s``.
Their phases depend on the choice of standard boost; the Hermitian boost
``(m + p.sigma) / sqrt(2m(m + p0))`` is used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    IDENTITY,
    SIGMA,
    TOL_INVARIANT,
    inv2,
    pauli_form,
    transform_four_vector,
)
from .errors import InvariantViolation, UnsupportedSpin

MAX_SPIN = 10


@dataclass(frozen=True)
class MassiveMomentum:
    m: float
    p: tuple[float, float, float]

    def __post_init__(self):
        m = float(self.m)
        p = tuple(float(x) for x in self.p)
        if len(p) != 3 or not all(math.isfinite(x) for x in p) or not math.isfinite(m):
            raise InvariantViolation("massive momentum needs a finite mass and three finite components")
        if m < 1e-10:
            raise InvariantViolation(f"mass {m!r} below 1e-10")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p", p)

    @property
    def p0(self) -> float:
        return math.sqrt(self.m * self.m + sum(x * x for x in self.p))

    @property
    def four_vector(self) -> np.ndarray:
        return np.array([self.p0, *self.p])

    @classmethod
    def at_rest(cls, m: float) -> MassiveMomentum:
        return cls(m, (0.0, 0.0, 0.0))

    def tilde(self) -> MassiveMomentum:
        return MassiveMomentum(self.m, tuple(-x for x in self.p))


def _spin_dim(s) -> int:
    two_s = 2 * float(s)
    if two_s < 0 or two_s != round(two_s):
        raise UnsupportedSpin(f"spin must be a non-negative half-integer, got {s!r}")
    if float(s) > MAX_SPIN:
        raise UnsupportedSpin(f"spin {s!r} exceeds the supported maximum {MAX_SPIN}")
    return int(round(two_s)) + 1


@dataclass(frozen=True)
class SpinState:
    s: float
    momentum: MassiveMomentum
    amplitudes: tuple[complex, ...]
    eta: int = 1

    def __post_init__(self):
        dim = _spin_dim(self.s)
        amps = tuple(complex(c) for c in self.amplitudes)
        if len(amps) != dim:
            raise InvariantViolation(f"spin {self.s} needs {dim} amplitudes, got {len(amps)}")
        norm = sum(abs(c) ** 2 for c in amps)
        if abs(norm - 1) > TOL_INVARIANT:
            raise InvariantViolation(f"amplitudes are not unit norm: sum |c|^2 = {norm!r}")
        if self.eta not in (1, -1):
            raise InvariantViolation(f"intrinsic parity must be +1 or -1, got {self.eta!r}")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "amplitudes", amps)

    @property
    def amps(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=np.complex128)


def boost_massive(p: MassiveMomentum) -> np.ndarray:
    """Hermitian standard boost carrying ``(m, 0, 0, 0)`` to ``p``; identity at rest."""
    m = p.m
    return (m * IDENTITY + pauli_form(p.four_vector)) / math.sqrt(2 * m * (m + p.p0))


def transform_massive(p: MassiveMomentum, A) -> MassiveMomentum:
    q = transform_four_vector(A, p.four_vector)
    return MassiveMomentum(p.m, tuple(q[1:]))


def wigner_rotation_massive(p: MassiveMomentum, A) -> np.ndarray:
    """``l(p')^-1 A l(p)`` with ``p' = Lambda(A) p``; an SU(2) element."""
    A = np.asarray(A, dtype=np.complex128)
    q = transform_massive(p, A)
    return inv2(boost_massive(q)) @ A @ boost_massive(p)


@lru_cache(maxsize=None)
def spin_matrices(two_s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(Jx, Jy, Jz)`` for spin ``two_s/2`` in the basis ``s3 = s, ..., -s``."""
    s = two_s / 2
    m = s - np.arange(two_s + 1)
    # J+ |s, m> = sqrt((s - m)(s + m + 1)) |s, m + 1>, and m+1 sits one row up
    jp = np.diag(np.sqrt((s - m[1:]) * (s + m[1:] + 1)), k=1).astype(np.complex128)
    jm = jp.conj().T
    jx = (jp + jm) / 2
    jy = (jp - jm) / 2j
    jz = np.diag(m).astype(np.complex128)
    for j in (jx, jy, jz):
        j.setflags(write=False)
    return jx, jy, jz


def su2_axis_angle(a) -> tuple[np.ndarray, float]:
    """Write ``a = exp(i*angle*(n.sigma)/2)`` with ``angle`` in ``[0, 2 pi]``.

    ``angle == 2 pi`` is ``-1``; the axis is then arbitrary and reported as z.
    """
    a = np.asarray(a, dtype=np.complex128)
    c = 0.5 * np.real(np.trace(a))
    v = np.real(np.einsum("kij,ji->k", SIGMA[1:], a) / 2j)
    r = float(np.linalg.norm(v))
    angle = 2.0 * math.atan2(r, c)
    if r == 0.0:
        return np.array([0.0, 0.0, 1.0]), angle
    return v / r, angle


def wigner_D(a, s) -> np.ndarray:
    """Spin-``s`` representation matrix of ``a``.

    ``a = exp(i*angle*(n.sigma)/2)`` is sent to ``exp(i*angle*(n.J))``, the
    exponential taken through the eigenbasis of the Hermitian ``n.J``. At
    ``s = 1/2`` this reproduces ``a``; for half-integer ``s`` the sign of
    ``a`` is faithfully carried.
    """
    dim = _spin_dim(s)
    if dim == 1:
        return np.ones((1, 1), dtype=np.complex128)
    n, angle = su2_axis_angle(a)
    jx, jy, jz = spin_matrices(dim - 1)
    gen = n[0] * jx + n[1] * jy + n[2] * jz
    w, V = np.linalg.eigh(gen)
    return (V * np.exp(1j * angle * w)) @ V.conj().T


def transport_massive(state: SpinState, A) -> SpinState:
    A = np.asarray(A, dtype=np.complex128)
    q = transform_massive(state.momentum, A)
    a = inv2(boost_massive(q)) @ A @ boost_massive(state.momentum)
    amps = wigner_D(a, state.s) @ state.amps
    return SpinState(state.s, q, tuple(amps), state.eta)


def parity_massive(state: SpinState) -> SpinState:
    return SpinState(
        state.s,
        state.momentum.tilde(),
        tuple(state.eta * c for c in state.amplitudes),
        state.eta,
    )


def su2_residual(a) -> float:
    a = np.asarray(a)
    return float(max(np.max(np.abs(a.conj().T @ a - IDENTITY)), abs(np.linalg.det(a) - 1)))


"""2x2 complex matrix algebra and the SL(2,C) -> SO(3,1) spinor map.

Conventions
-----------
Metric ``g = diag(-1, 1, 1, 1)``. A four-vector ``p`` is paired with the
Hermitian matrix ``p.sigma = p0*1 + p1*s1 + p2*s2 + p3*s3`` and an SL(2,C)
element acts by ``H -> A H A^dagger``. The Lorentz matrix is read off column
by column, ``Lambda[nu, mu] = tr(sigma_nu A sigma_mu A^dagger) / 2``.

With this column reading ``exp(i*angle*(n.sigma)/2)`` rotates vectors by
``-angle`` about ``n`` (equivalently by ``angle`` about ``-n``), and
``exp(-v*(n.sigma)/2)`` boosts *against* ``n``: the fiducial lightlike vector
``(1, 0, 0, 1)`` is red-shifted by ``boost_su2_axis3(v)`` for ``v > 0``.

Most functions broadcast over leading axes so that the randomized
verification battery can work on whole batches at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, NonHermitian, NotInE2, SingularMatrix

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
IDENTITY = SIGMA[0]

# default tolerances: constructor invariants, derived identities, E(2) membership
TOL_INVARIANT = 1e-12
TOL_DERIVED = 1e-10
TOL_E2 = 1e-9

FOUR_PI = 4.0 * math.pi
TWO_PI = 2.0 * math.pi


def cis(x: float) -> complex:
    """``exp(i x)``, exact when ``x`` is a float multiple of ``pi/2``.

    Keeps ``exp(i*pi) == -1`` exactly so that double-cover signs survive.
    """
    k = x / (0.5 * math.pi)
    if k == int(k) and abs(k) < 2**52:
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(k) % 4]
    return complex(math.cos(x), math.sin(x))


def minkowski_dot(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return -p[..., 0] * q[..., 0] + np.sum(p[..., 1:] * q[..., 1:], axis=-1)


def tilde(p) -> np.ndarray:
    """Spatial inversion ``(p0, -p_vec)``."""
    p = np.array(p, dtype=float)
    p[..., 1:] *= -1.0
    return p


def pauli_form(p) -> np.ndarray:
    """Hermitian matrix ``p0*1 + p_vec.sigma``; broadcasts over leading axes."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 4:
        raise ValueError(f"expected four components, got shape {p.shape}")
    return np.einsum("...m,mij->...ij", p.astype(np.complex128), SIGMA)


def four_vector_of(H, tol: float = TOL_DERIVED) -> np.ndarray:
    """Inverse of :func:`pauli_form`, ``p_mu = tr(sigma_mu H) / 2``.

    The anti-Hermitian part must be below ``tol * max(1, |H|_max)``.
    """
    H = np.asarray(H, dtype=np.complex128)
    scale = np.maximum(1.0, np.max(np.abs(H), axis=(-2, -1)))
    anti = np.max(np.abs(H - np.conj(np.swapaxes(H, -1, -2))), axis=(-2, -1)) / 2
    if np.any(anti > tol * scale):
        raise NonHermitian(f"anti-Hermitian part {np.max(anti):.3e} exceeds tolerance {tol:.1e}")
    return 0.5 * np.real(np.einsum("mij,...ji->...m", SIGMA, H))


def dagger(A) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def det2(A) -> np.ndarray:
    A = np.asarray(A)
    return A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]


def inv2(A) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 matrix (adjugate, no division)."""
    A = np.asarray(A, dtype=np.complex128)
    out = np.empty_like(A)
    out[..., 0, 0] = A[..., 1, 1]
    out[..., 1, 1] = A[..., 0, 0]
    out[..., 0, 1] = -A[..., 0, 1]
    out[..., 1, 0] = -A[..., 1, 0]
    return out


def as_matrix2(m) -> np.ndarray:
    A = np.asarray(m, dtype=np.complex128)
    if A.shape != (2, 2):
        raise InvariantViolation(f"expected a 2x2 matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvariantViolation("matrix has non-finite entries")
    return A


def check_sl2c(m, tol: float = TOL_INVARIANT) -> np.ndarray:
    """Validate a unit-determinant complex 2x2 matrix and return it as an array."""
    A = as_matrix2(m)
    d = det2(A)
    if abs(d - 1) > tol:
        raise InvariantViolation(f"SL(2,C) determinant invariant violated: |det - 1| = {abs(d - 1):.3e}")
    return A


def check_su2(m, tol: float = TOL_INVARIANT) -> np.ndarray:
    A = check_sl2c(m, tol)
    r = np.max(np.abs(dagger(A) @ A - IDENTITY))
    if r > tol:
        raise InvariantViolation(f"SU(2) unitarity invariant violated: |a^dag a - 1| = {r:.3e}")
    return A


def normalize_sl2c(m) -> np.ndarray:
    """Divide by the principal square root of the determinant."""
    A = as_matrix2(m)
    d = det2(A)
    if abs(d) < 1e-8:
        raise SingularMatrix(f"|det| = {abs(d):.3e} is too small to normalize")
    return A / np.sqrt(d)


def spinor_map(A) -> np.ndarray:
    """Lorentz matrix of ``A``; ``pauli_form(Lambda @ p) == A pauli_form(p) A^dagger``.

    Quadratic in ``A``, so ``spinor_map(-A)`` is bitwise equal to ``spinor_map(A)``.
    """
    A = np.asarray(A, dtype=np.complex128)
    conj = np.einsum("...ij,mjk,...lk->...mil", A, SIGMA, np.conj(A))
    return 0.5 * np.real(np.einsum("nij,...mji->...nm", SIGMA, conj))


def lorentz_residual(L) -> np.ndarray:
    """``max |L^T g L - g|`` per matrix."""
    L = np.asarray(L, dtype=float)
    r = np.swapaxes(L, -1, -2) @ METRIC @ L - METRIC
    return np.max(np.abs(r), axis=(-2, -1))


def transform_four_vector(A, p) -> np.ndarray:
    """``Lambda(A) p`` computed through ``A (p.sigma) A^dagger``."""
    A = np.asarray(A, dtype=np.complex128)
    return four_vector_of(A @ pauli_form(p) @ dagger(A))


def unit_vector(n, tol: float = TOL_INVARIANT) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise InvariantViolation(f"expected a finite 3-vector, got {n!r}")
    if abs(np.linalg.norm(n) - 1) > tol:
        raise InvariantViolation(f"axis is not a unit vector: |n| = {np.linalg.norm(n)!r}")
    return n


def n_vec(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def rotation_su2(axis, angle: float) -> np.ndarray:
    """``exp(i*angle*(axis.sigma)/2)``."""
    n = unit_vector(axis)
    h = cis(0.5 * angle)
    c, s = h.real, h.imag
    return c * IDENTITY + 1j * s * np.einsum("k,kij->ij", n, SIGMA[1:])


def boost_su2(axis, rapidity: float) -> np.ndarray:
    """``exp(-rapidity*(axis.sigma)/2)``, Hermitian and positive."""
    n = unit_vector(axis)
    c, s = math.cosh(0.5 * rapidity), math.sinh(0.5 * rapidity)
    return c * IDENTITY - s * np.einsum("k,kij->ij", n, SIGMA[1:])


def boost_su2_axis3(rapidity: float) -> np.ndarray:
    return np.diag([math.exp(-0.5 * rapidity), math.exp(0.5 * rapidity)]).astype(np.complex128)


def su2_a_from_half(c: float, s: float, eiphi: complex) -> np.ndarray:
    """``a(theta, phi)`` from ``cos(theta/2)``, ``sin(theta/2)`` and ``exp(i phi)``."""
    return np.array([[c, -s * eiphi.conjugate()], [s * eiphi, c]], dtype=np.complex128)


def su2_a(theta: float, phi: float) -> np.ndarray:
    """``exp[(i theta/2)(s1 sin(phi) - s2 cos(phi))]``.

    Conjugation by this element rotates ``n(t, phi).sigma`` into
    ``n(t + theta, phi).sigma``; in particular it carries the 3-axis to
    ``n(theta, phi)``.
    """
    h = cis(0.5 * theta)
    return su2_a_from_half(h.real, h.imag, cis(phi))


def sl2c_exp(M) -> np.ndarray:
    """Exponential of traceless 2x2 matrices, ``cosh(k) 1 + sinh(k)/k M`` with ``k^2 = -det M``."""
    M = np.asarray(M, dtype=np.complex128)
    k = np.sqrt(-det2(M))
    small = np.abs(k) < 1e-4
    k2 = k * k
    safe = np.where(small, 1.0, k)
    shc = np.where(small, 1 + k2 / 6 + k2 * k2 / 120, np.sinh(safe) / safe)
    return np.cosh(k)[..., None, None] * IDENTITY + shc[..., None, None] * M


@dataclass(frozen=True)
class E2Element:
    """Little-group element ``h(phi, alpha) = [[e^{i phi/2}, alpha], [0, e^{-i phi/2}]]``.

    ``phi`` is folded into ``[0, 4 pi)``: the range is a double cover, and
    ``phi`` and ``phi + 2 pi`` differ by the central element ``-1``.
    """

    phi: float
    alpha: complex = 0j

    def __post_init__(self):
        phi = float(self.phi)
        if not math.isfinite(phi) or not np.isfinite(complex(self.alpha)):
            raise InvariantViolation("E(2) element must have finite parameters")
        phi = math.fmod(phi, FOUR_PI)
        if phi < 0:
            phi += FOUR_PI
        if phi >= FOUR_PI:
            phi = 0.0
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "alpha", complex(self.alpha))

    def matrix(self) -> np.ndarray:
        return e2_matrix(self)


def e2_matrix(h: E2Element) -> np.ndarray:
    d = cis(0.5 * h.phi)
    return np.array([[d, h.alpha], [0, d.conjugate()]], dtype=np.complex128)


def e2_recognize(A, tol: float = TOL_E2) -> E2Element:
    """Read ``(phi, alpha)`` off an element of the fiducial stability group.

    ``phi/2`` is the principal argument of ``A[0, 0]``; since ``A[1, 1]`` is
    its inverse for a unit-determinant triangular matrix, the sign needed to
    place ``phi`` in ``[0, 4 pi)`` is already fixed by ``A[0, 0]``.
    """
    A = np.asarray(A, dtype=np.complex128)
    scale = np.max(np.abs(A))
    lower = abs(A[1, 0])
    if lower > tol * scale:
        raise NotInE2(f"lower-left entry {lower:.3e} exceeds {tol:.1e} * |A|")
    for d in (A[0, 0], A[1, 1]):
        if abs(abs(d) - 1) > tol:
            raise NotInE2(f"diagonal entry modulus {abs(d)!r} is not 1 within {tol:.1e}")
    phi = 2.0 * float(np.angle(A[0, 0]))
    return E2Element(phi, complex(A[0, 1]))

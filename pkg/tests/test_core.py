import math

import numpy as np
import pytest
from hypothesis import given

from oracles import boost_4x4, rotation_4x4
from strategies import e2_elements, sl2c
from wignerpol.core import (
    IDENTITY,
    METRIC,
    SIGMA,
    E2Element,
    boost_su2,
    boost_su2_axis3,
    check_sl2c,
    check_su2,
    cis,
    e2_matrix,
    e2_recognize,
    four_vector_of,
    inv2,
    lorentz_residual,
    minkowski_dot,
    n_vec,
    normalize_sl2c,
    pauli_form,
    rotation_su2,
    sl2c_exp,
    spinor_map,
    su2_a,
    transform_four_vector,
)
from wignerpol.errors import InvariantViolation, NonHermitian, NotInE2, SingularMatrix

S1, S2, S3 = SIGMA[1], SIGMA[2], SIGMA[3]


class TestPauliForm:
    def test_examples(self):
        assert np.array_equal(pauli_form([1, 0, 0, 1]), np.diag([2, 0]))
        assert np.array_equal(pauli_form([1, 0, 0, 0]), IDENTITY)
        assert np.array_equal(pauli_form([0, 1, 0, 0]), S1)

    def test_inverse_examples(self):
        assert np.array_equal(four_vector_of(np.diag([2, 0])), [1, 0, 0, 1])
        assert np.array_equal(four_vector_of(IDENTITY), [1, 0, 0, 0])
        assert np.array_equal(four_vector_of([[0, -1j], [1j, 0]]), [0, 0, 1, 0])

    def test_determinant_is_minus_square(self, rng):
        p = rng.normal(size=(500, 4))
        d = np.linalg.det(pauli_form(p))
        assert np.allclose(d.real, -minkowski_dot(p, p), atol=1e-12)
        assert np.max(np.abs(d.imag)) < 1e-12

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitian):
            four_vector_of([[1, 1], [0, 1]])


class TestSpinorMap:
    def test_identity(self):
        assert np.array_equal(spinor_map(IDENTITY), np.eye(4))

    def test_rotation_by_half_pi(self):
        # conjugating each sigma_mu and reading columns by hand
        A = np.diag([cis(math.pi / 4), cis(-math.pi / 4)])
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 1
        expected[2, 1], expected[1, 2] = -1, 1
        assert np.allclose(spinor_map(A), expected, atol=1e-15)

    def test_boost_example(self):
        A = np.diag([math.sqrt(2), 1 / math.sqrt(2)])
        assert np.allclose(spinor_map(A) @ [1, 0, 0, 1], [2, 0, 0, 2], atol=1e-15)
        L = spinor_map(A)
        assert np.allclose(L, [[1.25, 0, 0, 0.75], [0, 1, 0, 0], [0, 0, 1, 0], [0.75, 0, 0, 1.25]], atol=1e-15)

    def test_matches_closed_form_rotations_and_boosts(self, rng):
        for _ in range(50):
            n = rng.normal(size=3)
            n /= np.linalg.norm(n)
            x = rng.uniform(-3, 3)
            # exp(i x n.sigma/2) rotates by -x; exp(-v n.sigma/2) boosts along -n
            assert np.allclose(spinor_map(rotation_su2(n, x)), rotation_4x4(n, -x), atol=1e-13)
            assert np.allclose(spinor_map(boost_su2(n, x)), boost_4x4(-n, x), atol=1e-12)

    def test_column_reading_convention(self, rng):
        A = normalize_sl2c(rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2)))
        p = rng.normal(size=4)
        assert np.allclose(spinor_map(A) @ p, four_vector_of(A @ pauli_form(p) @ A.conj().T), atol=1e-12)

    @given(sl2c(), sl2c())
    def test_homomorphism(self, A, B):
        assert np.max(np.abs(spinor_map(B @ A) - spinor_map(B) @ spinor_map(A))) < 1e-10
        assert lorentz_residual(spinor_map(A)) < 1e-10

    @given(sl2c())
    def test_kernel_is_sign(self, A):
        assert np.array_equal(spinor_map(-A), spinor_map(A))

    def test_batched(self, rng):
        A = np.stack([rotation_su2([0, 0, 1], x) for x in rng.uniform(0, 6, 5)])
        assert spinor_map(A).shape == (5, 4, 4)
        assert np.allclose(spinor_map(A)[2], spinor_map(A[2]))


class TestGenerators:
    def test_rotation_examples(self):
        assert np.array_equal(rotation_su2([0, 0, 1], 0.0), IDENTITY)
        assert np.array_equal(rotation_su2([0, 1, 0], math.pi), 1j * S2)
        assert np.array_equal(rotation_su2([0, 0, 1], 2 * math.pi), -IDENTITY)

    def test_rotation_rejects_non_unit_axis(self):
        with pytest.raises(InvariantViolation):
            rotation_su2([0, 0, 2], 1.0)

    def test_boost_axis3_examples(self):
        assert np.array_equal(boost_su2_axis3(0.0), IDENTITY)
        assert np.allclose(boost_su2_axis3(math.log(2)), np.diag([2**-0.5, 2**0.5]), atol=1e-15)
        assert np.allclose(transform_four_vector(boost_su2_axis3(math.log(2)), [1, 0, 0, 1]), [0.5, 0, 0, 0.5])

    def test_boost_axis3_agrees_with_general_boost(self):
        assert np.allclose(boost_su2_axis3(0.8), boost_su2([0, 0, 1], 0.8), atol=1e-15)

    def test_exp_matches_series(self, rng):
        for scale in (1e-6, 1e-3, 0.5, 2.0):
            M = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            M -= np.trace(M) / 2 * IDENTITY
            series = IDENTITY.copy()
            term = IDENTITY.copy()
            for k in range(1, 60):
                term = term @ M / k
                series = series + term
            assert np.allclose(sl2c_exp(M), series, atol=1e-13)
            assert abs(np.linalg.det(sl2c_exp(M)) - 1) < 1e-12


class TestSu2A:
    def test_theta_zero(self):
        for phi in (0.0, 1.0, 4.0):
            assert np.array_equal(su2_a(0.0, phi), IDENTITY)

    def test_carries_three_axis(self, rng):
        for _ in range(50):
            t, f = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            a = su2_a(t, f)
            lhs = a @ S3 @ a.conj().T
            rhs = np.einsum("k,kij->ij", n_vec(t, f), SIGMA[1:])
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_exponential_form(self, rng):
        for _ in range(20):
            t, f = rng.uniform(-4, 4), rng.uniform(0, 7)
            gen = 0.5j * t * (S1 * math.sin(f) - S2 * math.cos(f))
            assert np.allclose(su2_a(t, f), sl2c_exp(gen), atol=1e-13)

    def test_periodicity(self, rng):
        for _ in range(50):
            t, f = rng.uniform(-7, 7), rng.uniform(0, 7)
            assert np.max(np.abs(su2_a(-t, math.pi + f) - su2_a(t, f))) < 1e-12


class TestE2:
    def test_matrix_examples(self):
        assert np.array_equal(e2_matrix(E2Element(0.0, 0)), IDENTITY)
        assert np.array_equal(e2_matrix(E2Element(2 * math.pi, 0)), -IDENTITY)

    @given(e2_elements())
    def test_fixes_fiducial(self, h):
        img = spinor_map(e2_matrix(h)) @ [1, 0, 0, 1]
        assert np.allclose(img, [1, 0, 0, 1], atol=1e-12 * (1 + abs(h.alpha) ** 2))

    def test_recognize_examples(self):
        h = e2_recognize(IDENTITY)
        assert (h.phi, h.alpha) == (0.0, 0j)
        h = e2_recognize(np.array([[1j, 3 + 2j], [0, -1j]]))
        assert h.phi == pytest.approx(math.pi, abs=1e-15) and h.alpha == 3 + 2j

    def test_recognize_minus_identity(self):
        assert e2_recognize(-IDENTITY).phi == 2 * math.pi

    @given(e2_elements())
    def test_roundtrip(self, h):
        g = e2_recognize(e2_matrix(h))
        d = abs(g.phi - h.phi)
        assert min(d, 4 * math.pi - d) < 1e-12
        assert abs(g.alpha - h.alpha) < 1e-12

    def test_rejects_lower_left(self):
        with pytest.raises(NotInE2):
            e2_recognize(np.array([[1, 0], [0.1, 1]]))

    def test_rejects_non_unit_diagonal(self):
        with pytest.raises(NotInE2):
            e2_recognize(np.diag([2.0, 0.5]))

    def test_phi_folding(self):
        assert E2Element(-0.5).phi == pytest.approx(4 * math.pi - 0.5)
        assert E2Element(4 * math.pi).phi == 0.0


class TestValidation:
    def test_check_sl2c(self):
        with pytest.raises(InvariantViolation, match="determinant"):
            check_sl2c(np.diag([2.0, 1.0]))
        with pytest.raises(InvariantViolation):
            check_sl2c(np.eye(3))
        with pytest.raises(InvariantViolation):
            check_sl2c([[np.nan, 0], [0, 1]])

    def test_check_su2(self):
        check_su2(rotation_su2([1, 0, 0], 0.3))
        with pytest.raises(InvariantViolation, match="unitarity"):
            check_su2(boost_su2_axis3(0.5))

    def test_normalize(self):
        A = normalize_sl2c(np.diag([4.0, 1.0]))
        assert abs(np.linalg.det(A) - 1) < 1e-15
        with pytest.raises(SingularMatrix):
            normalize_sl2c(np.zeros((2, 2)))

    def test_inverse(self, rng):
        M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        A = sl2c_exp(M - np.trace(M) / 2 * IDENTITY)
        assert np.allclose(inv2(A) @ A, IDENTITY, atol=1e-13)

    def test_metric(self):
        assert np.array_equal(METRIC, np.diag([-1, 1, 1, 1]))

    def test_cis_exact_quarter_turns(self):
        assert [cis(k * math.pi / 2) for k in range(-4, 5)] == [1, 1j, -1, -1j, 1, 1j, -1, -1j, 1]
        assert cis(0.3) == complex(math.cos(0.3), math.sin(0.3))

"""Generalized quaternion algebra and its spin representation."""

import numpy as np
import pytest

from aqlab import quat as qt
from aqlab import scalars as sk
from aqlab.errors import NotPurelyImaginary, SignatureMismatch

ALPHAS = (-1, 1)


def units(alpha):
    return qt.one(alpha), qt.i_(alpha), qt.j_(alpha), qt.k_(alpha)


def basis_product_table(alpha):
    """Left-multiplication table worked out from the defining relations.

    i^2 = j^2 = alpha, k^2 = -1, ij = k = -ji, ik = alpha j = -ki,
    jk = -alpha i = -kj.  Kept independent of qmul so it can serve as an
    oracle.
    """
    a = float(alpha)
    table = np.zeros((4, 4, 4))  # table[p, q] = coefficients of e_p e_q
    table[0, :] = np.eye(4)
    table[:, 0] = np.eye(4)
    table[1, 1] = [a, 0, 0, 0]
    table[2, 2] = [a, 0, 0, 0]
    table[3, 3] = [-1, 0, 0, 0]
    table[1, 2] = [0, 0, 0, 1]
    table[2, 1] = [0, 0, 0, -1]
    table[1, 3] = [0, 0, a, 0]
    table[3, 1] = [0, 0, -a, 0]
    table[2, 3] = [0, -a, 0, 0]
    table[3, 2] = [0, a, 0, 0]
    return table


def left_mult_matrix(p, table):
    """4x4 matrix of x -> p x built from the basis table."""
    return np.einsum("p,pqr->rq", p.coeffs(), table)


class TestProduct:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_defining_relations(self, alpha):
        one, i, j, k = units(alpha)
        assert qt.qmul(i, j) == k
        assert qt.qmul(i, i) == qt.scale(alpha, one)
        assert qt.qmul(j, j) == qt.scale(alpha, one)
        assert qt.qmul(k, k) == -one

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_unit(self, alpha):
        q = qt.QuaternionA(0.3, -1.2, 0.5, 2.0, alpha)
        assert qt.qmul(qt.one(alpha), q) == q
        assert qt.qmul(q, qt.one(alpha)) == q

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_against_left_multiplication_oracle(self, alpha, rng):
        table = basis_product_table(alpha)
        for _ in range(200):
            p = qt.from_coeffs(rng.normal(size=4), alpha)
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            got = qt.qmul(p, q).coeffs()
            want = left_mult_matrix(p, table) @ q.coeffs()
            assert np.abs(got - want).max() < 1e-12 * (1 + np.abs(want).max())

    def test_signature_mismatch(self):
        with pytest.raises(SignatureMismatch):
            qt.qmul(qt.i_(1), qt.i_(-1))


class TestNormAndConjugate:
    def test_norm_examples(self):
        q = qt.QuaternionA(1, 1, 1, 1, -1)
        assert qt.qnormsq(q) == 4.0
        q = qt.QuaternionA(1, 1, 1, 1, 1)
        assert qt.qnormsq(q) == 0.0
        assert qt.qnormsq(qt.QuaternionA(5, 0, 0, 0, 1)) == 25.0

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_norm_is_product_with_conjugate(self, alpha, rng):
        for _ in range(50):
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            prod = qt.qmul(q, qt.qconj(q))
            assert prod.a == pytest.approx(qt.qnormsq(q), abs=1e-12, rel=1e-12)
            assert max(abs(prod.b), abs(prod.c), abs(prod.d)) < 1e-12

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_composition_property(self, alpha, rng):
        for _ in range(1000):
            p = qt.from_coeffs(rng.normal(size=4), alpha)
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            lhs = qt.qnormsq(qt.qmul(p, q))
            rhs = qt.qnormsq(p) * qt.qnormsq(q)
            assert abs(lhs - rhs) < 1e-10 * (1 + abs(rhs))


class TestScalarProduct:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_orthonormal_pattern(self, alpha):
        _, i, j, k = units(alpha)
        assert qt.scalar_product(i, j) == 0.0
        assert qt.scalar_product(i, i) == -alpha
        assert qt.scalar_product(k, k) == 1.0

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_polarization_of_norm(self, alpha, rng):
        for _ in range(50):
            p = qt.from_coeffs(rng.normal(size=4), alpha)
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            pola = qt.qmul(qt.qconj(p), q) + qt.qmul(qt.qconj(q), p)
            assert 0.5 * pola.a == pytest.approx(qt.scalar_product(p, q),
                                                 abs=1e-12, rel=1e-10)
            assert qt.scalar_product(q, q) == pytest.approx(qt.qnormsq(q))

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_anticommutator_identity_on_imaginaries(self, alpha, rng):
        for _ in range(100):
            p = qt.QuaternionA(0, *rng.normal(size=3), alpha)
            q = qt.QuaternionA(0, *rng.normal(size=3), alpha)
            anti = qt.qmul(p, q) + qt.qmul(q, p)
            want = qt.scale(-2.0 * qt.scalar_product(p, q), qt.one(alpha))
            assert np.abs(anti.coeffs() - want.coeffs()).max() < 1e-12 * (
                1 + np.abs(want.coeffs()).max())


class TestSpinMatrix:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_pauli_images_exact(self, alpha):
        s1, s2, s3 = qt.pauli_matrices(alpha)
        i = sk.imag_unit(alpha)
        assert s1[0, 0] == i and s1[1, 1] == sk.neg(i)
        assert s1[0, 1].re == s1[0, 1].im == 0.0
        assert s2[0, 1] == sk.from_real(alpha, alpha)
        assert s2[1, 0] == sk.one(alpha)
        assert s3[0, 1] == sk.scale(alpha, i)
        assert s3[1, 0] == sk.neg(i)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_homomorphism_and_determinant(self, alpha, rng):
        for _ in range(200):
            p = qt.from_coeffs(rng.normal(size=4), alpha)
            q = qt.from_coeffs(rng.normal(size=4), alpha)
            lhs = qt.spin_matrix(qt.qmul(p, q))
            rhs = qt.spin_matrix(p) @ qt.spin_matrix(q)
            assert (lhs - rhs).max_abs() < 1e-10 * (1 + rhs.max_abs())
            d = qt.spin_matrix(q).det()
            assert d.re == pytest.approx(qt.qnormsq(q), abs=1e-12, rel=1e-10)
            assert abs(d.im) < 1e-12


class TestAdjointMatrix:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_basis_image(self, alpha):
        got = qt.ad_matrix(qt.i_(alpha))
        want = np.array([[0, 0, 0], [0, 0, 2 * alpha], [0, 2, 0]], float)
        assert np.array_equal(got, want)
        assert np.array_equal(qt.ad_matrix(qt.QuaternionA(0, 0, 0, 0, alpha)),
                              np.zeros((3, 3)))

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_trace_relations(self, alpha, rng):
        ad = qt.ad_matrix(qt.i_(alpha))
        assert -np.trace(ad @ ad) == pytest.approx(-8.0 * alpha)
        for _ in range(100):
            q = qt.QuaternionA(0, *rng.normal(size=3), alpha)
            n8 = 8.0 * qt.qnormsq(q)
            adq = qt.ad_matrix(q)
            assert -np.trace(adq @ adq) == pytest.approx(n8, rel=1e-10, abs=1e-12)
            m = qt.spin_matrix(q)
            assert -4.0 * (m @ m).real_trace() == pytest.approx(n8, rel=1e-10,
                                                                abs=1e-12)

    def test_rejects_non_imaginary(self):
        with pytest.raises(NotPurelyImaginary):
            qt.ad_matrix(qt.QuaternionA(1, 1, 0, 0, -1))


class TestCommutator:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_table(self, alpha):
        _, i, j, k = units(alpha)
        assert qt.iq_commutator(i, j) == qt.scale(2, k)
        assert qt.iq_commutator(i, i).coeffs().max() == 0.0
        # jk = -alpha i and kj = alpha i, hence [j, k] = -2 alpha i; the
        # classical case alpha = -1 recovers [j, k] = 2i.
        assert qt.iq_commutator(j, k) == qt.scale(-2 * alpha, i)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_jacobi_and_closure(self, alpha, rng):
        for _ in range(50):
            p, q, r = (qt.QuaternionA(0, *rng.normal(size=3), alpha)
                       for _ in range(3))
            assert abs(qt.iq_commutator(p, q).a) < 1e-12
            jac = (qt.iq_commutator(qt.iq_commutator(p, q), r)
                   + qt.iq_commutator(qt.iq_commutator(q, r), p)
                   + qt.iq_commutator(qt.iq_commutator(r, p), q))
            assert np.abs(jac.coeffs()).max() < 1e-10

    def test_rejects_non_imaginary(self):
        with pytest.raises(NotPurelyImaginary):
            qt.iq_commutator(qt.one(-1), qt.i_(-1))

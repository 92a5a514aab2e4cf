#
# Tests for teleportation, the tau = 0 cascade and binding probabilities.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import unittest

import numpy as np

import posner


class PhiThetaTest(unittest.TestCase):
    """ Tests |phi(theta)> and the tau qutrit basis. """

    def test_weights(self):
        for theta in (0, 0.3, np.pi / 4, 1.2, np.pi):
            state = posner.prepare_phi_theta(theta)
            self.assertEqual(state.labels(), tuple(range(6)))
            np.testing.assert_allclose(
                posner.sector_weights(state.vector()),
                posner.phi_theta_weights(theta), atol=1e-12)
        np.testing.assert_allclose(
            posner.phi_theta_weights(np.pi / 4), [1 / 3] * 3)

    def test_basis(self):
        basis = posner.TauQutritBasis()
        v = basis.vectors()
        np.testing.assert_allclose(v.conj() @ v.T, np.eye(3), atol=1e-12)
        plus = posner.prepare_phi_theta(np.pi / 4).vector()
        self.assertAlmostEqual(abs(np.vdot(basis.plus_state(), plus)), 1)
        c = np.array([0.6, 0.8j, 0])
        np.testing.assert_allclose(
            basis.coefficients(basis.encode(c)), c, atol=1e-12)

    def test_injected_basis(self):
        vectors = [posner.charge_sector(j)[0].vector for j in range(3)]
        basis = posner.TauQutritBasis(vectors=vectors)
        self.assertIsNone(basis.theta())
        self.assertRaises(
            posner.InvariantError, posner.TauQutritBasis,
            vectors=[vectors[1], vectors[0], vectors[2]])


class TeleportTest(unittest.TestCase):
    """ Tests incoherent teleportation. """

    @classmethod
    def setUpClass(cls):
        cls.basis = posner.TauQutritBasis()

    def test_zero(self):
        hit = posner.incoherent_teleport(
            [1, 0, 0], self.basis, force_outcome=True)
        miss = posner.incoherent_teleport(
            [1, 0, 0], self.basis, force_outcome=False)
        self.assertTrue(hit.bound)
        self.assertFalse(miss.bound)
        np.testing.assert_allclose(hit.distribution, [1, 0, 0], atol=1e-10)
        np.testing.assert_allclose(
            miss.distribution, [0, 0.5, 0.5], atol=1e-10)
        self.assertAlmostEqual(hit.probability, 1 / 3)

    def test_random_inputs(self):
        rng = np.random.default_rng(11)
        for i in range(3):
            c = rng.normal(size=3) + 1j * rng.normal(size=3)
            c /= np.linalg.norm(c)
            hit = posner.incoherent_teleport(c, self.basis, force_outcome=True)
            miss = posner.incoherent_teleport(
                c, self.basis, force_outcome=False)
            np.testing.assert_allclose(
                hit.distribution, np.abs(c)**2, atol=1e-9)
            np.testing.assert_allclose(
                miss.distribution, posner.failure_distribution(np.abs(c)**2),
                atol=1e-9)
            self.assertAlmostEqual(np.sum(hit.joint()), 1)

            # The encoded POVM reproduces the failure branch
            state = posner.QState(self.basis.encode(c), range(6))
            m = posner.measure_povm(state, posner.encoded_povm(), seed=i)
            np.testing.assert_allclose(
                m.probabilities, miss.distribution, atol=1e-9)

    def test_state_input(self):
        state = posner.QState(self.basis.vector(2), range(6))
        hit = posner.incoherent_teleport(state, self.basis, force_outcome=True)
        np.testing.assert_allclose(hit.distribution, [0, 0, 1], atol=1e-10)

    def test_unnormalized(self):
        self.assertRaises(
            ValueError, posner.incoherent_teleport, [1, 1, 0], self.basis)
        self.assertRaises(
            ValueError, posner.incoherent_teleport, [1, 0], self.basis)

    def test_reconstruction(self):
        weights = np.array([0.5, 0.3, 0.2])
        failure = np.array(posner.failure_distribution(weights))
        joint = np.array([weights / 3, 2 / 3 * failure])
        out = posner.reconstruct_weights(joint)
        np.testing.assert_allclose(out['success'], weights)
        np.testing.assert_allclose(out['failure'], weights)

        sampled = posner.sample_records(joint, 1000, seed=1)
        self.assertAlmostEqual(np.sum(sampled), 1)
        np.testing.assert_allclose(
            sampled, posner.sample_records(joint, 1000, seed=1))

    def test_bit_accounting(self):
        bits = posner.binding_bit_accounting()
        self.assertEqual(bits['pairs'], 9)
        self.assertEqual(bits['total_bits'], 4)
        self.assertEqual(bits['recorded_bits'], 1)
        self.assertEqual(bits['forfeited_bits'], 3)
        self.assertEqual(bits['failure_bits'], 3)
        self.assertEqual(bits['success_bits'], 2)


class CascadeTest(unittest.TestCase):
    """ Tests the tau = 0 cascade. """

    def test_operator_identity(self):
        self.assertLess(posner.cascade_operator_identity(2, seed=1), 1e-9)

    def test_machine_cascade(self):
        m = posner.Machine(5)
        labels = m.prepare_state(posner.random_state(range(18), seed=5))
        for k, name in enumerate('ABC'):
            m.form_posner(name, labels[6 * k:6 * k + 6])
        records = posner.tau_zero_cascade(m, 'ABC')
        self.assertEqual([r['pair'] for r in records], [
            ['A', 'B'], ['B', 'C'], ['C', 'A']])
        for name in 'ABC':
            self.assertAlmostEqual(m.tau_weights(name)[0], 1)
        self.assertEqual(m.bound_pairs(), [])

    def test_cascade_errors(self):
        m = posner.Machine()
        self.assertRaises(ValueError, posner.tau_zero_cascade, m, ['A', 'B'])


class BindingProbabilityTest(unittest.TestCase):
    """ Tests binding probabilities of singlet patterns. """

    def test_table(self):
        expected = {
            'none': 43 / 128,
            'two_cross': 11 / 32,
            'three_cross': 3 / 8,
            'six': 1,
        }
        for name, p in expected.items():
            self.assertAlmostEqual(
                posner.binding_probability(name), p, places=12)
        one = posner.binding_probability('one')
        self.assertTrue(0 < one < 1)

    def test_patterns(self):
        self.assertRaises(ValueError, posner.SingletPattern.named, 'seven')
        self.assertRaises(
            posner.LabelError, posner.SingletPattern, [(0, 6), (0, 7)])
        self.assertRaises(posner.LabelError, posner.SingletPattern, [(0, 12)])
        pattern = posner.SingletPattern([(3, 6)])
        self.assertEqual(len(pattern.external()), 10)

    def test_singlet_invariance(self):
        # U (x) U on both halves of every singlet leaves the state unchanged
        rng = np.random.default_rng(3)
        pattern = posner.SingletPattern.named('three_cross')
        for i in range(3):
            u = posner.haar_rotations(rng, 12)
            for p, q in pattern.pairs():
                u[q] = u[p]
            self.assertAlmostEqual(
                posner.binding_probability(pattern, u), 3 / 8, places=10)

    def test_identity_sampler(self):
        mean, stderr = posner.random_rotation_average(
            'two_cross', 5, seed=1, sampler=posner.identity_rotations)
        self.assertAlmostEqual(mean, 11 / 32)
        self.assertAlmostEqual(stderr, 0)

    def test_rotation_average(self):
        a = posner.random_rotation_average(
            'six', 400, seed=2, chunk_size=100)
        b = posner.random_rotation_average(
            'six', 400, seed=2, chunk_size=100)
        self.assertEqual(a, b)
        mean, stderr = a
        self.assertLess(abs(mean - 43 / 128), 5 * stderr)

    def test_haar_uniformity(self):
        n = 4000
        u = posner.haar_rotations(np.random.default_rng(1), n)
        np.testing.assert_allclose(
            np.einsum('nij,nkj->nik', u, u.conj()),
            np.broadcast_to(np.eye(2), (n, 2, 2)), atol=1e-12)

        # Bloch vectors of U|0> spread evenly over the sphere
        psi = u[:, :, 0]
        bloch = np.stack([
            2 * np.real(psi[:, 0].conj() * psi[:, 1]),
            2 * np.imag(psi[:, 0].conj() * psi[:, 1]),
            np.abs(psi[:, 0])**2 - np.abs(psi[:, 1])**2], axis=1)
        self.assertLess(np.linalg.norm(bloch.mean(axis=0)), 3 / np.sqrt(n))


if __name__ == '__main__':
    unittest.main()

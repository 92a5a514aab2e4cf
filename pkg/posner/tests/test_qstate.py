#
# Tests for states, operators and measurements.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import unittest

import numpy as np
from scipy.stats import unitary_group

import posner


class QStateTest(unittest.TestCase):
    """ Tests the QState value type. """

    def test_invariants(self):
        self.assertRaises(posner.InvariantError, posner.QState, [1, 1], [0])
        self.assertRaises(
            posner.LabelError, posner.QState, [1, 0, 0, 0], [3, 3])
        self.assertRaises(ValueError, posner.QState, [1, 0, 0], [0, 1])
        rho = np.diag([1.5, -0.5])
        self.assertRaises(posner.InvariantError, posner.QState, rho, [0])

    def test_capacity(self):
        v = np.zeros(2**19)
        v[0] = 1
        self.assertRaises(posner.CapacityError, posner.QState, v, range(19))

    def test_first_label_is_most_significant(self):
        # |01>: label 0 is up, label 1 is down
        state = posner.QState([0, 1, 0, 0], [0, 1])
        self.assertAlmostEqual(
            posner.expectation(state, posner.build_pauli('z', 0)), 1)
        self.assertAlmostEqual(
            posner.expectation(state, posner.build_pauli('z', 1)), -1)

        swapped = state.reordered([1, 0])
        np.testing.assert_allclose(swapped.vector(), [0, 0, 1, 0])
        self.assertEqual(swapped.labels(), (1, 0))

    def test_relabelled(self):
        state = posner.QState([0, 1, 0, 0], [0, 1]).relabelled({0: 7})
        self.assertEqual(state.labels(), (7, 1))

    def test_json(self):
        state = posner.random_state([2, 5, 3], seed=1)
        again = posner.QState.from_json(state.to_json())
        self.assertEqual(again.labels(), state.labels())
        np.testing.assert_allclose(again.vector(), state.vector())

    def test_density_matrix(self):
        state = posner.QState(posner.SINGLET, [0, 1])
        rho = state.density_matrix()
        self.assertEqual(rho.shape, (4, 4))
        self.assertAlmostEqual(np.trace(rho).real, 1)


class OperatorTest(unittest.TestCase):
    """ Tests dense operators, products and application. """

    def test_kron(self):
        x = posner.build_pauli('x', 0)
        z = posner.build_pauli('z', 3)
        xz = posner.kron(x, z)
        self.assertEqual(xz.labels(), (0, 3))
        self.assertTrue(xz.is_unitary())
        self.assertRaises(posner.LabelError, posner.kron, x, x)

    def test_embedded(self):
        x = posner.build_pauli('x', 1).embedded([0, 1])
        np.testing.assert_allclose(
            x.matrix(), np.kron(np.eye(2), posner.pauli_matrix('x')))

    def test_apply_pure_and_mixed(self):
        x = posner.build_pauli('x', 0)
        pure = posner.apply(x, posner.QState([1, 0], [0]))
        mixed = posner.apply(x, posner.QState(np.diag([1, 0]), [0]))
        np.testing.assert_allclose(pure.vector(), [0, 1])
        np.testing.assert_allclose(mixed.data(), np.diag([0, 1]))

    def test_random_unitary(self):
        u = posner.DenseOperator(
            unitary_group.rvs(8, random_state=2), [5, 1, 3])
        self.assertTrue(u.is_unitary())
        self.assertFalse(u.is_hermitian())
        state = posner.random_state([1, 3, 5], seed=2)
        out = posner.apply(u, state)
        self.assertEqual(out.labels(), state.labels())
        self.assertAlmostEqual(np.linalg.norm(out.vector()), 1)
        back = posner.apply(u.dagger(), out)
        np.testing.assert_allclose(back.vector(), state.vector(), atol=1e-12)

    def test_projector_checks(self):
        self.assertTrue(posner.build_tau_projector(0).is_projector())
        self.assertFalse(posner.build_pauli('x', 0).is_projector())
        self.assertTrue(posner.build_pauli('y', 0).is_hermitian())


class PartialTraceTest(unittest.TestCase):
    """ Tests reduced states. """

    def test_singlet(self):
        state = posner.QState(posner.SINGLET, [4, 9])
        rho = posner.partial_trace(state, [9])
        self.assertEqual(rho.labels(), (9,))
        np.testing.assert_allclose(rho.data(), np.eye(2) / 2, atol=1e-12)

    def test_mixed_matches_pure(self):
        state = posner.random_state(range(4), seed=3)
        rho = posner.QState(state.density_matrix(), range(4))
        a = posner.partial_trace(state, [2, 0])
        b = posner.partial_trace(rho, [2, 0])
        np.testing.assert_allclose(a.data(), b.data(), atol=1e-12)

    def test_errors(self):
        state = posner.random_state(range(3), seed=1)
        self.assertRaises(posner.LabelError, posner.partial_trace, state, [])
        self.assertRaises(
            posner.LabelError, posner.partial_trace, state, [5])

    def test_mixed_cap(self):
        state = posner.random_state(range(12), seed=1)
        self.assertRaises(
            posner.CapacityError, posner.partial_trace, state, range(11))


class MeasurementTest(unittest.TestCase):
    """ Tests PVM and POVM measurements. """

    def setUp(self):
        self.zero = posner.DenseOperator(np.diag([1, 0]), [0])
        self.one = posner.DenseOperator(np.diag([0, 1]), [0])

    def test_forced_outcome(self):
        state = posner.QState(np.array([1, 1]) / np.sqrt(2), [0])
        m = posner.measure_pvm(state, [self.zero, self.one], outcome=1)
        self.assertEqual(m.outcome, 1)
        self.assertAlmostEqual(m.probability, 0.5)
        np.testing.assert_allclose(m.post_state.vector(), [0, 1])
        np.testing.assert_allclose(m.probabilities, [0.5, 0.5])

    def test_zero_probability(self):
        state = posner.QState([1, 0], [0])
        self.assertRaises(
            posner.RenormalizationError, posner.measure_pvm, state,
            [self.zero, self.one], outcome=1)

    def test_incomplete(self):
        state = posner.QState([1, 0], [0])
        self.assertRaises(
            posner.CompletenessError, posner.measure_pvm, state, [self.zero])
        half = posner.DenseOperator(np.eye(2) / 2, [0])
        self.assertRaises(
            posner.CompletenessError, posner.measure_pvm, state, [half, half])
        self.assertRaises(
            posner.CompletenessError, posner.measure_povm, state, [half])

    def test_seeded(self):
        projectors = [
            posner.build_tau_projector(j, range(6)) for j in range(3)]
        state = posner.random_state(range(6), seed=5)
        a = [posner.measure_pvm(state, projectors, seed=s).outcome
             for s in range(20)]
        b = [posner.measure_pvm(state, projectors, seed=s).outcome
             for s in range(20)]
        self.assertEqual(a, b)
        self.assertTrue(set(a) <= {0, 1, 2})

    def test_povm_mixed(self):
        # Unsharp measurement of sigma^z
        e = 0.8
        k0 = np.diag([np.sqrt((1 + e) / 2), np.sqrt((1 - e) / 2)])
        k1 = np.diag([np.sqrt((1 - e) / 2), np.sqrt((1 + e) / 2)])
        kraus = [
            posner.DenseOperator(k0, [0]), posner.DenseOperator(k1, [0])]
        state = posner.QState(np.diag([1, 0]), [0])
        m = posner.measure_povm(state, kraus, outcome=0)
        self.assertAlmostEqual(m.probability, 0.9)
        self.assertEqual(m.post_state.kind(), 'mixed')

    def test_overlap(self):
        state = posner.random_state(range(3), seed=2)
        phased = posner.QState(-1j * state.vector(), range(3))
        self.assertAlmostEqual(posner.overlap(state, phased), 1)
        self.assertAlmostEqual(
            posner.overlap(state, phased.reordered([2, 1, 0])), 1)


if __name__ == '__main__':
    unittest.main()

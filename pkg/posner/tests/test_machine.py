#
# Tests for the Posner machine and its scripts.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import os
import unittest

import numpy as np

import posner


def _two_posners(vector=None, seed=None):
    """ Returns a machine holding registers A (0-5) and B (6-11). """
    m = posner.Machine(seed)
    if vector is None:
        vector = posner.random_state(range(12), seed=seed)
    labels = m.prepare_state(vector)
    m.form_posner('A', labels[:6])
    m.form_posner('B', labels[6:])
    return m


class RegisterTest(unittest.TestCase):
    """ Tests register bookkeeping. """

    def test_singlet(self):
        m = posner.Machine()
        self.assertEqual(m.prepare_singlet(), (0, 1))
        self.assertEqual(m.prepare_singlet(), (2, 3))
        self.assertTrue(m.state().is_pure())
        self.assertEqual(m.labels(), (0, 1, 2, 3))

    def test_ownership(self):
        m = posner.Machine()
        for i in range(6):
            m.prepare_singlet()
        m.form_posner('A', range(6))
        self.assertRaises(
            posner.OwnershipError, m.form_posner, 'B', range(5, 11))
        self.assertRaises(
            posner.OwnershipError, m.form_posner, 'A', range(6, 12))
        self.assertRaises(
            posner.LabelError, m.form_posner, 'B', range(10, 16))
        self.assertRaises(posner.LabelError, m.form_posner, 'B', range(6, 11))
        self.assertRaises(posner.OwnershipError, m.discard, [0])
        self.assertRaises(posner.OwnershipError, m.register, 'Z')

    def test_capacity(self):
        m = posner.Machine()
        for i in range(9):
            m.prepare_singlet()
        self.assertRaises(posner.CapacityError, m.prepare_singlet)

    def test_discard(self):
        m = posner.Machine()
        m.prepare_singlet()
        m.discard([1])
        self.assertEqual(m.state().kind(), 'mixed')
        np.testing.assert_allclose(m.state().data(), np.eye(2) / 2)

    def test_hydrolyze_frees_qubits(self):
        m = _two_posners(seed=1)
        m.hydrolyze('A')
        self.assertNotIn('A', m.posners())
        m.form_posner('C', range(6))
        self.assertIn('C', m.posners())


class BindingTest(unittest.TestCase):
    """ Tests binding, separation and sector measurements. """

    def test_binding_projector(self):
        proj = posner.BindingProjector(range(6), range(6, 12))
        self.assertEqual(proj.trace(), 1376)

        state = posner.random_state(range(12), seed=7)
        labels = tuple(range(12))
        once = proj.project_vector(state.vector(), labels)
        twice = proj.project_vector(once, labels)
        np.testing.assert_allclose(once, twice, atol=1e-12)
        self.assertAlmostEqual(
            proj.probability(state), np.vdot(once, once).real)

    def test_maximally_mixed_binding(self):
        # Too many mixed qubits for the machine: both exact routes agree
        self.assertGreater(12, posner.MAX_MIXED_QUBITS)
        proj = posner.BindingProjector(range(6), range(6, 12))
        self.assertAlmostEqual(proj.trace() / 4096, 43 / 128, places=12)
        self.assertAlmostEqual(
            posner.binding_probability('none'), proj.trace() / 4096,
            places=12)

    def test_bound_sector(self):
        # Both Posners in |000000> have tau = 0, so they always bind
        v = np.zeros(2**12)
        v[0] = 1
        m = _two_posners(v)
        bound, p = m.attempt_binding('A', 'B')
        self.assertTrue(bound)
        self.assertAlmostEqual(p, 1)
        self.assertEqual(m.bound_pairs(), [('A', 'B')])

        self.assertRaises(posner.BindingLockError, m.permute_hextuple, 'A')
        self.assertRaises(
            posner.BindingLockError, m.rotate_hextuple, 'B', 'x', 0.1)
        m.rotate_dodectuple(('A', 'B'), 'z', 0.3)
        m.separate(('B', 'A'))
        self.assertEqual(m.bound_pairs(), [])
        self.assertRaises(posner.BindingLockError, m.separate, ('A', 'B'))

    def test_impossible_outcome(self):
        v = np.zeros(2**12)
        v[0] = 1
        m = _two_posners(v)
        self.assertRaises(
            posner.RenormalizationError, m.attempt_binding, 'A', 'B',
            force_outcome=False)
        self.assertRaises(posner.LabelError, m.attempt_binding, 'A', 'A')

    def test_forced_binding(self):
        m = _two_posners(seed=3)
        p = posner.BindingProjector(range(6), range(6, 12)).probability(
            m.state())
        bound, q = m.attempt_binding('A', 'B', force_outcome=True)
        self.assertTrue(bound)
        self.assertAlmostEqual(p, q)
        weights = [m.tau_weights('A'), m.tau_weights('B')]
        for j in range(3):
            self.assertGreaterEqual(weights[0][j], 0)
        self.assertAlmostEqual(sum(weights[0]), 1)

    def test_seeded_binding(self):
        a = [_two_posners(seed=s).attempt_binding('A', 'B')[0]
             for s in range(10)]
        b = [_two_posners(seed=s).attempt_binding('A', 'B')[0]
             for s in range(10)]
        self.assertEqual(a, b)

    def test_mixed_failure_branch(self):
        # Failure on a mixed state keeps a valid density matrix
        m = posner.Machine(2)
        labels = m.prepare_state(posner.random_state(range(8), seed=2))
        m.form_posner('A', labels[:6])
        m.discard(labels[6:])
        bound, p = m.bind_to_reference('A', force_outcome=False)
        self.assertFalse(bound)
        self.assertAlmostEqual(m.tau_weights('A')[0], 0)
        m.check_invariants()

    def test_measure_tau(self):
        v = np.zeros(2**12)
        v[0] = 1
        m = _two_posners(v)
        tau, p = m.measure_tau('A')
        self.assertEqual(tau, 0)
        self.assertAlmostEqual(p, 1)
        self.assertRaises(
            posner.RenormalizationError, m.measure_tau, 'B',
            force_outcome=1)

    def test_permute_changes_phase(self):
        # C acts on sector tau with eigenvalue omega**tau
        e = posner.charge_sector(1)[0]
        m = posner.Machine()
        m.form_posner('A', m.prepare_state(e.vector))
        m.permute_hextuple('A')
        np.testing.assert_allclose(
            m.state().vector(), posner.OMEGA * e.vector, atol=1e-12)

    def test_coarse_bell(self):
        check = posner.coarse_bell_check()
        self.assertTrue(check['passed'])
        self.assertEqual(len(check['choices']), 4)


class ScriptTest(unittest.TestCase):
    """ Tests machine scripts. """

    def test_shared_singlets(self):
        program = posner.load_json(
            os.path.join(posner.DIR_SCRIPTS, 'shared_singlets.json'))
        out = posner.execute_script(program, seed=1)
        self.assertEqual(sorted(out['final']['posners']), ['C', 'D'])
        self.assertEqual(out['final']['bound_pairs'], [])
        binds = [s for s in out['steps'] if s['op'] == 'bind']
        self.assertTrue(binds[0]['bound'])
        self.assertAlmostEqual(binds[0]['probability'], 1)

    def test_invalid_script(self):
        self.assertRaises(
            posner.ConfigError, posner.execute_script, [{'op': 'teleport'}])
        self.assertRaises(
            posner.ConfigError, posner.execute_script,
            [{'op': 'form_posner', 'name': 'A'}])

    def test_trace_is_reproducible(self):
        program = [
            {'op': 'prepare_singlet'} for i in range(6)] + [
            {'op': 'form_posner', 'name': 'A', 'labels': [0, 1, 2, 3, 4, 5]},
            {'op': 'form_posner', 'name': 'B',
             'labels': [6, 7, 8, 9, 10, 11]},
            {'op': 'bind', 'pair': ['A', 'B']},
        ]
        self.assertEqual(
            posner.execute_script(program, seed=4),
            posner.execute_script(program, seed=4))


if __name__ == '__main__':
    unittest.main()

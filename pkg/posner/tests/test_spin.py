#
# Tests for the spin algebra, the charge and the labelled bases.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import csv
import os
import tempfile
import unittest

import numpy as np
import scipy.linalg

import posner


class ChargeTest(unittest.TestCase):
    """ Tests the permutation charge and its sector projectors. """

    def test_c_operator(self):
        c = posner.build_c_operator().matrix()
        np.testing.assert_allclose(c @ c @ c, np.eye(64), atol=1e-12)
        self.assertTrue(posner.build_c_operator().is_unitary())

        # |100000> -> |010000>: the qubit at r1 moves to r2
        v = np.zeros(64)
        v[32] = 1
        self.assertEqual(int(np.argmax(np.abs(c @ v))), 16)
        self.assertRaises(posner.LabelError, posner.build_c_operator, range(5))

    def test_sector_projectors(self):
        projectors = [posner.build_tau_projector(j) for j in range(3)]
        ranks = [
            int(round(np.trace(p.matrix()).real)) for p in projectors]
        self.assertEqual(ranks, [24, 20, 20])
        np.testing.assert_allclose(
            sum(p.matrix() for p in projectors), np.eye(64), atol=1e-12)
        for p in projectors:
            self.assertTrue(p.is_projector())
        np.testing.assert_allclose(
            projectors[0].matrix() @ projectors[1].matrix(), 0, atol=1e-12)

        # Sector labels are taken modulo 3
        np.testing.assert_allclose(
            posner.build_tau_projector(-1).matrix(), projectors[2].matrix())

    def test_tau_project_matches_matrix(self):
        state = posner.random_state(range(8), seed=4)
        positions = [1, 2, 3, 5, 6, 7]
        for j in range(3):
            t = posner.tau_project(state.tensor(), positions, j)
            op = posner.build_tau_projector(j, positions)
            expected = posner.apply(op, state, check=False)
            np.testing.assert_allclose(
                t.reshape(-1), expected.vector(), atol=1e-12)

    def test_commutation(self):
        c = posner.build_c_operator().matrix()
        for op in (
                posner.build_sz_total(posner.HEXTUPLE),
                posner.build_s2_pair_product(),
                posner.build_s2_pair_sum(),
                posner.build_s2_total()):
            m = op.matrix()
            np.testing.assert_allclose(c @ m - m @ c, 0, atol=1e-10)

    def test_total_spin_spectrum(self):
        e = np.round(np.linalg.eigvalsh(posner.build_s2_total().matrix()))
        counts = [int(np.sum(e == s * (s + 1))) for s in range(4)]
        self.assertEqual(counts, [5, 27, 25, 7])

    def test_spin32_projector(self):
        p = posner.build_spin32_projector()
        self.assertTrue(p.is_projector())
        self.assertAlmostEqual(np.trace(p.matrix()).real, 4)


class RotationTest(unittest.TestCase):
    """ Tests single-qubit rotations. """

    def test_convention(self):
        np.testing.assert_allclose(
            posner.rotation_matrix('z', np.pi),
            -1j * posner.pauli_matrix('z'), atol=1e-12)
        np.testing.assert_allclose(
            posner.rotation_matrix([0, 0, 1], 0.4),
            posner.rotation_matrix('z', 0.4))

    def test_matches_exponential(self):
        n = np.array([0.6, 0, 0.8])
        ns = sum(
            x * posner.pauli_matrix(a) for x, a in zip(n, 'xyz'))
        for theta in (0.3, 1.3, 2 * np.pi):
            np.testing.assert_allclose(
                posner.rotation_matrix(n, theta),
                scipy.linalg.expm(-0.5j * theta * ns), atol=1e-12)

    def test_bad_axis(self):
        self.assertRaises(ValueError, posner.rotation_matrix, [1, 1, 0], 1)
        self.assertRaises(ValueError, posner.rotation_matrix, 'w', 1)


class BasisTest(unittest.TestCase):
    """ Tests the trio basis and the 64-element charge basis. """

    def test_trio_basis(self):
        basis = posner.build_trio_basis()
        self.assertEqual(len(basis), 8)
        c = posner.build_trio_c_operator().matrix()
        s2 = posner.build_s2_trio().matrix()
        for e in basis:
            np.testing.assert_allclose(
                c @ e.vector, posner.OMEGA**e.tau * e.vector, atol=1e-12)
            np.testing.assert_allclose(
                s2 @ e.vector, e.s * (e.s + 1) * e.vector, atol=1e-12)
        self.assertEqual(posner.trio_element('W').m, 0.5)
        self.assertRaises(KeyError, posner.trio_element, 'nope')

    def test_charge_basis(self):
        basis = posner.build_charge_basis()
        v = np.array([e.vector for e in basis])
        np.testing.assert_allclose(v.conj() @ v.T, np.eye(64), atol=1e-12)
        self.assertEqual(
            [len(posner.charge_sector(j)) for j in range(3)], [24, 20, 20])

        c = posner.build_c_operator().matrix()
        sz = posner.build_sz_total(posner.HEXTUPLE).matrix()
        for e in basis:
            np.testing.assert_allclose(
                c @ e.vector, posner.OMEGA**e.tau * e.vector, atol=1e-12)
            np.testing.assert_allclose(
                sz @ e.vector, e.m_total * e.vector, atol=1e-12)

        first = basis[0]
        self.assertEqual(first.name, 'c1_tau0')
        self.assertEqual(first.decomposition, ('000', '000'))

    def test_charge_numbering(self):
        s32 = ['000', 'W', 'Wbar', '111']
        tau1 = ['omega', 'omegabar']
        tau2 = ['omega2', 'omega2bar']
        expected = {
            0: [(a, b) for a in s32 for b in s32] + [
                ('omega', 'omega2'), ('omega', 'omega2bar'),
                ('omega2', 'omega'), ('omega2', 'omegabar'),
                ('omegabar', 'omega2'), ('omegabar', 'omega2bar'),
                ('omega2bar', 'omega'), ('omega2bar', 'omegabar')],
            1: [(a, b) for a in s32 for b in tau1]
            + [('omega', b) for b in s32]
            + [('omega2', b) for b in tau2]
            + [('omegabar', b) for b in s32]
            + [('omega2bar', b) for b in tau2],
            2: [(a, b) for a in s32 for b in tau2]
            + [('omega', b) for b in tau1]
            + [('omega2', b) for b in s32]
            + [('omegabar', b) for b in tau1]
            + [('omega2bar', b) for b in s32],
        }
        for tau, pairs in expected.items():
            sector = posner.charge_sector(tau)
            self.assertEqual([e.decomposition for e in sector], pairs)
            self.assertEqual(
                [e.name for e in sector],
                ['c' + str(k) + '_tau' + str(tau)
                 for k in range(1, len(pairs) + 1)])

        named = {e.name: e for e in posner.build_charge_basis()}
        e = named['c19_tau0']
        self.assertEqual((e.m123, e.m456, e.m_total), (0.5, 0.5, 1))
        self.assertEqual((e.tau123, e.tau456), (2, 1))
        e = named['c21_tau0']
        self.assertEqual((e.m123, e.m456), (-0.5, 0.5))
        e = named['c13_tau1']
        self.assertEqual(e.decomposition, ('omega2', 'omega2'))
        self.assertEqual((e.s123, e.s456), (0.5, 0.5))
        e = named['c11_tau2']
        self.assertEqual(e.decomposition, ('omega2', '000'))
        self.assertEqual((e.s123, e.s456, e.m_total), (0.5, 1.5, 2))

    def test_charge_quantum_numbers(self):
        eye = np.eye(8)
        s2 = posner.build_s2_trio().matrix()
        s2_123 = np.kron(s2, eye)
        s2_456 = np.kron(eye, s2)
        sz = posner.build_sz_total(posner.HEXTUPLE).matrix()
        sz_123 = np.kron(posner.build_sz_total(posner.TRIO).matrix(), eye)
        c = posner.build_c_operator().matrix()
        c_trio = posner.build_trio_c_operator().matrix()
        c_123 = np.kron(c_trio, eye)
        c_456 = np.kron(eye, c_trio)
        for e in posner.build_charge_basis():
            v = e.vector
            checks = [
                (s2_123, e.s123 * (e.s123 + 1)),
                (s2_456, e.s456 * (e.s456 + 1)),
                (sz, e.m_total),
                (sz_123, e.m123),
                (c, posner.OMEGA**e.tau),
                (c_123, posner.OMEGA**e.tau123),
                (c_456, posner.OMEGA**e.tau456),
            ]
            for op, value in checks:
                np.testing.assert_allclose(
                    op @ v, value * v, atol=1e-12, err_msg=e.name)
            self.assertEqual(e.m_total, e.m123 + e.m456)
            self.assertEqual(e.tau, (e.tau123 + e.tau456) % 3)

    def test_trio_multiplicities(self):
        values = np.linalg.eigvalsh(posner.build_s2_trio().matrix())
        values = np.round(values, 10)
        unique, counts = np.unique(values, return_counts=True)
        self.assertEqual(list(unique), [0.75, 3.75])
        self.assertEqual(list(counts), [4, 4])
        spins = [e.s for e in posner.build_trio_basis()]
        self.assertEqual(spins.count(0.5), 4)
        self.assertEqual(spins.count(1.5), 4)

    def test_write_tables(self):
        with tempfile.TemporaryDirectory() as d:
            paths = posner.write_tables(d)
            self.assertEqual(len(paths), 4)
            with open(os.path.join(d, 'trio_basis.csv')) as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(len(rows), 8)
            total = 0
            for path in paths[1:]:
                with open(path) as f:
                    total += len(list(csv.DictReader(f)))
            self.assertEqual(total, 64)


if __name__ == '__main__':
    unittest.main()

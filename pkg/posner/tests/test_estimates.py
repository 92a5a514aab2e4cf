#
# Tests for the physical time-scale estimates.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import unittest

import numpy as np

import posner


class EstimateTest(unittest.TestCase):
    """ Tests the closed-form estimates. """

    def test_diffusion(self):
        out = posner.estimate('diffusion')
        self.assertEqual(out['kind'], 'diffusion')
        d = out['values']['D']
        self.assertEqual(d['unit'], 'm^2/s')
        self.assertAlmostEqual(np.log10(d['value']), -10, delta=1)
        self.assertAlmostEqual(np.log10(d['order_of_magnitude']), -10)
        t = out['values']['t_diff']['value']
        self.assertAlmostEqual(t, 1e-14 / d['value'])
        self.assertAlmostEqual(np.log10(t), -4, delta=1)

    def test_rotation(self):
        out = posner.estimate('rotation')
        t = out['values']['t_rot']
        self.assertEqual(t['unit'], 's')
        self.assertEqual(t['order_of_magnitude'], 1)

        # Inversely proportional to the field
        inputs = posner.EstimateInputs(B=1e-6)
        faster = posner.estimate('rotation', inputs)['values']['t_rot']
        self.assertAlmostEqual(faster['value'] * 100, t['value'])
        self.assertEqual(
            posner.estimate('rotation', inputs)['inputs']['B'], 1e-6)

    def test_inputs(self):
        self.assertRaises(ValueError, posner.EstimateInputs, B=-1)
        self.assertRaises(ValueError, posner.EstimateInputs, T=0)
        self.assertRaises(ValueError, posner.EstimateInputs, r=float('nan'))
        self.assertRaises(ValueError, posner.estimate, 'tunnelling')

    def test_order_of_magnitude(self):
        self.assertAlmostEqual(np.log10(posner.order_of_magnitude(3e-5)), -5)
        self.assertAlmostEqual(np.log10(posner.order_of_magnitude(4e2)), 3)


if __name__ == '__main__':
    unittest.main()

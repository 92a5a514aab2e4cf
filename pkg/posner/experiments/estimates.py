#
# Order-of-magnitude checks of the physical time scales.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import numpy as np

import posner


class Estimates(posner.Experiment):
    """
    Evaluates the diffusion and rotation estimates at the default inputs and
    checks each quantity against its expected power of ten, within one order
    of magnitude.
    """

    def __init__(self, writer_generator):
        super(Estimates, self).__init__('estimates', writer_generator)

    def _run(self, result, params, seed):
        expected = {'D': -10, 't_diff': -4, 't_rot': 0}
        for kind in posner.ESTIMATE_KINDS:
            out = posner.estimate(kind)
            result.values[kind] = out
            for name, quantity in sorted(out['values'].items()):
                result.add_row(
                    'log10_' + name, float(np.log10(quantity['value'])),
                    expected[name], 1)

#
# Closed-form physical estimates: Posner diffusion and nuclear-spin rotation
# time scales.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
from dataclasses import asdict, dataclass

import numpy as np
import scipy.constants


# Estimate kinds
KINDS = ('diffusion', 'rotation')


@dataclass(frozen=True)
class EstimateInputs(object):
    """
    Inputs of the closed-form estimates, in SI units.

    ``B`` magnetic field (T), ``l`` diffusion length (m), ``eta`` viscosity
    (Pa s), ``r`` molecular radius (m) and ``T`` temperature (K).
    """
    B: float = 1e-8
    l: float = 1e-7     # noqa: E741
    eta: float = 1e-3
    r: float = 1e-9
    T: float = 1e2

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not np.isfinite(value) or value <= 0:
                raise ValueError(
                    'Estimate input ' + name + ' must be strictly positive,'
                    ' got ' + str(value))


def order_of_magnitude(x):
    """ Returns the power of ten nearest to ``x`` on a log scale. """
    return float(10.0**np.round(np.log10(x)))


def _quantity(value, unit):
    return {
        'value': float(value),
        'unit': unit,
        'order_of_magnitude': order_of_magnitude(value),
    }


def estimate(kind, inputs=None):
    """
    Evaluates one of the closed-form estimates.

    ``diffusion``
        The Stokes-Einstein diffusion constant ``D = k_B T / (6 pi eta r)``
        and the time ``t_diff = l^2 / D`` to diffuse a distance ``l``.
    ``rotation``
        The time ``t_rot = m_p / (e B)`` over which a field ``B`` rotates a
        phosphorus nuclear spin appreciably.

    Constants are CODATA values from :mod:`scipy.constants`; every quantity
    is reported with its order of magnitude alongside.
    """
    inputs = EstimateInputs() if inputs is None else inputs
    if kind == 'diffusion':
        d = scipy.constants.k * inputs.T / (6 * np.pi * inputs.eta * inputs.r)
        values = {
            'D': _quantity(d, 'm^2/s'),
            't_diff': _quantity(inputs.l**2 / d, 's'),
        }
    elif kind == 'rotation':
        t = scipy.constants.m_p / (scipy.constants.e * inputs.B)
        values = {'t_rot': _quantity(t, 's')}
    else:
        raise ValueError(
            'Unknown estimate kind: ' + str(kind) + ', expected one of '
            + ', '.join(KINDS))
    return {'kind': kind, 'inputs': asdict(inputs), 'values': values}

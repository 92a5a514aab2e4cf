#
# Binding-probability experiments: singlet patterns, random rotations and
# the information recorded by a binding.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import posner


# Exact binding probabilities of the named patterns
TARGETS = {
    'none': 43 / 128,
    'two_cross': 11 / 32,
    'three_cross': 3 / 8,
    'six': 1.0,
}


class BindingTable(posner.Experiment):
    """
    Evaluates the binding probability of two Posners sharing 0, 1, 2, 3 or 6
    singlets, with the unpaired qubits maximally mixed, and the relative
    enhancement of each pattern over the singlet-free baseline.

    Twelve maximally mixed qubits exceed ``MAX_MIXED_QUBITS``, so these
    values never go through :meth:`Machine.attempt_binding`. They come from
    the singlet-pattern contraction (:func:`binding_probability`), and the
    singlet-free value also from ``Tr(Pi_AB) / 4096`` on the factored
    projector.
    """

    def __init__(self, writer_generator, tolerance=1e-10):
        super(BindingTable, self).__init__(
            'binding_table', writer_generator, tolerance=tolerance)

    def _run(self, result, params, seed):
        tol = params['tolerance']
        probabilities = {
            name: posner.binding_probability(name) for name in posner.PATTERNS}
        base = probabilities['none']
        result.values['probabilities'] = probabilities
        result.values['enhancement'] = {
            name: p / base - 1 for name, p in probabilities.items()}

        for name in ('none', 'two_cross', 'three_cross', 'six'):
            result.add_row(name, probabilities[name], TARGETS[name], tol)
        result.add_row('one', probabilities['one'])

        # The baseline again, from the trace of the factored projector
        proj = posner.BindingProjector(range(6), range(6, 12))
        result.add_row(
            'maximally_mixed_trace', proj.trace() / 4096, 43 / 128, tol)


class BindingBits(posner.Experiment):
    """
    Counts the bits of ``(tau_A, tau_B)`` that a binding records, forfeits,
    and leaves to identify afterwards.
    """

    def __init__(self, writer_generator):
        super(BindingBits, self).__init__('binding_bits', writer_generator)

    def _run(self, result, params, seed):
        bits = posner.binding_bit_accounting()
        result.values.update(bits)
        for key, target in (
                ('total_bits', 4),
                ('recorded_bits', 1),
                ('forfeited_bits', 3),
                ('failure_bits', 3),
                ('success_bits', 2)):
            result.add_row(key, bits[key], target, 0)


class RotationAverage(posner.Experiment):
    """
    Averages the binding probability of a singlet pattern over independent
    Haar-random rotations of all twelve qubits. Random rotations wash out
    the singlets' advantage, so the mean should lie within three standard
    errors of the singlet-free value 43/128.

    Arguments:

    ``writer_generator``
        A callable that will return a key-value store for results.
    ``pattern``
        The name of a pattern in :data:`posner.PATTERNS`.
    ``n_samples``
        The number of rotation samples.
    ``processes``
        Worker processes for the Monte-Carlo chunks; the result does not
        depend on it.
    """
    stochastic = True

    def __init__(self, writer_generator, pattern='two_cross', n_samples=10000,
                 processes=1):
        super(RotationAverage, self).__init__(
            'rotation_average', writer_generator, pattern=str(pattern),
            n_samples=int(n_samples), processes=int(processes))

    def _run(self, result, params, seed):
        log = logging.getLogger(__name__)
        mean, stderr = posner.random_rotation_average(
            params['pattern'], params['n_samples'], seed=seed,
            processes=params['processes'])
        log.info(
            'Rotation average of ' + params['pattern'] + ': ' + str(mean)
            + ' +- ' + str(stderr))
        result.values['mean'] = mean
        result.values['stderr'] = stderr
        result.values['unrotated'] = posner.binding_probability(
            params['pattern'])
        result.add_row('mean', mean, 43 / 128, 3 * stderr)

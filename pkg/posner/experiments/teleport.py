#
# Experiments on the tau qutrit: incoherent teleportation, the phi(theta)
# weight curve and the tau = 0 cascade.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import numpy as np

import posner


def _random_coefficients(rng):
    c = rng.normal(size=3) + 1j * rng.normal(size=3)
    return c / np.linalg.norm(c)


class Teleport(posner.Experiment):
    """
    Teleports random qutrit states ``sum_j c_j |j_tau>`` through a bound
    Posner pair, forcing each branch of the binding measurement in turn.

    The binding branch must leave Bob's Posner with sector weights
    ``|c_j|^2``, the failure branch with ``(|c_{j+1}|^2 + |c_{j+2}|^2) / 2``.
    The failure weights must match the encoded POVM on a single Posner, and
    both branches must reconstruct the input weights exactly.

    Arguments:

    ``writer_generator``
        A callable that will return a key-value store for results.
    ``n_inputs``
        The number of random input states.
    ``n_records``
        The number of (branch, sector) records sampled from the joint
        distribution of the first input.
    """
    stochastic = True

    def __init__(self, writer_generator, n_inputs=100, n_records=10000,
                 tolerance=1e-9):
        super(Teleport, self).__init__(
            'teleport', writer_generator, n_inputs=int(n_inputs),
            n_records=int(n_records), tolerance=tolerance)

    def _run(self, result, params, seed):
        log = logging.getLogger(__name__)
        tol = params['tolerance']
        rng = posner.make_rng(seed)
        basis = posner.TauQutritBasis()
        povm = posner.encoded_povm()

        worst = {
            'success': 0.0, 'failure': 0.0, 'probability': 0.0, 'povm': 0.0,
            'reconstruct': 0.0}
        joints = []
        for i in range(params['n_inputs']):
            c = _random_coefficients(rng)
            hit = posner.incoherent_teleport(c, basis, force_outcome=True)
            miss = posner.incoherent_teleport(c, basis, force_outcome=False)

            worst['success'] = max(worst['success'], float(np.max(np.abs(
                np.array(hit.distribution) - hit.success_distribution))))
            worst['failure'] = max(worst['failure'], float(np.max(np.abs(
                np.array(miss.distribution) - miss.failure_distribution))))
            worst['probability'] = max(
                worst['probability'], abs(hit.probability - 1 / 3))

            encoded = posner.QState(basis.encode(c), range(6))
            m = posner.measure_povm(encoded, povm, seed=rng)
            worst['povm'] = max(worst['povm'], float(np.max(np.abs(
                np.array(m.probabilities) - miss.failure_distribution))))

            p = hit.probability
            joint = np.array([
                p * np.array(hit.distribution),
                (1 - p) * np.array(miss.distribution)])
            joints.append(joint)
            for weights in posner.reconstruct_weights(joint).values():
                worst['reconstruct'] = max(worst['reconstruct'], float(
                    np.max(np.abs(weights - hit.weights))))
        log.info('Teleported ' + str(params['n_inputs']) + ' inputs')

        result.values['worst'] = worst
        result.add_row('success_distribution', worst['success'], 0, tol)
        result.add_row('failure_distribution', worst['failure'], 0, tol)
        result.add_row('binding_probability', worst['probability'], 0, tol)
        result.add_row('encoded_povm', worst['povm'], 0, tol)
        result.add_row('reconstruction', worst['reconstruct'], 0, tol)

        # Sampled records of the first input
        if joints and params['n_records'] > 0:
            sampled = posner.sample_records(
                joints[0], params['n_records'], seed=rng)
            result.values['sampled_joint'] = sampled
            result.values['exact_joint'] = joints[0]

        # The basis state |0_tau>
        zero = [1, 0, 0]
        hit = posner.incoherent_teleport(zero, basis, force_outcome=True)
        miss = posner.incoherent_teleport(zero, basis, force_outcome=False)
        result.add_row('zero_success', hit.distribution, [1, 0, 0], tol)
        result.add_row('zero_failure', miss.distribution, [0, 0.5, 0.5], tol)


class WeightCurve(posner.Experiment):
    """
    Compares the sector weights of ``|phi(theta)>`` with their closed forms
    ``(cos 2 theta + 2) / 6`` and ``(4 - cos 2 theta) / 12`` on a grid of
    angles in ``[0, pi]``; at ``pi / 4`` all three weights are 1/3.
    """

    def __init__(self, writer_generator, n_theta=50, tolerance=1e-9):
        super(WeightCurve, self).__init__(
            'weight_curve', writer_generator, n_theta=int(n_theta),
            tolerance=tolerance)

    def _run(self, result, params, seed):
        tol = params['tolerance']
        samples = []
        worst = 0.0
        for theta in np.linspace(0, np.pi, params['n_theta']):
            computed = posner.sector_weights(
                posner.prepare_phi_theta(theta).vector())
            closed = posner.phi_theta_weights(theta)
            worst = max(worst, float(np.max(np.abs(
                np.array(computed) - np.array(closed)))))
            samples.append({
                'theta': float(theta),
                'computed': list(computed),
                'closed_form': list(closed),
            })
        result.samples = samples
        result.add_row('max_deviation', worst, 0, tol)

        quarter = posner.sector_weights(
            posner.prepare_phi_theta(np.pi / 4).vector())
        result.add_row('pi_over_4', quarter, [1 / 3] * 3, tol)


class CascadeIdentity(posner.Experiment):
    """
    Checks that binding A-B, B-C and C-A projects all three Posners onto
    tau = 0: as an operator identity on random 18-qubit vectors, by running
    the forced cascade on a machine, and by binding a fourth Posner to an
    already projected one.
    """
    stochastic = True

    def __init__(self, writer_generator, n_states=200, tolerance=1e-9):
        super(CascadeIdentity, self).__init__(
            'cascade_identity', writer_generator, n_states=int(n_states),
            tolerance=tolerance)

    def _run(self, result, params, seed):
        tol = params['tolerance']
        seeds = posner.spawn_seeds(seed, 3)

        worst = posner.cascade_operator_identity(
            params['n_states'], seed=seeds[0])
        result.add_row('operator_identity', worst, 0, tol)

        # The cascade on a machine
        m = posner.Machine(seeds[1])
        labels = m.prepare_state(
            posner.random_state(range(18), seed=seeds[1]))
        names = ['A', 'B', 'C']
        for k, name in enumerate(names):
            m.form_posner(name, labels[6 * k:6 * k + 6])
        records = posner.tau_zero_cascade(m, names, force_success=True)
        result.values['cascade'] = records
        weights = [m.tau_weights(name)[0] for name in names]
        result.add_row('cascade_tau_zero', weights, [1, 1, 1], tol)

        # A fourth Posner binding to a projected one
        m = posner.Machine(seeds[2])
        labels = m.prepare_state(
            posner.random_state(range(12), seed=seeds[2]))
        m.form_posner('A', labels[:6])
        m.form_posner('D', labels[6:])
        m.bind_to_reference('A', force_outcome=True)
        m.attempt_binding('D', 'A', force_outcome=True)
        result.add_row('fourth_tau_zero', m.tau_weights('D')[0], 1, tol)

#
# Spin-algebra experiments: sector ranks, charge commutation, the charge
# eigenbasis and the coarse Bell-basis picture of binding.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import numpy as np

import posner


class SectorRanks(posner.Experiment):
    """
    Checks the ranks of the three sector projectors (24, 20, 20), the
    multiplicities of the total-spin spectrum and the dimension of the
    binding subspace of two Posners.

    Arguments:

    ``writer_generator``
        A callable that will return a key-value store for results.
    """

    def __init__(self, writer_generator):
        super(SectorRanks, self).__init__('sector_ranks', writer_generator)

    def _run(self, result, params, seed):
        for j, target in enumerate((24, 20, 20)):
            m = posner.build_tau_projector(j).matrix()
            rank = int(np.linalg.matrix_rank(m, tol=1e-8))
            result.values['rank_tau' + str(j)] = rank
            result.add_row('rank_tau' + str(j), rank, target, 0)

        # Eigenvalues s(s+1) of the total spin, with multiplicities
        eigenvalues = np.linalg.eigvalsh(posner.build_s2_total().matrix())
        rounded = np.round(eigenvalues).astype(int)
        counts = {int(k): int(np.sum(rounded == k)) for k in (0, 2, 6, 12)}
        result.values['s2_total_multiplicities'] = counts
        result.add_row(
            's2_total_multiplicities',
            [counts[k] for k in (0, 2, 6, 12)], [5, 27, 25, 7], 0)

        trace = posner.BindingProjector(range(6), range(6, 12)).trace()
        result.values['binding_dimension'] = trace
        result.add_row('binding_dimension', trace, 1376, 1e-8)


class ChargeCommutation(posner.Experiment):
    """
    Checks that the cyclic charge ``C`` commutes with ``S^z``, with
    ``S^2_123 (x) S^2_456``, with ``S^2_123 + S^2_456`` and with the total
    spin ``(S_123 + S_456)^2``.
    """

    def __init__(self, writer_generator, tolerance=1e-10):
        super(ChargeCommutation, self).__init__(
            'charge_commutation', writer_generator, tolerance=tolerance)

    def _run(self, result, params, seed):
        c = posner.build_c_operator().matrix()
        operators = {
            'sz_total': posner.build_sz_total(posner.HEXTUPLE),
            's2_pair_product': posner.build_s2_pair_product(),
            's2_pair_sum': posner.build_s2_pair_sum(),
            's2_total': posner.build_s2_total(),
        }
        for name, op in operators.items():
            m = op.matrix()
            norm = float(np.max(np.abs(c @ m - m @ c)))
            result.values['commutator_' + name] = norm
            result.add_row('commutator_' + name, norm, 0, params['tolerance'])


class ChargeEigenbasis(posner.Experiment):
    """
    Checks every vector of the 64-element charge basis against its listed
    quantum numbers (sector, trio spins and magnetic number) and checks that
    the basis is orthonormal.
    """

    def __init__(self, writer_generator, tolerance=1e-10):
        super(ChargeEigenbasis, self).__init__(
            'charge_eigenbasis', writer_generator, tolerance=tolerance)

    def _run(self, result, params, seed):
        log = logging.getLogger(__name__)
        tol = params['tolerance']
        basis = posner.build_charge_basis()
        tau = [posner.build_tau_projector(j).matrix() for j in range(3)]
        s2 = posner.build_s2_trio().matrix()
        eye = np.eye(8)
        s2_123 = np.kron(s2, eye)
        s2_456 = np.kron(eye, s2)
        sz = posner.build_sz_total(posner.HEXTUPLE).matrix()

        worst = {'tau': 0.0, 's123': 0.0, 's456': 0.0, 'm': 0.0}
        for e in basis:
            v = e.vector
            checks = {
                'tau': tau[e.tau] @ v - v,
                's123': s2_123 @ v - e.s123 * (e.s123 + 1) * v,
                's456': s2_456 @ v - e.s456 * (e.s456 + 1) * v,
                'm': sz @ v - e.m_total * v,
            }
            for key, d in checks.items():
                worst[key] = max(worst[key], float(np.max(np.abs(d))))
        for key, value in worst.items():
            result.values['eigen_' + key] = value
            result.add_row('eigen_' + key, value, 0, tol)

        v = np.array([e.vector for e in basis])
        gram = float(np.max(np.abs(v.conj() @ v.T - np.eye(len(basis)))))
        log.info('Charge basis Gram deviation: ' + str(gram))
        result.values['gram'] = gram
        result.add_row('gram', gram, 0, tol)

        sizes = [len(posner.charge_sector(j)) for j in range(3)]
        result.add_row('sector_sizes', sizes, [24, 20, 20], 0)


class CoarseBell(posner.Experiment):
    """
    Checks that, restricted to two sector-1 and sector-2 states per Posner,
    binding acts as a measurement of ``{Psi+, Psi-}`` against
    ``{Phi+, Phi-}``.
    """

    def __init__(self, writer_generator):
        super(CoarseBell, self).__init__('coarse_bell', writer_generator)

    def _run(self, result, params, seed):
        check = posner.coarse_bell_check()
        result.values['choices'] = check['choices']
        result.add_row(
            'max_deviation', check['max_deviation'], 0,
            posner.OPERATOR_TOLERANCE)

#
# Codes and the error-detection and error-correction criteria.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import itertools
import logging

import numpy as np

import posner
from ._qstate import _apply_matrix, _positions


class Code(object):
    """
    A set of orthonormal codewords (pure states over the same labels).

    Arguments:

    ``name``
        A name for reports.
    ``codewords``
        A list of pure :class:`QState` objects, or of vectors over ``labels``.
    ``labels``
        The physical qubit labels, required when ``codewords`` are vectors.
    """

    def __init__(self, name, codewords, labels=None):
        self._name = str(name)
        states = []
        for c in codewords:
            if not isinstance(c, posner.QState):
                if labels is None:
                    raise ValueError('Vector codewords need explicit labels.')
                c = posner.QState(c, labels)
            if not c.is_pure():
                raise ValueError('Codewords must be pure states.')
            states.append(c)
        if not states:
            raise ValueError('A code needs at least one codeword.')
        self._labels = states[0].labels()
        states = [s.reordered(self._labels) for s in states]

        # Orthonormality
        v = np.array([s.vector() for s in states])
        gram = v.conj() @ v.T
        deviation = np.max(np.abs(gram - np.eye(len(states))))
        if deviation > posner.STATE_TOLERANCE:
            raise posner.InvariantError(
                'Codewords of ' + self._name + ' are not orthonormal, '
                'deviation ' + str(deviation))
        self._codewords = tuple(states)

    def __repr__(self):
        return 'Code(' + self._name + ')'

    def name(self):
        return self._name

    def codewords(self):
        return self._codewords

    def labels(self):
        return self._labels

    def logical_dim(self):
        return len(self._codewords)

    def vectors(self):
        """ Returns the codewords as the rows of a matrix. """
        return np.array([c.vector() for c in self._codewords])


class ErrorSet(object):
    """
    A list of named error operators ``E_alpha``.
    """

    def __init__(self, errors):
        self._names = []
        self._operators = []
        for name, op in errors:
            if not isinstance(op, posner.DenseOperator):
                raise ValueError('Errors must be DenseOperator objects.')
            self._names.append(str(name))
            self._operators.append(op)

    def __len__(self):
        return len(self._operators)

    def __iter__(self):
        return iter(zip(self._names, self._operators))

    def names(self):
        return list(self._names)

    def operators(self):
        return list(self._operators)

    @staticmethod
    def single_qubit_paulis(labels):
        """ Returns the three Pauli errors on every label. """
        return ErrorSet([
            (axis.upper() + str(x), posner.build_pauli(axis, x))
            for x in labels for axis in 'xyz'])

    @staticmethod
    def x_errors(labels, max_weight=2, include_identity=True):
        """
        Returns products of ``sigma^x`` on up to ``max_weight`` of the
        ``labels``, starting with the identity when ``include_identity``.
        """
        labels = list(labels)
        x = posner.pauli_matrix('x')
        errors = []
        if include_identity:
            errors.append(('I', posner.identity(labels[:1])))
        for w in range(1, max_weight + 1):
            for subset in itertools.combinations(labels, w):
                m = np.ones((1, 1))
                for _ in subset:
                    m = np.kron(m, x)
                name = 'X' + 'X'.join(str(s) for s in subset)
                errors.append((name, posner.DenseOperator(m, subset)))
        return ErrorSet(errors)

    @staticmethod
    def identity(labels):
        """ Returns the set containing only the identity. """
        return ErrorSet([('I', posner.identity(list(labels)[:1]))])


class CriteriaReport(object):
    """
    The outcome of a detection or correction check.

    Holds the matrix ``<j_L|E|k_L>`` for every error (or ``E_b^dagger E_a``
    for every pair), the fitted constants (mean diagonals), the worst
    deviation from ``constant * identity`` and whether it stays within the
    tolerance.
    """

    def __init__(self, kind, names, matrices, tolerance):
        self.kind = kind
        self.names = list(names)
        self.matrices = np.array(matrices, dtype=complex)
        self.tolerance = float(tolerance)

        d = self.matrices.shape[1]
        self.constants = np.array([np.trace(m) / d for m in self.matrices])
        deviations = np.abs(
            self.matrices - self.constants[:, None, None] * np.eye(d))
        worst = np.unravel_index(np.argmax(deviations), deviations.shape)
        self.worst = {
            'error': self.names[worst[0]],
            'row': int(worst[1]),
            'column': int(worst[2]),
            'deviation': float(deviations[worst]),
        }
        self.passed = bool(self.worst['deviation'] < self.tolerance)

    def __repr__(self):
        return (
            'CriteriaReport(' + self.kind + ', passed=' + str(self.passed)
            + ')')

    def constant(self, name):
        """ Returns the fitted constant for the error (or pair) ``name``. """
        c = self.constants[self.names.index(name)]
        return float(c.real) if abs(c.imag) < self.tolerance else complex(c)

    def to_json(self):
        """ Returns a JSON-serializable dict, with re/im split. """
        return {
            'kind': self.kind,
            'names': self.names,
            'matrices': {
                're': self.matrices.real.tolist(),
                'im': self.matrices.imag.tolist(),
            },
            'constants': {
                're': self.constants.real.tolist(),
                'im': self.constants.imag.tolist(),
            },
            'passed': self.passed,
            'worst': self.worst,
            'tolerance': self.tolerance,
        }


def _images(code, errors):
    """ Returns ``E|k_L>`` for every error, as an array (error, k, vector). """
    labels = code.labels()
    n = len(labels)
    out = []
    for op in errors.operators():
        positions = _positions(labels, op.labels())
        out.append([
            _apply_matrix(c.vector(), n, op.matrix(), positions, False)
            for c in code.codewords()])
    return np.array(out)


def check_detection(code, errors, tolerance=None):
    """
    Checks the error-detection criteria ``<j_L|E|k_L> = C_E delta_jk`` for
    every error in ``errors``.
    """
    log = logging.getLogger(__name__)
    tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
    images = _images(code, errors)
    v = code.vectors()
    matrices = [v.conj() @ image.T for image in images]
    report = CriteriaReport('detection', errors.names(), matrices, tol)
    log.info(
        'Detection check of ' + code.name() + ' against ' + str(len(errors))
        + ' errors: ' + ('pass' if report.passed else 'fail'))
    return report


def check_correction(code, errors, tolerance=None):
    """
    Checks the error-correction criteria
    ``<j_L|E_b^dagger E_a|k_L> = C_ba delta_jk`` for every ordered pair of
    errors. Pairs are named ``'b,a'``.
    """
    log = logging.getLogger(__name__)
    tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
    images = _images(code, errors)
    names = errors.names()
    pair_names = []
    matrices = []
    for b, a in itertools.product(range(len(names)), repeat=2):
        pair_names.append(names[b] + ',' + names[a])
        matrices.append(images[b].conj() @ images[a].T)
    report = CriteriaReport('correction', pair_names, matrices, tol)
    log.info(
        'Correction check of ' + code.name() + ' against '
        + str(len(errors)) + ' errors: '
        + ('pass' if report.passed else 'fail'))
    return report


def build_qutrit_code(labels=(0, 1, 2, 3, 4, 5)):
    """
    Returns the one-Posner qutrit code. Codeword ``j`` is the antisymmetrized
    product of the two trio states of sector ``j`` and its bit flip:

        |0_L> = (|W>|Wbar> - |Wbar>|W>) / sqrt(2)
        |1_L> = (|omega2>|omega2bar> - |omega2bar>|omega2>) / sqrt(2)
        |2_L> = (|omega>|omegabar> - |omegabar>|omega>) / sqrt(2)
    """
    t = posner.trio_element

    def antisymmetric(a, b):
        u, v = t(a).vector, t(b).vector
        return (np.kron(u, v) - np.kron(v, u)) / np.sqrt(2)

    return Code('qutrit', [
        antisymmetric('W', 'Wbar'),
        antisymmetric('omega2', 'omega2bar'),
        antisymmetric('omega', 'omegabar'),
    ], labels)


def build_repetition_code(labels=(0, 1, 2, 3, 4, 5)):
    """ Returns the repetition code ``|000000>``, ``|111111>``. """
    zero = np.zeros(64)
    zero[0] = 1
    one = np.zeros(64)
    one[63] = 1
    return Code('repetition', [zero, one], labels)

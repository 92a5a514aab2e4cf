#
# Dense states, operators, partial traces and measurements.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
# Qubit labels are ordered: the first label is the most significant bit of the
# computational-basis index, so |m1 m2 ... mn> has index sum(m_i 2**(n-1-i)).
#
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

import posner


# Probabilities at or below this are treated as zero when renormalizing
ZERO_PROBABILITY = 1e-12


def _check_labels(labels):
    """ Returns ``labels`` as a tuple of ints, checking they are distinct. """
    labels = tuple(int(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise posner.LabelError('Duplicate qubit labels: ' + str(labels))
    return labels


def _positions(labels, targets):
    """
    Returns the positions of ``targets`` within ``labels``.
    """
    index = {x: i for i, x in enumerate(labels)}
    try:
        return [index[int(t)] for t in targets]
    except KeyError as e:
        raise posner.LabelError(
            'Unknown qubit label ' + str(e.args[0]) + ', state has labels '
            + str(labels))


def _n_from_dim(dim):
    n = int(dim).bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise ValueError(
            'Dimension must be a power of two, got ' + str(dim) + '.')
    return n


def permute_axes(tensor, positions, source):
    """
    Permutes the axes ``positions`` of ``tensor``.

    After the call, axis ``positions[k]`` holds what used to be axis
    ``positions[source[k]]``. For a state tensor this is the qubit permutation
    that sends ``|x_1 ... x_k>`` to ``|x_source[1] ... x_source[k]>``.
    """
    axes = list(range(tensor.ndim))
    for k, s in enumerate(source):
        axes[positions[k]] = positions[s]
    return np.transpose(tensor, axes)


def _apply_ket(tensor, matrix, positions):
    """
    Contracts ``matrix`` (acting on ``len(positions)`` qubits) into the axes
    ``positions`` of ``tensor``, keeping the axis order.
    """
    k = len(positions)
    m = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(m, tensor, axes=(list(range(k, 2 * k)), positions))
    return np.moveaxis(out, list(range(k)), positions)


def _apply_matrix(data, n, matrix, positions, mixed):
    """
    Applies ``matrix`` to raw state data over ``n`` qubits, returning raw data
    of the same shape: ``M psi`` for vectors and ``M rho M^dagger`` for
    density matrices. No normalization is applied.
    """
    if mixed:
        t = data.reshape((2,) * (2 * n))
        t = _apply_ket(t, matrix, positions)
        t = _apply_ket(t, matrix.conj(), [n + p for p in positions])
        return t.reshape(data.shape)
    t = data.reshape((2,) * n)
    return _apply_ket(t, matrix, positions).reshape(data.shape)


class QState(object):
    """
    A pure state vector or density matrix over labelled qubits.

    ``data`` is a vector of length ``2**n`` (pure) or a ``2**n`` by ``2**n``
    matrix (mixed); ``labels`` lists the ``n`` distinct integer qubit ids in
    the order of the index bits. The data is copied and made read-only, and
    the invariants are checked unless ``check=False``.
    """

    def __init__(self, data, labels, check=True):
        labels = _check_labels(labels)
        n = len(labels)
        data = np.array(data, dtype=complex)

        if n > posner.MAX_QUBITS:
            raise posner.CapacityError(
                'States are limited to ' + str(posner.MAX_QUBITS)
                + ' qubits, got ' + str(n) + '.')

        if data.ndim == 1:
            self._kind = 'pure'
            if data.shape != (2**n,):
                raise ValueError(
                    'State vector of length ' + str(data.shape[0])
                    + ' does not match ' + str(n) + ' labels.')
        elif data.ndim == 2:
            self._kind = 'mixed'
            if n > posner.MAX_MIXED_QUBITS:
                raise posner.CapacityError(
                    'Density matrices are limited to '
                    + str(posner.MAX_MIXED_QUBITS) + ' qubits, got ' + str(n)
                    + '.')
            if data.shape != (2**n, 2**n):
                raise ValueError(
                    'Density matrix of shape ' + str(data.shape)
                    + ' does not match ' + str(n) + ' labels.')
        else:
            raise ValueError('State data must be a vector or a matrix.')

        data.flags.writeable = False
        self._data = data
        self._labels = labels

        if check:
            self.check_invariants()

    def __repr__(self):
        return (
            'QState(kind=' + self._kind + ', labels=' + str(self._labels)
            + ')')

    def check_invariants(self, tolerance=None):
        """
        Checks normalization (pure), or Hermiticity, unit trace and positivity
        (mixed), raising an :class:`InvariantError` on failure.
        """
        tol = posner.STATE_TOLERANCE if tolerance is None else tolerance
        if self._kind == 'pure':
            norm = np.vdot(self._data, self._data).real
            if abs(norm - 1) > tol:
                raise posner.InvariantError(
                    'State is not normalized: <psi|psi> = ' + str(norm))
            return

        rho = self._data
        deviation = np.max(np.abs(rho - rho.conj().T))
        if deviation > tol:
            raise posner.InvariantError(
                'Density matrix is not Hermitian, deviation ' + str(deviation))
        trace = np.trace(rho).real
        if abs(trace - 1) > tol:
            raise posner.InvariantError(
                'Density matrix trace is ' + str(trace))
        smallest = np.linalg.eigvalsh(rho)[0]
        if smallest < -tol:
            raise posner.InvariantError(
                'Density matrix has negative eigenvalue ' + str(smallest))

    def kind(self):
        """ Returns ``'pure'`` or ``'mixed'``. """
        return self._kind

    def is_pure(self):
        return self._kind == 'pure'

    def labels(self):
        return self._labels

    def n_qubits(self):
        return len(self._labels)

    def data(self):
        """ Returns the (read-only) vector or density matrix. """
        return self._data

    def vector(self):
        """ Returns the state vector of a pure state. """
        if self._kind != 'pure':
            raise ValueError('A mixed state has no state vector.')
        return self._data

    def tensor(self):
        """
        Returns the data reshaped to one axis per qubit (ket axes first, then
        bra axes for mixed states).
        """
        n = len(self._labels)
        return self._data.reshape((2,) * (n if self.is_pure() else 2 * n))

    def density_matrix(self):
        """ Returns the density matrix, building it for pure states. """
        if self._kind == 'mixed':
            return self._data
        if len(self._labels) > posner.MAX_MIXED_QUBITS:
            raise posner.CapacityError(
                'Cannot build a density matrix over ' + str(len(self._labels))
                + ' qubits.')
        return np.outer(self._data, self._data.conj())

    def reordered(self, labels):
        """
        Returns the same state with its qubits listed in the order ``labels``
        (a permutation of the current labels).
        """
        labels = _check_labels(labels)
        if sorted(labels) != sorted(self._labels):
            raise posner.LabelError(
                'Cannot reorder ' + str(self._labels) + ' as ' + str(labels))
        if labels == self._labels:
            return self
        positions = list(range(len(labels)))
        source = _positions(self._labels, labels)
        t = permute_axes(self.tensor(), positions, source)
        if not self.is_pure():
            n = len(labels)
            t = permute_axes(
                t, [n + p for p in positions], source)
        return QState(t.reshape(self._data.shape), labels, check=False)

    def relabelled(self, mapping):
        """
        Returns the same data with every label ``x`` renamed to
        ``mapping[x]``.
        """
        labels = [mapping.get(x, x) for x in self._labels]
        return QState(self._data, labels, check=False)

    def to_json(self):
        """
        Returns a JSON-serializable dict ``{kind, n, labels, re, im}`` with
        the data flattened in row-major order.
        """
        flat = self._data.reshape(-1)
        return {
            'kind': self._kind,
            'n': len(self._labels),
            'labels': list(self._labels),
            're': flat.real.tolist(),
            'im': flat.imag.tolist(),
        }

    @staticmethod
    def from_json(obj):
        """ Creates a state from the dict returned by :meth:`to_json`. """
        n = int(obj['n'])
        data = np.array(obj['re'], dtype=float) + 1j * np.array(
            obj['im'], dtype=float)
        if obj['kind'] == 'mixed':
            data = data.reshape(2**n, 2**n)
        elif obj['kind'] != 'pure':
            raise ValueError('Unknown state kind: ' + str(obj['kind']))
        return QState(data, obj['labels'])


class DenseOperator(object):
    """
    A ``2**k`` by ``2**k`` matrix acting on the ``k`` listed qubit labels.
    """

    def __init__(self, matrix, labels):
        labels = _check_labels(labels)
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError('Operator matrix must be square.')
        k = _n_from_dim(matrix.shape[0])
        if k != len(labels):
            raise posner.LabelError(
                'Operator on ' + str(k) + ' qubits given ' + str(len(labels))
                + ' labels.')
        matrix.flags.writeable = False
        self._matrix = matrix
        self._labels = labels

    def __repr__(self):
        return 'DenseOperator(labels=' + str(self._labels) + ')'

    def __matmul__(self, other):
        if self._labels != other._labels:
            raise posner.LabelError(
                'Cannot multiply operators on ' + str(self._labels) + ' and '
                + str(other._labels))
        return DenseOperator(self._matrix @ other._matrix, self._labels)

    def matrix(self):
        return self._matrix

    def labels(self):
        return self._labels

    def n_qubits(self):
        return len(self._labels)

    def dagger(self):
        return DenseOperator(self._matrix.conj().T, self._labels)

    def relabelled(self, labels):
        """ Returns the same matrix acting on ``labels``. """
        return DenseOperator(self._matrix, labels)

    def embedded(self, labels):
        """
        Returns this operator padded with identities to act on ``labels``, a
        superset of its own labels, in that order.
        """
        labels = _check_labels(labels)
        positions = _positions(labels, self._labels)
        n = len(labels)
        eye = np.eye(2**n, dtype=complex).reshape((2,) * (2 * n))
        full = _apply_ket(eye, self._matrix, positions)
        return DenseOperator(full.reshape(2**n, 2**n), labels)

    def is_hermitian(self, tolerance=None):
        tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
        m = self._matrix
        return bool(np.max(np.abs(m - m.conj().T)) <= tol)

    def is_unitary(self, tolerance=None):
        tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
        m = self._matrix
        eye = np.eye(m.shape[0])
        return bool(np.max(np.abs(m.conj().T @ m - eye)) <= tol)

    def is_projector(self, tolerance=None):
        tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
        m = self._matrix
        return self.is_hermitian(tol) and bool(
            np.max(np.abs(m @ m - m)) <= tol)


def identity(labels):
    """ Returns the identity operator on ``labels``. """
    labels = _check_labels(labels)
    return DenseOperator(np.eye(2**len(labels)), labels)


def kron(a, b):
    """
    Returns the tensor product of two operators on disjoint labels, acting on
    ``a.labels() + b.labels()``.
    """
    overlap = set(a.labels()) & set(b.labels())
    if overlap:
        raise posner.LabelError(
            'Operators share labels ' + str(sorted(overlap)))
    return DenseOperator(
        np.kron(a.matrix(), b.matrix()), a.labels() + b.labels())


def apply(op, state, check=True):
    """
    Applies ``op`` to ``state``, padding with identities on the other labels:
    ``U psi`` for pure states and ``U rho U^dagger`` for mixed states.

    The result must again be a valid state, so ``op`` is normally unitary; use
    :meth:`measure_pvm` or :meth:`measure_povm` for non-unitary updates.
    """
    positions = _positions(state.labels(), op.labels())
    data = _apply_matrix(
        state.data(), state.n_qubits(), op.matrix(), positions,
        not state.is_pure())
    return QState(data, state.labels(), check=check)


def partial_trace(state, keep):
    """
    Traces out every qubit not in ``keep`` and returns the reduced density
    matrix, with its qubits in the order given by ``keep``.
    """
    keep = _check_labels(keep)
    if not keep:
        raise posner.LabelError('Partial trace needs at least one kept label.')
    if len(keep) > posner.MAX_MIXED_QUBITS:
        raise posner.CapacityError(
            'Cannot keep ' + str(len(keep)) + ' qubits in a density matrix.')

    labels = state.labels()
    n = len(labels)
    k = len(keep)
    kept = _positions(labels, keep)
    traced = [i for i in range(n) if i not in kept]

    if state.is_pure():
        t = np.transpose(state.tensor(), kept + traced)
        m = t.reshape(2**k, 2**(n - k))
        rho = m @ m.conj().T
    else:
        ket = list(range(n))
        bra = [n + i for i in range(n)]
        for i in traced:
            bra[i] = ket[i]
        out = kept + [n + i for i in kept]
        rho = np.einsum(state.tensor(), ket + bra, out).reshape(2**k, 2**k)

    return QState(rho, keep)


def expectation(state, op):
    """
    Returns ``<psi|O|psi>`` or ``Tr(rho O)``, as a float when the imaginary
    part is negligible.
    """
    positions = _positions(state.labels(), op.labels())
    n = state.n_qubits()
    if state.is_pure():
        t = _apply_ket(state.tensor(), op.matrix(), positions)
        value = np.vdot(state.vector(), t.reshape(-1))
    else:
        t = _apply_ket(state.tensor(), op.matrix(), positions)
        value = np.trace(t.reshape(2**n, 2**n))
    if abs(value.imag) <= posner.OPERATOR_TOLERANCE * max(1, abs(value.real)):
        return float(value.real)
    return complex(value)


@dataclass(frozen=True)
class Measurement(object):
    """
    The result of a projective or generalized measurement.

    ``outcome`` indexes the operator that fired, ``probability`` is its Born
    probability, ``post_state`` the renormalized state and ``probabilities``
    the exact distribution over all outcomes.
    """
    outcome: int
    probability: float
    post_state: Optional[QState]
    probabilities: Tuple[float, ...]


def _common_labels(operators):
    labels = operators[0].labels()
    for op in operators[1:]:
        if op.labels() != labels:
            raise posner.LabelError(
                'Measurement operators must share their target labels.')
    return labels


def _branches(state, kraus):
    """
    Returns the unnormalized post-measurement data ``K psi`` (or
    ``K rho K^dagger``) and the probability for every operator.
    """
    positions = _positions(state.labels(), kraus[0].labels())
    n = state.n_qubits()
    mixed = not state.is_pure()
    branches = []
    probabilities = []
    for op in kraus:
        data = _apply_matrix(state.data(), n, op.matrix(), positions, mixed)
        if mixed:
            p = np.trace(data).real
        else:
            p = np.vdot(data, data).real
        branches.append(data)
        probabilities.append(float(max(p, 0)))
    return branches, probabilities


def _select(state, branches, probabilities, seed, outcome, rng):
    """ Picks (or checks a forced) outcome and renormalizes its branch. """
    if outcome is None:
        rng = posner.make_rng(rng if rng is not None else seed)
        outcome = posner.sample_index(probabilities, rng)
    else:
        outcome = int(outcome)
        if not 0 <= outcome < len(branches):
            raise ValueError('Unknown measurement outcome ' + str(outcome))

    p = probabilities[outcome]
    if p <= ZERO_PROBABILITY:
        raise posner.RenormalizationError(
            'Outcome ' + str(outcome) + ' has probability ' + str(p)
            + ' and cannot be renormalized.')
    data = branches[outcome]
    data = data / (p if not state.is_pure() else np.sqrt(p))
    post = QState(data, state.labels())
    return Measurement(outcome, p, post, tuple(probabilities))


def measure_pvm(state, projectors, seed=None, outcome=None, rng=None):
    """
    Measures ``state`` with the projector-valued measure ``projectors``.

    The projectors must share their target labels, each be Hermitian and
    idempotent, and sum to the identity (within ``OPERATOR_TOLERANCE``),
    otherwise a :class:`CompletenessError` is raised.

    Parameters
    ----------
    state : QState
        The state to measure.
    projectors : list of DenseOperator
        The PVM elements.
    seed : int or None
        Seed for the Born-rule sample (ignored when ``rng`` is given).
    outcome : int or None
        Forces (post-selects) this outcome. A forced outcome with zero
        probability raises a :class:`RenormalizationError`.
    rng : numpy.random.Generator or None
        Generator to sample from.

    Returns a :class:`Measurement`, whose post-state follows the Lueders rule.
    """
    projectors = list(projectors)
    if not projectors:
        raise posner.CompletenessError('A PVM needs at least one element.')
    _common_labels(projectors)
    tol = posner.OPERATOR_TOLERANCE
    total = np.zeros(projectors[0].matrix().shape, dtype=complex)
    for i, p in enumerate(projectors):
        if not p.is_projector(tol):
            raise posner.CompletenessError(
                'PVM element ' + str(i) + ' is not a Hermitian idempotent.')
        total += p.matrix()
    deviation = np.max(np.abs(total - np.eye(total.shape[0])))
    if deviation > tol:
        raise posner.CompletenessError(
            'PVM elements do not sum to the identity, deviation '
            + str(deviation))

    branches, probabilities = _branches(state, projectors)
    return _select(state, branches, probabilities, seed, outcome, rng)


def pvm_probabilities(state, projectors):
    """
    Returns the exact outcome probabilities of a PVM without updating the
    state.
    """
    return _branches(state, list(projectors))[1]


def measure_povm(
        state, kraus, support=None, seed=None, outcome=None, rng=None):
    """
    Measures ``state`` with Kraus operators ``kraus``.

    The operators must satisfy ``sum K^dagger K = I``, or, if ``support`` (a
    projector on the same labels) is given, ``sum K^dagger K = support``. For
    states with weight outside the support the probabilities sum to less than
    one and outcomes are sampled from the renormalized distribution.
    """
    kraus = list(kraus)
    if not kraus:
        raise posner.CompletenessError('A POVM needs at least one element.')
    _common_labels(kraus)
    total = sum(k.matrix().conj().T @ k.matrix() for k in kraus)
    if support is None:
        target = np.eye(total.shape[0])
    else:
        if support.labels() != kraus[0].labels():
            raise posner.LabelError('POVM support must share its labels.')
        target = support.matrix()
    deviation = np.max(np.abs(total - target))
    if deviation > posner.OPERATOR_TOLERANCE:
        raise posner.CompletenessError(
            'POVM elements are not complete, deviation ' + str(deviation))

    branches, probabilities = _branches(state, kraus)
    return _select(state, branches, probabilities, seed, outcome, rng)


def overlap(a, b):
    """
    Returns ``|<a|b>|`` for two pure states over the same labels (in any
    order). Pure states are only ever compared up to global phase.
    """
    if not (a.is_pure() and b.is_pure()):
        raise ValueError('Overlaps are defined for pure states only.')
    b = b.reordered(a.labels())
    return float(abs(np.vdot(a.vector(), b.vector())))


def random_state(labels, seed=None):
    """
    Returns a Haar-random pure state on ``labels``.
    """
    labels = _check_labels(labels)
    rng = posner.make_rng(seed)
    d = 2**len(labels)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return QState(v / np.linalg.norm(v), labels)


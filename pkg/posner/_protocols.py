#
# Protocols built from the Posner operations: the tau qutrit basis,
# incoherent teleportation, the tau = 0 cascade and binding probabilities.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import itertools
import logging
import multiprocessing
import string
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

import posner


#
# The tau qutrit basis and |phi(theta)>
#

def prepare_phi_theta(theta):
    """
    Returns the six-qubit state ``|phi(theta)>``.

    Three singlets sit on positions (r1, r2), (r4, r5) and (r3, r6), so that
    one links the trios, and the qubit at r1 is then turned through
    ``exp(-i theta sigma^y)``, a rotation by ``2 theta`` about y. Its sector
    weights are ``(cos(2 theta) + 2) / 6`` for tau = 0 and
    ``(4 - cos(2 theta)) / 12`` for tau = 1 and tau = 2.
    """
    s = posner.SINGLET
    state = posner.QState(np.kron(np.kron(s, s), s), range(6))
    state = posner.apply(posner.build_rotation('y', 2 * theta, 0), state)

    # Singlet labels (0, 1), (2, 3), (4, 5) fill positions (1, 2), (4, 5),
    # (3, 6)
    order = (0, 1, 4, 2, 3, 5)
    state = state.reordered(order)
    return state.relabelled({x: i for i, x in enumerate(order)})


def phi_theta_weights(theta):
    """ Returns the closed-form sector weights of ``|phi(theta)>``. """
    c = np.cos(2 * theta)
    return ((c + 2) / 6, (4 - c) / 12, (4 - c) / 12)


def sector_weights(vector):
    """ Returns ``<v|Pi_{tau=j}|v>`` for a 64-dimensional vector. """
    v = np.asarray(vector)
    return [
        float(np.vdot(v, posner.build_tau_projector(j).matrix() @ v).real)
        for j in range(3)]


class TauQutritBasis(object):
    """
    Three orthonormal six-qubit states ``|0_tau>, |1_tau>, |2_tau>``, one in
    each sector.

    By default ``|j_tau>`` is the normalized projection of ``|phi(theta)>``
    onto sector ``j``; at ``theta = pi/4`` the three weights are equal and
    ``|+_tau> = |phi(pi/4)>``. Any sector-resolved basis can be injected
    instead through ``vectors``.
    """

    def __init__(self, theta=np.pi / 4, vectors=None):
        if vectors is None:
            self._theta = float(theta)
            phi = prepare_phi_theta(theta).vector()
            vectors = []
            for j in range(3):
                v = posner.build_tau_projector(j).matrix() @ phi
                norm = np.linalg.norm(v)
                if norm < posner.STATE_TOLERANCE:
                    raise ValueError(
                        'Sector ' + str(j) + ' of phi(theta) is empty.')
                vectors.append(v / norm)
        else:
            self._theta = None
            vectors = [np.array(v, dtype=complex) for v in vectors]

        if len(vectors) != 3:
            raise ValueError('A qutrit basis has three vectors.')
        v = np.array(vectors)
        tol = posner.OPERATOR_TOLERANCE
        if np.max(np.abs(v.conj() @ v.T - np.eye(3))) > tol:
            raise posner.InvariantError('Qutrit basis is not orthonormal.')
        for j in range(3):
            pv = posner.build_tau_projector(j).matrix() @ v[j]
            if np.max(np.abs(pv - v[j])) > tol:
                raise posner.InvariantError(
                    'Basis vector ' + str(j) + ' is not in sector ' + str(j))
        v.flags.writeable = False
        self._vectors = v

    def theta(self):
        """ Returns the construction angle, or ``None`` if injected. """
        return self._theta

    def vectors(self):
        return self._vectors

    def vector(self, j):
        return self._vectors[j % 3]

    def plus_state(self):
        """ Returns ``(|0_tau> + |1_tau> + |2_tau>) / sqrt(3)``. """
        return self._vectors.sum(axis=0) / np.sqrt(3)

    def encode(self, coefficients):
        """ Returns ``sum_j c_j |j_tau>`` as a 64-dimensional vector. """
        c = np.asarray(coefficients, dtype=complex)
        return c @ self._vectors

    def coefficients(self, vector):
        """ Returns ``c_j = <j_tau|v>``. """
        return self._vectors.conj() @ np.asarray(vector)


#
# Incoherent teleportation
#

@dataclass(frozen=True)
class TeleportResult(object):
    """
    The outcome of one incoherent teleportation.

    ``bound`` is the binding-measurement branch, ``probability`` the binding
    probability, ``reduced_state`` Bob's Posner and ``distribution`` its
    sector weights. ``weights`` holds the input ``|c_j|^2`` and
    ``success_distribution`` / ``failure_distribution`` the branch-conditional
    sector distributions predicted from them.
    """
    bound: bool
    probability: float
    reduced_state: Optional[posner.QState]
    distribution: Tuple[float, float, float]
    weights: Tuple[float, float, float]
    success_distribution: Tuple[float, float, float]
    failure_distribution: Tuple[float, float, float]

    def joint(self):
        """
        Returns the joint distribution of (branch, sector) as a 2 x 3 array,
        row 0 for binding and row 1 for failure.
        """
        p = self.probability
        return np.array([
            p * np.array(self.success_distribution),
            (1 - p) * np.array(self.failure_distribution)])


def failure_distribution(weights):
    """ Returns ``p'_j = (w_{j+1} + w_{j+2}) / 2``. """
    w = np.asarray(weights, dtype=float)
    return tuple(float((w[(j + 1) % 3] + w[(j + 2) % 3]) / 2)
                 for j in range(3))


def _teleport_coefficients(psi, basis):
    if isinstance(psi, posner.QState):
        if psi.n_qubits() != 6 or not psi.is_pure():
            raise ValueError('Teleported state must be a pure 6-qubit state.')
        c = basis.coefficients(psi.vector())
    else:
        c = np.asarray(psi, dtype=complex)
        if c.shape != (3,):
            raise ValueError('Expected three qutrit coefficients.')
    norm = float(np.sum(np.abs(c)**2))
    if abs(norm - 1) > posner.STATE_TOLERANCE:
        raise ValueError(
            'Teleported state must be a normalized combination of the qutrit'
            ' basis, got weight ' + str(norm))
    return c


def incoherent_teleport(psi, basis=None, seed=None, force_outcome=None):
    """
    Teleports the sector weights of ``psi`` from Posner A to Posner C.

    Posners B and C share ``Pi_BC |+_tau, +_tau>`` (normalized); A and B are
    then measured with the binding PVM. On binding, C carries the weights
    ``|c_j|^2``; otherwise it carries ``(|c_{j+1}|^2 + |c_{j+2}|^2) / 2``.

    Parameters
    ----------
    psi : QState or sequence of 3 complex
        The state of A, or its coefficients in ``basis``.
    basis : TauQutritBasis
        Defaults to ``TauQutritBasis()``.
    seed : int or None
        Seeds the binding measurement.
    force_outcome : bool or None
        Post-selects the binding branch.
    """
    log = logging.getLogger(__name__)
    basis = TauQutritBasis() if basis is None else basis
    c = _teleport_coefficients(psi, basis)

    plus = basis.plus_state()
    proj = posner.BindingProjector(range(6), range(6, 12))
    bell = proj.project_vector(np.kron(plus, plus), range(12))
    bell /= np.linalg.norm(bell)

    m = posner.Machine(seed)
    a = m.prepare_state(basis.encode(c))
    bc = m.prepare_state(bell)
    m.form_posner('A', a)
    m.form_posner('B', bc[:6])
    m.form_posner('C', bc[6:])
    bound, p = m.attempt_binding('A', 'B', force_outcome=force_outcome)

    rho = posner.partial_trace(m.state(), bc[6:])
    distribution = tuple(
        posner.expectation(rho, posner.build_tau_projector(j, bc[6:]))
        for j in range(3))
    weights = tuple(float(x) for x in np.abs(c)**2)
    log.info(
        'Teleport: ' + ('bound' if bound else 'not bound') + ', C weights '
        + str(distribution))
    return TeleportResult(
        bound=bound,
        probability=p,
        reduced_state=rho,
        distribution=distribution,
        weights=weights,
        success_distribution=weights,
        failure_distribution=failure_distribution(weights),
    )


def encoded_povm(labels=(0, 1, 2, 3, 4, 5)):
    """
    Returns the Kraus operators ``M_j = (Pi_{j+1} + Pi_{j+2}) / sqrt(2)`` on
    one Posner, whose outcome distribution matches the teleportation failure
    branch.
    """
    labels = tuple(labels)
    p = [posner.build_tau_projector(j, labels).matrix() for j in range(3)]
    return [
        posner.DenseOperator(
            (p[(j + 1) % 3] + p[(j + 2) % 3]) / np.sqrt(2), labels)
        for j in range(3)]


def reconstruct_weights(joint):
    """
    Recovers the input weights ``|c_j|^2`` from a joint (branch, sector)
    distribution, once from each branch: directly from the binding branch,
    and as ``1 - 2 p'_j`` from the failure branch.
    """
    joint = np.asarray(joint, dtype=float)
    out = {}
    totals = joint.sum(axis=1)
    if totals[0] > 0:
        out['success'] = joint[0] / totals[0]
    if totals[1] > 0:
        out['failure'] = 1 - 2 * joint[1] / totals[1]
    return out


def sample_records(joint, n, seed=None):
    """
    Samples ``n`` (branch, sector) records from a joint distribution and
    returns their empirical joint distribution.
    """
    joint = np.asarray(joint, dtype=float)
    rng = posner.make_rng(seed)
    cells = rng.choice(joint.size, size=int(n), p=joint.reshape(-1))
    counts = np.bincount(cells, minlength=joint.size)
    return counts.reshape(joint.shape) / float(n)


def binding_bit_accounting():
    """
    Counts the bits involved in binding two Posners' sector labels: the pair
    ``(tau_A, tau_B)`` needs 4 bits, binding records 1, so 3 are forfeited;
    identifying the pair afterwards needs 3 bits on failure (6 pairs) and 2
    on success (3 pairs).
    """
    pairs = list(itertools.product(range(3), repeat=2))
    bound = [p for p in pairs if sum(p) % 3 == 0]
    unbound = [p for p in pairs if sum(p) % 3 != 0]

    def bits(k):
        return int(np.ceil(np.log2(k)))

    total = bits(len(pairs))
    recorded = bits(2)
    return {
        'pairs': len(pairs),
        'total_bits': total,
        'recorded_bits': recorded,
        'forfeited_bits': total - recorded,
        'failure_pairs': len(unbound),
        'failure_bits': bits(len(unbound)),
        'success_pairs': len(bound),
        'success_bits': bits(len(bound)),
    }


#
# The tau = 0 cascade
#

def tau_zero_cascade(machine, names, force_success=True, seed=None):
    """
    Projects every register in ``names`` onto tau = 0 by binding A-B, B-C,
    C-A and then each further register to A, separating after every bind.

    With ``force_success`` every binding is post-selected; an impossible
    binding then raises a :class:`RenormalizationError`. Otherwise the
    cascade stops at the first failure. Returns one record per attempt.
    """
    log = logging.getLogger(__name__)
    names = [str(x) for x in names]
    if len(names) < 3:
        raise ValueError('The cascade needs at least three registers.')
    for name in names:
        if machine.is_bound(name):
            raise posner.BindingLockError(
                'Register ' + name + ' is bound.')
    rng = None if seed is None else posner.make_rng(seed)
    a, b, c = names[:3]
    schedule = [(a, b), (b, c), (c, a)] + [(x, a) for x in names[3:]]

    records = []
    for x, y in schedule:
        bound, p = machine.attempt_binding(
            x, y, seed=rng, force_outcome=True if force_success else None)
        records.append({'pair': [x, y], 'bound': bound, 'probability': p})
        if not bound:
            log.info('Cascade stopped: ' + x + '-' + y + ' did not bind')
            break
        machine.separate((x, y))
    return records


def cascade_operator_identity(n_states=200, seed=None):
    """
    Compares ``Pi_CA Pi_BC Pi_AB`` with ``Pi_0 (x) Pi_0 (x) Pi_0`` on random
    18-qubit vectors and returns the largest entrywise difference.
    """
    rng = posner.make_rng(seed)
    a, b, c = range(0, 6), range(6, 12), range(12, 18)
    labels = tuple(range(18))
    chain = [
        posner.BindingProjector(a, b),
        posner.BindingProjector(b, c),
        posner.BindingProjector(c, a),
    ]
    worst = 0.0
    for _ in range(int(n_states)):
        v = rng.normal(size=2**18) + 1j * rng.normal(size=2**18)
        v /= np.linalg.norm(v)
        lhs = v
        for proj in chain:
            lhs = proj.project_vector(lhs, labels)
        rhs = v.reshape((2,) * 18)
        for register in (a, b, c):
            rhs = posner.tau_project(rhs, list(register), 0)
        worst = max(worst, float(np.max(np.abs(lhs - rhs.reshape(-1)))))
    return worst


#
# Binding probabilities of singlet patterns
#

# Named two-Posner patterns; A holds labels 0-5 and B labels 6-11
PATTERNS = {
    'none': [],
    'one': [(3, 6)],
    'two_cross': [(3, 6), (4, 7)],
    'three_cross': [(3, 6), (4, 7), (5, 8)],
    'six': [(i, i + 6) for i in range(6)],
}


class SingletPattern(object):
    """
    A two-Posner input state: singlets on the listed label pairs and the
    maximally mixed state on every other label (legs entangled with qubits
    outside the pair).

    Labels 0-5 are Posner A's positions r1 to r6 and 6-11 are B's.
    """

    def __init__(self, pairs, external=None, name=None):
        pairs = [tuple(int(x) for x in p) for p in pairs]
        used = [x for p in pairs for x in p]
        for p in pairs:
            if len(p) != 2:
                raise posner.LabelError('Singlets join two labels.')
        if len(set(used)) != len(used):
            raise posner.LabelError(
                'A label appears in two singlets: ' + str(pairs))
        if any(not 0 <= x < 12 for x in used):
            raise posner.LabelError('Pattern labels must lie in 0-11.')
        rest = [x for x in range(12) if x not in used]
        if external is not None and sorted(int(x) for x in external) != rest:
            raise posner.LabelError(
                'External legs must be exactly the unpaired labels '
                + str(rest))
        self._pairs = pairs
        self._external = rest
        self._name = name

    @staticmethod
    def named(name):
        """ Returns one of the :data:`PATTERNS`. """
        try:
            return SingletPattern(PATTERNS[name], name=name)
        except KeyError:
            raise ValueError('Unknown singlet pattern: ' + str(name))

    def __repr__(self):
        return 'SingletPattern(' + str(self._pairs) + ')'

    def name(self):
        return self._name

    def pairs(self):
        return list(self._pairs)

    def external(self):
        return list(self._external)

    def factors(self, rotations=None):
        """
        Returns ``(labels, tensor)`` for every factor of the density matrix,
        each tensor indexed (kets, bras). ``rotations`` optionally gives a
        2x2 unitary per label, applied as ``U rho U^dagger``.
        """
        out = []
        for p, q in self._pairs:
            v = posner.SINGLET
            if rotations is not None:
                v = np.kron(rotations[p], rotations[q]) @ v
            out.append(((p, q), np.outer(v, v.conj()).reshape(2, 2, 2, 2)))
        half = np.eye(2) / 2
        for x in self._external:
            out.append(((x,), half))
        return out


# Every qubit of A and B moved by C_A C_B
_BINDING_SOURCE = posner.C_PERMUTATION + tuple(
    6 + i for i in posner.C_PERMUTATION)

_EINSUM_PATHS = {}


def _permutation_trace_subscripts(pattern):
    """
    Returns einsum subscripts and extra identity operands contracting
    ``Tr(P rho)`` for ``P = C_A C_B`` and the pattern's product ``rho``.

    The bra index of qubit ``i`` is tied to the ket index of
    ``source[i]``; where that would repeat an index within one factor a
    fresh index and an identity operand are used instead.
    """
    letters = iter(string.ascii_letters[12:])
    ket = string.ascii_letters[:12]
    subscripts = []
    deltas = []
    for labels, _ in pattern.factors():
        kets = [ket[i] for i in labels]
        bras = []
        for i in labels:
            b = ket[_BINDING_SOURCE[i]]
            if b in kets or b in bras:
                fresh = next(letters)
                deltas.append(fresh + b)
                b = fresh
            bras.append(b)
        subscripts.append(''.join(kets + bras))
    return ','.join(subscripts + deltas) + '->', len(deltas)


def binding_probability(pattern, rotations=None):
    """
    Returns the exact binding probability ``Tr(Pi_AB rho)`` of a
    :class:`SingletPattern`, optionally after rotating each qubit.

    Since ``Pi_AB = (I + P + P^2) / 3`` with ``P = C_A C_B`` and
    ``Tr(P^2 rho)`` the conjugate of ``Tr(P rho)``, only one contraction is
    needed: ``(1 + 2 Re Tr(P rho)) / 3``.
    """
    if isinstance(pattern, str):
        pattern = SingletPattern.named(pattern)
    subscripts, n_deltas = _permutation_trace_subscripts(pattern)
    operands = [t for _, t in pattern.factors(rotations)]
    operands += [np.eye(2)] * n_deltas
    try:
        path = _EINSUM_PATHS[subscripts]
    except KeyError:
        path = np.einsum_path(subscripts, *operands, optimize='greedy')[0]
        _EINSUM_PATHS[subscripts] = path
    t = np.einsum(subscripts, *operands, optimize=path)
    return float((1 + 2 * np.real(t)) / 3)


def haar_rotations(rng, n):
    """
    Returns ``n`` Haar-random 2x2 unitaries from ``SU(2)``.

    A normalized Gaussian 4-vector ``(w, x, y, z)`` is uniform on the 3-sphere,
    and ``w I - i (x sigma^x + y sigma^y + z sigma^z)`` is then Haar
    distributed: equivalently a uniformly random axis and an angle with
    density proportional to ``sin^2(theta / 2)``.
    """
    q = rng.normal(size=(int(n), 4))
    q /= np.linalg.norm(q, axis=1)[:, None]
    w, x, y, z = q.T
    u = np.empty((int(n), 2, 2), dtype=complex)
    u[:, 0, 0] = w - 1j * z
    u[:, 0, 1] = -y - 1j * x
    u[:, 1, 0] = y - 1j * x
    u[:, 1, 1] = w + 1j * z
    return u


def identity_rotations(rng, n):
    """ Returns ``n`` identities (the rotation-free sampler). """
    return np.broadcast_to(np.eye(2, dtype=complex), (int(n), 2, 2))


def _rotation_chunk(pairs, size, seed, sampler):
    """ Evaluates one chunk of rotated binding probabilities. """
    pattern = SingletPattern(pairs)
    rng = posner.make_rng(seed)
    return np.array([
        binding_probability(pattern, sampler(rng, 12))
        for _ in range(size)])


def random_rotation_average(
        pattern, n_samples, seed=None, sampler=haar_rotations, processes=1,
        chunk_size=1000):
    """
    Averages the binding probability of ``pattern`` over independent random
    rotations of all twelve qubits.

    Samples are drawn in fixed-size chunks, each from its own child of
    ``seed``, so the result does not depend on ``processes``. Returns
    ``(mean, standard_error)``.
    """
    log = logging.getLogger(__name__)
    if isinstance(pattern, str):
        pattern = SingletPattern.named(pattern)
    n = int(n_samples)
    if n < 1:
        raise ValueError('At least one sample is needed.')
    sizes = [chunk_size] * (n // chunk_size)
    if n % chunk_size:
        sizes.append(n % chunk_size)
    seeds = posner.spawn_seeds(seed, len(sizes))
    args = [(pattern.pairs(), k, s, sampler) for k, s in zip(sizes, seeds)]

    log.info(
        'Averaging ' + str(n) + ' rotations in ' + str(len(sizes))
        + ' chunks')
    if processes > 1:
        with multiprocessing.Pool(processes=processes) as pool:
            parts = pool.starmap(_rotation_chunk, args)
    else:
        parts = [_rotation_chunk(*a) for a in args]

    values = np.concatenate(parts)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return mean, stderr

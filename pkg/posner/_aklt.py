#
# AKLT prime fragments: lattices, the binding circuit, PEPS tensors and the
# site measurements that reduce the state.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import functools
import logging
import os
import string
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

import posner


class Lattice(object):
    """
    A fragment of the Posner lattice.

    Arguments:

    ``triangles``
        Triangle ids. Each triangle carries three legs, numbered 0, 1 and 2.
    ``edges``
        Singlet links ``[[t, i], [t2, i2]]`` between legs. A leg in no edge is
        a boundary stub: it shares a singlet with a qubit outside the
        fragment.
    ``posners``
        Pairs ``[t, t2]`` of triangles forming one Posner; ``t`` provides
        positions r1 to r3 and ``t2`` positions r4 to r6.

    Qubits get lattice labels: leg ``i`` of the ``s``-th triangle of Posner
    ``p`` is ``6 p + 3 s + i`` and the outside partner of the ``k``-th stub
    (in leg order) is ``6 m + k`` for ``m`` Posners.
    """

    def __init__(self, triangles, edges, posners, name=None):
        self._name = name
        self._triangles = [int(t) for t in triangles]
        if len(set(self._triangles)) != len(self._triangles):
            raise posner.LabelError('Duplicate triangle ids.')

        # Posners
        self._posners = []
        self._site = {}
        for p, pair in enumerate(posners):
            pair = tuple(int(t) for t in pair)
            if len(pair) != 2 or pair[0] == pair[1]:
                raise posner.LabelError(
                    'Each Posner holds two triangles, got ' + str(pair))
            for s, t in enumerate(pair):
                if t not in self._triangles:
                    raise posner.LabelError('Unknown triangle ' + str(t))
                if t in self._site:
                    raise posner.LabelError(
                        'Triangle ' + str(t) + ' is in two Posners.')
                self._site[t] = (p, s)
            self._posners.append(pair)
        for t in self._triangles:
            if t not in self._site:
                raise posner.LabelError(
                    'Triangle ' + str(t) + ' is not in a Posner.')

        # Edges, as pairs of leg labels
        self._edges = []
        used = set()
        for edge in edges:
            if len(edge) != 2:
                raise posner.LabelError('An edge joins two legs.')
            legs = tuple(self.leg_label(t, i) for t, i in edge)
            for x in legs:
                if x in used:
                    raise posner.LabelError(
                        'Leg ' + str(x) + ' carries two singlets.')
                used.add(x)
            if legs[0] == legs[1]:
                raise posner.LabelError('An edge cannot join a leg to itself.')
            self._edges.append(legs)

        m = len(self._posners)
        stubs = [x for x in range(6 * m) if x not in used]
        self._stubs = {x: 6 * m + k for k, x in enumerate(stubs)}

    @staticmethod
    def from_dict(obj, name=None):
        """ Creates a lattice from ``{triangles, edges, posners}``. """
        try:
            return Lattice(
                obj['triangles'], obj['edges'], obj['posners'],
                name=obj.get('name', name))
        except KeyError as e:
            raise posner.ConfigError(
                'Lattice description lacks ' + str(e) + '.')

    def to_dict(self):
        legs = {}
        for t, (p, s) in self._site.items():
            for i in range(3):
                legs[6 * p + 3 * s + i] = [t, i]
        return {
            'name': self._name,
            'triangles': list(self._triangles),
            'edges': [[legs[x], legs[y]] for x, y in self._edges],
            'posners': [list(p) for p in self._posners],
        }

    def __repr__(self):
        return 'Lattice(' + str(self._name) + ')'

    def name(self):
        return self._name

    def triangles(self):
        return list(self._triangles)

    def posners(self):
        """ Returns the ``(t, t2)`` triangle pairs. """
        return list(self._posners)

    def n_posners(self):
        return len(self._posners)

    def leg_label(self, triangle, leg):
        """ Returns the lattice label of leg ``leg`` of ``triangle``. """
        leg = int(leg)
        if leg not in (0, 1, 2):
            raise posner.LabelError('Triangle legs are 0, 1 and 2.')
        try:
            p, s = self._site[int(triangle)]
        except KeyError:
            raise posner.LabelError('Unknown triangle ' + str(triangle))
        return 6 * p + 3 * s + leg

    def edges(self):
        """ Returns the singlet links as pairs of leg labels. """
        return list(self._edges)

    def stubs(self):
        """ Returns a dict mapping stub legs to their outside partners. """
        return dict(self._stubs)

    def is_closed(self):
        return not self._stubs

    def posner_labels(self, p):
        """ Returns the six labels of Posner ``p``, in position order. """
        return tuple(range(6 * p, 6 * p + 6))

    def labels(self):
        """ Returns every lattice label, legs first and then stub partners. """
        return list(range(6 * len(self._posners) + len(self._stubs)))

    def n_qubits(self):
        return len(self.labels())

    def internal_edge(self, p):
        """
        Returns the edge joining the third legs of Posner ``p``'s triangles,
        or ``None``.
        """
        a, b = 6 * p + 2, 6 * p + 5
        for x, y in self._edges:
            if {x, y} == {a, b}:
                return (x, y)
        return None


def load_lattice(name):
    """
    Loads a lattice from a JSON file, or one of the bundled lattices
    (``single_posner``, ``two_posner``, ``closed_three_posner``) by name.
    """
    path = name
    if not os.path.isfile(path):
        path = os.path.join(posner.DIR_LATTICES, str(name) + '.json')
        if not os.path.isfile(path):
            raise posner.ConfigError('Unknown lattice: ' + str(name))
    obj = posner.load_json(path)
    default = os.path.splitext(os.path.basename(path))[0]
    return Lattice.from_dict(obj, name=default)


#
# The circuit route
#

def _prepare_fragment(lattice, rng):
    """
    Prepares a singlet on every edge and stub and forms the Posners. Returns
    the machine and the map from machine labels to lattice labels.
    """
    machine = posner.Machine(rng)
    mapping = {}
    for x, y in lattice.edges():
        a, b = machine.prepare_singlet()
        mapping[a], mapping[b] = x, y
    for leg, partner in sorted(lattice.stubs().items()):
        a, b = machine.prepare_singlet()
        mapping[a], mapping[b] = leg, partner
    inverse = {v: k for k, v in mapping.items()}
    for p in range(lattice.n_posners()):
        machine.form_posner(
            'P' + str(p), [inverse[x] for x in lattice.posner_labels(p)])
    return machine, mapping


def _project_fragment(machine, n_posners, force_success):
    """
    Projects every Posner onto tau = 0, returning ``False`` if an unforced
    binding fails.
    """
    names = ['P' + str(p) for p in range(n_posners)]
    if n_posners >= 3:
        records = posner.tau_zero_cascade(
            machine, names, force_success=force_success)
        return len(records) == n_posners and all(
            r['bound'] for r in records)
    for name in names:
        bound, _ = machine.bind_to_reference(
            name, force_outcome=True if force_success else None)
        if not bound:
            return False
    return True


def build_aklt_prime_circuit(
        lattice, force_success=True, seed=None, trace_boundary=True,
        max_attempts=1000, stats=None):
    """
    Prepares the AKLT prime state of a lattice fragment with Posner
    operations.

    A singlet is prepared on every edge and on every boundary stub, the
    Posners are formed and each is projected onto tau = 0: through the
    A-B, B-C, C-A cascade for three or more Posners, or by binding each to a
    projected reference otherwise. Without ``force_success`` a failed binding
    hydrolyzes the attempt and the whole fragment is prepared again from
    fresh singlets, up to ``max_attempts`` times.

    With ``trace_boundary`` the stub partners are traced out, leaving a mixed
    state over the Posner qubits; closed lattices stay pure. The returned
    state carries lattice labels. If ``stats`` is a dict, the number of
    attempts is stored in ``stats['attempts']``.
    """
    log = logging.getLogger(__name__)
    if isinstance(lattice, str):
        lattice = load_lattice(lattice)
    if lattice.n_qubits() > posner.MAX_QUBITS:
        raise posner.CapacityError(
            'Lattice ' + str(lattice.name()) + ' needs '
            + str(lattice.n_qubits()) + ' qubits.')
    rng = posner.make_rng(seed)

    for attempt in range(1, int(max_attempts) + 1):
        machine, mapping = _prepare_fragment(lattice, rng)
        if _project_fragment(machine, lattice.n_posners(), force_success):
            break
        log.info('AKLT prime attempt ' + str(attempt) + ' failed, refreshing')
    else:
        raise posner.PosnerError(
            'AKLT prime preparation failed ' + str(max_attempts) + ' times.')
    if stats is not None:
        stats['attempts'] = attempt

    partners = set(lattice.stubs().values())
    if trace_boundary and partners:
        machine.discard([a for a, x in mapping.items() if x in partners])
    state = machine.state().relabelled(mapping)
    return state.reordered(sorted(state.labels()))


#
# The PEPS route
#

# Gauge on the virtual legs; it fixes the overall scale and signs of T+
GAUGE = np.array([1, -np.sqrt(3)])

# Singlet amplitudes s[x, y] of (|01> - |10>) / sqrt(2)
_S = np.array([[0, 1], [-1, 0]]) / np.sqrt(2)


class PepsTensor(object):
    """
    One of the two Posner tensors, indexed ``[a1, a2, a3, v1, v2, v3]``.

    ``a1..a3`` are the physical qubits of a trio, ``v1`` and ``v2`` the
    virtual legs of its outer singlets and ``v3 = 3 u + tau`` (0 to 5) the
    bond to the other trio of the same Posner, carrying the qubit value
    ``u`` on T+'s side of the internal singlet and the trio sector ``tau``.
    """

    def __init__(self, name, array):
        array = np.asarray(array)
        if array.shape != (2, 2, 2, 2, 2, 6):
            raise ValueError('PEPS tensors have shape (2, 2, 2, 2, 2, 6).')
        self._name = name
        self._array = array
        self._array.flags.writeable = False

    def __repr__(self):
        return 'PepsTensor(' + self._name + ')'

    def name(self):
        return self._name

    def array(self):
        return self._array

    def entry(self, a, v):
        """
        Returns ``T[a, v]`` for bit strings or tuples ``a = (a1, a2, a3)``
        and ``v = (v1, v2, v3)``.
        """
        a = tuple(int(x) for x in a)
        v = tuple(int(x) for x in v)
        return self._array[a + v]

    def allowed(self, a, v):
        """
        Returns whether entry ``(a, v)`` may be nonzero: the trio's S^z is
        conserved, so the physical Hamming weight equals that of the virtual
        qubits ``(v1, v2, u)`` for T+, and of ``(v1, v2, 1 - u)`` for T-,
        whose third qubit is the singlet partner of ``u``.
        """
        u = v[2] // 3
        third = u if self._name == 'T+' else 1 - u
        return sum(a) == v[0] + v[1] + third

    def structural_violations(self):
        """ Returns the entries that are nonzero where not allowed. """
        out = []
        for index in np.ndindex(*self._array.shape):
            a, v = index[:3], index[3:]
            if abs(self._array[index]) > posner.OPERATOR_TOLERANCE:
                if not self.allowed(a, v):
                    out.append(index)
        return out


@functools.lru_cache(maxsize=None)
def build_peps_tensors():
    """
    Returns ``(T+, T-)``.

    Projecting a Posner onto tau = 0 is ``sum_tau Q_tau (x) Q_-tau`` with
    ``Q_tau`` the trio sector projectors. Splitting that sum across the
    internal singlet, and weighting every virtual qubit with the gauge
    ``g = (1, -sqrt(3))``, gives

        T+[a, v1, v2, 3u + tau] = g(v1) g(v2) g(u) <a|Q_tau|v1 v2 u>
        T-[a, w1, w2, 3u + tau] =
            g(w1) g(w2) / g(u) sum_x <a|Q_-tau|w1 w2 x> s(u, x)

    The gauge cancels on every bond once the outer singlets are weighted
    with ``1 / g``, and ``T+[000, 000] = 1``.
    """
    q = [posner.build_trio_tau_projector(j).matrix() for j in range(3)]
    plus = np.zeros((2, 2, 2, 2, 2, 6), dtype=complex)
    minus = np.zeros((2, 2, 2, 2, 2, 6), dtype=complex)
    for index in np.ndindex(2, 2, 2, 2, 2, 2, 3):
        a, (v1, v2, u, tau) = index[:3], index[3:]
        row = 4 * a[0] + 2 * a[1] + a[2]
        g = GAUGE[v1] * GAUGE[v2]
        v3 = 3 * u + tau
        col = 4 * v1 + 2 * v2
        plus[a + (v1, v2, v3)] = g * GAUGE[u] * q[tau][row, col + u]
        minus[a + (v1, v2, v3)] = g / GAUGE[u] * sum(
            q[-tau % 3][row, col + x] * _S[u, x] for x in (0, 1))
    return PepsTensor('T+', plus), PepsTensor('T-', minus)


def contract_peps(lattice):
    """
    Contracts the PEPS of a lattice fragment into a normalized pure state.

    Every Posner contributes T+ (its first triangle) and T- (its second),
    joined on ``v3``; the internal singlet must link the two third legs.
    Outer singlets between legs become bond matrices ``s(x, y) / (g(x) g(y))``
    and boundary stubs are contracted with ``s(x, sigma) / g(x)``, keeping the
    outside partner ``sigma`` as a physical qubit. The state has the same
    labels as :meth:`build_aklt_prime_circuit` without boundary tracing.
    """
    if isinstance(lattice, str):
        lattice = load_lattice(lattice)
    if lattice.n_qubits() > posner.MAX_QUBITS:
        raise posner.CapacityError(
            'Lattice ' + str(lattice.name()) + ' needs '
            + str(lattice.n_qubits()) + ' qubits.')
    plus, minus = build_peps_tensors()
    letters = iter(string.ascii_letters)
    labels = lattice.labels()
    physical = {x: next(letters) for x in labels}
    virtual = {}
    subscripts = []
    operands = []

    for p in range(lattice.n_posners()):
        if lattice.internal_edge(p) is None:
            raise posner.LabelError(
                'Posner ' + str(p) + ' needs a singlet between the third legs'
                ' of its triangles.')
        bond = next(letters)
        for s, tensor in ((0, plus), (1, minus)):
            base = 6 * p + 3 * s
            virtual[base] = next(letters)
            virtual[base + 1] = next(letters)
            subscripts.append(
                physical[base] + physical[base + 1] + physical[base + 2]
                + virtual[base] + virtual[base + 1] + bond)
            operands.append(tensor.array())

    bond = _S / np.outer(GAUGE, GAUGE)
    for x, y in lattice.edges():
        if x % 3 == 2 and y % 3 == 2 and x // 6 == y // 6:
            continue
        if x not in virtual or y not in virtual:
            raise posner.LabelError(
                'Leg ' + str(x if x not in virtual else y) + ' is unmatched:'
                ' third legs only join the two triangles of one Posner.')
        subscripts.append(virtual[x] + virtual[y])
        operands.append(bond)

    stub = _S / GAUGE[:, None]
    for leg, partner in sorted(lattice.stubs().items()):
        if leg not in virtual:
            raise posner.LabelError('Leg ' + str(leg) + ' is unmatched.')
        subscripts.append(virtual[leg] + physical[partner])
        operands.append(stub)

    out = ''.join(physical[x] for x in labels)
    t = np.einsum(
        ','.join(subscripts) + '->' + out, *operands, optimize='greedy')
    v = t.reshape(-1)
    norm = np.linalg.norm(v)
    if norm < posner.STATE_TOLERANCE:
        raise posner.InvariantError('The PEPS contracts to zero.')
    return posner.QState(v / norm, labels)


#
# Site measurements
#

# Outcomes of the site measurement
SITE_OUTCOMES = ('3/2-pair', 'other')

# Outcomes of the trio POVM
F_AXES = ('x', 'y', 'z')


def site_projectors(labels):
    """
    Returns the PVM ``{P_3/2 (x) P_3/2, complement}`` on a Posner's six
    labels, testing whether both trios have spin 3/2.
    """
    labels = tuple(labels)
    if len(labels) != 6:
        raise posner.LabelError('A site has six labels.')
    pair = posner.kron(
        posner.build_spin32_projector(labels[:3]),
        posner.build_spin32_projector(labels[3:]))
    other = posner.DenseOperator(np.eye(64) - pair.matrix(), labels)
    return [pair, other]


def measure_site_spin(state, labels, seed=None, outcome=None):
    """
    Measures ``S^2_123 (x) S^2_456`` on the Posner at ``labels`` with the
    two outcomes of :data:`SITE_OUTCOMES`, returning a :class:`Measurement`
    whose outcome 0 means both trios have spin 3/2.
    """
    if isinstance(outcome, str):
        outcome = SITE_OUTCOMES.index(outcome)
    return posner.measure_pvm(
        state, site_projectors(labels), seed=seed, outcome=outcome)


def build_f_povm(labels=(0, 1, 2)):
    """
    Returns the Kraus operators
    ``F_a = sqrt(2/3) (|+a +a +a><+a +a +a| + |-a -a -a><-a -a -a|)`` for
    ``a`` in x, y, z, with ``|+-a>`` the eigenstates of ``sigma^a``. They sum
    (as ``F^dagger F``) to the s = 3/2 projector of the trio.
    """
    r = 1 / np.sqrt(2)
    eigenstates = {
        'x': ([r, r], [r, -r]),
        'y': ([r, 1j * r], [r, -1j * r]),
        'z': ([1, 0], [0, 1]),
    }
    out = []
    for axis in F_AXES:
        f = np.zeros((8, 8), dtype=complex)
        for e in eigenstates[axis]:
            e = np.asarray(e, dtype=complex)
            v = np.kron(np.kron(e, e), e)
            f += np.outer(v, v.conj())
        out.append(posner.DenseOperator(np.sqrt(2 / 3) * f, labels))
    return out


@dataclass(frozen=True)
class FOutcome(object):
    """
    The result of the trio POVM: the axis that fired, its probability, the
    updated state, the full distribution, and whether the trio had weight
    outside the s = 3/2 subspace.
    """
    axis: str
    probability: float
    post_state: Optional[posner.QState]
    probabilities: Tuple[float, ...]
    outside_support: bool


def measure_povm_F(state, trio, seed=None, outcome=None):
    """
    Measures the trio at ``trio`` (three labels) with the F POVM.

    The POVM is complete on the s = 3/2 subspace only; if the trio's weight
    there is below ``1 - 1e-6`` a warning is logged and the result is flagged.
    """
    log = logging.getLogger(__name__)
    trio = tuple(trio)
    if len(trio) != 3:
        raise posner.LabelError('A trio has three labels.')
    support = posner.build_spin32_projector(trio)
    weight = posner.expectation(state, support)
    outside = bool(weight < 1 - 1e-6)
    if outside:
        log.warning(
            'Trio ' + str(trio) + ' has s = 3/2 weight ' + str(weight)
            + '; the F POVM is incomplete there.')
    if isinstance(outcome, str):
        outcome = F_AXES.index(outcome)
    m = posner.measure_povm(
        state, build_f_povm(trio), support=support, seed=seed,
        outcome=outcome)
    return FOutcome(
        axis=F_AXES[m.outcome],
        probability=m.probability,
        post_state=m.post_state,
        probabilities=m.probabilities,
        outside_support=outside,
    )


def povm_outcome_set(state, lattice, seed=None):
    """
    Measures every Posner of a lattice state with the site measurement and,
    where both trios have spin 3/2, both trios with the F POVM.

    Returns ``(records, state)``, one record per Posner with its site outcome
    and the axes measured on its trios.
    """
    rng = posner.make_rng(seed)
    records = []
    for p in range(lattice.n_posners()):
        labels = lattice.posner_labels(p)
        m = measure_site_spin(state, labels, seed=rng)
        state = m.post_state
        record = {'posner': p, 'site': SITE_OUTCOMES[m.outcome], 'axes': []}
        if m.outcome == 0:
            for trio in (labels[:3], labels[3:]):
                f = measure_povm_F(state, trio, seed=rng)
                state = f.post_state
                record['axes'].append(f.axis)
        records.append(record)
    return records, state


def site_statistic_footnote():
    """
    Evaluates the site statistic on the approximate single-Posner state: an
    internal singlet between the third legs and the maximally mixed state on
    the four outer legs, projected onto tau = 0.

    Returns the tau = 0 probability, the joint probability of tau = 0 and
    spin 3/2 on both trios, and the conditional probability of the latter.
    """
    singlet = np.outer(posner.SINGLET, posner.SINGLET.conj())
    rho = np.kron(singlet, np.eye(16) / 16)
    state = posner.QState(rho, [2, 5, 0, 1, 3, 4]).reordered(range(6))
    tau = [posner.build_tau_projector(j) for j in range(3)]
    projected = posner.measure_pvm(state, tau, outcome=0)
    site = measure_site_spin(projected.post_state, range(6), outcome=0)
    return {
        'tau_zero': projected.probability,
        'joint': projected.probability * site.probability,
        'conditional': site.probability,
    }


def edge_correlation(state, edge, sites):
    """
    Returns ``<sigma^z sigma^z>`` across the singlet ``edge`` after
    post-selecting both trios of every Posner in ``sites`` (lists of six
    labels) on spin 3/2.
    """
    for labels in sites:
        state = measure_site_spin(state, labels, outcome=0).post_state
    x, y = edge
    zz = posner.kron(posner.build_pauli('z', x), posner.build_pauli('z', y))
    return posner.expectation(state, zz)

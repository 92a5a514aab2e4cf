#
# The Posner instruction set: singlets, registers, binding and hydrolysis.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import numpy as np

import posner
from ._qstate import ZERO_PROBABILITY, _positions


# The singlet (|01> - |10>)/sqrt(2)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


class PosnerRegister(object):
    """
    A named group of six qubit labels, ordered as positions r1 to r6.

    The order fixes the geometry assignment: ``C`` sends the qubit at r1 to
    r2, r2 to r3 and r3 to r1, and likewise for r4, r5 and r6.
    """

    def __init__(self, name, labels):
        name = str(name)
        if posner.NAME_FORMAT.match(name) is None:
            raise ValueError('Invalid register name: ' + name)
        labels = tuple(int(x) for x in labels)
        if len(labels) != 6 or len(set(labels)) != 6:
            raise posner.LabelError(
                'A Posner register needs six distinct labels, got '
                + str(labels))
        self._name = name
        self._labels = labels
        self._formed = True

    def __repr__(self):
        return 'PosnerRegister(' + self._name + ', ' + str(self._labels) + ')'

    def name(self):
        return self._name

    def labels(self):
        return self._labels

    def is_formed(self):
        return self._formed

    def _dissolve(self):
        self._formed = False


class BindingProjector(object):
    """
    The binding projector of two registers,
    ``Pi_AB = sum_j Pi^A_{tau=j} (x) Pi^B_{tau=-j}``.

    The projector is never stored as a matrix: it equals
    ``(I + P + P^2) / 3`` with ``P = C_A C_B`` a permutation of the twelve
    qubits, and is applied by permuting tensor axes.
    """

    def __init__(self, a_labels, b_labels):
        a_labels = tuple(int(x) for x in a_labels)
        b_labels = tuple(int(x) for x in b_labels)
        if len(a_labels) != 6 or len(b_labels) != 6:
            raise posner.LabelError('Binding acts on two hextuples.')
        if set(a_labels) & set(b_labels):
            raise posner.LabelError(
                'Cannot bind a register to itself or to an overlapping one.')
        self._labels = a_labels + b_labels
        self._source = posner.C_PERMUTATION + tuple(
            6 + i for i in posner.C_PERMUTATION)

    def labels(self):
        return self._labels

    def sector_terms(self):
        """ Returns the ``(tau_A, tau_B)`` sector pairs it keeps. """
        return [(j, (-j) % 3) for j in range(3)]

    def project_tensor(self, tensor, positions):
        """
        Applies the projector to the axes ``positions`` (twelve, in register
        order) of a raw tensor.
        """
        once = posner.permute_axes(tensor, positions, self._source)
        twice = posner.permute_axes(once, positions, self._source)
        return (tensor + once + twice) / 3

    def project_vector(self, vector, labels):
        """ Applies the projector to a raw state vector over ``labels``. """
        positions = _positions(labels, self._labels)
        t = np.asarray(vector).reshape((2,) * len(labels))
        return self.project_tensor(t, positions).reshape(-1)

    def probability(self, state):
        """ Returns ``Tr(Pi_AB rho)`` for ``state``. """
        positions = _positions(state.labels(), self._labels)
        if state.is_pure():
            p = self.project_tensor(state.tensor(), positions).reshape(-1)
            return float(np.vdot(state.vector(), p).real)
        n = state.n_qubits()
        x = self.project_tensor(state.tensor(), positions)
        return float(np.trace(x.reshape(2**n, 2**n)).real)

    def trace(self):
        """ Returns ``Tr(Pi_AB)``, the dimension of the binding subspace. """
        ranks = [
            np.trace(posner.build_tau_projector(j).matrix()).real
            for j in range(3)]
        return int(round(sum(
            ranks[a] * ranks[b] for a, b in self.sector_terms())))

    def to_dense(self):
        """
        Returns the projector as a :class:`DenseOperator` on the twelve
        labels, for verification only (a 4096 by 4096 matrix).
        """
        log = logging.getLogger(__name__)
        log.warning('Materializing a dense 4096 x 4096 binding projector.')
        a, b = self._labels[:6], self._labels[6:]
        matrix = sum(
            np.kron(
                posner.build_tau_projector(ja).matrix(),
                posner.build_tau_projector(jb).matrix())
            for ja, jb in self.sector_terms())
        return posner.DenseOperator(matrix, a + b)


class Machine(object):
    """
    A Posner machine: a global state over every live qubit, the registers
    formed from those qubits, and the set of bound register pairs.

    Arguments:

    ``seed``
        Seeds the generator used for every measurement that is not given its
        own seed, so that replaying a program with the same seed reproduces
        its outcomes.
    """

    def __init__(self, seed=None):
        self._state = posner.QState([1], [])
        self._posners = {}
        self._owner = {}
        self._bound = set()
        self._next_label = 0
        self._rng = posner.make_rng(seed)
        self._trace = []

    #
    # Inspection
    #

    def state(self):
        """ Returns the current :class:`QState`. """
        return self._state

    def labels(self):
        """ Returns the live qubit labels. """
        return self._state.labels()

    def posners(self):
        """ Returns a dict mapping register names to registers. """
        return dict(self._posners)

    def register(self, name):
        """ Returns the register called ``name``. """
        try:
            return self._posners[name]
        except KeyError:
            raise posner.OwnershipError('No register named ' + str(name))

    def bound_pairs(self):
        """ Returns the bound pairs as a sorted list of name tuples. """
        return sorted(self._bound)

    def is_bound(self, name):
        return any(name in pair for pair in self._bound)

    def trace(self):
        """ Returns the list of records of every operation performed. """
        return list(self._trace)

    def check_invariants(self):
        """
        Checks the register bookkeeping and the state invariants, raising an
        :class:`InvariantError` on failure.
        """
        live = set(self._state.labels())
        seen = set()
        for name, reg in self._posners.items():
            labels = set(reg.labels())
            if labels & seen:
                raise posner.InvariantError(
                    'Register ' + name + ' shares a qubit.')
            if not labels <= live:
                raise posner.InvariantError(
                    'Register ' + name + ' holds a dead qubit.')
            seen |= labels
        for a, b in self._bound:
            if a not in self._posners or b not in self._posners:
                raise posner.InvariantError(
                    'Bound pair ' + str((a, b)) + ' names a missing register.')
        self._state.check_invariants()

    def _record(self, op, **details):
        details['op'] = op
        self._trace.append(details)
        return details

    def _generator(self, seed):
        return self._rng if seed is None else posner.make_rng(seed)

    #
    # Operation 1: singlets and other fresh qubits
    #

    def _append(self, vector):
        """ Adds fresh qubits in the pure state ``vector``. """
        vector = np.asarray(vector, dtype=complex)
        k = int(vector.shape[0]).bit_length() - 1
        n = self._state.n_qubits()
        if n + k > posner.MAX_QUBITS:
            raise posner.CapacityError(
                'Adding ' + str(k) + ' qubits to ' + str(n) + ' exceeds the '
                + str(posner.MAX_QUBITS) + '-qubit cap.')
        labels = tuple(range(self._next_label, self._next_label + k))
        if self._state.is_pure():
            data = np.kron(self._state.vector(), vector)
        else:
            data = np.kron(
                self._state.data(), np.outer(vector, vector.conj()))
        self._state = posner.QState(data, self._state.labels() + labels)
        self._next_label += k
        return labels

    def prepare_singlet(self):
        """
        Appends two fresh qubits in the singlet ``(|01> - |10>)/sqrt(2)`` and
        returns their labels.
        """
        labels = self._append(SINGLET)
        self._record('prepare_singlet', labels=list(labels))
        return labels

    def prepare_state(self, vector):
        """
        Appends fresh qubits in the normalized pure state ``vector`` (or the
        vector of a pure :class:`QState`) and returns their labels.
        """
        if isinstance(vector, posner.QState):
            vector = vector.vector()
        vector = np.asarray(vector, dtype=complex)
        norm = np.linalg.norm(vector)
        if abs(norm - 1) > posner.STATE_TOLERANCE:
            raise posner.InvariantError(
                'Prepared state must be normalized, got norm ' + str(norm))
        labels = self._append(vector)
        self._record('prepare_state', labels=list(labels))
        return labels

    #
    # Operations 2 and 3: forming, permuting, rotating, hydrolyzing
    #

    def form_posner(self, name, labels):
        """
        Groups six live, unowned qubits into the register ``name``. The state
        is untouched.
        """
        name = str(name)
        if name in self._posners:
            raise posner.OwnershipError(
                'A register named ' + name + ' already exists.')
        reg = PosnerRegister(name, labels)
        _positions(self._state.labels(), reg.labels())
        for x in reg.labels():
            if x in self._owner:
                raise posner.OwnershipError(
                    'Qubit ' + str(x) + ' already belongs to register '
                    + self._owner[x])
        self._posners[name] = reg
        for x in reg.labels():
            self._owner[x] = name
        self._record('form_posner', name=name, labels=list(reg.labels()))
        return reg

    def _free_register(self, name):
        reg = self.register(name)
        if self.is_bound(name):
            raise posner.BindingLockError(
                'Register ' + name + ' is bound; separate it first.')
        return reg

    def _bound_pair(self, pair):
        a, b = (str(x) for x in pair)
        key = tuple(sorted((a, b)))
        if key not in self._bound:
            raise posner.BindingLockError(
                'Registers ' + a + ' and ' + b + ' are not bound.')
        return key

    def permute_hextuple(self, name):
        """ Applies ``C`` to the free register ``name``. """
        reg = self._free_register(name)
        self._state = posner.apply(
            posner.build_c_operator(reg.labels()), self._state)
        self._record('permute', name=name)

    def _rotate(self, labels, axis, theta):
        u = posner.rotation_matrix(axis, theta)
        for x in labels:
            self._state = posner.apply(
                posner.DenseOperator(u, [x]), self._state, check=False)
        self._state.check_invariants()

    def rotate_hextuple(self, name, axis, theta):
        """
        Applies the same rotation ``exp(-i theta/2 n.sigma)`` to each qubit of
        the free register ``name``. Any angle is accepted.
        """
        reg = self._free_register(name)
        self._rotate(reg.labels(), axis, theta)
        self._record(
            'rotate', name=name, axis=_axis_record(axis), theta=float(theta))

    def rotate_dodectuple(self, pair, axis, theta):
        """ Rotates all twelve qubits of a bound pair identically. """
        a, b = self._bound_pair(pair)
        labels = self.register(a).labels() + self.register(b).labels()
        self._rotate(labels, axis, theta)
        self._record(
            'rotate_pair', pair=[a, b], axis=_axis_record(axis),
            theta=float(theta))

    def hydrolyze(self, name):
        """
        Dissolves the free register ``name``; its qubits stay live and the
        state is untouched.
        """
        self._dissolve(self._free_register(name))
        self._record('hydrolyze', name=name)

    def _dissolve(self, reg):
        del self._posners[reg.name()]
        for x in reg.labels():
            del self._owner[x]
        reg._dissolve()

    def hydrolyze_pair(self, pair):
        """ Dissolves both registers of a bound pair. """
        a, b = self._bound_pair(pair)
        self._bound.discard((a, b))
        self._dissolve(self.register(a))
        self._dissolve(self.register(b))
        self._record('hydrolyze_pair', pair=[a, b])

    def separate(self, pair):
        """ Splits a bound pair back into two free registers. """
        a, b = self._bound_pair(pair)
        self._bound.discard((a, b))
        self._record('separate', pair=[a, b])

    def discard(self, labels):
        """
        Traces out unowned qubits, leaving a mixed state over the rest.
        """
        labels = [int(x) for x in labels]
        for x in labels:
            if x in self._owner:
                raise posner.OwnershipError(
                    'Qubit ' + str(x) + ' belongs to register '
                    + self._owner[x] + ' and cannot be discarded.')
        _positions(self._state.labels(), labels)
        keep = [x for x in self._state.labels() if x not in labels]
        if keep:
            self._state = posner.partial_trace(self._state, keep)
        else:
            self._state = posner.QState([1], [])
        self._record('discard', labels=labels)

    #
    # Operation 5: binding, and sector measurements
    #

    def build_binding_projector(self, a, b):
        """ Returns the binding projector of registers ``a`` and ``b``. """
        if str(a) == str(b):
            raise posner.LabelError('Cannot bind register ' + str(a)
                                    + ' to itself.')
        return BindingProjector(
            self.register(a).labels(), self.register(b).labels())

    def _two_outcome(self, project, labels, seed, force):
        """
        Measures ``{Pi, I - Pi}`` where ``project(tensor, positions)`` applies
        ``Pi`` to raw tensor axes, returning ``(fired, p)`` with ``p`` the
        probability of ``Pi``.

        The failure branch of a mixed state uses
        ``(rho - Pi rho - rho Pi + Pi rho Pi) / (1 - p)``.
        """
        state = self._state
        n = state.n_qubits()
        positions = _positions(state.labels(), labels)

        if state.is_pure():
            psi = state.vector()
            proj = project(state.tensor(), positions).reshape(-1)
            p = float(np.vdot(psi, proj).real)
        else:
            rho = state.data()
            x = project(state.tensor(), positions).reshape(2**n, 2**n)
            y = x.conj().T.reshape((2,) * (2 * n))
            pxp = project(y, positions).reshape(2**n, 2**n).conj().T
            p = float(np.trace(x).real)
        p = min(max(p, 0.0), 1.0)

        if force is None:
            rng = self._generator(seed)
            fired = posner.sample_index([p, 1 - p], rng) == 0
        else:
            fired = bool(force)
        q = p if fired else 1 - p
        if q <= ZERO_PROBABILITY:
            raise posner.RenormalizationError(
                'Forced ' + ('success' if fired else 'failure')
                + ' has probability ' + str(q) + '.')

        if state.is_pure():
            data = (proj if fired else psi - proj) / np.sqrt(q)
        elif fired:
            data = pxp / q
        else:
            data = (rho - x - x.conj().T + pxp) / q
        self._state = posner.QState(data, state.labels())
        return fired, p

    def attempt_binding(self, a, b, seed=None, force_outcome=None):
        """
        Measures the binding PVM ``{Pi_AB, I - Pi_AB}`` on free registers
        ``a`` and ``b``.

        ``force_outcome`` post-selects the branch (``True`` for binding). On
        success the pair becomes bound. Returns ``(bound, probability)``, with
        ``probability`` the binding probability before the update.

        A mixed machine state is limited to ``MAX_MIXED_QUBITS``, so two
        Posners with all twelve qubits mixed cannot be bound here; use
        :func:`posner.binding_probability` for those.
        """
        log = logging.getLogger(__name__)
        proj = self.build_binding_projector(a, b)
        self._free_register(a)
        self._free_register(b)
        bound, p = self._two_outcome(
            proj.project_tensor, proj.labels(), seed, force_outcome)
        if bound:
            self._bound.add(tuple(sorted((str(a), str(b)))))
        log.info(
            'Binding ' + str(a) + '-' + str(b) + ': p = ' + str(p) + ', '
            + ('bound' if bound else 'not bound'))
        self._record(
            'bind', pair=[str(a), str(b)], bound=bound, probability=p)
        return bound, p

    def bind_to_reference(self, name, seed=None, force_outcome=None):
        """
        Binds the free register ``name`` to a partner already projected onto
        the tau = 0 sector, which measures ``{Pi_{tau=0}, I - Pi_{tau=0}}``
        on ``name`` alone. Returns ``(bound, probability)``.
        """
        reg = self._free_register(name)

        def project(t, positions):
            return posner.tau_project(t, positions, 0)

        bound, p = self._two_outcome(
            project, reg.labels(), seed, force_outcome)
        self._record(
            'bind_reference', name=name, bound=bound, probability=p)
        return bound, p

    def tau_weights(self, name):
        """ Returns the sector weights ``[p_0, p_1, p_2]`` of a register. """
        reg = self.register(name)
        state = self._state
        positions = _positions(state.labels(), reg.labels())
        n = state.n_qubits()
        weights = []
        for j in range(3):
            t = posner.tau_project(state.tensor(), positions, j)
            if state.is_pure():
                w = np.vdot(state.vector(), t.reshape(-1)).real
            else:
                w = np.trace(t.reshape(2**n, 2**n)).real
            weights.append(float(w))
        return weights

    def measure_tau(self, name, seed=None, force_outcome=None):
        """
        Measures the sector of register ``name`` with
        ``{Pi_{tau=0}, Pi_{tau=1}, Pi_{tau=2}}``, returning
        ``(tau, probability)``.
        """
        reg = self.register(name)
        state = self._state
        positions = _positions(state.labels(), reg.labels())
        n = state.n_qubits()
        weights = self.tau_weights(name)

        if force_outcome is None:
            tau = posner.sample_index(weights, self._generator(seed))
        else:
            tau = int(force_outcome) % 3
        p = weights[tau]
        if p <= ZERO_PROBABILITY:
            raise posner.RenormalizationError(
                'Sector ' + str(tau) + ' has probability ' + str(p) + '.')

        t = posner.tau_project(state.tensor(), positions, tau)
        if state.is_pure():
            data = t.reshape(-1) / np.sqrt(p)
        else:
            # Pi rho Pi, with the bra side projected through the adjoint
            y = t.reshape(2**n, 2**n).conj().T.reshape((2,) * (2 * n))
            data = posner.tau_project(y, positions, tau).reshape(
                2**n, 2**n).conj().T / p
        self._state = posner.QState(data, state.labels())
        self._record('measure_tau', name=name, tau=tau, probability=p)
        return tau, p


def _axis_record(axis):
    return axis if isinstance(axis, str) else [float(x) for x in axis]


def coarse_bell_check(tolerance=None):
    """
    Checks that, on the span of ``|1_tau 1_tau>, |1_tau 2_tau>,
    |2_tau 1_tau>, |2_tau 2_tau>``, the binding projector acts as
    ``|Psi+><Psi+| + |Psi-><Psi-|`` and its complement as
    ``|Phi+><Phi+| + |Phi-><Phi-|`` under the relabelling ``1_tau -> 0``,
    ``2_tau -> 1``.

    The check runs for the four choices of ``|1_tau>`` and ``|2_tau>`` among
    the first two charge basis states of the tau = 1 and tau = 2 sectors.
    Returns a dict with the choices, the worst deviation and a pass flag.
    """
    tol = posner.OPERATOR_TOLERANCE if tolerance is None else tolerance
    proj = BindingProjector(range(6), range(6, 12))
    labels = tuple(range(12))

    r = 1 / np.sqrt(2)
    bell = {
        'psi+': np.array([0, r, r, 0]),
        'psi-': np.array([0, r, -r, 0]),
        'phi+': np.array([r, 0, 0, r]),
        'phi-': np.array([r, 0, 0, -r]),
    }
    target_in = sum(np.outer(bell[k], bell[k]) for k in ('psi+', 'psi-'))
    target_out = sum(np.outer(bell[k], bell[k]) for k in ('phi+', 'phi-'))

    choices = []
    worst = 0.0
    for one in posner.charge_sector(1)[:2]:
        for two in posner.charge_sector(2)[:2]:
            states = [one.vector, two.vector]
            vectors = [
                np.kron(states[i], states[j])
                for i in range(2) for j in range(2)]
            projected = [proj.project_vector(v, labels) for v in vectors]
            inside = np.array([
                [np.vdot(u, pv) for pv in projected] for u in vectors])
            outside = np.eye(4) - inside
            deviation = max(
                np.max(np.abs(inside - target_in)),
                np.max(np.abs(outside - target_out)))
            worst = max(worst, float(deviation))
            choices.append({
                'one': one.name,
                'two': two.name,
                'deviation': float(deviation),
            })

    return {
        'choices': choices,
        'max_deviation': worst,
        'passed': worst <= tol,
    }


def execute_script(program, seed=None, machine=None):
    """
    Runs a machine program: a list of instruction records ``{op, ...}``.

    Instructions may carry their own ``seed``; all others draw from a machine
    generator seeded with ``seed``. Returns a JSON-serializable trace
    ``{seed, steps, final}``, where ``steps`` lists one record per
    instruction and ``final`` summarizes the machine.
    """
    log = logging.getLogger(__name__)
    posner.validate_script(program)
    m = Machine(seed) if machine is None else machine

    for i, ins in enumerate(program):
        op = ins['op']
        s = ins.get('seed')
        force = ins.get('force')
        log.info('Step ' + str(i) + ': ' + op)
        if op == 'prepare_singlet':
            m.prepare_singlet()
        elif op == 'prepare_state':
            m.prepare_state(
                np.array(ins['re']) + 1j * np.array(ins.get('im', 0)))
        elif op == 'form_posner':
            m.form_posner(ins['name'], ins['labels'])
        elif op == 'permute':
            m.permute_hextuple(ins['name'])
        elif op == 'rotate':
            m.rotate_hextuple(ins['name'], ins['axis'], ins['theta'])
        elif op == 'rotate_pair':
            m.rotate_dodectuple(ins['pair'], ins['axis'], ins['theta'])
        elif op == 'bind':
            a, b = ins['pair']
            m.attempt_binding(a, b, seed=s, force_outcome=force)
        elif op == 'bind_reference':
            m.bind_to_reference(ins['name'], seed=s, force_outcome=force)
        elif op == 'measure_tau':
            m.measure_tau(ins['name'], seed=s, force_outcome=force)
        elif op == 'separate':
            m.separate(ins['pair'])
        elif op == 'hydrolyze':
            m.hydrolyze(ins['name'])
        elif op == 'hydrolyze_pair':
            m.hydrolyze_pair(ins['pair'])
        elif op == 'discard':
            m.discard(ins['labels'])
        else:
            raise posner.ConfigError('Unknown instruction: ' + str(op))
        m.check_invariants()

    state = m.state()
    return {
        'seed': seed,
        'steps': m.trace(),
        'final': {
            'kind': state.kind(),
            'labels': list(state.labels()),
            'posners': {
                name: list(reg.labels())
                for name, reg in sorted(m.posners().items())},
            'bound_pairs': [list(p) for p in m.bound_pairs()],
        },
    }

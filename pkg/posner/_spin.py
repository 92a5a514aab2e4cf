#
# Spin observables, the permutation charge and the labelled eigenbases.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import csv
import functools
import logging
import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np

import posner


# Primitive cube root of unity; sector tau has C eigenvalue OMEGA**tau
OMEGA = np.exp(2j * np.pi / 3)

# The molecule's 2pi/3 rotation, |m1 m2 m3 m4 m5 m6> -> |m3 m1 m2 m6 m4 m5>:
# position i of the output holds the qubit from position C_PERMUTATION[i].
C_PERMUTATION = (2, 0, 1, 5, 3, 4)

# The same cycle on a single trio
TRIO_PERMUTATION = (2, 0, 1)

# Default labels for a lone register and for a lone trio
HEXTUPLE = (0, 1, 2, 3, 4, 5)
TRIO = (0, 1, 2)

_PAULI = {
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
}


def _axis_vector(axis):
    """ Returns ``axis`` (a name or a 3-vector) as floats. """
    if isinstance(axis, str):
        try:
            return np.eye(3)['xyz'.index(axis.lower())]
        except ValueError:
            raise ValueError('Unknown axis: ' + axis)
    n = np.array(axis, dtype=float)
    if n.shape != (3,):
        raise ValueError('Rotation axis must be a 3-vector.')
    return n


def pauli_matrix(axis):
    """ Returns the 2x2 Pauli matrix for ``'x'``, ``'y'`` or ``'z'``. """
    try:
        return _PAULI[str(axis).lower()]
    except KeyError:
        raise ValueError('Unknown Pauli axis: ' + str(axis))


def build_pauli(axis, label=0):
    """ Returns the Pauli operator ``sigma^axis`` on qubit ``label``. """
    return posner.DenseOperator(pauli_matrix(axis), [label])


def rotation_matrix(axis, theta):
    """
    Returns ``exp(-i theta/2 n.sigma)`` as a 2x2 matrix.

    The axis must be a unit vector within 1e-12, else a ``ValueError`` is
    raised.
    """
    n = _axis_vector(axis)
    if abs(np.linalg.norm(n) - 1) > 1e-12:
        raise ValueError(
            'Rotation axis must be a unit vector, got norm '
            + str(np.linalg.norm(n)))
    theta = float(theta)
    ns = n[0] * _PAULI['x'] + n[1] * _PAULI['y'] + n[2] * _PAULI['z']
    return np.cos(theta / 2) * np.eye(2) - 1j * np.sin(theta / 2) * ns


def build_rotation(axis, theta, label=0):
    """
    Returns the single-qubit rotation ``exp(-i theta/2 n.sigma)`` about
    ``axis`` on qubit ``label``.
    """
    return posner.DenseOperator(rotation_matrix(axis, theta), [label])


def permutation_matrix(source):
    """
    Returns the permutation matrix sending ``|x_1 ... x_k>`` to
    ``|x_source[1] ... x_source[k]>``.
    """
    k = len(source)
    if sorted(source) != list(range(k)):
        raise ValueError('Not a permutation: ' + str(source))
    dim = 2**k
    x = np.arange(dim)
    bits = (x[:, None] >> (k - 1 - np.arange(k))[None, :]) & 1
    y = np.zeros(dim, dtype=int)
    for i, s in enumerate(source):
        y |= bits[:, s] << (k - 1 - i)
    m = np.zeros((dim, dim), dtype=complex)
    m[y, x] = 1
    return m


def build_c_operator(labels=HEXTUPLE):
    """
    Returns the permutation charge ``C`` on six ordered labels (positions r1
    to r6), mapping ``|m1 m2 m3 m4 m5 m6>`` to ``|m3 m1 m2 m6 m4 m5>``.
    """
    labels = tuple(labels)
    if len(labels) != 6:
        raise posner.LabelError(
            'The C operator acts on exactly six labels, got '
            + str(len(labels)))
    return posner.DenseOperator(permutation_matrix(C_PERMUTATION), labels)


def build_trio_c_operator(labels=TRIO):
    """ Returns the cyclic permutation of one trio. """
    labels = tuple(labels)
    if len(labels) != 3:
        raise posner.LabelError('A trio has exactly three labels.')
    return posner.DenseOperator(permutation_matrix(TRIO_PERMUTATION), labels)


def _tau(j):
    """ Returns the canonical sector label in {0, 1, 2}. """
    if int(j) != j:
        raise ValueError('Sector label must be an integer, got ' + str(j))
    return int(j) % 3


def _projector_from_cycle(j, cycle):
    j = _tau(j)
    eye = np.eye(cycle.shape[0], dtype=complex)
    return (
        eye
        + OMEGA**(-j) * cycle
        + OMEGA**(-2 * j) * cycle @ cycle) / 3


def build_tau_projector(j, labels=HEXTUPLE):
    """
    Returns ``Pi_{tau=j} = (1/3) sum_k omega^(-jk) C^k`` on six labels.

    Sector labels are taken modulo 3, so ``-1`` and ``2`` are the same.
    """
    c = build_c_operator(labels)
    return posner.DenseOperator(_projector_from_cycle(j, c.matrix()), labels)


def build_trio_tau_projector(j, labels=TRIO):
    """ Returns the sector projector of a single trio's cycle. """
    c = build_trio_c_operator(labels)
    return posner.DenseOperator(_projector_from_cycle(j, c.matrix()), labels)


def tau_project(tensor, positions, j, permutation=C_PERMUTATION):
    """
    Applies ``(1/3) sum_k omega^(-jk) P^k`` to the axes ``positions`` of a raw
    state tensor, where ``P`` is the qubit permutation ``permutation``.

    Works on any number of qubits without building a matrix.
    """
    j = _tau(j)
    once = posner.permute_axes(tensor, positions, permutation)
    twice = posner.permute_axes(once, positions, permutation)
    return (
        tensor + OMEGA**(-j) * once + OMEGA**(-2 * j) * twice) / 3


def build_sz_total(labels):
    """ Returns ``S^z = sum_i sigma^z_i / 2`` on ``labels``. """
    labels = tuple(labels)
    k = len(labels)
    x = np.arange(2**k)
    ones = np.array([bin(i).count('1') for i in x])
    return posner.DenseOperator(np.diag((k - 2 * ones) / 2), labels)


def _total_spin(k, axis):
    """ Returns ``sum_i sigma^axis_i / 2`` on ``k`` qubits as a matrix. """
    s = np.zeros((2**k, 2**k), dtype=complex)
    for i in range(k):
        term = np.ones((1, 1), dtype=complex)
        for q in range(k):
            term = np.kron(term, _PAULI[axis] if q == i else np.eye(2))
        s += term / 2
    return s


def build_s2_trio(labels=TRIO):
    """
    Returns the squared total spin ``(S_1 + S_2 + S_3)^2`` of a trio, with
    ``S_i = sigma_i / 2`` and eigenvalues ``s(s+1)``.
    """
    labels = tuple(labels)
    if len(labels) != 3:
        raise posner.LabelError('A trio has exactly three labels.')
    s2 = sum(_total_spin(3, a) @ _total_spin(3, a) for a in 'xyz')
    return posner.DenseOperator(s2, labels)


def _s2_pair(labels):
    labels = tuple(labels)
    if len(labels) != 6:
        raise posner.LabelError('A hextuple has exactly six labels.')
    s2 = build_s2_trio(labels[:3]).matrix()
    return s2, labels


def build_s2_pair_product(labels=HEXTUPLE):
    """ Returns the charge ``S^2_123 (x) S^2_456``. """
    s2, labels = _s2_pair(labels)
    return posner.DenseOperator(np.kron(s2, s2), labels)


def build_s2_pair_sum(labels=HEXTUPLE):
    """ Returns ``S^2_123 (x) I + I (x) S^2_456``. """
    s2, labels = _s2_pair(labels)
    eye = np.eye(8)
    return posner.DenseOperator(np.kron(s2, eye) + np.kron(eye, s2), labels)


def build_s2_total(labels=HEXTUPLE):
    """
    Returns the squared total spin ``(S_123 + S_456)^2`` of six qubits, whose
    spectrum follows the coupling ``0^5 + 1^9 + 2^5 + 3``.
    """
    labels = tuple(labels)
    k = len(labels)
    s2 = sum(_total_spin(k, a) @ _total_spin(k, a) for a in 'xyz')
    return posner.DenseOperator(s2, labels)


def spin32_matrix():
    """ Returns the projector onto a trio's s = 3/2 subspace. """
    s2 = build_s2_trio().matrix()
    return (s2 - 0.75 * np.eye(8)) / 3


def build_spin32_projector(labels=TRIO):
    """ Returns the projector onto the s = 3/2 subspace of a trio. """
    return posner.DenseOperator(spin32_matrix(), labels)


@dataclass(frozen=True, eq=False)
class TrioBasisElement(object):
    """
    One of the eight symmetric basis states of a trio, with its spin ``s``,
    magnetic number ``m`` and sector ``tau``.
    """
    name: str
    vector: np.ndarray
    s: float
    m: float
    tau: int


@dataclass(frozen=True, eq=False)
class ChargeBasisElement(object):
    """
    A product of two trio basis states: a simultaneous eigenvector of ``C``,
    ``S^z_{1..6}`` and ``S^2_123 (x) S^2_456``.
    """
    name: str
    vector: np.ndarray
    tau: int
    k: int
    s123: float
    s456: float
    m123: float
    m456: float
    m_total: float
    tau123: int
    tau456: int
    decomposition: Tuple[str, str]


def _ket(*terms):
    """ Builds a 3-qubit vector from ``(bits, coefficient)`` pairs. """
    v = np.zeros(8, dtype=complex)
    for bits, c in terms:
        v[int(bits, 2)] = c
    return v


@functools.lru_cache(maxsize=None)
def build_trio_basis():
    """
    Returns the eight symmetric trio basis states as a tuple of
    :class:`TrioBasisElement`, in the order 000, W, Wbar, 111 (s = 3/2),
    omega, omegabar (tau = 1), omega2, omega2bar (tau = 2).
    """
    w, w2 = OMEGA, OMEGA**2
    r = 1 / np.sqrt(3)
    table = [
        ('000', _ket(('000', 1)), 1.5, 1.5, 0),
        ('W', _ket(('100', r), ('010', r), ('001', r)), 1.5, 0.5, 0),
        ('Wbar', _ket(('011', r), ('101', r), ('110', r)), 1.5, -0.5, 0),
        ('111', _ket(('111', 1)), 1.5, -1.5, 0),
        ('omega',
         _ket(('100', r), ('010', w2 * r), ('001', w * r)), 0.5, 0.5, 1),
        ('omegabar',
         _ket(('011', r), ('101', w2 * r), ('110', w * r)), 0.5, -0.5, 1),
        ('omega2',
         _ket(('100', r), ('010', w * r), ('001', w2 * r)), 0.5, 0.5, 2),
        ('omega2bar',
         _ket(('011', r), ('101', w * r), ('110', w2 * r)), 0.5, -0.5, 2),
    ]
    basis = []
    for name, v, s, m, tau in table:
        v.flags.writeable = False
        basis.append(TrioBasisElement(name, v, s, m, tau))
    return tuple(basis)


def trio_element(name):
    """ Returns the trio basis state called ``name``. """
    for e in build_trio_basis():
        if e.name == name:
            return e
    raise KeyError('No trio basis state named ' + str(name))


# Order of the first factor within each sector; the second factor runs in
# trio basis order
_FIRST_FACTOR_ORDER = (
    '000', 'W', 'Wbar', '111', 'omega', 'omega2', 'omegabar', 'omega2bar')


@functools.lru_cache(maxsize=None)
def build_charge_basis():
    """
    Returns the 64 products of trio basis states as a tuple of
    :class:`ChargeBasisElement`, grouped by sector
    ``tau = (tau123 + tau456) mod 3``.

    Elements are numbered ``k = 1, 2, ...`` within each sector. The first
    factor runs through ``000, W, Wbar, 111, omega, omega2, omegabar,
    omega2bar`` and the second factor through the trio basis, so that
    ``c1_tau0 = |000>|000>``, ``c17_tau0 = |omega>|omega2>`` and
    ``c19_tau0 = |omega2>|omega>``.
    """
    sectors = {0: [], 1: [], 2: []}
    for first in _FIRST_FACTOR_ORDER:
        a = trio_element(first)
        for b in build_trio_basis():
            sectors[(a.tau + b.tau) % 3].append((a, b))

    basis = []
    for tau in range(3):
        for k, (a, b) in enumerate(sectors[tau], 1):
            v = np.kron(a.vector, b.vector)
            v.flags.writeable = False
            basis.append(ChargeBasisElement(
                name='c' + str(k) + '_tau' + str(tau),
                vector=v,
                tau=tau,
                k=k,
                s123=a.s,
                s456=b.s,
                m123=a.m,
                m456=b.m,
                m_total=a.m + b.m,
                tau123=a.tau,
                tau456=b.tau,
                decomposition=(a.name, b.name),
            ))
    return tuple(basis)


def charge_sector(tau):
    """ Returns the charge basis elements of sector ``tau``. """
    tau = _tau(tau)
    return [e for e in build_charge_basis() if e.tau == tau]


def trio_table_rows():
    """ Returns the trio basis as a list of CSV-ready dicts. """
    return [{
        'name': e.name,
        's123': e.s,
        'm123': e.m,
        'tau123': e.tau,
    } for e in build_trio_basis()]


def charge_table_rows():
    """ Returns the charge basis as a list of CSV-ready dicts. """
    return [{
        'name': e.name,
        'tau': e.tau,
        's123': e.s123,
        's456': e.s456,
        'm123': e.m123,
        'm456': e.m456,
        'm_total': e.m_total,
        'tau123': e.tau123,
        'tau456': e.tau456,
        'decomposition': e.decomposition[0] + '|' + e.decomposition[1],
    } for e in build_charge_basis()]


def write_tables(directory):
    """
    Writes ``trio_basis.csv`` and ``charge_basis_tau{0,1,2}.csv`` to
    ``directory`` and returns the paths written.
    """
    log = logging.getLogger(__name__)
    os.makedirs(directory, exist_ok=True)

    def write(path, rows):
        with open(path, 'w', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        log.info('Written ' + path)
        return path

    paths = [write(
        os.path.join(directory, 'trio_basis.csv'), trio_table_rows())]
    rows = charge_table_rows()
    for tau in range(3):
        paths.append(write(
            os.path.join(directory, 'charge_basis_tau' + str(tau) + '.csv'),
            [r for r in rows if r['tau'] == tau]))
    return paths

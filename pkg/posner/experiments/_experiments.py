#
# This module contains a dict of all available experiments.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import posner

_experiments = {}


def add(experiment):
    """ Adds an experiment to the list of available experiments. """
    if not isinstance(experiment, posner.Experiment):
        raise ValueError('All experiments must extend Experiment.')
    _experiments[experiment.name()] = experiment


def experiments():
    """ Returns a sorted list of experiment names. """
    return sorted(_experiments.keys())


def get(name):
    """ Returns the experiment called ``name``. """
    try:
        return _experiments[name]
    except KeyError:
        raise posner.ConfigError('Unknown experiment: ' + str(name))


def run(name, database, run_number=0, seed=None, params=None):
    """ Runs a selected experiment and records it in ``database``. """
    print(f'Running experiment {name} run {run_number}', flush=True)
    return get(name).run(database, run_number, seed, params)


def evaluate(name, params=None, seed=None):
    """ Runs a selected experiment without recording it. """
    return get(name).evaluate(params, seed)


def analyse(name, database):
    """ Analyse results for a selected experiment. """
    return get(name).analyse(database)


def rwg(name, date, path, identifier=None):
    """ Generator that returns a ResultsDatabaseWriter. """
    return posner.ResultsDatabaseWriter(path, name, date, identifier)


# Charges and eigenbases
from .algebra import (  # noqa
    ChargeCommutation,
    ChargeEigenbasis,
    CoarseBell,
    SectorRanks,
)
add(SectorRanks(rwg))
add(ChargeCommutation(rwg))
add(ChargeEigenbasis(rwg))
add(CoarseBell(rwg))


# Codes
from .codes import QutritCode, RepetitionCode  # noqa
add(QutritCode(rwg))
add(RepetitionCode(rwg))


# Binding probabilities
from .binding import BindingBits, BindingTable, RotationAverage  # noqa
add(BindingTable(rwg))
add(BindingBits(rwg))
add(RotationAverage(rwg, pattern='two_cross', n_samples=10000))


# Teleportation and the tau qutrit
from .teleport import CascadeIdentity, Teleport, WeightCurve  # noqa
add(Teleport(rwg, n_inputs=100))
add(WeightCurve(rwg, n_theta=50))
add(CascadeIdentity(rwg, n_states=200))


# AKLT prime
from .aklt import AkltRefresh, FPovm, Peps, SiteStatistic  # noqa
add(Peps(rwg))
add(SiteStatistic(rwg))
add(FPovm(rwg))
add(AkltRefresh(rwg, lattice='single_posner', n_runs=20))


# Physical estimates
from .estimates import Estimates  # noqa
add(Estimates(rwg))

#
# Experiment base class.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import numpy as np

import posner


def _check_param(experiment, key, default, value):
    """
    Returns ``value`` as the type of ``default``, or raises a
    :class:`posner.ConfigError` if it cannot stand in for it.
    """
    def bad(kind):
        return posner.ConfigError(
            'Parameter ' + key + ' of experiment ' + experiment + ' must be '
            + kind + ', got ' + repr(value))

    if default is None:
        return value
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise bad('a boolean')
        return value
    if isinstance(default, int):
        if isinstance(value, bool):
            raise bad('an integer')
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if not isinstance(value, int):
            raise bad('an integer')
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad('a number')
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise bad('a string')
        return value
    if isinstance(default, (list, tuple)):
        if not isinstance(value, (list, tuple)):
            raise bad('a list')
        return list(value)
    return value


class Experiment(object):
    """
    Abstract base class for named experiments.

    An experiment turns parameters and a seed into an
    :class:`ExperimentResult` (:meth:`evaluate`), can record that result in a
    results database (:meth:`run`) and can decide from the recorded results
    whether it passed (:meth:`analyse`).

    Arguments:

    ``name``
        The experiment name, used in configs and in the database.
    ``writer_generator``
        A callable ``(name, date, path, identifier=None)`` returning a
        key-value store for results.
    ``defaults``
        Default parameters, overridden by those given to :meth:`evaluate`.
    """

    # Whether results depend on the seed
    stochastic = False

    def __init__(self, name, writer_generator, **defaults):
        name = str(name)
        if posner.NAME_FORMAT.match(name) is None:
            raise ValueError('Invalid experiment name: ' + name)
        self._name = name
        self._writer_generator = writer_generator
        self._defaults = defaults

    def name(self):
        """ Returns this experiment's name. """
        return self._name

    def defaults(self):
        """ Returns a copy of the default parameters. """
        return dict(self._defaults)

    def _run(self, result, params, seed):
        """
        Runs the experiment, filling in ``result.values`` and adding result
        rows with :meth:`ExperimentResult.add_row`.
        """
        raise NotImplementedError

    def evaluate(self, params=None, seed=None):
        """
        Runs this experiment with the given parameters (merged over the
        defaults) and returns an :class:`ExperimentResult`.
        """
        log = logging.getLogger(__name__)
        merged = self.defaults()
        for key, value in (params or {}).items():
            if key not in merged:
                raise posner.ConfigError(
                    'Unknown parameter ' + str(key) + ' for experiment '
                    + self._name + '. Options: ' + ', '.join(sorted(merged)))
            merged[key] = _check_param(self._name, key, merged[key], value)
        log.info('Running experiment: ' + self._name)
        result = posner.ExperimentResult(self._name, merged, seed)
        self._run(result, merged, seed)
        log.info(
            'Experiment ' + self._name + ': '
            + ('passed' if result.passed() else 'failed'))
        return result

    def run(self, path, run_number=0, seed=None, params=None):
        """
        Runs this experiment and records the outcome in the results database
        at ``path``. Without a ``seed`` one is drawn (and recorded).
        """
        log = logging.getLogger(__name__)
        log.info(f'Running experiment: {self._name} run {run_number}')

        if seed is None:
            max_uint32 = np.iinfo(np.uint32).max
            seed = int(np.mod(
                np.random.randint(max_uint32) + run_number, max_uint32))

        date = posner.date()
        name = self.name()

        # Store an identifier to the result writer's output, so we don't have
        # to hold onto it while running
        results_id = None
        with self._writer_generator(name, date, path) as w:
            w['status'] = 'uninitialised'
            w['date'] = date
            w['name'] = name
            w['python'] = posner.PYTHON_VERSION
            w['version'] = posner.VERSION
            w['posner_commit'] = posner.POSNER_COMMIT
            w['posner_authored_date'] = posner.POSNER_COMMIT_AUTHORED
            w['posner_committed_date'] = posner.POSNER_COMMIT_COMMITTED
            w['posner_commit_msg'] = posner.POSNER_COMMIT_MESSAGE
            w['seed'] = seed
            results_id = w.row_id()

        results = {}
        result = None
        try:
            result = self.evaluate(params, seed)
            results['params'] = result.params
            results['values'] = result.values
            results['rows'] = result.rows
            results['passed'] = int(result.passed())
            results['status'] = 'done'
        except Exception:
            log.error('Exception in experiment: ' + self.name())
            results['status'] = 'failed'
            raise
        finally:
            log.info('Writing result to ' + path)
            with self._writer_generator(name, date, path, results_id) as w:
                for k in results.keys():
                    w[k] = results[k]
        return result

    def _analyse(self, results):
        """
        Decides from all recorded results (see
        :meth:`posner.find_experiment_results`) whether this experiment
        passed. By default the most recent run must have passed.
        """
        passed = results['passed'][0]
        return bool(passed) and bool(passed[-1])

    def analyse(self, database):
        """
        Checks if the experiment passed or failed, and logs the outcome.
        """
        log = logging.getLogger(__name__)
        log.info('Running analyse: ' + self.name())

        results = posner.find_experiment_results(self._name, database)

        result = False
        try:
            result = self._analyse(results)
        except Exception:
            log.error('Exception in analyse: ' + self.name())
            raise
        finally:
            if result:
                log.info('Experiment ' + self.name() + ' has passed')
            else:
                log.info('Experiment ' + self.name() + ' has failed')

        return result

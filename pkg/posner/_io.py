#
# IO module: configs, scripts, result files and reports.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import csv
import functools
import io
import json
import os
import time

import numpy as np
from jsonschema import Draft202012Validator

import posner


# Columns of the CSV result format
CSV_COLUMNS = [
    'experiment', 'name', 'value', 'paper_target', 'tolerance', 'pass']


def unique_path(path):
    """
    Returns a unique path equal or similar to the given one.
    """
    if not os.path.exists(path):
        return path
    base, ext = os.path.splitext(path)
    base += '-'
    i = 2
    while os.path.exists(path):
        path = base + str(i) + ext
        i += 1
    return path


def clean_filename(filename):
    """ Tidies up a filename and returns it. """
    filename = str(filename)  # Separate line for nicer debugging if this fails
    return os.path.abspath(os.path.expanduser(filename))


def jsonable(value):
    """
    Converts numpy scalars and arrays (via ``tolist``) and complex numbers
    (as ``{re, im}``) into JSON-serializable values.
    """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if getattr(value, 'tolist', None) is not None:
        return jsonable(value.tolist())
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    return value


#
# Config and script loading
#

def load_json(path):
    """ Loads a JSON file, raising a :class:`ConfigError` on failure. """
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except OSError as e:
        raise posner.ConfigError('Unable to read ' + str(path) + ': ' + str(e))
    except ValueError as e:
        raise posner.ConfigError(
            'Invalid JSON in ' + str(path) + ': ' + str(e))


@functools.lru_cache(maxsize=None)
def _validator(path):
    return Draft202012Validator(load_json(path))


def _validate(obj, schema_path, what):
    errors = sorted(
        _validator(schema_path).iter_errors(obj), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = '/'.join(str(x) for x in e.path) or '<root>'
        raise posner.ConfigError(
            'Invalid ' + what + ' at ' + where + ': ' + e.message)


def load_config(config):
    """
    Loads and validates an experiment config, given as a path or a dict.

    A single experiment object at top level is wrapped in an ``experiments``
    list. Unknown experiment names, and stochastic experiments without a
    seed, raise a :class:`ConfigError`.
    """
    import posner.experiments

    if not isinstance(config, dict):
        config = load_json(config)
    _validate(config, posner.PATH_CONFIG_SCHEMA, 'config')
    if 'experiments' not in config:
        config = {
            'experiments': [{
                k: v for k, v in config.items()
                if k in ('experiment', 'params', 'seed')}],
            'output': config.get('output'),
            'format': config.get('format', 'json'),
        }
    config.setdefault('format', 'json')

    known = posner.experiments.experiments()
    for entry in config['experiments']:
        name = entry['experiment']
        if name not in known:
            raise posner.ConfigError(
                'Unknown experiment: ' + name + '. Options: '
                + ', '.join(known))
        if posner.experiments.get(name).stochastic and 'seed' not in entry:
            raise posner.ConfigError(
                'Experiment ' + name + ' is stochastic and needs a seed.')
        entry.setdefault('params', {})
    return config


def validate_script(program):
    """
    Validates a machine script (a list of instruction records), raising a
    :class:`ConfigError` if it does not match the script schema.
    """
    _validate(program, posner.PATH_SCRIPT_SCHEMA, 'script')


#
# Results
#

class ExperimentResult(object):
    """
    The outcome of one experiment run: its parameters, named values and
    result rows, with provenance.

    Each row is ``{name, value}`` plus, when it is checked,
    ``{paper_target, tolerance, pass}``. A row may also carry a ``reference``
    value that is reported but not checked.
    """

    def __init__(self, experiment, params=None, seed=None):
        self.experiment = str(experiment)
        self.params = dict(params or {})
        self.seed = seed
        self.values = {}
        self.rows = []
        self.samples = None

    def add_row(self, name, value, target=None, tolerance=None,
                reference=None, passed=None):
        """
        Adds a row. With a ``target`` the row passes if ``value`` lies within
        ``tolerance`` of it; with ``passed`` the caller decides.
        """
        row = {'name': str(name), 'value': jsonable(value)}
        if target is not None:
            tolerance = posner.OPERATOR_TOLERANCE if tolerance is None \
                else tolerance
            row['paper_target'] = jsonable(target)
            row['tolerance'] = float(tolerance)
            if passed is None:
                passed = bool(np.all(
                    np.abs(np.asarray(value) - np.asarray(target))
                    <= tolerance))
        if passed is not None:
            row['pass'] = bool(passed)
        if reference is not None:
            row['reference'] = jsonable(reference)
        self.rows.append(row)
        return row

    def passed(self):
        """ Returns ``False`` if any checked row failed. """
        return all(row.get('pass', True) for row in self.rows)

    def provenance(self):
        # No dates, so that re-runs are byte-identical
        return {
            'python': posner.PYTHON_VERSION,
            'version': posner.VERSION,
            'commit': posner.POSNER_COMMIT,
        }

    def to_json(self):
        out = {
            'experiment': self.experiment,
            'params': jsonable(self.params),
            'values': jsonable(self.values),
            'rows': self.rows,
            'seed': self.seed,
            'passed': self.passed(),
            'provenance': self.provenance(),
        }
        if self.samples is not None:
            out['samples'] = jsonable(self.samples)
        return out

    def csv_rows(self):
        """ Returns the rows as dicts with the :data:`CSV_COLUMNS` keys. """
        out = []
        for row in self.rows:
            value = row['value']
            out.append({
                'experiment': self.experiment,
                'name': row['name'],
                'value': json.dumps(value) if isinstance(
                    value, (list, dict)) else value,
                'paper_target': json.dumps(row.get('paper_target'))
                if 'paper_target' in row else '',
                'tolerance': row.get('tolerance', ''),
                'pass': row.get('pass', ''),
            })
        return out


def assert_rows_passed(results):
    """ Returns ``True`` if every result in ``results`` passed. """
    return all(r.passed() for r in results)


def dumps_results(results, fmt='json'):
    """ Serializes a list of results as canonical JSON or as CSV. """
    if fmt == 'json':
        return json.dumps(
            {'results': [r.to_json() for r in results]},
            sort_keys=True, indent=2) + '\n'
    elif fmt == 'csv':
        f = io.StringIO()
        writer = csv.DictWriter(f, CSV_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for r in results:
            writer.writerows(r.csv_rows())
        return f.getvalue()
    raise posner.ConfigError('Unknown output format: ' + str(fmt))


def write_results(results, path, fmt='json'):
    """ Writes a list of results to ``path``. """
    text = dumps_results(results, fmt)
    with open(path, 'w', newline='') as f:
        f.write(text)


#
# Scheduling and reports
#

def find_next_experiment(database):
    """
    Scans the results database, and returns the experiment that hasn't been
    run for the longest.
    """
    dates = posner.find_experiment_dates(database)
    return min(dates, key=dates.get)


def find_previous_experiment(database):
    """
    Scans the results database, and returns the experiment that has been run
    most recently.
    """
    dates = posner.find_experiment_dates(database)
    return max(dates, key=dates.get)


def generate_report(database, path):
    """
    Writes a markdown report of the most recent result of every experiment:
    the failed and passed lists, then a row table per experiment.
    """
    import posner.experiments

    dates = posner.find_experiment_dates(database)

    # Gather the status of every experiment
    states = {}
    failed = []
    passed = []
    for key in sorted(dates.keys()):
        result = posner.experiments.analyse(key, database)
        states[key] = result
        if result:
            passed.append(key)
        else:
            failed.append(key)

    # Friendly date format
    def dfmt(when=None):
        f = '%Y-%m-%d %H:%M:%S'
        return time.strftime(f) if when is None else time.strftime(f, when)

    eol = '\n'
    with open(path, 'w') as f:

        # Header
        f.write(f'# Posner simulator acceptance report{2 * eol}')
        f.write(f'Generated on: {dfmt()}{2 * eol}')

        # Lists of failed and passed experiments
        if failed:
            f.write('Failed experiments:' + 2 * eol)
            for name in failed:
                f.write(f'- [{name}](#{name.lower()}){eol}')
        else:
            f.write('All experiments passed.' + eol)
        f.write(eol)
        if passed:
            f.write('Passed experiments:' + 2 * eol)
            for name in passed:
                f.write(f'- [{name}](#{name.lower()}){eol}')
            f.write(eol)

        # Individual experiments
        for name, date in sorted(dates.items()):
            f.write(f'## {name}{2 * eol}')
            if date == time.struct_time([0] * 9):
                f.write(f'- Never run{2 * eol}')
                continue
            f.write(f'- Last run on: {dfmt(date)}{eol}')
            f.write(f'- Status: {"ok" if states[name] else "FAILED"}{eol}')

            rows = posner.find_experiment_results(name, database)['rows'][0]
            rows = rows[-1] if rows else []
            if rows:
                f.write(eol + '| Row | Value | Target | Pass |' + eol)
                f.write('|---|---|---|---|' + eol)
                for row in rows:
                    target = row.get('paper_target', '')
                    ok = row.get('pass', '')
                    f.write(
                        f'| {row["name"]} | {row["value"]} | {target} '
                        f'| {ok} |{eol}')
            f.write(eol)

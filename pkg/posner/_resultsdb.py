#
# SQLite store of experiment runs.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import contextlib
import json
import sqlite3
import time

import posner


# Table holding one row per experiment run
TABLE = 'experiment_runs'

# Fixed columns; every other key goes into the JSON column
RUN_COLUMNS = (
    ('name', 'varchar'),
    ('date', 'date'),
    ('status', 'varchar'),
    ('python', 'varchar'),
    ('version', 'varchar'),
    ('posner_commit', 'varchar'),
    ('posner_authored_date', 'date'),
    ('posner_committed_date', 'date'),
    ('posner_commit_msg', 'varchar'),
    ('seed', 'integer'),
    ('passed', 'integer'),
)

_COLUMN_NAMES = frozenset(name for name, _ in RUN_COLUMNS)


def connect_to_database(database):
    """ Opens ``database`` and makes sure the runs table exists. """
    connection = sqlite3.connect(database, timeout=30)
    connection.row_factory = sqlite3.Row
    columns = ',\n    '.join(n + ' ' + t for n, t in RUN_COLUMNS)
    connection.execute(
        f'create table if not exists {TABLE}(\n'
        '    identifier integer primary key asc,\n'
        f'    {columns},\n'
        '    json varchar\n'
        ')')
    connection.commit()
    return connection


class _RunRow(object):
    """ Shared access to the JSON column of one run. """

    def _json(self):
        row = self._connection.execute(
            f'select json from {TABLE} where identifier = ?',
            (self._row,)).fetchone()
        if row is None:
            raise KeyError('No run with identifier ' + str(self._row))
        return {} if row[0] is None else json.loads(row[0])


class ResultsDatabaseWriter(_RunRow):
    """
    Writes the fields of one experiment run. A new row is created unless
    ``existing_row_id`` is given, so a run can be reopened after the
    experiment finished (runs from parallel processes each get their own
    row).

    Use as a context manager::

        with ResultsDatabaseWriter('results.db', 'binding_table', date) as w:
            w['status'] = 'uninitialised'
            row = w.row_id()

    Keys in :data:`RUN_COLUMNS` are stored in their own column, all others
    as JSON.
    """

    def __init__(self, filename, experiment_name, date, existing_row_id=None):
        self._filename = filename
        self._connection = None
        if existing_row_id is None:
            with contextlib.closing(connect_to_database(filename)) as c:
                cursor = c.execute(
                    f'insert into {TABLE}(name, date) values (?, ?)',
                    (str(experiment_name), date))
                c.commit()
                existing_row_id = cursor.lastrowid
        self._row = existing_row_id

    def __enter__(self):
        self._connection = connect_to_database(self._filename)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self._connection.close()
        self._connection = None

    def __setitem__(self, key, value):
        if key in _COLUMN_NAMES:
            self._connection.execute(
                f'update {TABLE} set {key} = ? where identifier = ?',
                (value, self._row))
        elif key != 'identifier':
            values = self._json()
            values[key] = posner.jsonable(value)
            self._connection.execute(
                f'update {TABLE} set json = ? where identifier = ?',
                (json.dumps(values, sort_keys=True), self._row))
        self._connection.commit()

    def filename(self):
        return self._filename

    def row_id(self):
        """ Returns the identifier of this run's row. """
        return self._row


class _RunReader(_RunRow):

    def __init__(self, connection, row_id):
        self._connection = connection
        self._row = row_id

    def __getitem__(self, key):
        if key == 'identifier':
            return self._row
        if key in _COLUMN_NAMES:
            return self._connection.execute(
                f'select {key} from {TABLE} where identifier = ?',
                (self._row,)).fetchone()[0]
        return self._json().get(key)


class RunSet(object):
    """
    The recorded runs of one experiment, oldest first.

    ``runs['seed']`` returns ``[seeds]`` and ``runs['seed', 'passed']``
    returns ``[seeds, passed]``: one list per requested key, each with an
    entry per run.
    """

    def __init__(self, readers):
        self._readers = readers

    def __len__(self):
        return len(self._readers)

    def __getitem__(self, keys):
        if not isinstance(keys, tuple):
            keys = (keys,)
        return [[r[k] for r in self._readers] for k in keys]


def find_experiment_results(name, database, ignore_incomplete=True):
    """
    Returns a :class:`RunSet` of every run of experiment ``name``. Unless
    ``ignore_incomplete`` is false, only runs with status ``done`` count.
    """
    connection = connect_to_database(database)
    query = f'select identifier from {TABLE} where name = ?'
    args = [name]
    if ignore_incomplete:
        query += ' and status = ?'
        args.append('done')
    ids = connection.execute(query + ' order by identifier', args).fetchall()
    return RunSet([_RunReader(connection, i[0]) for i in ids])


def find_experiment_dates(database, ignore_unknown=True):
    """
    Returns a dict mapping experiment names to the ``time.struct_time`` of
    their latest run. Registered experiments without runs get the epoch;
    experiments in the database that are no longer registered are left out
    unless ``ignore_unknown`` is false.
    """
    import posner.experiments

    with contextlib.closing(connect_to_database(database)) as c:
        latest = c.execute(
            f'select name, max(date) from {TABLE} group by name').fetchall()
    dates = {
        name: time.strptime(date, posner.DATE_FORMAT)
        for name, date in latest}

    known = posner.experiments.experiments()
    never = time.struct_time([0] * 9)
    out = {name: dates.get(name, never) for name in known}
    if not ignore_unknown:
        for name, date in dates.items():
            out.setdefault(name, date)
    return out

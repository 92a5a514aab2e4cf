#
# Posner simulator command line utility.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import argparse
import fnmatch
import json
import multiprocessing
import os
import sys

import posner
import posner.experiments


def list_experiments(args):
    """
    Shows all available experiments and the date they were last run.
    """
    if args.next:
        # Show next experiment only
        print(posner.find_next_experiment(args.database))
        return posner.EXIT_OK

    # Show table of experiments
    dates = posner.find_experiment_dates(args.database)
    w = max(4, max([len(k) for k in dates.keys()], default=0))
    print('| Name' + ' ' * (w - 4) + ' | Last run            |')
    print('-' * (w + 26))
    for experiment in sorted(dates.items(), key=lambda x: x[1]):
        name, date = experiment
        print(
            '| ' + name + ' ' * (w - len(name)) + ' | ' + posner.date(date)
            + ' |'
        )
    return posner.EXIT_OK


def _parse_pattern(pattern, show_options=True):
    """
    Attempts to match the given pattern to experiments, returning a list of
    matching experiment names.

    If no matches are found an empty list is returned. If ``show_options`` is
    set (default), an error message with a list of options is also displayed.
    """
    # Unix-style pattern matching via fnmatch
    names = []
    for name in posner.experiments.experiments():
        if fnmatch.fnmatch(name, pattern):
            names.append(name)

    # Show options
    if show_options and not names:
        print('No experiments found for: "' + pattern + '"', file=sys.stderr)
        print('Options:', file=sys.stderr)
        for name in posner.experiments.experiments():
            print('  ' + name, file=sys.stderr)

    return names


def _dump(obj, path=None):
    """ Writes ``obj`` as canonical JSON to ``path``, or to stdout. """
    text = json.dumps(posner.jsonable(obj), sort_keys=True, indent=2) + '\n'
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w') as f:
            f.write(text)
        print('Written ' + path, file=sys.stderr)


def run(args):
    """
    Runs the experiments listed in a config file.
    """
    config = posner.load_config(args.config)
    output = args.output or config.get('output')
    fmt = args.format or config['format']

    if args.database:
        posner.posnerrepo.prepare_module()

    results = []
    for entry in config['experiments']:
        name = entry['experiment']
        seed = entry.get('seed')
        params = entry['params']
        if args.database:
            result = posner.experiments.run(
                name, args.database, seed=seed, params=params)
        else:
            result = posner.experiments.evaluate(name, params, seed)
        results.append(result)
        if not result.passed():
            print(name + ' failed', file=sys.stderr)

    if output is None:
        sys.stdout.write(posner.dumps_results(results, fmt))
    else:
        posner.write_results(results, output, fmt)
        print('Written ' + output, file=sys.stderr)

    if posner.assert_rows_passed(results):
        return posner.EXIT_OK
    return posner.EXIT_FAILURE


def script(args):
    """
    Executes a Posner machine program.
    """
    program = posner.load_json(args.program)
    _dump(posner.execute_script(program, seed=args.seed), args.output)
    return posner.EXIT_OK


def estimate(args):
    """
    Evaluates a closed-form physical estimate.
    """
    try:
        inputs = posner.EstimateInputs(
            B=args.B, l=args.l, eta=args.eta, r=args.r, T=args.T)
    except ValueError as e:
        raise posner.ConfigError(str(e))
    _dump(posner.estimate(args.kind, inputs), args.output)
    return posner.EXIT_OK


def tables(args):
    """
    Writes the trio and charge basis tables as CSV files.
    """
    for path in posner.write_tables(args.output_dir):
        print(path)
    return posner.EXIT_OK


def selftest(args):
    """
    Runs and analyses every acceptance experiment.
    """
    config = posner.load_config(posner.PATH_ACCEPTANCE_CONFIG)
    posner.posnerrepo.prepare_module()

    jobs = []
    for entry in config['experiments']:
        seed = entry.get('seed')
        if seed is not None and args.seed is not None:
            seed = args.seed
        jobs.append(
            (entry['experiment'], args.database, 0, seed, entry['params']))

    # Multi-processing
    nproc = min(args.j, max(1, multiprocessing.cpu_count() - 2))
    if nproc > 1:
        print(f'Running {len(jobs)} experiments with {nproc} processes:',
              flush=True)
        with multiprocessing.Pool(processes=nproc) as pool:
            pool.starmap(posner.experiments.run, jobs)
    else:
        print(f'Running {len(jobs)} experiments without multiprocessing')
        for job in jobs:
            posner.experiments.run(*job)

    return _analyse([job[0] for job in jobs], args.database)


def _analyse(names, database):
    failed = 0
    for name in names:
        print('Analysing ' + name + ' ... ', end='')
        result = posner.experiments.analyse(name, database)
        failed += 0 if result else 1
        print('ok' if result else 'FAIL')
        if not result:
            print('{} failed'.format(name), file=sys.stderr)

    print()
    print('-' * 60)
    print('Ran ' + str(len(names)) + ' experiments')

    if failed:
        print('Failed: ' + str(failed))
        return posner.EXIT_FAILURE
    return posner.EXIT_OK


def analyse(args):
    """
    Analyses the result for one, the most recent, or all experiments.
    """
    if args.all:
        names = posner.experiments.experiments()
    elif args.last:
        names = [posner.find_previous_experiment(args.database)]
    else:
        names = _parse_pattern(args.name)
    if not names:
        return posner.EXIT_USAGE
    return _analyse(names, args.database)


def generate_report(args):
    """
    Generates a report in Markdown format.
    """
    print('Generating experiment report')
    posner.generate_report(args.database, args.output)
    print('Done')
    return posner.EXIT_OK


class CleanFileAction(argparse.Action):
    """
    Turn a path in a command-line argument into a "clean" (absolute, with ~
    expanded) path.

    Examples::

        ./foo -> /wherever/pwd/is/foo
        ~/foo -> /home/posner-user/foo

    """
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, posner.clean_filename(values))


def _add_database(parser, default=posner.DEFAULT_RESULTS_DB, help=None):
    parser.add_argument(
        '--database',
        action=CleanFileAction,
        default=default,
        help=help or 'A SQLite database of experiment results.',
    )


def main(argv=None):
    # Set up argument parsing
    parser = argparse.ArgumentParser(
        prog='posner',
        description='Simulate quantum computation with Posner molecules.',
    )
    subparsers = parser.add_subparsers(help='commands')

    # Run experiments from a config
    run_parser = subparsers.add_parser(
        'run',
        help='Run the experiments listed in a config file',
    )
    run_parser.add_argument(
        'config',
        metavar='<config>',
        action=CleanFileAction,
        help='A JSON experiment config',
    )
    run_parser.add_argument(
        '--output',
        action=CleanFileAction,
        help='Write results to this file instead of stdout',
    )
    run_parser.add_argument(
        '--format',
        choices=['json', 'csv'],
        help='Output format (overrides the config)',
    )
    _add_database(
        run_parser, default=None,
        help='Also record every run in this SQLite database.')
    run_parser.set_defaults(func=run)

    # Execute a machine script
    script_parser = subparsers.add_parser(
        'script',
        help='Execute a Posner machine program',
    )
    script_parser.add_argument(
        'program',
        metavar='<program.json>',
        action=CleanFileAction,
        help='A JSON list of machine instructions',
    )
    script_parser.add_argument(
        '--seed', type=int,
        help='Seed for measurements without their own seed',
    )
    script_parser.add_argument(
        '--output',
        action=CleanFileAction,
        help='Write the trace to this file instead of stdout',
    )
    script_parser.set_defaults(func=script)

    # Physical estimates
    defaults = posner.EstimateInputs()
    estimate_parser = subparsers.add_parser(
        'estimate',
        help='Evaluate a closed-form physical estimate',
    )
    estimate_parser.add_argument(
        'kind',
        choices=posner.ESTIMATE_KINDS,
        help='The estimate to evaluate',
    )
    for key, unit in (
            ('B', 'T'), ('l', 'm'), ('eta', 'Pa s'), ('r', 'm'), ('T', 'K')):
        estimate_parser.add_argument(
            '--' + key, type=float, default=getattr(defaults, key),
            help=f'In {unit} (default: %(default)s)',
        )
    estimate_parser.add_argument(
        '--output',
        action=CleanFileAction,
        help='Write the estimate to this file instead of stdout',
    )
    estimate_parser.set_defaults(func=estimate)

    # Basis tables
    tables_parser = subparsers.add_parser(
        'tables',
        help='Write the trio and charge basis tables as CSV',
    )
    tables_parser.add_argument(
        '--output-dir',
        action=CleanFileAction,
        default=os.path.abspath('tables'),
        help='Directory to write the tables to',
    )
    tables_parser.set_defaults(func=tables)

    # Acceptance suite
    selftest_parser = subparsers.add_parser(
        'selftest',
        help='Run and analyse every acceptance experiment',
    )
    _add_database(selftest_parser)
    selftest_parser.add_argument(
        '-j', default=1, type=int,
        help='Number of processes to run experiments in.',
    )
    selftest_parser.add_argument(
        '--seed', type=int,
        help='Replace the seeds of the stochastic experiments',
    )
    selftest_parser.set_defaults(func=selftest)

    # Show a list of all available experiments
    list_parser = subparsers.add_parser('list', help='List experiments')
    list_parser.add_argument(
        '--next',
        action='store_true',
        help='Show only the experiment that has not run for the longest',
    )
    _add_database(list_parser)
    list_parser.set_defaults(func=list_experiments)

    # Analyse one or all experiment results
    analyse_parser = subparsers.add_parser(
        'analyse',
        help='Analyse one or all experiment results'
    )
    group = analyse_parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        'name',
        metavar='<name>',
        nargs='?',
        action='store',
        help='The experiment to analyse (can be a unix-style pattern)',
    )
    group.add_argument(
        '--all',
        action='store_true',
        help='Analyse all experiments',
    )
    group.add_argument(
        '--last',
        action='store_true',
        help='Analyse the most recently run experiment',
    )
    _add_database(analyse_parser)
    analyse_parser.set_defaults(func=analyse)

    # Compile a report of experiment results
    report_parser = subparsers.add_parser(
        'report',
        help='Generate a report of the latest results',
    )
    _add_database(report_parser)
    report_parser.add_argument(
        '--output',
        action=CleanFileAction,
        default=os.path.abspath('report.md'),
        help='Path of the Markdown report',
    )
    report_parser.set_defaults(func=generate_report)

    # Parse!
    args = parser.parse_args(argv)
    if 'func' not in args:
        parser.print_help()
        return posner.EXIT_USAGE

    try:
        return args.func(args)
    except posner.ConfigError as e:
        print('Error: ' + str(e), file=sys.stderr)
        return posner.EXIT_USAGE
    except posner.PosnerError as e:
        print('Failed: ' + str(e), file=sys.stderr)
        return posner.EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())

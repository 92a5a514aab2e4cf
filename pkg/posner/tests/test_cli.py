#
# Tests for the command line interface.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import posner
from posner.__main__ import main


def _main(*argv):
    """ Runs the command line, returning the exit code, stdout and stderr. """
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class CommandLineTest(unittest.TestCase):
    """ Tests the ``posner`` commands. """

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()
        self.dir = self._dir.name

    def tearDown(self):
        self._dir.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def test_no_command(self):
        self.assertEqual(_main()[0], posner.EXIT_USAGE)

    def test_estimate(self):
        code, out, err = _main('estimate', 'diffusion', '--T', '300')
        self.assertEqual(code, posner.EXIT_OK)
        obj = json.loads(out)
        self.assertEqual(obj['kind'], 'diffusion')
        self.assertEqual(obj['inputs']['T'], 300)

        code, out, err = _main('estimate', 'rotation', '--B', '-1')
        self.assertEqual(code, posner.EXIT_USAGE)
        self.assertIn('Error', err)

    def test_run(self):
        config = self.path('config.json')
        with open(config, 'w') as f:
            json.dump({'experiment': 'binding_table'}, f)

        outputs = []
        for name in ('a.json', 'b.json'):
            code, out, err = _main(
                'run', config, '--output', self.path(name))
            self.assertEqual(code, posner.EXIT_OK)
            with open(self.path(name), 'rb') as f:
                outputs.append(f.read())
        self.assertEqual(outputs[0], outputs[1])
        result = json.loads(outputs[0])['results'][0]
        self.assertEqual(result['experiment'], 'binding_table')
        self.assertTrue(result['passed'])

        code, out, err = _main('run', config, '--format', 'csv')
        self.assertEqual(code, posner.EXIT_OK)
        self.assertTrue(out.startswith(','.join(posner._io.CSV_COLUMNS)))

    def test_run_invalid(self):
        config = self.path('config.json')
        with open(config, 'w') as f:
            json.dump({'experiment': 'teleport'}, f)
        code, out, err = _main('run', config)
        self.assertEqual(code, posner.EXIT_USAGE)
        self.assertIn('stochastic', err)

        code, out, err = _main('run', self.path('missing.json'))
        self.assertEqual(code, posner.EXIT_USAGE)

    def test_run_bad_param(self):
        config = self.path('config.json')
        with open(config, 'w') as f:
            json.dump({
                'experiment': 'weight_curve',
                'params': {'n_theta': 'many'}}, f)
        code, out, err = _main('run', config)
        self.assertEqual(code, posner.EXIT_USAGE)
        self.assertIn('n_theta', err)
        self.assertEqual(out, '')

    def test_script(self):
        program = os.path.join(posner.DIR_SCRIPTS, 'shared_singlets.json')
        output = self.path('trace.json')
        code, out, err = _main('script', program, '--output', output)
        self.assertEqual(code, posner.EXIT_OK)
        with open(output, 'r') as f:
            trace = json.load(f)
        self.assertEqual(sorted(trace['final']['posners']), ['C', 'D'])
        self.assertEqual(trace['final']['bound_pairs'], [])
        bind = [s for s in trace['steps'] if s['op'] == 'bind'][0]
        self.assertTrue(bind['bound'])
        self.assertAlmostEqual(bind['probability'], 1)

    def test_script_failure(self):
        program = self.path('program.json')
        with open(program, 'w') as f:
            json.dump([{'op': 'permute', 'name': 'A'}], f)
        code, out, err = _main('script', program)
        self.assertEqual(code, posner.EXIT_FAILURE)

    def test_tables(self):
        code, out, err = _main('tables', '--output-dir', self.dir)
        self.assertEqual(code, posner.EXIT_OK)
        for path in out.split():
            self.assertTrue(os.path.isfile(path))

    def test_list_and_analyse(self):
        db = self.path('results.db')
        code, out, err = _main('list', '--database', db)
        self.assertEqual(code, posner.EXIT_OK)
        self.assertIn('binding_bits', out)

        code, out, err = _main('analyse', 'binding_*', '--database', db)
        self.assertEqual(code, posner.EXIT_FAILURE)
        code, out, err = _main('analyse', 'nothing*', '--database', db)
        self.assertEqual(code, posner.EXIT_USAGE)

    def test_list_empty(self):
        db = self.path('results.db')
        with mock.patch('posner.find_experiment_dates', return_value={}):
            code, out, err = _main('list', '--database', db)
        self.assertEqual(code, posner.EXIT_OK)
        self.assertTrue(out.startswith('| Name | Last run'))


if __name__ == '__main__':
    unittest.main()

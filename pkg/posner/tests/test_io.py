#
# Tests for configs, scripts, result rows and the results database.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import json
import os
import tempfile
import unittest

import posner
import posner.experiments


class ConfigTest(unittest.TestCase):
    """ Tests config and script validation. """

    def test_single_experiment(self):
        config = posner.load_config({'experiment': 'binding_table'})
        self.assertEqual(config['experiments'], [
            {'experiment': 'binding_table', 'params': {}}])
        self.assertEqual(config['format'], 'json')
        self.assertIsNone(config['output'])

    def test_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'config.json')
            with open(path, 'w') as f:
                json.dump({
                    'experiments': [
                        {'experiment': 'teleport', 'seed': 3,
                         'params': {'n_inputs': 2}},
                        {'experiment': 'estimates'},
                    ],
                    'format': 'csv',
                }, f)
            config = posner.load_config(path)
        self.assertEqual(config['format'], 'csv')
        self.assertEqual(config['experiments'][1]['params'], {})

    def test_invalid(self):
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            {'experiment': 'no_such_experiment'})
        self.assertRaises(
            posner.ConfigError, posner.load_config, {'experiment': 'teleport'})
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            {'experiment': 'binding_table', 'colour': 'red'})
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            {'experiment': 'binding_table', 'format': 'xml'})
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            {'experiments': [{'experiment': 'binding_table'}],
             'experiment': 'estimates'})
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            {'experiment': 'teleport', 'seed': -1})
        self.assertRaises(
            posner.ConfigError, posner.load_config,
            os.path.join(posner.DIR_DATA, 'missing.json'))

    def test_acceptance(self):
        config = posner.load_config(posner.PATH_ACCEPTANCE_CONFIG)
        names = [e['experiment'] for e in config['experiments']]
        self.assertEqual(sorted(names), posner.experiments.experiments())

    def test_script(self):
        posner.validate_script([
            {'op': 'prepare_singlet'},
            {'op': 'rotate', 'name': 'A', 'axis': [0, 0, 1], 'theta': 1.5},
            {'op': 'bind', 'pair': ['A', 'B'], 'force': True,
             'comment': 'forced'},
        ])
        self.assertRaises(
            posner.ConfigError, posner.validate_script, [{'op': 'fly'}])
        self.assertRaises(
            posner.ConfigError, posner.validate_script,
            [{'op': 'form_posner', 'name': 'A'}])
        self.assertRaises(
            posner.ConfigError, posner.validate_script,
            [{'op': 'rotate', 'name': 'A', 'axis': 'w', 'theta': 1}])
        self.assertRaises(
            posner.ConfigError, posner.validate_script, {'op': 'permute'})
        posner.validate_script(posner.load_json(os.path.join(
            posner.DIR_SCRIPTS, 'shared_singlets.json')))


class ResultTest(unittest.TestCase):
    """ Tests result rows and their serialization. """

    def test_rows(self):
        r = posner.ExperimentResult('example', {'n': 1}, seed=4)
        self.assertTrue(r.add_row('a', 0.5, 0.5, 1e-9)['pass'])
        self.assertTrue(r.passed())
        row = r.add_row('b', [1, 2.1], [1, 2], 0.01)
        self.assertFalse(row['pass'])
        self.assertFalse(r.passed())
        self.assertNotIn('pass', r.add_row('c', 3))
        self.assertTrue(r.add_row('d', True, passed=True)['pass'])
        self.assertEqual(r.add_row('e', 1, reference=2)['reference'], 2)

    def test_dumps(self):
        r = posner.ExperimentResult('example', seed=None)
        r.add_row('a', 1.0, 1.0, 0)
        r.add_row('b', [0, 1])
        r.values['z'] = complex(1, 2)

        obj = json.loads(posner.dumps_results([r]))
        result = obj['results'][0]
        self.assertEqual(result['experiment'], 'example')
        self.assertTrue(result['passed'])
        self.assertEqual(result['values']['z'], {'re': 1.0, 'im': 2.0})
        self.assertNotIn('samples', result)

        lines = posner.dumps_results([r], 'csv').splitlines()
        self.assertEqual(lines[0].split(','), posner._io.CSV_COLUMNS)
        self.assertEqual(lines[1], 'example,a,1.0,1.0,0.0,True')
        self.assertEqual(lines[2], 'example,b,"[0, 1]",,,')
        self.assertRaises(posner.ConfigError, posner.dumps_results, [r], 'x')

    def test_unique_path(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'out.json')
            self.assertEqual(posner.unique_path(path), path)
            open(path, 'w').close()
            self.assertEqual(
                posner.unique_path(path), os.path.join(d, 'out-2.json'))


class DatabaseTest(unittest.TestCase):
    """ Tests recording and analysing experiments. """

    def test_evaluate(self):
        result = posner.experiments.evaluate('binding_bits')
        self.assertTrue(result.passed())
        self.assertEqual(result.values['total_bits'], 4)
        self.assertRaises(
            posner.ConfigError, posner.experiments.evaluate, 'binding_bits',
            {'n': 2})
        self.assertRaises(
            posner.ConfigError, posner.experiments.get, 'no_such_experiment')
        self.assertRaises(ValueError, posner.experiments.add, object())

    def test_param_types(self):
        evaluate = posner.experiments.evaluate
        for params in (
                {'n_theta': 'many'}, {'n_theta': True}, {'n_theta': 2.5},
                {'tolerance': '1e-9'}, {'tolerance': [1]}):
            self.assertRaises(
                posner.ConfigError, evaluate, 'weight_curve', params)
        self.assertRaises(
            posner.ConfigError, evaluate, 'peps', {'lattices': 'two_posner'})
        self.assertRaises(
            posner.ConfigError, evaluate, 'site_statistic', {'lattice': 3})

        result = evaluate('weight_curve', {'n_theta': 5.0, 'tolerance': 1})
        self.assertEqual(result.params['n_theta'], 5)
        self.assertIsInstance(result.params['n_theta'], int)
        self.assertEqual(result.params['tolerance'], 1.0)

    def test_run_and_analyse(self):
        with tempfile.TemporaryDirectory() as d:
            db = os.path.join(d, 'results.db')
            result = posner.experiments.run('binding_bits', db, seed=1)
            self.assertTrue(result.passed())
            self.assertTrue(posner.experiments.analyse('binding_bits', db))

            results = posner.find_experiment_results('binding_bits', db)
            self.assertEqual(len(results), 1)
            seed, rows = results['seed', 'rows']
            self.assertEqual(seed, [1])
            self.assertEqual(rows[0], result.rows)

            dates = posner.find_experiment_dates(db)
            self.assertEqual(
                sorted(dates.keys()), posner.experiments.experiments())
            self.assertEqual(
                posner.find_previous_experiment(db), 'binding_bits')
            self.assertNotEqual(
                posner.find_next_experiment(db), 'binding_bits')

            report = os.path.join(d, 'report.md')
            posner.generate_report(db, report)
            with open(report, 'r') as f:
                text = f.read()
            self.assertIn('## binding_bits', text)
            self.assertIn('| total_bits | 4 | 4 | True |', text)

    def test_unrun(self):
        with tempfile.TemporaryDirectory() as d:
            db = os.path.join(d, 'results.db')
            self.assertFalse(posner.experiments.analyse('estimates', db))


if __name__ == '__main__':
    unittest.main()

#
# Error detection and correction experiments on Posner codes.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import posner


class QutritCode(posner.Experiment):
    """
    Checks the detection criteria of the one-Posner qutrit code against all
    18 single-qubit Paulis, and reports the constants of the errors on the
    first qubit.

    The ``sigma^z`` constant of the listed codewords is exactly 0; the value
    1/12 quoted alongside is kept as a reference only.
    """

    def __init__(self, writer_generator, tolerance=1e-10):
        super(QutritCode, self).__init__(
            'qutrit_code', writer_generator, tolerance=tolerance)

    def _run(self, result, params, seed):
        tol = params['tolerance']
        code = posner.build_qutrit_code()
        errors = posner.ErrorSet.single_qubit_paulis(code.labels())
        report = posner.check_detection(code, errors, tolerance=tol)
        result.values['detection'] = report.to_json()
        result.add_row('n_errors', len(errors), 18, 0)
        result.add_row(
            'detection', report.worst['deviation'], passed=report.passed)
        for axis in 'XY':
            c = report.constant(axis + '0')
            result.add_row('C_' + axis, c, 0, tol)
        result.add_row('C_Z', report.constant('Z0'), 0, tol, reference=1 / 12)


class RepetitionCode(posner.Experiment):
    """
    Checks the correction criteria of the six-qubit repetition code for all
    ``sigma^x`` errors of weight up to two, and that the pair
    ``X0X1X2, X3X4X5`` is not correctable.
    """

    def __init__(self, writer_generator, tolerance=1e-10):
        super(RepetitionCode, self).__init__(
            'repetition_code', writer_generator, tolerance=tolerance)

    def _run(self, result, params, seed):
        tol = params['tolerance']
        code = posner.build_repetition_code()
        errors = posner.ErrorSet.x_errors(code.labels(), max_weight=2)
        report = posner.check_correction(code, errors, tolerance=tol)
        result.values['n_errors'] = len(errors)
        result.add_row(
            'correction_x_weight2', report.worst['deviation'],
            passed=report.passed)

        x = posner.pauli_matrix('x')
        xxx = posner.kron(
            posner.kron(
                posner.DenseOperator(x, [0]), posner.DenseOperator(x, [1])),
            posner.DenseOperator(x, [2]))
        pair = posner.ErrorSet([
            ('X0X1X2', xxx),
            ('X3X4X5', xxx.relabelled([3, 4, 5])),
        ])
        bad = posner.check_correction(code, pair, tolerance=tol)
        result.values['pair_worst'] = bad.worst
        result.add_row(
            'correction_fails_x012_x345', bad.worst['deviation'],
            passed=not bad.passed)

#
# Posner-model quantum computation simulator.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging
import os
import re
import sys
import time


# Require at least Python 3.7 (for dataclasses and ordered dicts)
if not sys.version_info >= (3, 7):
    raise RuntimeError('The Posner simulator requires Python 3.7+')


# Set up logging
if 'POSNER_DEBUG' in os.environ:
    logging.basicConfig(level=logging.INFO)
else:
    logging.basicConfig()
log = logging.getLogger(__name__)
log.info('Loading Posner Simulator.')


# The root of this repository
DIR_POSNER = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

# Bundled data: config schema, acceptance config, lattices, scripts
DIR_DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')

# Bundled lattice descriptions
DIR_LATTICES = os.path.join(DIR_DATA, 'lattices')

# Bundled machine scripts
DIR_SCRIPTS = os.path.join(DIR_DATA, 'scripts')

# The JSON schema every experiment config is validated against
PATH_CONFIG_SCHEMA = os.path.join(DIR_DATA, 'config.schema.json')

# The JSON schema for machine scripts
PATH_SCRIPT_SCHEMA = os.path.join(DIR_DATA, 'script.schema.json')

# The acceptance config run by ``selftest``
PATH_ACCEPTANCE_CONFIG = os.path.join(DIR_DATA, 'acceptance.json')


# Date formatting
DATE_FORMAT = '%Y-%m-%d-%H:%M:%S'


def date(when=None):
    if when:
        return time.strftime(DATE_FORMAT, when)
    else:
        return time.strftime(DATE_FORMAT)


# Experiment name format (in regex form)
NAME_FORMAT = re.compile(r'^[a-zA-Z]\w*$')


# Default results database path
# Used to store or retrieve experiment results, but can be overridden with the
# --database argument.
DEFAULT_RESULTS_DB = './results.db'


# Python version
PYTHON_VERSION = sys.version.replace('\n', '')

# Package version, reported in result provenance
VERSION = '0.1.0'


# Posner simulator commit, set using posnerrepo.prepare_module()
POSNER_COMMIT = None

# Date commit was authored
POSNER_COMMIT_AUTHORED = None

# Date commit was committed
POSNER_COMMIT_COMMITTED = None

# Commit message
POSNER_COMMIT_MESSAGE = None


# Desk-scale caps: dense vectors up to 2**18 entries, density matrices up to
# 2**10 x 2**10 entries.
MAX_QUBITS = 18
MAX_MIXED_QUBITS = 10

# Tolerance for state invariants (normalization, Hermiticity, positivity)
STATE_TOLERANCE = 1e-10

# Tolerance for operator identities (idempotence, completeness, criteria)
OPERATOR_TOLERANCE = 1e-9


# Command line exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILURE = 3


#
# Start importing sub modules
#
from ._errors import (  # noqa
    BindingLockError,
    CapacityError,
    CompletenessError,
    ConfigError,
    InvariantError,
    LabelError,
    OwnershipError,
    PosnerError,
    RenormalizationError,
)

from ._util import (  # noqa
    format_date,
    make_rng,
    sample_index,
    spawn_seeds,
)

from ._qstate import (  # noqa
    DenseOperator,
    Measurement,
    QState,
    apply,
    expectation,
    identity,
    kron,
    measure_povm,
    measure_pvm,
    overlap,
    partial_trace,
    permute_axes,
    pvm_probabilities,
    random_state,
)

from ._spin import (  # noqa
    C_PERMUTATION,
    HEXTUPLE,
    OMEGA,
    TRIO,
    ChargeBasisElement,
    TrioBasisElement,
    build_c_operator,
    build_charge_basis,
    build_pauli,
    build_rotation,
    build_s2_pair_product,
    build_s2_pair_sum,
    build_s2_total,
    build_s2_trio,
    build_spin32_projector,
    build_sz_total,
    build_tau_projector,
    build_trio_basis,
    build_trio_c_operator,
    build_trio_tau_projector,
    charge_sector,
    charge_table_rows,
    pauli_matrix,
    permutation_matrix,
    rotation_matrix,
    spin32_matrix,
    tau_project,
    trio_element,
    trio_table_rows,
    write_tables,
)

from ._machine import (  # noqa
    BindingProjector,
    Machine,
    PosnerRegister,
    SINGLET,
    coarse_bell_check,
    execute_script,
)

from ._codes import (  # noqa
    Code,
    CriteriaReport,
    ErrorSet,
    build_qutrit_code,
    build_repetition_code,
    check_correction,
    check_detection,
)

from ._protocols import (  # noqa
    PATTERNS,
    SingletPattern,
    TauQutritBasis,
    TeleportResult,
    binding_bit_accounting,
    binding_probability,
    cascade_operator_identity,
    encoded_povm,
    failure_distribution,
    haar_rotations,
    identity_rotations,
    incoherent_teleport,
    phi_theta_weights,
    prepare_phi_theta,
    random_rotation_average,
    reconstruct_weights,
    sample_records,
    sector_weights,
    tau_zero_cascade,
)

from ._aklt import (  # noqa
    F_AXES,
    FOutcome,
    GAUGE,
    Lattice,
    PepsTensor,
    SITE_OUTCOMES,
    build_aklt_prime_circuit,
    build_f_povm,
    build_peps_tensors,
    contract_peps,
    edge_correlation,
    load_lattice,
    measure_povm_F,
    measure_site_spin,
    povm_outcome_set,
    site_projectors,
    site_statistic_footnote,
)

from ._estimates import (  # noqa
    KINDS as ESTIMATE_KINDS,
    EstimateInputs,
    estimate,
    order_of_magnitude,
)

from ._io import (  # noqa
    ExperimentResult,
    assert_rows_passed,
    clean_filename,
    dumps_results,
    find_next_experiment,
    find_previous_experiment,
    generate_report,
    jsonable,
    load_config,
    load_json,
    unique_path,
    validate_script,
    write_results,
)

from ._resultsdb import (  # noqa
    ResultsDatabaseWriter,
    find_experiment_results,
    find_experiment_dates,
)

from ._experiment import (  # noqa
    Experiment,
)

from . import (  # noqa
    posnerrepo,
)

#
# Exceptions raised by the Posner simulator.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#


class PosnerError(Exception):
    """
    Base class for all errors raised by the simulator.
    """


class LabelError(PosnerError, ValueError):
    """
    Raised for qubit-label collisions, unknown labels, an empty keep list or
    a wrong number of labels.
    """


class CapacityError(PosnerError):
    """
    Raised when a state would exceed the desk-scale qubit cap.
    """


class CompletenessError(PosnerError, ValueError):
    """
    Raised when measurement operators do not resolve the identity, or when a
    projector is not idempotent.
    """


class RenormalizationError(PosnerError):
    """
    Raised when a forced measurement outcome has zero probability.
    """


class OwnershipError(PosnerError):
    """
    Raised when a qubit is claimed by two registers, or a register is unknown.
    """


class BindingLockError(PosnerError):
    """
    Raised when an operation is applied to a register in the wrong binding
    state.
    """


class InvariantError(PosnerError):
    """
    Raised when a state or operator fails its invariants.
    """


class ConfigError(PosnerError, ValueError):
    """
    Raised for invalid experiment configs and machine scripts.
    """

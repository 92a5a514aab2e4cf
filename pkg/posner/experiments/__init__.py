#
# Module for experiment implementations.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
from ._experiments import *   # noqa

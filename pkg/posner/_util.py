#
# (Non-IO) Utility functions.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import numpy as np
import time

import posner


def format_date(seconds_since_epoch):
    return time.strftime(
        posner.DATE_FORMAT, time.gmtime(seconds_since_epoch))


def make_rng(seed=None):
    """
    Returns a ``numpy.random.Generator``.

    ``seed`` can be ``None`` (fresh entropy), an integer, a
    ``numpy.random.SeedSequence`` or an existing generator, which is returned
    unchanged.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed, n):
    """
    Splits ``seed`` into ``n`` independent ``SeedSequence`` children.

    The children depend only on ``seed`` and their index, so work divided
    into fixed chunks gives the same streams however it is scheduled.
    """
    if isinstance(seed, np.random.SeedSequence):
        sequence = seed
    else:
        sequence = np.random.SeedSequence(seed)
    return sequence.spawn(int(n))


def sample_index(probabilities, rng):
    """
    Draws an index from a discrete distribution using a single uniform
    variate, so that outcome sequences are reproducible from the seed alone.
    """
    p = np.asarray(probabilities, dtype=float)
    p = np.clip(p, 0, None)
    cumulative = np.cumsum(p)
    u = rng.random() * cumulative[-1]
    index = int(np.searchsorted(cumulative, u, side='right'))
    index = min(index, len(p) - 1)

    # Never land on a zero-probability outcome through rounding
    while p[index] == 0 and index > 0:
        index -= 1
    return index

#
# Git functions for the Posner simulator repository.
#
# This file is part of Posner Simulator.
#  For licensing information, see the LICENSE file distributed with the
#  Posner Simulator software package.
#
import logging

import git

import posner


def head():
    """
    Returns the current commit object of this repository.
    """
    repo = git.Repo(posner.DIR_POSNER)
    return repo.head.commit


def prepare_module():
    """
    Stores the current commit in the ``POSNER_COMMIT`` globals. Outside a git
    checkout the globals stay ``None``.
    """
    try:
        headcommit = head()
    except (git.InvalidGitRepositoryError, git.NoSuchPathError, ValueError):
        log = logging.getLogger(__name__)
        log.info('Not a git checkout: ' + posner.DIR_POSNER)
        return
    posner.POSNER_COMMIT = headcommit.hexsha
    posner.POSNER_COMMIT_COMMITTED = posner.format_date(
        headcommit.committed_date)
    posner.POSNER_COMMIT_AUTHORED = posner.format_date(
        headcommit.authored_date)
    posner.POSNER_COMMIT_MESSAGE = headcommit.message

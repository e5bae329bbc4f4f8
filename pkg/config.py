# CoulombGlue - Gluing criteria for Coulomb branches of quiver gauge theories
# Copyright (C) 2026  coulomb-glue contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

'''Configuration constants shared by the CoulombGlue modules.'''

import os

from errors import InputError

# Sup-norm bound for dominant coweight enumeration in cross-checks.
DEFAULT_BOUND = 2
# Half-width of the cocharacter box searched by the brute-force gluability decider.
ORACLE_BOX = 3
# Half-width of the cocharacter box searched by the brute-force sign test.
SIGN_ORACLE_BOX = 4
# Box searches are skipped above this gauge rank.
ORACLE_MAX_RANK = 6

LOG_PATH = 'coulomb_glue.log'
LOG_MAX_BYTES = 10485760
LOG_BACKUP_COUNT = 5
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)7s - %(message)s'

THREADS_ENV = 'COULOMB_GLUE_THREADS'


def worker_count(environ=None):
    '''Number of worker threads allowed for pair enumeration.
    Zero means serial. Unset is the same as zero.'''
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, '').strip()
    if not raw:
        return 0
    try:
        count = int(raw)
    except ValueError:
        raise InputError(f'{THREADS_ENV} must be a nonnegative integer, got "{raw}".') from None
    if count < 0:
        raise InputError(f'{THREADS_ENV} must be a nonnegative integer, got "{raw}".')
    return count

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

'''Exceptions raised by CoulombGlue.'''


class CoulombGlueError(Exception):
    '''Base class for all CoulombGlue errors.'''
    pass


class InputError(CoulombGlueError):
    '''Class for exceptions caused by invalid user input.'''
    pass


class DimensionError(InputError):
    '''Vector lengths or torus ranks do not match.'''
    pass


class InvalidQuotientError(InputError):
    '''Quotient by a zero or non-primitive cocharacter.'''
    pass


class QuiverValidationError(InputError):
    '''Malformed quiver, dimension vector, morphism or explosion data.'''
    pass


class UnsupportedQuiverError(InputError):
    '''The quiver is valid but outside what an operation supports.'''
    pass


class ProblemFileError(InputError):
    '''A problem file could not be parsed or validated.'''

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f'{location}: {message}'
        super().__init__(message)


class ConsistencyError(CoulombGlueError):
    '''An implication that must always hold was violated.
    This indicates a bug in CoulombGlue, never bad input.'''
    pass

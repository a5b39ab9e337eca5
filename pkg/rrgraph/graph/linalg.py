# Licensed to the Apache Software Foundation (ASF) under one
# or more contributor license agreements.  See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership.  The ASF licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License.  You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied.  See the License for the
# specific language governing permissions and limitations
# under the License.

"""
Exact rational linear algebra.
"""
import logging
import typing

from rrgraph import error
from rrgraph.graph import Rational

LOGGER = logging.getLogger(__name__)

Matrix = typing.Sequence[typing.Sequence[Rational]]


def solve(matrix: Matrix, rhs: typing.Sequence[Rational]) -> typing.List[Rational]:
    """Solve the square linear system exactly using Gaussian elimination with largest-absolute-value pivoting.

    Args:
        matrix: Square coefficient matrix (rows).
        rhs: Right hand side vector.

    Returns: The unique solution vector.

    Raises:
        error.Invalid: On dimension mismatch.
        error.Failed: If the system is singular.
    """
    size = len(rhs)
    if len(matrix) != size or any(len(r) != size for r in matrix):
        raise error.Invalid(f'Dimension mismatch ({len(matrix)} rows for {size} unknowns)')
    augmented = [[Rational(v) for v in row] + [Rational(b)] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = max(range(col, size), key=lambda r: abs(augmented[r][col]))
        if augmented[pivot][col] == 0:
            raise error.Failed(f'Singular system (column {col})')
        augmented[col], augmented[pivot] = augmented[pivot], augmented[col]
        head = augmented[col]
        for row in range(col + 1, size):
            factor = augmented[row][col] / head[col]
            if factor:
                target = augmented[row]
                for k in range(col, size + 1):
                    target[k] -= factor * head[k]
    solution = [Rational(0)] * size
    for row in reversed(range(size)):
        accumulated = augmented[row][size] - sum(
            (augmented[row][k] * solution[k] for k in range(row + 1, size)), Rational(0)
        )
        solution[row] = accumulated / augmented[row][row]
    LOGGER.debug('Solved %dx%d system', size, size)
    return solution

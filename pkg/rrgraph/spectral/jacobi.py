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
Cyclic Jacobi eigen solver for dense symmetric matrices.
"""
import logging
import typing

import numpy

from rrgraph import conf, error

LOGGER = logging.getLogger(__name__)


def offdiagonal(matrix: numpy.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    return float(numpy.linalg.norm(matrix - numpy.diag(numpy.diag(matrix))))


def rotate(matrix: numpy.ndarray, vectors: numpy.ndarray, p: int, q: int) -> None:
    """Apply the (in-place) rotation annihilating the matrix[p, q] element.

    Args:
        matrix: Symmetric matrix to be rotated.
        vectors: Accumulated eigenvector columns.
        p: Row index.
        q: Column index (q > p).
    """
    apq = matrix[p, q]
    theta = (matrix[q, q] - matrix[p, p]) / (2.0 * apq)
    if theta == 0:
        t = 1.0
    else:
        t = numpy.sign(theta) / (abs(theta) + numpy.sqrt(theta * theta + 1.0))
    c = 1.0 / numpy.sqrt(t * t + 1.0)
    s = t * c
    colp, colq = matrix[:, p].copy(), matrix[:, q].copy()
    matrix[:, p], matrix[:, q] = c * colp - s * colq, s * colp + c * colq
    rowp, rowq = matrix[p, :].copy(), matrix[q, :].copy()
    matrix[p, :], matrix[q, :] = c * rowp - s * rowq, s * rowp + c * rowq
    matrix[p, q] = matrix[q, p] = 0.0
    vecp, vecq = vectors[:, p].copy(), vectors[:, q].copy()
    vectors[:, p], vectors[:, q] = c * vecp - s * vecq, s * vecp + c * vecq


def eigh(
    matrix: numpy.ndarray, tolerance: typing.Optional[float] = None, max_sweeps: typing.Optional[int] = None
) -> typing.Tuple[numpy.ndarray, numpy.ndarray]:
    """Eigen decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Args:
        matrix: Symmetric matrix.
        tolerance: Off-diagonal Frobenius norm to stop at.
        max_sweeps: Maximal number of sweeps.

    Returns: Ascending eigenvalues and the matching eigenvector columns.

    Raises:
        error.Failed: If not converged within the sweep limit.
    """
    tolerance = conf.PARSER.option(conf.SECTION_SPECTRAL, conf.OPT_TOLERANCE, tolerance)
    max_sweeps = conf.PARSER.option(conf.SECTION_SPECTRAL, conf.OPT_MAX_SWEEPS, max_sweeps)
    work = numpy.array(matrix, dtype=float)
    if work.ndim != 2 or work.shape[0] != work.shape[1]:
        raise error.Invalid(f'Not a square matrix: {work.shape}')
    if not numpy.allclose(work, work.T):
        raise error.Invalid('Matrix not symmetric')
    size = work.shape[0]
    vectors = numpy.eye(size)
    sweep = 0
    while offdiagonal(work) >= tolerance:
        if sweep == max_sweeps:
            raise error.Failed(f'Jacobi not converged in {max_sweeps} sweeps (off-diagonal {offdiagonal(work)})')
        for p in range(size - 1):
            for q in range(p + 1, size):
                if work[p, q] != 0:
                    rotate(work, vectors, p, q)
        sweep += 1
    LOGGER.debug('Jacobi converged in %d sweeps on %dx%d matrix', sweep, size, size)
    order = numpy.argsort(numpy.diag(work), kind='stable')
    return numpy.diag(work)[order], vectors[:, order]

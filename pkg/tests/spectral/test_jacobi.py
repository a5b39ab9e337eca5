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
Jacobi eigen solver unit tests.
"""
# pylint: disable=no-self-use
import numpy
import pytest

from rrgraph import error
from rrgraph.spectral import jacobi


class TestEigh:
    """Jacobi solver unit tests."""

    @pytest.fixture(scope='session')
    def matrix(self) -> numpy.ndarray:
        """Random symmetric matrix."""
        sample = numpy.random.default_rng(0).normal(size=(6, 6))
        return sample + sample.T

    def test_values(self, matrix: numpy.ndarray):
        """Test the eigenvalues against the reference solver."""
        values, vectors = jacobi.eigh(matrix)
        numpy.testing.assert_allclose(values, numpy.linalg.eigvalsh(matrix), atol=1e-9)
        numpy.testing.assert_allclose(matrix @ vectors, vectors * values, atol=1e-9)
        numpy.testing.assert_allclose(vectors.T @ vectors, numpy.eye(6), atol=1e-9)

    def test_diagonal(self):
        """Test the already diagonal input."""
        values, vectors = jacobi.eigh(numpy.diag([3.0, 1.0, 2.0]))
        numpy.testing.assert_allclose(values, [1, 2, 3])
        assert numpy.abs(vectors).sum() == 3

    def test_invalid(self, matrix: numpy.ndarray):
        """Test the invalid inputs and the sweep limit."""
        with pytest.raises(error.Invalid):
            jacobi.eigh(numpy.array([[1.0, 2.0], [0.0, 1.0]]))
        with pytest.raises(error.Invalid):
            jacobi.eigh(numpy.ones((2, 3)))
        with pytest.raises(error.Failed):
            jacobi.eigh(matrix, max_sweeps=0)

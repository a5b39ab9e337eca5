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
Zero extension probe unit tests.
"""
# pylint: disable=no-self-use
import pytest

from rrgraph import error, exhaustion
from rrgraph.spectral import probe


class TestExtension:
    """Extension probe unit tests."""

    @pytest.mark.parametrize('radius, truncation', [(1, 6), (2, 7)])
    def test_ray(self, ray: exhaustion.Family, radius: int, truncation: int):
        """Test the eigenfunction bound on the ray."""
        outcome = probe.eigen_extension_probe(ray, radius, truncation)
        assert outcome.holds
        assert outcome.rho == ray.rho(radius)
        assert outcome.gap > 0

    def test_single(self, ray: exhaustion.Family):
        """Test the hand computed single edge ball."""
        outcome = probe.eigen_extension_probe(ray, 1, 6)
        assert outcome.gap == pytest.approx(2)
        assert outcome.lhs == pytest.approx(2.25)
        assert outcome.rhs == pytest.approx(2.5, abs=1e-6)

    def test_constant(self, ray: exhaustion.Family):
        """Test the constant function extension."""
        outcome = probe.eigen_extension_probe(ray, 2, 4, {'0': 1, '1': 1, '2': 1})
        assert outcome.lhs == outcome.rhs == 0
        assert outcome.gap is None
        assert outcome.holds

    def test_invalid(self, ray: exhaustion.Family):
        """Test the truncation below the radius."""
        with pytest.raises(error.Invalid):
            probe.eigen_extension_probe(ray, 3, 3)

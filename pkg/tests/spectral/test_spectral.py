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
Spectral toolkit unit tests.
"""
# pylint: disable=no-self-use
import fractions
import random

import pytest

from rrgraph import error, exhaustion, graph, spectral

F = fractions.Fraction


@pytest.fixture(scope='module')
def function() -> graph.Function:
    """Integer function on the ex1 graph."""
    return {'a': 0, 'b': 2, 'c': 1}


class TestEnergy:
    """Energy unit tests."""

    def test_dirichlet(self, ex1: graph.Graph, function: graph.Function):
        """Test the exact energies."""
        assert spectral.dirichlet_energy(ex1, function) == F(7, 3)
        assert spectral.dirichlet_energy(ex1, function, {'a', 'b'}) == 2
        assert spectral.normalized_energy(ex1, function) == F(7, 5)
        assert spectral.normalized_energy(ex1, function, {'a', 'b'}) == 2
        assert spectral.dirichlet_energy(ex1, {'a': 5, 'b': 5, 'c': 5}) == 0

    def test_norm(self, ex1: graph.Graph, function: graph.Function):
        """Test the weighted norm."""
        assert spectral.norm(ex1, function) == F(11, 5)

    def test_operator(self, ex1: graph.Graph, function: graph.Function):
        """Test the probabilistic Laplacian."""
        assert spectral.operator(ex1, function) == {'a': -2, 'b': F(8, 5), 'c': -1}
        with pytest.raises(error.Invalid):
            spectral.operator(ex1, {'a': 1})


class TestGap:
    """Spectral gap unit tests."""

    def test_edge(self):
        """Test the single edge spectrum."""
        outcome = spectral.spectral_gap(graph.Graph([('u', 'v', F(1, 3))]))
        assert outcome.eigenvalues == pytest.approx((0, 2))
        assert outcome.gap == pytest.approx(2)

    def test_path(self):
        """Test the unit path spectrum."""
        outcome = spectral.spectral_gap(graph.Graph([('p', 'q', 1), ('q', 'r', 1)]))
        assert outcome.eigenvalues == pytest.approx((0, 1, 2))

    def test_ex1(self, ex1: graph.Graph):
        """Test the eigenfunction normalization and the Rayleigh quotient."""
        outcome = spectral.spectral_gap(ex1)
        assert outcome.eigenvalues == pytest.approx((0, 1, 2))
        assert outcome.residual < 1e-9
        psi = outcome.gap_vector
        mass = ex1.invariants.m
        assert sum(psi[x] * float(mass[x]) for x in ex1) == pytest.approx(0, abs=1e-9)
        assert float(spectral.norm(ex1, psi)) == pytest.approx(1)
        rayleigh = spectral.normalized_energy(ex1, psi) / spectral.norm(ex1, psi)
        assert float(rayleigh) == pytest.approx(outcome.gap)

    def test_poincare(self, generator):
        """Test the Poincaré inequality on random functions."""
        rng = random.Random(13)
        for _ in range(20):
            host = generator(rng, rng.randint(2, 6), rng.randint(0, 3))
            gap = spectral.spectral_gap(host).gap
            values = {x: F(rng.randint(-5, 5)) for x in host}
            mass = host.invariants.m
            mean = sum(values[x] * mass[x] for x in host) / host.invariants.volume
            variance = sum((values[x] - mean) ** 2 * mass[x] for x in host)
            assert float(spectral.dirichlet_energy(host, values)) >= gap * float(variance) - 1e-9


class TestResolvent:
    """Resolvent unit tests."""

    def test_ex1(self, ex1: graph.Graph):
        """Test the gap eigenfunction is its own resolvent image."""
        rhs = {'a': 2, 'b': 0, 'c': -3}
        assert dict(spectral.resolvent_solve(ex1, rhs)) == rhs

    def test_zero(self, ex1: graph.Graph):
        """Test the zero right hand side."""
        assert set(spectral.resolvent_solve(ex1, {'a': 0, 'b': 0, 'c': 0}).values()) == {0}

    def test_invalid(self, ex1: graph.Graph):
        """Test the non mean zero right hand side."""
        with pytest.raises(error.Invalid):
            spectral.resolvent_solve(ex1, {'a': 1, 'b': 0, 'c': 0})

    def test_random(self, generator):
        """Test the exact solution and its norm bound on random graphs."""
        rng = random.Random(17)
        for _ in range(20):
            host = generator(rng, rng.randint(2, 6), rng.randint(0, 3))
            mass = host.invariants.m
            values = {x: F(rng.randint(-5, 5)) for x in host}
            mean = sum(values[x] * mass[x] for x in host) / host.invariants.volume
            rhs = {x: v - mean for x, v in values.items()}
            solution = spectral.resolvent_solve(host, rhs)
            assert spectral.operator(host, solution) == rhs
            assert sum(solution[x] * mass[x] for x in host) == 0
            gap = spectral.spectral_gap(host).gap
            assert float(spectral.norm(host, solution)) <= float(spectral.norm(host, rhs)) / gap**2 + 1e-9


class TestProbe:
    """Inequality probe unit tests."""

    def test_ex1(self, ex1: graph.Graph):
        """Test the hand computed inequalities."""
        outcome = spectral.inequality_probe(ex1, {'a', 'b'}, {'a': 2, 'b': 0, 'c': 0}, 1, radius=1)
        assert outcome.interior_lhs == F(6, 5)
        assert outcome.interior_rhs == F(9, 5)
        assert outcome.interior_holds
        assert outcome.escape_lhs == 0
        assert outcome.escape_rhs == F(4, 5)
        assert outcome.escape_holds

    def test_zero(self, ex1: graph.Graph):
        """Test the zero function."""
        outcome = spectral.inequality_probe(ex1, ex1.vertices, {'a': 0, 'b': 0, 'c': 0}, F(1, 2))
        assert outcome.interior_lhs == outcome.interior_rhs == 0
        assert outcome.interior_holds
        assert outcome.escape_lhs is None

    def test_invalid(self, ex1: graph.Graph):
        """Test the invalid arguments."""
        with pytest.raises(error.Invalid):
            spectral.inequality_probe(ex1, {'a'}, {'a': 0, 'b': 0, 'c': 0}, 0)
        with pytest.raises(error.Invalid):
            spectral.escape(ex1, 3)

    def test_escape(self, ray: exhaustion.Family):
        """Test the escape probability of a ray ball shell."""
        assert spectral.escape(exhaustion.build_ball(ray, 3).graph, 2) == F(1, 5)

    def test_escape_volume(self, ray: exhaustion.Family):
        """Test the escape bound scales the whole graph norm (not just the ball part)."""
        host = exhaustion.build_ball(ray, 4).graph
        outcome = spectral.inequality_probe(host, host.vertices, {x: 1 for x in host.vertices}, 1, radius=2)
        assert outcome.escape_lhs == F(1, 16)
        assert outcome.escape_rhs == F(1, 5) * F(209, 128) == F(209, 640)
        assert outcome.escape_holds
        shell = {x: 1 if x == '2' else 0 for x in host.vertices}
        outcome = spectral.inequality_probe(host, host.vertices, shell, 1, radius=2)
        assert outcome.escape_lhs == outcome.escape_rhs == F(1, 16)
        assert outcome.escape_holds


class TestExtension:
    """Harmonic extension unit tests."""

    def test_constant(self, ex1: graph.Graph):
        """Test the constant data extension."""
        outcome = spectral.harmonic_extension(ex1, {'a'}, {'a': 2})
        assert dict(outcome.h) == {'a': 2, 'b': 2, 'c': 2}
        assert dict(outcome.gfloor) == {'a': 2, 'b': 2, 'c': 2}
        assert outcome.diagnostics.holds

    def test_ray(self, ray: exhaustion.Family):
        """Test the extension checks on random inner data."""
        host = exhaustion.build_ball(ray, 3).graph
        rng = random.Random(19)
        for _ in range(10):
            data = {x: rng.randint(-5, 5) for x in host.profile.ball(1)}
            outcome = spectral.harmonic_extension(host, data, data)
            assert outcome.diagnostics.holds
            assert all(outcome.h[x] == data[x] for x in data)

    def test_invalid(self, ex1: graph.Graph):
        """Test the invalid inner sets and data."""
        with pytest.raises(error.Invalid):
            spectral.harmonic_extension(ex1, ex1.vertices, {'a': 0, 'b': 0, 'c': 0})
        with pytest.raises(error.Invalid):
            spectral.harmonic_extension(ex1, {'a'}, {'a': F(1, 2)})

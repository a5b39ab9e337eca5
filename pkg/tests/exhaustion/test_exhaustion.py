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
Ball exhaustion unit tests.
"""
# pylint: disable=no-self-use
import fractions
import typing

import pytest

from rrgraph import error, exhaustion, graph
from rrgraph.exhaustion import family

F = fractions.Fraction


class Broken(exhaustion.Family):
    """Ray generator with an injected defect."""

    def __init__(self, defect: str):
        self.defect: str = defect

    @property
    def base(self) -> graph.Vertex:
        return '0'

    def neighbors(self, vertex: graph.Vertex) -> family.Neighbors:
        result = list(exhaustion.RayDoubleExp().neighbors(vertex))
        if vertex == '1' and self.defect == 'asymmetric':
            result[0] = ('0', F(1, 3))
        elif vertex == '0':
            if self.defect == 'loop':
                result.append(('0', 1))
            elif self.defect == 'nonpositive':
                result = [('1', 0)]
            elif self.defect == 'repeated':
                result.append(('1', F(1, 2)))
            elif self.defect == 'isolated':
                result = []
        return result


def edges(host: graph.Graph) -> typing.Set[typing.Tuple[typing.FrozenSet[graph.Vertex], graph.Rational]]:
    """Orientation free edge set."""
    return {(frozenset((e.source, e.target)), e.weight) for e in host.edges}


class TestBall:
    """Ball materialization unit tests."""

    def test_ray(self, ray: exhaustion.Family):
        """Test the hand computed ray ball."""
        ball = exhaustion.build_ball(ray, 2)
        assert ball.graph.vertices == ('0', '1', '2')
        assert ball.graph.base == '0'
        assert ball.boundary == ('2',)
        assert dict(ball.ambient) == {'0': F(1, 2), '1': F(3, 4), '2': F(5, 16)}
        assert ball.volume == F(3, 2)
        assert ball.rho == F(1, 5)
        assert ball.shell == ball.lightest == F(5, 16)

    def test_closed(self, ray: exhaustion.Family):
        """Test the closed form escape probabilities and Euler characteristics."""
        for radius in range(1, 6):
            ball = exhaustion.build_ball(ray, radius)
            assert ball.rho == ray.rho(radius)
            assert ball.graph.invariants.euler == ray.euler(radius)

    def test_tree(self, tree: exhaustion.Family):
        """Test the binary tree ball."""
        ball = exhaustion.build_ball(tree, 2)
        assert len(ball.graph) == 7
        assert set(ball.boundary) == {'4', '5', '6', '7'}

    def test_induced(self, tree: exhaustion.Family):
        """Test the smaller ball is the induced subgraph of the larger one."""
        small, large = exhaustion.build_ball(tree, 2), exhaustion.build_ball(tree, 4)
        assert edges(small.graph) == edges(large.graph.subgraph(small.graph.vertices))

    @pytest.mark.parametrize('defect', ['asymmetric', 'loop', 'nonpositive', 'repeated', 'isolated'])
    def test_broken(self, defect: str):
        """Test the generator validation."""
        with pytest.raises(error.Invalid):
            exhaustion.build_ball(Broken(defect), 2)

    def test_radius(self, ray: exhaustion.Family):
        """Test the radius validation."""
        with pytest.raises(error.Invalid):
            exhaustion.build_ball(ray, 0)


class TestSeries:
    """Exhaustion series unit tests."""

    def test_ray(self, ray: exhaustion.Family):
        """Test the ray series."""
        series = exhaustion.exhaustion_series(ray, 5)
        assert [r.n for r in series.records] == [1, 2, 3, 4, 5]
        assert series.records[0].ratio43 == F(1, 2)
        assert all(r.ratio43 == r.rho == ray.rho(r.n) for r in series.records[1:])
        assert all(r.euler == ray.euler(r.n) for r in series.records)
        assert all(r.correction == r.rho / (1 - r.rho) for r in series.records)
        assert series.vanishing
        assert series.first_below == 4
        assert series.threshold == pytest.approx(0.0569, abs=5e-4)

    def test_geometric(self):
        """Test the constant escape probability family."""
        series = exhaustion.exhaustion_series(exhaustion.RayGeometric(), 4)
        assert [r.ratio43 for r in series.records] == [F(1, 2), F(1, 3), F(1, 3), F(1, 3)]
        assert not series.vanishing
        assert series.first_below is None

    def test_gaps(self, ray: exhaustion.Family):
        """Test the spectral gap column and the parallel evaluation."""
        serial = exhaustion.exhaustion_series(ray, 3, gaps=True)
        parallel = exhaustion.exhaustion_series(ray, 3, gaps=True, jobs=2)
        assert serial.records[0].gap == pytest.approx(2)
        assert [r.rho for r in serial.records] == [r.rho for r in parallel.records]
        assert exhaustion.exhaustion_series(ray, 3).records[0].gap is None

    def test_radius(self, ray: exhaustion.Family):
        """Test the radius validation."""
        with pytest.raises(error.Invalid):
            exhaustion.exhaustion_series(ray, 1)


class TestRecord:
    """Record serialization unit tests."""

    def test_row(self, ray: exhaustion.Family):
        """Test the exact and the decimal columns."""
        record = exhaustion.exhaustion_series(ray, 2).records[0]
        assert record.row() == ('1', '1/3', '', '1/2', '1/2', '', '3/4', '1/1', '1/2', '1/2')
        assert record.row(3)[len(exhaustion.Record.HEADER) :] == (
            '0.333',
            '0.500',
            '0.500',
            '',
            '0.750',
            '1.000',
            '0.500',
        )
        assert len(exhaustion.Record.header(3)) == len(record.row(3))
        assert ','.join(exhaustion.Record.header()) == (
            'n,rho_n,lambda_n,e_n,ratio43,r_n,m_S_n,m_n_V_n,min_m,rho_correction'
        )
        assert ','.join(exhaustion.Record.header(3)[len(exhaustion.Record.HEADER) :]) == (
            'rho_n_dec,e_n_dec,ratio43_dec,r_n_dec,m_S_n_dec,m_n_V_n_dec,min_m_dec'
        )

    def test_rational(self):
        """Test the p/q serialization."""
        assert exhaustion.rational(None) == ''
        assert exhaustion.rational(F(2, 4)) == '1/2'
        assert exhaustion.rational(3) == '3/1'

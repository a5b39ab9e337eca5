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
Infinite weighted graph families.

Families are providers registered under their alias (``Family['ray-double-exp']``) and are described by their pure
neighbor generator.
"""
import abc
import logging
import pathlib
import typing

from rrgraph import error, graph, provider
from rrgraph.graph import parser

LOGGER = logging.getLogger(__name__)

Neighbors = typing.Sequence[typing.Tuple[graph.Vertex, graph.Rational]]


def doubleexp(depth: int) -> graph.Rational:
    """The 2^(-2^k) weight of the given depth."""
    return graph.Rational(1, 2 ** (2**depth))


def raytail(radius: int) -> graph.Rational:
    """Upper bound of the mass outside the radius-n ball of the double exponential ray."""
    return doubleexp(radius) + 2 * doubleexp(radius + 1) / (1 - doubleexp(radius + 1))


class Family(provider.Interface):
    """Infinite locally finite weighted graph of finite total volume."""

    @property
    @abc.abstractmethod
    def base(self) -> graph.Vertex:
        """The base vertex v0."""

    @abc.abstractmethod
    def neighbors(self, vertex: graph.Vertex) -> Neighbors:
        """Neighbors of the vertex with the connecting weights.

        Args:
            vertex: Vertex id.

        Returns: Sequence of (neighbor, weight) pairs.
        """

    def tail(self, radius: int) -> typing.Optional[graph.Rational]:  # pylint: disable=unused-argument
        """Upper bound of the ambient mass m(V ∖ V_n) outside the ball (None if not declared).

        Args:
            radius: Ball radius.

        Returns: Tail mass bound.
        """
        return None

    @property
    def volume(self) -> typing.Optional[graph.Rational]:
        """Upper bound of the total volume (None if not declared)."""
        tail = self.tail(0)
        if tail is None:
            return None
        return tail + sum((w for _, w in self.neighbors(self.base)), graph.Rational(0))

    def __repr__(self):
        return f'{self.__class__.__name__}()'


class RayDoubleExp(Family, alias='ray-double-exp'):
    """Ray 0 - 1 - 2 - ... with the C(k, k+1) = 2^(-2^k) weights."""

    @property
    def base(self) -> graph.Vertex:
        return '0'

    def neighbors(self, vertex: graph.Vertex) -> Neighbors:
        position = int(vertex)
        result = [(str(position + 1), doubleexp(position))]
        if position > 0:
            result.insert(0, (str(position - 1), doubleexp(position - 1)))
        return result

    def tail(self, radius: int) -> graph.Rational:
        return raytail(radius)

    @staticmethod
    def rho(radius: int) -> graph.Rational:
        """Closed form ρ_n = 1/(2^(2^(n-1)) + 1)."""
        return graph.Rational(1, 2 ** (2 ** (radius - 1)) + 1)

    @staticmethod
    def euler(radius: int) -> graph.Rational:
        """Closed form 𝖊_n = 2^(-2^(n-1))."""
        return doubleexp(radius - 1)


class RayGeometric(Family, alias='ray-geometric'):
    """Ray with the geometric C(k, k+1) = r^k weights (constant escape probability r/(1+r)).

    Args:
        ratio: The 0 < r < 1 ratio.
    """

    def __init__(self, ratio: typing.Union[str, graph.Rational] = '1/2'):
        self.ratio: graph.Rational = parser.rational(ratio) if isinstance(ratio, str) else graph.Rational(ratio)
        if not 0 < self.ratio < 1:
            raise error.Invalid(f'Ratio {self.ratio} outside (0, 1)')

    def __repr__(self):
        return f'RayGeometric(ratio={self.ratio})'

    @property
    def base(self) -> graph.Vertex:
        return '0'

    def neighbors(self, vertex: graph.Vertex) -> Neighbors:
        position = int(vertex)
        result = [(str(position + 1), self.ratio**position)]
        if position > 0:
            result.insert(0, (str(position - 1), self.ratio ** (position - 1)))
        return result

    def tail(self, radius: int) -> graph.Rational:
        return self.ratio**radius * (1 + self.ratio) / (1 - self.ratio)


class TreeDoubleExp(Family, alias='tree-double-exp'):
    """Binary tree in the heap numbering (root 1, children 2k and 2k+1) with the depth-k child edges of 2^(-2^k)."""

    @property
    def base(self) -> graph.Vertex:
        return '1'

    def neighbors(self, vertex: graph.Vertex) -> Neighbors:
        position = int(vertex)
        depth = position.bit_length() - 1
        result = [(str(2 * position), doubleexp(depth)), (str(2 * position + 1), doubleexp(depth))]
        if position > 1:
            result.insert(0, (str(position // 2), doubleexp(depth - 1)))
        return result

    def tail(self, radius: int) -> graph.Rational:
        return 2 ** (radius + 1) * doubleexp(radius) + 2 ** (radius + 3) * doubleexp(radius + 1) / (
            1 - 2 * doubleexp(radius + 1)
        )


class Lollipop(Family, alias='lollipop'):
    """Finite core graph with the double exponential tail t1 - t2 - ... attached at the core base.

    Args:
        core: Core graph instance or path to its graph file.
    """

    PREFIX = 't'

    def __init__(self, core: typing.Optional[typing.Union[graph.Graph, str]] = None):
        if core is None:
            core = graph.Graph([('a', 'b', 1), ('b', 'c', 1), ('c', 'a', 1)])
        elif isinstance(core, str):
            core = parser.parse(pathlib.Path(core).read_text(encoding='utf-8'))
        clash = [v for v in core.vertices if self._position(v) is not None]
        if clash:
            raise error.Invalid(f'Core vertices clash with the tail naming: {", ".join(clash)}')
        self.core: graph.Graph = core

    def __repr__(self):
        return f'Lollipop(core={self.core})'

    def _position(self, vertex: graph.Vertex) -> typing.Optional[int]:
        if vertex.startswith(self.PREFIX) and vertex[len(self.PREFIX) :].isdigit():
            return int(vertex[len(self.PREFIX) :])
        return None

    @property
    def base(self) -> graph.Vertex:
        return self.core.base

    def neighbors(self, vertex: graph.Vertex) -> Neighbors:
        position = self._position(vertex)
        if position is None:
            result = list(self.core.neighbors(vertex).items())
            if vertex == self.core.base:
                result.append((f'{self.PREFIX}1', doubleexp(0)))
            return result
        previous = self.core.base if position == 1 else f'{self.PREFIX}{position - 1}'
        return [(previous, doubleexp(position - 1)), (f'{self.PREFIX}{position + 1}', doubleexp(position))]

    def tail(self, radius: int) -> graph.Rational:
        profile = self.core.profile
        mass = self.core.invariants.m
        outside = (mass[x] for x in self.core.vertices if profile.distance[x] > radius)
        return raytail(radius) + sum(outside, graph.Rational(0))

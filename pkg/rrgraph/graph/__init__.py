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
Weighted graph core.

Finite connected loopless graphs carrying symmetric positive rational edge weights together with their exact
invariants (vertex masses, vertex quanta, the canonical divisor multipliers and the weighted Euler characteristic),
metric shells around a base vertex and the random walk transition profile.
"""
import collections
import fractions
import functools
import logging
import math
import types
import typing

from rrgraph import error

LOGGER = logging.getLogger(__name__)

Rational = fractions.Fraction
Vertex = str
Function = typing.Mapping[Vertex, Rational]


def gcd(*values: typing.Union[int, Rational]) -> Rational:
    """Rational greatest common divisor.

    The result is the positive generator of the additive subgroup of the rationals spanned by the values (zero for no
    or all-zero values).

    Args:
        *values: Rational values.

    Returns: The rational gcd.
    """
    result = Rational(0)
    for value in values:
        value = Rational(value)
        result = Rational(
            math.gcd(result.numerator * value.denominator, value.numerator * result.denominator),
            result.denominator * value.denominator,
        )
    return result


def lcm(*values: int) -> int:
    """Least common multiple of positive integers."""
    return functools.reduce(lambda left, right: left * right // math.gcd(left, right), values, 1)


class Edge(typing.NamedTuple):
    """Undirected weighted edge."""

    source: Vertex
    target: Vertex
    weight: Rational


class Invariants(collections.namedtuple('Invariants', 'm, mu, i, i_gcd, canonical, euler, m_common')):
    """Exact per-graph invariants.

    Attributes:
        m: Vertex mass (sum of incident weights).
        mu: Probability normalization of the mass.
        i: Vertex quantum (rational gcd of the incident weights).
        i_gcd: Global quantum (rational gcd of all vertex quanta).
        canonical: Canonical divisor expressed as integer multiples of the vertex quanta.
        euler: Weighted Euler characteristic (sum of quanta minus sum of weights).
        m_common: Common denominator of all the weights.
    """

    @property
    def volume(self) -> Rational:
        """Total mass m(V)."""
        return sum(self.m.values(), Rational(0))


class Profile(collections.namedtuple('Profile', 'base, distance, shells, diameter')):
    """Breadth-first metric structure around a base vertex."""

    def ball(self, radius: int) -> typing.Tuple[Vertex, ...]:
        """Vertices within the given distance from the base (in shell order).

        Args:
            radius: Maximal distance.

        Returns: Ball vertices.
        """
        return tuple(v for s in self.shells[: max(radius + 1, 0)] for v in s)


class Transition(collections.namedtuple('Transition', 'p, m_plus, m_minus')):
    """Random walk transition matrix with the outward/inward incident masses relative to the base distance."""


class Integral(collections.namedtuple('Integral', 'scale, adjacency, mass, quantum')):
    """Integer rescaling of the graph by the common weight denominator.

    All weights, masses and quanta become integers (C·scale) indexed by the vertex positions which is the
    representation the combinatorial search loops operate on.

    Attributes:
        scale: Common denominator m_common.
        adjacency: Per vertex tuple of (neighbor index, integer weight) pairs.
        mass: Integer vertex masses.
        quantum: Integer vertex quanta.
    """


class Graph:
    """Finite connected loopless graph with symmetric positive rational edge weights.

    Vertices are opaque tokens ordered by their first appearance in the edge list. The instance is immutable.

    Args:
        edges: Sequence of (source, target, weight) triples.
        base: Base vertex (defaults to the first vertex).
    """

    def __init__(
        self, edges: typing.Iterable[typing.Tuple[Vertex, Vertex, typing.Any]], base: typing.Optional[Vertex] = None
    ):
        adjacency: typing.Dict[Vertex, typing.Dict[Vertex, Rational]] = dict()
        listing: typing.List[Edge] = list()
        for source, target, weight in edges:
            weight = Rational(weight)
            if source == target:
                raise error.Structural(f'Loop at vertex {source}')
            if weight <= 0:
                raise error.Invalid(f'Nonpositive weight {weight} on edge {source}-{target}')
            if target in adjacency.get(source, {}):
                raise error.Invalid(f'Duplicate edge {source}-{target}')
            adjacency.setdefault(source, dict())[target] = weight
            adjacency.setdefault(target, dict())[source] = weight
            listing.append(Edge(source, target, weight))
        if not adjacency:
            raise error.Structural('Graph without edges')
        self._vertices: typing.Tuple[Vertex, ...] = tuple(adjacency)
        self._index: typing.Mapping[Vertex, int] = types.MappingProxyType({v: i for i, v in enumerate(self._vertices)})
        self._adjacency: typing.Mapping[Vertex, typing.Mapping[Vertex, Rational]] = types.MappingProxyType(
            {v: types.MappingProxyType(n) for v, n in adjacency.items()}
        )
        self._edges: typing.Tuple[Edge, ...] = tuple(listing)
        self._base: Vertex = self._vertices[0] if base is None else base
        self._metrics: typing.Dict[Vertex, Profile] = dict()
        if self._base not in self._adjacency:
            raise error.Missing(f'Base vertex {self._base} not in graph')
        unreached = [v for v in self._vertices if v not in self.profile.distance]
        if unreached:
            raise error.Structural(f'Graph disconnected (unreachable from {self._base}: {", ".join(unreached)})')

    def __repr__(self):
        return f'Graph[{len(self)} vertices, {len(self._edges)} edges, base={self._base}]'

    def __len__(self):
        return len(self._vertices)

    def __iter__(self) -> typing.Iterator[Vertex]:
        return iter(self._vertices)

    def __contains__(self, vertex: Vertex):
        return vertex in self._index

    @property
    def vertices(self) -> typing.Tuple[Vertex, ...]:
        """Vertices in their canonical order."""
        return self._vertices

    @property
    def edges(self) -> typing.Tuple[Edge, ...]:
        """Edges in their input order."""
        return self._edges

    @property
    def base(self) -> Vertex:
        """Base vertex v0."""
        return self._base

    def index(self, vertex: Vertex) -> int:
        """Position of the vertex in the canonical order."""
        try:
            return self._index[vertex]
        except KeyError as err:
            raise error.Missing(f'Unknown vertex {vertex}') from err

    def neighbors(self, vertex: Vertex) -> typing.Mapping[Vertex, Rational]:
        """Neighbors of the vertex with the connecting weights.

        Args:
            vertex: Vertex to be inspected.

        Returns: Mapping of neighbor to edge weight.
        """
        try:
            return self._adjacency[vertex]
        except KeyError as err:
            raise error.Missing(f'Unknown vertex {vertex}') from err

    def weight(self, source: Vertex, target: Vertex) -> Rational:
        """Edge weight (zero for non-adjacent pairs)."""
        return self.neighbors(source).get(target, Rational(0))

    def rebase(self, base: Vertex) -> 'Graph':
        """Same graph with a different base vertex.

        Args:
            base: New base vertex.

        Returns: Rebased graph.
        """
        if base == self._base:
            return self
        return Graph(self._edges, base)

    def subgraph(self, vertices: typing.Iterable[Vertex], base: typing.Optional[Vertex] = None) -> 'Graph':
        """Induced subgraph.

        Args:
            vertices: Vertex subset.
            base: Base of the subgraph (defaults to our base).

        Returns: Induced subgraph instance.
        """
        subset = self.subset(vertices)
        return Graph((e for e in self._edges if e.source in subset and e.target in subset), base or self._base)

    def subset(self, vertices: typing.Iterable[Vertex]) -> typing.FrozenSet[Vertex]:
        """Validate the vertex subset.

        Args:
            vertices: Vertices expected to be part of this graph.

        Returns: Frozen set of the vertices.
        """
        subset = frozenset(vertices)
        unknown = subset.difference(self._index)
        if unknown:
            raise error.Invalid(f'Not a vertex subset (unknown: {", ".join(sorted(unknown))})')
        return subset

    def laplacian(
        self, function: typing.Mapping[Vertex, typing.Any], restrict: typing.Optional[typing.Iterable[Vertex]] = None
    ) -> Function:
        """Apply the weighted Laplacian Δf(x) = Σ C(x,y)(f(x) - f(y)).

        With a restriction the subgraph form is computed summing only over neighbors inside the given subset.

        Args:
            function: Vertex function (defined on all vertices or at least on the restriction).
            restrict: Optional vertex subset.

        Returns: The Laplacian as a vertex function on the (restricted) domain.
        """
        if restrict is None:
            domain = self._vertices
        else:
            inside = self.subset(restrict)
            domain = tuple(v for v in self._vertices if v in inside)
        inside = frozenset(domain)
        return types.MappingProxyType(
            {
                x: sum(
                    (w * (function[x] - function[y]) for y, w in self._adjacency[x].items() if y in inside),
                    Rational(0),
                )
                for x in domain
            }
        )

    def metric(self, base: typing.Optional[Vertex] = None) -> Profile:
        """Breadth-first metric profile around the base.

        Args:
            base: Reference vertex (defaults to our base).

        Returns: Metric profile.
        """
        base = self._base if base is None else base
        if base in self._metrics:
            return self._metrics[base]
        if base not in self._adjacency:
            raise error.Missing(f'Unknown vertex {base}')
        distance = {base: 0}
        frontier = [base]
        while frontier:
            following = list()
            for vertex in frontier:
                for neighbor in self._adjacency[vertex]:
                    if neighbor not in distance:
                        distance[neighbor] = distance[vertex] + 1
                        following.append(neighbor)
            frontier = following
        diameter = max(distance.values())
        shells = tuple(tuple(v for v in self._vertices if distance.get(v) == k) for k in range(diameter + 1))
        self._metrics[base] = Profile(base, types.MappingProxyType(distance), shells, diameter)
        return self._metrics[base]

    @functools.cached_property
    def profile(self) -> Profile:
        """Metric profile around our base."""
        return self.metric()

    @functools.cached_property
    def invariants(self) -> Invariants:
        """Exact per-graph invariants."""
        mass = {x: sum(self._adjacency[x].values(), Rational(0)) for x in self._vertices}
        volume = sum(mass.values(), Rational(0))
        quantum = {x: gcd(*self._adjacency[x].values()) for x in self._vertices}
        canonical = {x: int(mass[x] / quantum[x]) - 2 for x in self._vertices}
        euler = sum(quantum.values(), Rational(0)) - sum((e.weight for e in self._edges), Rational(0))
        LOGGER.debug('%s: volume %s, euler %s', self, volume, euler)
        return Invariants(
            types.MappingProxyType(mass),
            types.MappingProxyType({x: mass[x] / volume for x in self._vertices}),
            types.MappingProxyType(quantum),
            gcd(*quantum.values()),
            types.MappingProxyType(canonical),
            euler,
            lcm(*(e.weight.denominator for e in self._edges)),
        )

    @functools.cached_property
    def integral(self) -> Integral:
        """Integer rescaled view of the graph."""
        invariants = self.invariants
        scale = invariants.m_common
        return Integral(
            scale,
            tuple(
                tuple((self._index[y], int(w * scale)) for y, w in self._adjacency[x].items()) for x in self._vertices
            ),
            tuple(int(invariants.m[x] * scale) for x in self._vertices),
            tuple(int(invariants.i[x] * scale) for x in self._vertices),
        )

    def transition(self, base: typing.Optional[Vertex] = None) -> Transition:
        """Random walk transition profile p(x,y) = C(x,y)/m(x) plus the outward/inward incident masses.

        Args:
            base: Reference vertex for the distance split (defaults to our base).

        Returns: Transition profile.
        """
        distance = self.metric(base).distance
        mass = self.invariants.m
        plus, minus = dict(), dict()
        for x in self._vertices:
            plus[x] = sum((w for y, w in self._adjacency[x].items() if distance[y] == distance[x] + 1), Rational(0))
            minus[x] = sum((w for y, w in self._adjacency[x].items() if distance[y] == distance[x] - 1), Rational(0))
        return Transition(
            types.MappingProxyType(
                {
                    x: types.MappingProxyType({y: w / mass[x] for y, w in self._adjacency[x].items()})
                    for x in self._vertices
                }
            ),
            types.MappingProxyType(plus),
            types.MappingProxyType(minus),
        )


def graph_invariants(graph: Graph) -> Invariants:
    """Per-graph invariants of the given graph."""
    return graph.invariants


def metric_profile(graph: Graph, base: typing.Optional[Vertex] = None) -> Profile:
    """Metric profile of the given graph around the base."""
    return graph.metric(base)


def laplacian_apply(
    graph: Graph,
    function: typing.Mapping[Vertex, typing.Any],
    restrict_to: typing.Optional[typing.Iterable[Vertex]] = None,
) -> Function:
    """Weighted Laplacian (optionally in its subgraph form)."""
    return graph.laplacian(function, restrict_to)


def transition_profile(graph: Graph, base: typing.Optional[Vertex] = None) -> Transition:
    """Transition profile of the given graph."""
    return graph.transition(base)

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
Divisor algebra.

Divisors are stored as integer multipliers ℓ(x) of the vertex quanta i(x) so their value ℓ(x)·i(x) is structurally
a multiple of the quantum. Firing a function f transforms a divisor as D ↦ D - Δf (positive f(x) means x sends chips
to its neighbors).
"""
import collections
import functools
import itertools
import logging
import types
import typing

from rrgraph import error, graph
from rrgraph.graph import linalg, parser

LOGGER = logging.getLogger(__name__)

Firing = typing.Mapping[graph.Vertex, int]


class Divisor(collections.namedtuple('Divisor', 'graph, ell')):
    """Divisor D = Σ ℓ(x)·i(x)·1_x on a weighted graph.

    Args:
        graph: Host graph.
        ell: Integer multipliers either as a sequence in the vertex order or as a (sparse) mapping.
    """

    def __new__(cls, host: graph.Graph, ell: typing.Union[typing.Mapping[graph.Vertex, int], typing.Sequence[int]]):
        if isinstance(ell, typing.Mapping):
            host.subset(ell)
            ell = tuple(ell.get(v, 0) for v in host.vertices)
        ell = tuple(ell)
        if len(ell) != len(host):
            raise error.Invalid(f'Divisor size mismatch ({len(ell)} values for {len(host)} vertices)')
        if any(int(v) != v for v in ell):
            raise error.Invalid('Non-integer divisor multiplier')
        return super().__new__(cls, host, tuple(int(v) for v in ell))

    def __repr__(self):
        return f'Divisor({", ".join(f"{x}: {v}" for x, v in self.values.items() if v)})'

    @classmethod
    def zero(cls, host: graph.Graph) -> 'Divisor':
        """The zero divisor."""
        return cls(host, (0,) * len(host))

    @classmethod
    def unit(cls, host: graph.Graph, vertex: graph.Vertex, multiple: int = 1) -> 'Divisor':
        """Multiple of the vertex quantum at a single vertex."""
        return cls(host, {vertex: multiple})

    @classmethod
    def from_values(cls, host: graph.Graph, values: typing.Mapping[graph.Vertex, typing.Any]) -> 'Divisor':
        """Import a divisor given by its raw rational values.

        Args:
            host: Host graph.
            values: Rational value per vertex (omitted vertices are zero).

        Returns: Divisor instance.

        Raises:
            error.Invalid: If a value is not an integer multiple of the vertex quantum.
        """
        host.subset(values)
        quanta = host.invariants.i
        ell = dict()
        for vertex, value in values.items():
            multiple = graph.Rational(value) / quanta[vertex]
            if multiple.denominator != 1:
                raise error.Invalid(f'Value {value} at {vertex} not a multiple of quantum {quanta[vertex]}')
            ell[vertex] = int(multiple)
        return cls(host, ell)

    def coefficient(self, vertex: graph.Vertex) -> int:
        """The ℓ(x) multiplier."""
        return self.ell[self.graph.index(vertex)]

    def value(self, vertex: graph.Vertex) -> graph.Rational:
        """The D(x) = ℓ(x)·i(x) value."""
        return self.coefficient(vertex) * self.graph.invariants.i[vertex]

    @functools.cached_property
    def values(self) -> typing.Mapping[graph.Vertex, graph.Rational]:
        """All values in the vertex order."""
        quanta = self.graph.invariants.i
        return types.MappingProxyType({x: v * quanta[x] for x, v in zip(self.graph.vertices, self.ell)})

    @functools.cached_property
    def chips(self) -> typing.Tuple[int, ...]:
        """Values rescaled to integers by the common weight denominator."""
        return tuple(v * q for v, q in zip(self.ell, self.graph.integral.quantum))

    @classmethod
    def from_chips(cls, host: graph.Graph, chips: typing.Sequence[int]) -> 'Divisor':
        """Inverse of the chips rescaling."""
        return cls(host, tuple(c // q for c, q in zip(chips, host.integral.quantum)))

    @functools.cached_property
    def split(self) -> typing.Tuple[graph.Rational, graph.Rational, graph.Rational]:
        """Degree together with its positive and negative parts (deg, deg⁺, deg⁻)."""
        plus = sum((v for v in self.values.values() if v > 0), graph.Rational(0))
        minus = -sum((v for v in self.values.values() if v < 0), graph.Rational(0))
        return plus - minus, plus, minus

    @property
    def degree(self) -> graph.Rational:
        """Total degree."""
        return self.split[0]

    @property
    def effective(self) -> bool:
        """True if all coefficients are nonnegative."""
        return all(v >= 0 for v in self.ell)

    @property
    def support(self) -> typing.FrozenSet[graph.Vertex]:
        """Vertices with nonzero coefficients."""
        return frozenset(x for x, v in zip(self.graph.vertices, self.ell) if v)

    def _compatible(self, other: 'Divisor') -> None:
        if not isinstance(other, Divisor):
            raise error.Unexpected(f'Not a divisor: {other}')
        if other.graph is not self.graph:
            raise error.Invalid('Divisors on different graphs')

    def __add__(self, other: 'Divisor') -> 'Divisor':
        self._compatible(other)
        return Divisor(self.graph, tuple(a + b for a, b in zip(self.ell, other.ell)))

    def __sub__(self, other: 'Divisor') -> 'Divisor':
        self._compatible(other)
        return Divisor(self.graph, tuple(a - b for a, b in zip(self.ell, other.ell)))

    def __neg__(self) -> 'Divisor':
        return Divisor(self.graph, tuple(-a for a in self.ell))

    def __mul__(self, factor: int) -> 'Divisor':
        return Divisor(self.graph, tuple(a * factor for a in self.ell))

    __rmul__ = __mul__


class Order(tuple):
    """Total order on the vertex set given as a permutation of the vertices (ascending)."""

    def __new__(cls, vertices: typing.Iterable[graph.Vertex]):
        return super().__new__(cls, vertices)

    @classmethod
    def all(cls, host: graph.Graph) -> typing.Iterator['Order']:
        """All total orders of the graph vertices."""
        return (cls(p) for p in itertools.permutations(host.vertices))

    @functools.cached_property
    def position(self) -> typing.Mapping[graph.Vertex, int]:
        """Rank of each vertex within the order."""
        return types.MappingProxyType({v: i for i, v in enumerate(self)})

    def less(self, left: graph.Vertex, right: graph.Vertex) -> bool:
        """The left <_O right test."""
        return self.position[left] < self.position[right]

    def reverse(self) -> 'Order':
        """The reversed order Ō."""
        return Order(reversed(self))

    def validate(self, host: graph.Graph) -> 'Order':
        """Check the order is a bijection over the graph vertices."""
        if len(self) != len(host) or set(self) != set(host.vertices):
            raise error.Invalid(f'Not a total order of the graph vertices: {self}')
        return self


def degree_split(divisor: Divisor) -> typing.Tuple[graph.Rational, graph.Rational, graph.Rational]:
    """The (deg, deg⁺, deg⁻) triple."""
    return divisor.split


def apply_firing(divisor: Divisor, firing: Firing) -> Divisor:
    """Fire the integer function f transforming D into D - Δf.

    Args:
        divisor: Divisor to be fired.
        firing: Integer function (omitted vertices fire zero times).

    Returns: The equivalent divisor.
    """
    host = divisor.graph
    host.subset(firing)
    laplacian = host.laplacian({v: firing.get(v, 0) for v in host.vertices})
    quanta = host.invariants.i
    shift = list()
    for vertex in host.vertices:
        multiple = laplacian[vertex] / quanta[vertex]
        if multiple.denominator != 1:
            raise error.Invalid(f'Non-integral firing at {vertex}')
        shift.append(int(multiple))
    return Divisor(host, tuple(a - b for a, b in zip(divisor.ell, shift)))


def equivalence_witness(divisor: Divisor, other: Divisor) -> typing.Optional[Firing]:
    """Find the integer firing function transforming the first divisor into the second one.

    Args:
        divisor: Source divisor D.
        other: Target divisor D2.

    Returns: Firing function f with f(v0) = 0 and D2 = D - Δf or None if the divisors are not equivalent.
    """
    divisor._compatible(other)  # pylint: disable=protected-access
    if divisor.degree != other.degree:
        return None
    host = divisor.graph
    free = [v for v in host.vertices if v != host.base]
    if not free:
        return {host.base: 0}
    position = {v: i for i, v in enumerate(free)}
    matrix = [[graph.Rational(0)] * len(free) for _ in free]
    for vertex in free:
        row = matrix[position[vertex]]
        for neighbor, weight in host.neighbors(vertex).items():
            row[position[vertex]] += weight
            if neighbor in position:
                row[position[neighbor]] -= weight
    rhs = [divisor.value(v) - other.value(v) for v in free]
    solution = linalg.solve(matrix, rhs)
    if any(s.denominator != 1 for s in solution):
        LOGGER.debug('Rational solution not integral: %s', solution)
        return None
    return types.MappingProxyType({host.base: 0, **{v: int(s) for v, s in zip(free, solution)}})


def nu_divisor(host: graph.Graph, order: Order) -> Divisor:
    """The ν_O(x) = Σ_{y <_O x} C(x,y) - i(x) divisor of a total order.

    Args:
        host: Graph instance.
        order: Total order of its vertices.

    Returns: The ν_O divisor.
    """
    order.validate(host)
    quanta = host.invariants.i
    values = {
        x: sum((w for y, w in host.neighbors(x).items() if order.less(y, x)), graph.Rational(0)) - quanta[x]
        for x in host.vertices
    }
    return Divisor.from_values(host, values)


def canonical(host: graph.Graph) -> Divisor:
    """The canonical divisor K_G(x) = m(x) - 2i(x)."""
    return Divisor(host, host.invariants.canonical)


def restrict_divisor(divisor: Divisor, ball: graph.Graph) -> Divisor:
    """Restriction (D)_n of a divisor to the radius-n ball keeping only the coefficients strictly inside V_n.

    Args:
        divisor: Divisor on a graph sharing the inner ball vertices (with equal quanta) with the target ball.
        ball: Metric ball of radius n around its base.

    Returns: The divisor Σ_{x ∈ V_(n-1)} ℓ(x)i(x)1_x on the ball.
    """
    radius = ball.profile.diameter
    quanta, bquanta = divisor.graph.invariants.i, ball.invariants.i
    ell = dict()
    for vertex in divisor.support:
        if vertex not in ball or ball.profile.distance[vertex] >= radius:
            LOGGER.debug('Dropping coefficient at %s outside the inner ball', vertex)
            continue
        if quanta[vertex] != bquanta[vertex]:
            raise error.Invalid(f'Ball not induced at {vertex} (quantum mismatch)')
        ell[vertex] = divisor.coefficient(vertex)
    return Divisor(ball, ell)


def parse(text: str, host: graph.Graph, raw: bool = False) -> Divisor:
    """Parse the divisor file.

    Each non-comment line is ``<vertex> <integer>`` giving ℓ(x) or (in the raw mode) ``<vertex> <p>/<q>`` giving the
    value which must be a multiple of the vertex quantum.

    Args:
        text: Document content.
        host: Graph the divisor lives on.
        raw: Interpret the numbers as raw rational values.

    Returns: Divisor instance.
    """
    entries: typing.Dict[graph.Vertex, graph.Rational] = dict()
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0].startswith('#'):
            continue
        try:
            if len(fields) != 2:
                raise error.Syntax(f'Unexpected statement: {line.strip()}')
            vertex = parser.vertex(fields[0])
            if vertex in entries:
                raise error.Syntax(f'Duplicate vertex {vertex}')
            value = parser.rational(fields[1])
            if not raw and value.denominator != 1:
                raise error.Syntax(f'Non-integer multiplier {fields[1]} (use the raw mode for values)')
            entries[vertex] = value
        except error.Syntax as err:
            raise error.Syntax(f'Line {lineno}: {err}') from err
    host.subset(entries)
    if raw:
        return Divisor.from_values(host, entries)
    return Divisor(host, {v: int(e) for v, e in entries.items()})


def dumps(divisor: Divisor) -> str:
    """Serialize the divisor multipliers (zero coefficients omitted)."""
    return ''.join(f'{x} {v}\n' for x, v in zip(divisor.graph.vertices, divisor.ell) if v)

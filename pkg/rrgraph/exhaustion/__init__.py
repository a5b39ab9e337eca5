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
Ball exhaustions of infinite weighted graph families.
"""
import collections
import logging
import types
import typing

import joblib

from rrgraph import conf, error, graph, spectral
from rrgraph.spectral import threshold

from .family import Family, Lollipop, RayDoubleExp, RayGeometric, TreeDoubleExp  # noqa: F401

LOGGER = logging.getLogger(__name__)


class Ball(collections.namedtuple('Ball', 'graph, radius, boundary, ambient')):
    """Metric ball G_n of an infinite family with the ambient masses of its vertices.

    Attributes:
        graph: The induced finite graph (based at v0).
        radius: Ball radius n.
        boundary: Shell S_n vertices.
        ambient: Ambient mass m(x) (using the generator ring beyond the radius).
    """

    @property
    def rho(self) -> graph.Rational:
        """The ρ_n = max_{x ∈ S_n} (1 - m₋(x)/m(x)) escape probability."""
        inward = self.graph.transition().m_minus
        return max(1 - inward[x] / self.ambient[x] for x in self.boundary)

    @property
    def shell(self) -> graph.Rational:
        """Ambient mass m(S_n) of the boundary."""
        return sum((self.ambient[x] for x in self.boundary), graph.Rational(0))

    @property
    def lightest(self) -> graph.Rational:
        """The min_{x ∈ V_n} m(x)."""
        return min(self.ambient.values())

    @property
    def volume(self) -> graph.Rational:
        """Induced total mass m_n(V_n)."""
        return self.graph.invariants.volume


def _neighbors(family: Family, vertex: graph.Vertex) -> typing.Mapping[graph.Vertex, graph.Rational]:
    """Validated generator output."""
    result = dict()
    for neighbor, weight in family.neighbors(vertex):
        weight = graph.Rational(weight)
        if neighbor == vertex:
            raise error.Invalid(f'Generator {family} produced a loop at {vertex}')
        if weight <= 0:
            raise error.Invalid(f'Generator {family} produced nonpositive weight {weight} at {vertex}')
        if neighbor in result:
            raise error.Invalid(f'Generator {family} repeated neighbor {neighbor} of {vertex}')
        result[neighbor] = weight
    if not result:
        raise error.Invalid(f'Generator {family} produced isolated vertex {vertex}')
    return result


def build_ball(family: Family, radius: int) -> Ball:
    """Materialize the radius-n ball by breadth-first expansion from the base.

    Args:
        family: Infinite graph family.
        radius: Ball radius (at least 1).

    Returns: The ball instance.

    Raises:
        error.Invalid: If the radius is not positive or the generator is not symmetric.
    """
    if radius < 1:
        raise error.Invalid(f'Nonpositive ball radius: {radius}')
    distance = {family.base: 0}
    listing: typing.Dict[graph.Vertex, typing.Mapping[graph.Vertex, graph.Rational]] = dict()
    frontier = [family.base]
    for depth in range(radius + 1):
        following = []
        for vertex in frontier:
            listing[vertex] = _neighbors(family, vertex)
            for neighbor in listing[vertex]:
                if neighbor not in distance:
                    distance[neighbor] = depth + 1
                    following.append(neighbor)
        frontier = following
    edges, seen = [], set()
    for vertex, neighbors in listing.items():
        for neighbor, weight in neighbors.items():
            counterpart = listing[neighbor] if neighbor in listing else _neighbors(family, neighbor)
            if counterpart.get(vertex) != weight:
                raise error.Invalid(f'Generator {family} not symmetric on {vertex} - {neighbor}')
            pair = frozenset((vertex, neighbor))
            if neighbor in listing and pair not in seen:
                seen.add(pair)
                edges.append((vertex, neighbor, weight))
    ball = graph.Graph(edges, family.base)
    ambient = types.MappingProxyType({x: sum(listing[x].values(), graph.Rational(0)) for x in ball.vertices})
    boundary = tuple(x for x in ball.vertices if distance[x] == radius)
    volume = family.volume
    if volume is not None and sum(ambient.values(), graph.Rational(0)) > volume:
        raise error.Invalid(f'Ball of radius {radius} exceeds the declared volume of {family}')
    LOGGER.debug('Built ball of radius %d with %d vertices on %s', radius, len(ball), family)
    return Ball(ball, radius, boundary, ambient)


class Record(
    collections.namedtuple('Record', 'n, rho, gap, euler, shell, volume, lightest, ratio43, correction, rank')
):
    """Single radius entry of the exhaustion series.

    Attributes:
        n: Ball radius.
        rho: Escape probability ρ_n.
        gap: Spectral gap λ_n (None unless requested).
        euler: Euler characteristic 𝖊_n of the ball.
        shell: Ambient boundary mass m(S_n).
        volume: Induced mass m_n(V_n).
        lightest: Minimal ambient mass on the ball.
        ratio43: The ρ_n·m(S_n)/min m boundary ratio.
        correction: The ρ_n/(1 - ρ_n) constant.
        rank: Optional rank value r_n.
    """

    HEADER = ('n', 'rho_n', 'lambda_n', 'e_n', 'ratio43', 'r_n', 'm_S_n', 'm_n_V_n', 'min_m', 'rho_correction')

    def row(self, decimal: typing.Optional[int] = None) -> typing.Tuple[str, ...]:
        """Serialized record with the rationals as p/q and the floats with 12 significant digits.

        Args:
            decimal: Optional number of digits of the appended lossy decimal columns.

        Returns: Tuple of strings matching the header (plus the decimal columns).
        """
        rationals = (self.rho, self.euler, self.ratio43, self.rank, self.shell, self.volume, self.lightest)
        exact = (
            str(self.n),
            rational(self.rho),
            '' if self.gap is None else f'{self.gap:.12g}',
            rational(self.euler),
            rational(self.ratio43),
            rational(self.rank),
            rational(self.shell),
            rational(self.volume),
            rational(self.lightest),
            rational(self.correction),
        )
        if decimal is None:
            return exact
        return exact + tuple('' if v is None else f'{float(v):.{decimal}f}' for v in rationals)

    @classmethod
    def header(cls, decimal: typing.Optional[int] = None) -> typing.Tuple[str, ...]:
        """Column names (with the decimal columns if requested)."""
        if decimal is None:
            return cls.HEADER
        decimals = ('rho_n', 'e_n', 'ratio43', 'r_n', 'm_S_n', 'm_n_V_n', 'min_m')
        return cls.HEADER + tuple(f'{c}_dec' for c in decimals)


def rational(value: typing.Optional[graph.Rational]) -> str:
    """Exact p/q serialization (empty for None)."""
    if value is None:
        return ''
    value = graph.Rational(value)
    return f'{value.numerator}/{value.denominator}'


class Series(collections.namedtuple('Series', 'family, records, threshold, first_below, vanishing')):
    """Exhaustion series over the radius window.

    Attributes:
        family: The family instance.
        records: Per radius records (in the radius order).
        threshold: The Poincaré threshold A.
        first_below: First radius with ρ_n < A (None if not reached).
        vanishing: ratio43 strictly decreasing over the window.
    """


def _record(family: Family, radius: int, gaps: bool) -> Record:
    """Series entry of a single radius."""
    ball = build_ball(family, radius)
    rho = ball.rho
    gap = spectral.spectral_gap(ball.graph).gap if gaps else None
    return Record(
        radius,
        rho,
        gap,
        ball.graph.invariants.euler,
        ball.shell,
        ball.volume,
        ball.lightest,
        rho * ball.shell / ball.lightest,
        rho / (1 - rho),
        None,
    )


def exhaustion_series(
    family: Family, radius: int, gaps: bool = False, jobs: typing.Optional[int] = None
) -> Series:
    """Compute the exhaustion series for the radii 1..N.

    Args:
        family: Infinite graph family.
        radius: The maximal radius N (at least 2).
        gaps: Compute also the spectral gaps λ_n.
        jobs: Number of parallel workers (one radius per job).

    Returns: The series instance.
    """
    if radius < 2:
        raise error.Invalid(f'Series radius below 2: {radius}')
    jobs = conf.PARSER.option(conf.SECTION_RUNTIME, conf.OPT_JOBS, jobs)
    if jobs > 1:
        records = joblib.Parallel(n_jobs=jobs, prefer='threads')(
            joblib.delayed(_record)(family, n, gaps) for n in range(1, radius + 1)
        )
    else:
        records = [_record(family, n, gaps) for n in range(1, radius + 1)]
    for record in records:
        if record.ratio43 < record.rho:
            raise error.Failed(f'Boundary ratio {record.ratio43} below the escape probability {record.rho}')
    limit = threshold.poincare_threshold().A
    first = next((r.n for r in records if r.rho < limit), None)
    vanishing = all(a.ratio43 > b.ratio43 for a, b in zip(records, records[1:]))
    LOGGER.info(
        'Exhaustion series of %s up to %d: first ρ_n < A at %s, vanishing=%s', family, radius, first, vanishing
    )
    return Series(family, tuple(records), limit, first, vanishing)

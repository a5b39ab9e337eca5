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
Chip-firing reduction.

Computes the unique v0-reduced representative of a divisor class in two phases. The shell sweep first makes the
divisor nonnegative off the base (condition P1) and the weighted burning algorithm then repeatedly fires the unburnt
set until everything burns (condition P2). All the loops run on the integer rescaled chips.
"""
import collections
import enum
import itertools
import logging
import random
import types
import typing

import numpy

from rrgraph import conf, error, graph
from rrgraph.divisor import Divisor, Firing

LOGGER = logging.getLogger(__name__)


class Reduction(collections.namedtuple('Reduction', 'reduced, firing, phase1_rounds, phase2_fires, burning')):
    """Reduction outcome.

    Attributes:
        reduced: The v0-reduced divisor.
        firing: Accumulated firing function (normalized to f(v0) = 0) so that reduced = input - Δf.
        phase1_rounds: Number of shell sweeps that fired.
        phase2_fires: Number of unburnt set firings.
        burning: Burn sequence of the reduced divisor starting at the base.
    """

    @property
    def winnable(self) -> bool:
        """Reduced form is effective (also) at the base."""
        return self.reduced.effective


class Crosscheck(collections.namedtuple('Crosscheck', 'reduced, brute, bound')):
    """Agreement report of the two winnability modes."""

    @property
    def agree(self) -> bool:
        """Both modes returned the same verdict."""
        return self.reduced == self.brute


class Frame(collections.namedtuple('Frame', 'adjacency, distance, shells, base')):
    """Picklable integer view of a graph around a base vertex.

    Attributes:
        adjacency: Per vertex tuple of (neighbor index, integer weight) pairs.
        distance: Per vertex distance from the base.
        shells: Vertex indices grouped by the distance.
        base: Base vertex index.
    """

    @classmethod
    def of(cls, host: graph.Graph, base: typing.Optional[graph.Vertex] = None) -> 'Frame':
        """Frame of the graph around the given base."""
        profile = host.metric(base)
        return cls(
            host.integral.adjacency,
            tuple(profile.distance[v] for v in host.vertices),
            tuple(tuple(host.index(v) for v in s) for s in profile.shells),
            host.index(profile.base),
        )


class Chips:
    """Mutable integer chip configuration with the fire bookkeeping."""

    def __init__(self, frame: Frame, chips: typing.Sequence[int]):
        self.frame: Frame = frame
        self.chips: typing.List[int] = list(chips)
        self.fired: typing.List[int] = [0] * len(self.chips)

    def fire(self, members: typing.Sequence[bool], times: int) -> None:
        """Fire the vertex set the given number of times.

        Args:
            members: Membership flags of the fired set.
            times: Repetitions.
        """
        for vertex, inside in enumerate(members):
            if not inside:
                continue
            self.fired[vertex] += times
            for neighbor, weight in self.frame.adjacency[vertex]:
                if not members[neighbor]:
                    self.chips[vertex] -= times * weight
                    self.chips[neighbor] += times * weight

    def sweep(self, overshoot: int = 0) -> int:
        """Shell sweep making the chips nonnegative off the base.

        Firing the inner ball U_k = {d < k} only moves chips from the shell k-1 to the shell k so processing the
        shells outside in leaves every settled shell intact.

        Args:
            overshoot: Extra firings of each inner ball (used for probing the uniqueness).

        Returns: Number of sweeps that fired.
        """
        rounds = 0
        distance = self.frame.distance
        for radius in range(len(self.frame.shells) - 1, 0, -1):
            times = 0
            for vertex in self.frame.shells[radius]:
                if self.chips[vertex] < 0:
                    inflow = sum(w for n, w in self.frame.adjacency[vertex] if distance[n] == radius - 1)
                    times = max(times, -(self.chips[vertex] // inflow))
            times += overshoot
            if times:
                LOGGER.debug('Firing inner ball of radius %d %d times', radius - 1, times)
                self.fire([d < radius for d in distance], times)
                rounds += 1
        return rounds

    def burn(self, tiebreak: typing.Optional[typing.Sequence[int]] = None) -> typing.List[int]:
        """Weighted burning from the base.

        A vertex burns once its chips fall below the total weight connecting it to the burnt set. Candidates are
        taken in the tiebreak order (vertex order by default).

        Args:
            tiebreak: Optional priority per vertex index.

        Returns: Burn sequence (vertex indices) starting with the base.
        """
        base = self.frame.base
        if any(c < 0 for i, c in enumerate(self.chips) if i != base):
            raise error.Invalid('Burning requires nonnegative values off the base')
        priority = tiebreak or range(len(self.chips))
        heat = [0] * len(self.chips)
        burnt = [False] * len(self.chips)
        queued = [False] * len(self.chips)
        sequence = list()
        candidates = [(priority[base], base)]
        queued[base] = True
        while candidates:
            candidates.sort(reverse=True)
            _, vertex = candidates.pop()
            burnt[vertex] = True
            sequence.append(vertex)
            for neighbor, weight in self.frame.adjacency[vertex]:
                if burnt[neighbor]:
                    continue
                heat[neighbor] += weight
                if not queued[neighbor] and self.chips[neighbor] < heat[neighbor]:
                    queued[neighbor] = True
                    candidates.append((priority[neighbor], neighbor))
        return sequence

    def settle(self, tiebreak: typing.Optional[typing.Sequence[int]] = None) -> typing.Tuple[int, typing.List[int]]:
        """Fire the unburnt sets until everything burns.

        Each round fires the unburnt set as many times as it stays legal.

        Args:
            tiebreak: Optional burning priority.

        Returns: Number of set firings and the final burn sequence.
        """
        fires = 0
        adjacency = self.frame.adjacency
        while True:
            sequence = self.burn(tiebreak)
            if len(sequence) == len(self.chips):
                return fires, sequence
            unburnt = [True] * len(self.chips)
            for vertex in sequence:
                unburnt[vertex] = False
            times = min(
                self.chips[v] // outflow
                for v, outflow in (
                    (v, sum(w for n, w in adjacency[v] if not unburnt[n])) for v in range(len(self.chips)) if unburnt[v]
                )
                if outflow > 0
            )
            self.fire(unburnt, times)
            fires += times

    @property
    def winnable(self) -> bool:
        """Reduced chips test (valid once settled)."""
        return self.chips[self.frame.base] >= 0

    def firing(self, host: graph.Graph, normalize: bool = True) -> Firing:
        """The accumulated firing function."""
        shift = self.fired[self.frame.base] if normalize else 0
        return types.MappingProxyType({v: f - shift for v, f in zip(host.vertices, self.fired)})


def make_nonneg_off_base(
    divisor: Divisor, base: typing.Optional[graph.Vertex] = None, overshoot: int = 0
) -> typing.Tuple[Divisor, Firing]:
    """Equivalent divisor satisfying the P1 condition (nonnegative off the base).

    Args:
        divisor: Input divisor.
        base: Reference vertex (defaults to the graph base).
        overshoot: Extra firings of each inner ball.

    Returns: The P1 divisor and the (raw, not normalized) firing function applied.
    """
    state = Chips(Frame.of(divisor.graph, base), divisor.chips)
    state.sweep(overshoot)
    return Divisor.from_chips(divisor.graph, state.chips), state.firing(divisor.graph, normalize=False)


def dhar_burnt_set(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    tiebreak: typing.Optional[typing.Sequence[graph.Vertex]] = None,
) -> typing.FrozenSet[graph.Vertex]:
    """The burnt set of a P1 divisor.

    Args:
        divisor: Divisor nonnegative off the base.
        base: Reference vertex (defaults to the graph base).
        tiebreak: Optional vertex sequence giving the candidate priority.

    Returns: Set of burnt vertices (the whole vertex set certifies the P2 condition).
    """
    state = Chips(Frame.of(divisor.graph, base), divisor.chips)
    return frozenset(divisor.graph.vertices[v] for v in state.burn(_priority(divisor.graph, tiebreak)))


def _priority(
    host: graph.Graph, tiebreak: typing.Optional[typing.Sequence[graph.Vertex]]
) -> typing.Optional[typing.List[int]]:
    """Per vertex index priority from the vertex tiebreak sequence."""
    if tiebreak is None:
        return None
    if sorted(tiebreak) != sorted(host.vertices):
        raise error.Invalid('Tiebreak not a permutation of the vertices')
    priority = [0] * len(host)
    for rank, vertex in enumerate(tiebreak):
        priority[host.index(vertex)] = rank
    return priority


def reduce_divisor(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    tiebreak: typing.Optional[typing.Sequence[graph.Vertex]] = None,
    overshoot: int = 0,
) -> Reduction:
    """Compute the v0-reduced divisor equivalent to the input.

    Args:
        divisor: Input divisor.
        base: Reference vertex (defaults to the graph base).
        tiebreak: Optional burning priority.
        overshoot: Extra shell sweep firings.

    Returns: Reduction outcome.
    """
    state = Chips(Frame.of(divisor.graph, base), divisor.chips)
    rounds = state.sweep(overshoot)
    fires, sequence = state.settle(_priority(divisor.graph, tiebreak))
    LOGGER.debug('Reduced %s in %d sweeps and %d fires', divisor, rounds, fires)
    return Reduction(
        Divisor.from_chips(divisor.graph, state.chips),
        state.firing(divisor.graph),
        rounds,
        fires,
        tuple(divisor.graph.vertices[v] for v in sequence),
    )


class Mode(enum.Enum):
    """Winnability test mode."""

    REDUCED = 'reduced'
    BRUTE = 'brute'

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            value = value.lower()
            for member in cls:
                if member.value == value:
                    return member
        return super()._missing_(value)


def winnable(frame: Frame, chips: typing.Sequence[int]) -> bool:
    """Reduced form test on raw chips."""
    state = Chips(frame, chips)
    state.sweep()
    state.settle()
    return state.winnable


def brute_winnable(
    divisor: Divisor, base: typing.Optional[graph.Vertex] = None, bound: typing.Optional[int] = None
) -> bool:
    """Exhaustive search for f with f(v0) = 0, |f| <= bound making D - Δf effective.

    Args:
        divisor: Divisor to be tested.
        base: Reference vertex.
        bound: Search box half-width.

    Returns: True if an effective equivalent was found within the box.
    """
    host = divisor.graph
    limit = conf.PARSER.option(conf.SECTION_REDUCTION, conf.OPT_BRUTE_MAX_VERTICES)
    if len(host) > limit:
        raise error.Structural(f'Brute force limited to {limit} vertices (got {len(host)})')
    bound = conf.PARSER.option(conf.SECTION_REDUCTION, conf.OPT_BRUTE_BOUND, bound)
    anchor = host.index(host.base if base is None else base)
    integral = host.integral
    laplacian = numpy.zeros((len(host), len(host)), dtype=numpy.int64)
    for vertex, neighbors in enumerate(integral.adjacency):
        laplacian[vertex, vertex] = integral.mass[vertex]
        for neighbor, weight in neighbors:
            laplacian[vertex, neighbor] = -weight
    free = [v for v in range(len(host)) if v != anchor]
    grid = numpy.array(list(itertools.product(range(-bound, bound + 1), repeat=len(free))), dtype=numpy.int64)
    firings = numpy.zeros((len(grid), len(host)), dtype=numpy.int64)
    firings[:, free] = grid
    outcome = numpy.array(divisor.chips, dtype=numpy.int64) - firings @ laplacian
    return bool((outcome >= 0).all(axis=1).any())


def is_winnable(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    mode: typing.Union[Mode, str] = Mode.REDUCED,
    bound: typing.Optional[int] = None,
) -> bool:
    """Test whether the divisor is equivalent to an effective one.

    Args:
        divisor: Divisor to be tested.
        base: Reference vertex for the reduction.
        mode: Reduced form criterion or the bounded brute force search.
        bound: Brute force box half-width.

    Returns: True if the linear system |D| is nonempty.
    """
    if divisor.degree < 0:
        return False
    if Mode(mode) is Mode.BRUTE:
        return brute_winnable(divisor, base, bound)
    return winnable(Frame.of(divisor.graph, base), divisor.chips)


def crosscheck(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    bound: typing.Optional[int] = None,
    escalation: typing.Optional[int] = None,
) -> Crosscheck:
    """Compare the reduced form winnability against the brute force search escalating the box on disagreement.

    Args:
        divisor: Divisor to be tested.
        base: Reference vertex.
        bound: Initial brute force bound.
        escalation: Bound used on disagreement.

    Returns: Crosscheck report (the brute force verdict at the final bound is authoritative).
    """
    bound = conf.PARSER.option(conf.SECTION_REDUCTION, conf.OPT_BRUTE_BOUND, bound)
    reduced = is_winnable(divisor, base)
    brute = is_winnable(divisor, base, Mode.BRUTE, bound)
    if brute != reduced:
        bound = conf.PARSER.option(conf.SECTION_REDUCTION, conf.OPT_BRUTE_ESCALATION, escalation)
        LOGGER.info('Winnability disagreement on %s, escalating brute force bound to %d', divisor, bound)
        brute = is_winnable(divisor, base, Mode.BRUTE, bound)
        if brute != reduced:
            LOGGER.warning('Winnability modes disagree on %s (brute bound %d)', divisor, bound)
    return Crosscheck(reduced, brute, bound)


def uniqueness_probe(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    rounds: int = 10,
    seed: typing.Optional[int] = None,
) -> bool:
    """Reduce repeatedly with randomized burning priorities and shell sweep overshoots checking the outcome is unique.

    Args:
        divisor: Divisor to be probed.
        base: Reference vertex.
        rounds: Number of randomized reductions.
        seed: Random seed.

    Returns: True if all the reductions produced the identical divisor.
    """
    generator = random.Random(conf.PARSER.option(conf.SECTION_RUNTIME, conf.OPT_SEED, seed))
    expected = reduce_divisor(divisor, base).reduced
    for _ in range(rounds):
        tiebreak = list(divisor.graph.vertices)
        generator.shuffle(tiebreak)
        outcome = reduce_divisor(divisor, base, tiebreak, generator.randint(0, 2)).reduced
        if outcome != expected:
            LOGGER.warning('Reduction of %s not unique: %s vs %s', divisor, outcome, expected)
            return False
    return True

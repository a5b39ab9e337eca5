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
Rank convergence studies along the ball exhaustions.
"""
import collections
import itertools
import logging
import math
import typing

from rrgraph import conf, error, graph, spectral
from rrgraph.divisor import Divisor, Order, firing, nu_divisor, rank, restrict_divisor

from . import Family, build_ball, exhaustion_series

LOGGER = logging.getLogger(__name__)


class Entry(collections.namedtuple('Entry', 'n, rank, corank, degree, euler, holds')):
    """Single radius of the rank series.

    Attributes:
        n: Ball radius.
        rank: r_n((D)_l).
        corank: r_n(K_n - (D)_l).
        degree: deg((D)_l).
        euler: 𝖊_n.
        holds: The finite Riemann-Roch identity holds exactly.
    """


class RankSeries(collections.namedtuple('RankSeries', 'entries, stable, stabilized, status')):
    """Rank series with its stabilization verdict.

    Attributes:
        entries: Per radius entries (truncated at the first budget overrun).
        stable: Length of the longest suffix of equal rank values.
        stabilized: The stable suffix spans at least the stabilization window.
        status: EXACT unless the budget got exceeded.
    """

    @property
    def exact(self) -> bool:
        """The finite Riemann-Roch identity held at every computed radius."""
        return all(e.holds for e in self.entries)


def _initial(family: Family, divisor: Divisor, support: int) -> Divisor:
    """The (D)_l divisor validated for its support."""
    if support < 1:
        raise error.Invalid(f'Nonpositive support radius: {support}')
    restricted = restrict_divisor(divisor, build_ball(family, support).graph)
    if restricted.support != divisor.support:
        raise error.Invalid(f'Divisor support {sorted(divisor.support)} exceeds the radius {support - 1}')
    return restricted


def rank_series(
    family: Family,
    divisor: Divisor,
    support: int,
    radius: int,
    budget: typing.Optional[int] = None,
    jobs: typing.Optional[int] = None,
    window: typing.Optional[int] = None,
) -> RankSeries:
    """Ranks r_n((D)_l) together with the per radius Riemann-Roch check for n = l..N.

    Args:
        family: Infinite graph family.
        divisor: Divisor D on any of the family balls with its support inside V_(l-1).
        support: Support radius l.
        radius: Maximal radius N.
        budget: Search node budget of each rank computation.
        jobs: Number of parallel obstruction testing workers.
        window: Stabilization window (number of consecutive equal values).

    Returns: The rank series.
    """
    if support >= radius:
        raise error.Invalid(f'Support radius {support} not below the series radius {radius}')
    window = conf.PARSER.option(conf.SECTION_EXHAUSTION, conf.OPT_STABLE_WINDOW, window)
    initial = _initial(family, divisor, support)
    entries = []
    status = rank.Status.EXACT
    for n in range(support, radius + 1):
        ball = build_ball(family, n).graph
        check = rank.rr_check(restrict_divisor(initial, ball), budget=budget, jobs=jobs)
        if check.holds is None:
            LOGGER.warning('Rank series of %s truncated at radius %d', divisor, n)
            status = rank.Status.BUDGET_EXCEEDED
            break
        if not check.holds:
            LOGGER.error('Riemann-Roch identity failed at radius %d: %s != %s', n, check.lhs, check.rhs)
        euler = ball.invariants.euler
        entries.append(Entry(n, check.rank.rank, check.corank.rank, initial.degree, euler, check.holds))
    stable = 0
    for entry in reversed(entries):
        if entry.rank != entries[-1].rank:
            break
        stable += 1
    return RankSeries(tuple(entries), stable, stable >= window, status)


class Report(
    collections.namedtuple('Report', 'series, verdict, rank, corank, euler, residual, hypothesis, tail, difference')
):
    """Riemann-Roch report of the infinite graph.

    Attributes:
        series: The underlying rank series.
        verdict: Either ``stabilized`` or ``inconclusive``.
        rank: Stabilized candidate r̂(D) (None if inconclusive).
        corank: Candidate r̂(K - D) taken at the largest radius.
        euler: Limit candidate 𝖊̂ = 𝖊_N.
        residual: The r̂(D) - r̂(K - D) - deg((D)_l) - 𝖊̂ residual (None if inconclusive).
        hypothesis: The ratio43 vanishing indicator over the window.
        tail: The deg⁺ + deg⁻ bound between (D)_l and the larger support divisor (None if not given).
        difference: Observed |r_N((D')_l') - r_N((D)_l)| (None if not given).
    """

    STABILIZED = 'stabilized'
    INCONCLUSIVE = 'inconclusive'


def infinite_rr_report(
    family: Family,
    divisor: Divisor,
    support: int,
    radius: int,
    budget: typing.Optional[int] = None,
    jobs: typing.Optional[int] = None,
    window: typing.Optional[int] = None,
    larger: typing.Optional[typing.Tuple[Divisor, int]] = None,
) -> Report:
    """Stabilization based Riemann-Roch report for the infinite family.

    Only exact finite computations are performed; the limit values are candidates read from the stabilized window.

    Args:
        family: Infinite graph family.
        divisor: Divisor D with its support inside V_(l-1).
        support: Support radius l.
        radius: Maximal radius N.
        budget: Search node budget of each rank computation.
        jobs: Number of parallel workers.
        window: Stabilization window.
        larger: Optional divisor D' with its (larger) support radius l' for the tail bound.

    Returns: The report.
    """
    series = rank_series(family, divisor, support, radius, budget, jobs, window)
    hypothesis = exhaustion_series(family, radius).vanishing
    if not hypothesis:
        LOGGER.warning('Boundary ratio of %s not vanishing over the window', family)
    tail = difference = None
    if larger is not None:
        other, extent = larger
        if extent >= radius:
            raise error.Invalid(f'Support radius {extent} not below the series radius {radius}')
        ball = build_ball(family, radius).graph
        first = restrict_divisor(_initial(family, divisor, support), ball)
        second = restrict_divisor(_initial(family, other, extent), ball)
        _, plus, minus = (second - first).split
        tail = plus + minus
        outcomes = [rank.rank(d, budget=budget, jobs=jobs) for d in (first, second)]
        if all(o.exact for o in outcomes):
            difference = abs(outcomes[1].rank - outcomes[0].rank)
            if difference > tail:
                LOGGER.error('Rank difference %s exceeds the tail bound %s', difference, tail)
    if not series.entries or not series.stabilized:
        return Report(series, Report.INCONCLUSIVE, None, None, None, None, hypothesis, tail, difference)
    last = series.entries[-1]
    residual = last.rank - last.corank - last.degree - last.euler
    LOGGER.info('Infinite Riemann-Roch report of %s: residual %s', divisor, residual)
    return Report(series, Report.STABILIZED, last.rank, last.corank, last.euler, residual, hypothesis, tail, difference)


class Probe(
    collections.namedtuple(
        'Probe',
        'cutoff, tail, deficiency, minimum, rank, agree, nonspecial, pairs, pointwise, bounded, strict, violations',
    )
):
    """Order consistency probe outcome.

    Attributes:
        cutoff: The N(ε) radius.
        tail: Mass m(V_N^c) of the probe ball outside V_N.
        deficiency: Per order minimum of deg⁺(D' - ν_O) over the class of D.
        minimum: Minimum over all the orders.
        rank: The order-free rank of D.
        agree: The minimum equals the rank plus the global quantum.
        nonspecial: Every ν_O has the degree -𝖊 and no effective equivalent.
        pairs: Number of the distinct order pairs agreeing on V_N.
        pointwise: All pairs satisfy |ν_O(x) - ν_O'(x)| ≤ m(x) at every vertex.
        bounded: All pairs satisfy deg⁺ + deg⁻ of ν_O - ν_O' ≤ 2m(V_N^c).
        strict: All pairs satisfy the deg⁺ + deg⁻ of ν_O - ν_O' < m(V_N^c) estimate.
        violations: Number of pairs failing the strict estimate.
    """


def cutoff(family: Family, epsilon: graph.Rational) -> int:
    """The least N with the declared tail mass m(V ∖ V_N) below ε."""
    epsilon = graph.Rational(epsilon)
    if epsilon <= 0:
        raise error.Invalid(f'Nonpositive epsilon: {epsilon}')
    if family.tail(0) is None:
        raise error.Invalid(f'Family {family} declares no tail mass')
    radius = 0
    while family.tail(radius) >= epsilon:
        radius += 1
    return radius


def order_consistency_probe(
    family: Family,
    radius: int,
    epsilon: graph.Rational,
    divisor: typing.Optional[Divisor] = None,
    budget: typing.Optional[int] = None,
) -> Probe:
    """Small ball probe of the order restriction estimates.

    The orders of the ball are grouped by their restriction to V_N and every distinct pair within a group gets its
    ν difference measured against the tail mass.

    Args:
        family: Infinite graph family.
        radius: The probe ball radius.
        epsilon: Tail mass bound defining N(ε).
        divisor: Divisor on the probe ball (defaults to zero).
        budget: Search node budget.

    Returns: The probe outcome.
    """
    ball = build_ball(family, radius).graph
    limit = conf.PARSER.option(conf.SECTION_ORDERS, conf.OPT_PROBE_MAX_VERTICES)
    if len(ball) > limit:
        raise error.Structural(f'Order probe limited to {limit} vertices (got {len(ball)})')
    divisor = Divisor.zero(ball) if divisor is None else restrict_divisor(divisor, ball)
    budget = rank.Budget.ensure(budget)
    level = cutoff(family, epsilon)
    inner = frozenset(ball.profile.ball(level))
    mass = ball.invariants.m
    tail = sum((mass[x] for x in ball.vertices if x not in inner), graph.Rational(0))
    deficiency, nonspecial = dict(), True
    groups: typing.Dict[Order, typing.List[Divisor]] = collections.defaultdict(list)
    for order in Order.all(ball):
        deficiency[order] = rank.order_deficiency(divisor, order, budget)
        nu = nu_divisor(ball, order)
        nonspecial &= rank.is_nonspecial(nu)
        groups[Order(v for v in order if v in inner)].append(nu)
    pairs = violations = 0
    pointwise = bounded = True
    for members in groups.values():
        for left, right in itertools.combinations(members, 2):
            difference = left - right
            _, plus, minus = difference.split
            pairs += 1
            pointwise &= all(abs(v) <= mass[x] for x, v in difference.values.items())
            bounded &= plus + minus <= 2 * tail
            violations += plus + minus >= tail
    minimum = min(deficiency.values())
    outcome = rank.rank(divisor, budget=budget)
    agree = outcome.exact and minimum == outcome.rank + ball.invariants.i_gcd
    if not (pointwise and bounded and nonspecial):
        LOGGER.error('Order pair estimate exceeded on %s', family)
    if violations:
        LOGGER.warning('Strict tail estimate failed on %d of %d order pairs of %s', violations, pairs, family)
    strict = not violations
    return Probe(
        level, tail, deficiency, minimum, outcome.rank, agree, nonspecial, pairs, pointwise, bounded, strict, violations
    )


def minimizer_ratio(
    family: Family, divisor: Divisor, support: int, radius: int
) -> typing.Tuple[float, graph.Rational, typing.Optional[float]]:
    """Diagnostic ratio of the reducing firing norm against the displacement size.

    Args:
        family: Infinite graph family.
        divisor: Divisor D with its support inside V_(l-1).
        support: Support radius l.
        radius: Ball radius n.

    Returns: Triple of ‖f - mean‖_μ, deg⁺ + deg⁻ of the displacement and their ratio (None for zero displacement).
    """
    ball = build_ball(family, radius).graph
    initial = restrict_divisor(_initial(family, divisor, support), ball)
    reduction = firing.reduce_divisor(initial)
    mass = ball.invariants.m
    mean = sum((reduction.firing[x] * mass[x] for x in ball.vertices), graph.Rational(0)) / ball.invariants.volume
    spread = math.sqrt(spectral.norm(ball, {x: reduction.firing[x] - mean for x in ball.vertices}))
    _, plus, minus = (reduction.reduced - initial).split
    size = plus + minus
    return spread, size, (spread / float(size) if size else None)

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
Rank of divisors and the Riemann-Roch identity.

The rank is computed through the obstruction characterization: r(D) < s iff some effective E of degree s leaves
D - E without an effective equivalent. The scan runs over the degrees s = 0, i, 2i, ... (i being the global quantum)
skipping the degrees no effective divisor realizes.
"""
import collections
import enum
import logging
import math
import typing

import joblib

from rrgraph import conf, error, graph
from rrgraph.divisor import Divisor, Order, canonical, firing, nu_divisor

LOGGER = logging.getLogger(__name__)


class Budget:
    """Search node counter raising the Exhausted error once the limit is crossed.

    Args:
        limit: Maximal number of nodes (defaults to the configured budget).
    """

    def __init__(self, limit: typing.Optional[int] = None):
        self.limit: int = conf.PARSER.option(conf.SECTION_RANK, conf.OPT_BUDGET, limit)
        self.spent: int = 0

    def __repr__(self):
        return f'Budget[{self.spent}/{self.limit}]'

    def charge(self, nodes: int = 1) -> None:
        """Account for the search nodes.

        Args:
            nodes: Number of nodes to be charged.

        Raises:
            error.Exhausted: If the limit got exceeded.
        """
        self.spent += nodes
        if self.spent > self.limit:
            raise error.Exhausted(f'Search budget of {self.limit} nodes exceeded')

    @classmethod
    def ensure(cls, budget: typing.Optional[typing.Union['Budget', int]]) -> 'Budget':
        """Budget instance from the optional limit."""
        return budget if isinstance(budget, Budget) else cls(budget)


@enum.unique
class Status(enum.Enum):
    """Rank computation status."""

    EXACT = 'exact'
    BUDGET_EXCEEDED = 'budget_exceeded'

    def __repr__(self):
        return f'<{self.value}>'


class Rank(collections.namedtuple('Rank', 'rank, k, obstruction, tested_count, status')):
    """Rank outcome.

    Attributes:
        rank: The rank value k·i_gcd (lower bound of it when the budget got exceeded).
        k: Integer multiple of the global quantum (at least -1).
        obstruction: Effective divisor of minimal degree without the effective equivalent of D - E.
        tested_count: Number of winnability tests performed.
        status: Computation status.
    """

    @property
    def exact(self) -> bool:
        """The computation completed within the budget."""
        return self.status is Status.EXACT


class Check(collections.namedtuple('Check', 'lhs, rhs, holds, rank, corank')):
    """Riemann-Roch check outcome r(D) - r(K - D) = deg(D) + 𝖊.

    Attributes:
        lhs: Rank difference (None when unknown).
        rhs: Degree plus the Euler characteristic.
        holds: Exact equality (None when unknown).
        rank: Rank outcome of D.
        corank: Rank outcome of K - D.
    """


def compositions(
    quanta: typing.Sequence[int], target: int, budget: Budget
) -> typing.Iterator[typing.Tuple[int, ...]]:
    """Depth-first bounded knapsack over the integer quanta.

    Vertices are visited in the descending order of their quanta trying the largest multiplicity first. Branches
    whose remainder is not divisible by the gcd of the remaining quanta are pruned.

    Args:
        quanta: Integer quantum per vertex.
        target: Total integer value to compose.
        budget: Search node budget.

    Returns: Iterator of multiplier tuples (in vertex order).
    """
    order = sorted(range(len(quanta)), key=lambda v: (-quanta[v], v))
    suffix = [0] * (len(order) + 1)
    for position in reversed(range(len(order))):
        suffix[position] = math.gcd(suffix[position + 1], quanta[order[position]])
    ell = [0] * len(quanta)

    def descend(position: int, remainder: int) -> typing.Iterator[typing.Tuple[int, ...]]:
        budget.charge()
        if remainder == 0:
            yield tuple(ell)
            return
        if position == len(order) or remainder % suffix[position]:
            return
        vertex = order[position]
        for count in range(remainder // quanta[vertex], -1, -1):
            ell[vertex] = count
            yield from descend(position + 1, remainder - count * quanta[vertex])
        ell[vertex] = 0

    return descend(0, target)


def _level(host: graph.Graph, degree: graph.Rational) -> int:
    """Integer rescaled degree validated to be a nonnegative multiple of the global quantum."""
    if degree < 0 or (degree / host.invariants.i_gcd).denominator != 1:
        raise error.Invalid(f'Degree {degree} not a nonnegative multiple of {host.invariants.i_gcd}')
    return int(degree * host.integral.scale)


def enumerate_effective(
    host: graph.Graph, degree: graph.Rational, budget: typing.Optional[typing.Union[Budget, int]] = None
) -> typing.List[Divisor]:
    """All effective divisors of the given degree.

    Args:
        host: Graph instance.
        degree: Nonnegative multiple of the global quantum.
        budget: Search node budget.

    Returns: List of the effective divisors (in the enumeration order).
    """
    target = _level(host, graph.Rational(degree))
    return [Divisor(host, e) for e in compositions(host.integral.quantum, target, Budget.ensure(budget))]


def _listing(
    quanta: typing.Sequence[int], target: int, budget: Budget
) -> typing.Tuple[typing.List[typing.Tuple[int, ...]], typing.List[int], int]:
    """Eager compositions with the node cost of each one charged to a private budget of the remaining allowance.

    Returns: Triple of the candidates, their individual node costs and the cost of the traversal after the last one
    (the latter exceeds the allowance when the listing got cut by the budget).
    """
    private = Budget(budget.limit - budget.spent)
    candidates, costs, mark = [], [], 0
    try:
        for ell in compositions(quanta, target, private):
            candidates.append(ell)
            costs.append(private.spent - mark)
            mark = private.spent
    except error.Exhausted:
        pass
    return candidates, costs, private.spent - mark


def _obstructs(frame: firing.Frame, chips: typing.Sequence[int]) -> bool:
    """The residual chips do not admit an effective equivalent."""
    return sum(chips) < 0 or not firing.winnable(frame, chips)


def rank(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    budget: typing.Optional[typing.Union[Budget, int]] = None,
    jobs: typing.Optional[int] = None,
) -> Rank:
    """Compute the rank of the divisor.

    Args:
        divisor: Divisor to be ranked.
        base: Reference vertex for the reductions.
        budget: Search node budget.
        jobs: Number of parallel workers testing the obstructions of one degree.

    Returns: Rank outcome.
    """
    host = divisor.graph
    quantum = host.invariants.i_gcd
    if divisor.degree < 0:
        return Rank(-quantum, -1, Divisor.zero(host), 0, Status.EXACT)
    budget = Budget.ensure(budget)
    jobs = conf.PARSER.option(conf.SECTION_RUNTIME, conf.OPT_JOBS, jobs)
    frame = firing.Frame.of(host, base)
    chips = divisor.chips
    step = int(quantum * host.integral.scale)
    level = tested = 0
    try:
        while True:
            obstruction = None
            if jobs > 1:
                candidates, costs, trailing = _listing(host.integral.quantum, level * step, budget)
                residuals = [
                    tuple(c - e * q for c, e, q in zip(chips, ell, host.integral.quantum)) for ell in candidates
                ]
                verdicts = joblib.Parallel(n_jobs=jobs)(joblib.delayed(_obstructs)(frame, r) for r in residuals)
                # replay the serial accounting up to the first obstruction
                for ell, cost, verdict in zip(candidates, costs, verdicts):
                    budget.charge(cost)
                    budget.charge()
                    tested += 1
                    if verdict:
                        obstruction = ell
                        break
                else:
                    budget.charge(trailing)
            else:
                for ell in compositions(host.integral.quantum, level * step, budget):
                    budget.charge()
                    tested += 1
                    residual = tuple(c - e * q for c, e, q in zip(chips, ell, host.integral.quantum))
                    if _obstructs(frame, residual):
                        obstruction = ell
                        break
            if obstruction is not None:
                LOGGER.debug('Obstruction of %s found at degree %s', divisor, level * quantum)
                return Rank((level - 1) * quantum, level - 1, Divisor(host, obstruction), tested, Status.EXACT)
            level += 1
    except error.Exhausted as err:
        LOGGER.warning('Rank of %s incomplete (%s); verified up to degree %s', divisor, err, (level - 1) * quantum)
        return Rank((level - 1) * quantum, level - 1, None, tested, Status.BUDGET_EXCEEDED)


def order_deficiency(
    divisor: Divisor,
    order: Order,
    budget: typing.Optional[typing.Union[Budget, int]] = None,
    cap: typing.Optional[graph.Rational] = None,
) -> typing.Optional[graph.Rational]:
    """The min deg⁺(D' - ν_O) over the divisors D' equivalent to D.

    With W = D - ν_O the minimum equals deg(W) plus the least degree of an effective E making W + E winnable.

    Args:
        divisor: Divisor D.
        order: Total order O.
        budget: Search node budget.
        cap: Give up (returning None) once the candidate value reaches this bound.

    Returns: The minimum or None if not below the cap.
    """
    host = divisor.graph
    budget = Budget.ensure(budget)
    frame = firing.Frame.of(host)
    quantum = host.invariants.i_gcd
    step = int(quantum * host.integral.scale)
    residual = divisor - nu_divisor(host, order)
    level = 0
    while cap is None or residual.degree + level * quantum < cap:
        if any(
            not _obstructs(frame, tuple(c + e * q for c, e, q in zip(residual.chips, ell, host.integral.quantum)))
            for ell in compositions(host.integral.quantum, level * step, budget)
        ):
            return residual.degree + level * quantum
        level += 1
    return None


def rank_via_orders(divisor: Divisor, budget: typing.Optional[typing.Union[Budget, int]] = None) -> graph.Rational:
    """Rank through the minimization of deg⁺(D' - ν_O) over the divisor class and all total orders.

    Args:
        divisor: Divisor to be ranked.
        budget: Search node budget.

    Returns: The rank value.
    """
    host = divisor.graph
    limit = conf.PARSER.option(conf.SECTION_ORDERS, conf.OPT_MAX_VERTICES)
    if len(host) > limit:
        raise error.Structural(f'Order enumeration limited to {limit} vertices (got {len(host)})')
    budget = Budget.ensure(budget)
    best: typing.Optional[graph.Rational] = None
    for order in Order.all(host):
        value = order_deficiency(divisor, order, budget, best)
        if value is not None:
            LOGGER.debug('Order %s improves the minimum to %s', order, value)
            best = value
    return best - host.invariants.i_gcd


def rr_check(
    divisor: Divisor,
    base: typing.Optional[graph.Vertex] = None,
    budget: typing.Optional[int] = None,
    jobs: typing.Optional[int] = None,
) -> Check:
    """Evaluate both sides of the Riemann-Roch identity r(D) - r(K - D) = deg(D) + 𝖊.

    Args:
        divisor: Divisor to be checked.
        base: Reference vertex.
        budget: Search node budget (applied to each of the two ranks).
        jobs: Number of parallel workers.

    Returns: Check outcome.
    """
    host = divisor.graph
    primary = rank(divisor, base, budget, jobs)
    dual = rank(canonical(host) - divisor, base, budget, jobs)
    rhs = divisor.degree + host.invariants.euler
    if not (primary.exact and dual.exact):
        return Check(None, rhs, None, primary, dual)
    lhs = primary.rank - dual.rank
    if lhs != rhs:
        LOGGER.warning('Riemann-Roch identity violated for %s: %s != %s', divisor, lhs, rhs)
    return Check(lhs, rhs, lhs == rhs, primary, dual)


def rr_order(divisor: Divisor, base: typing.Optional[graph.Vertex] = None) -> typing.Tuple[Order, bool]:
    """Total order O such that exactly one of |D| and |ν_O - D| is empty.

    The order is the burn sequence of the reduced representative. If D is not winnable its reduced form is dominated
    by ν_O of that order so ν_O - D is winnable. If D is winnable then any order qualifies since ν_O has no effective
    equivalent.

    Args:
        divisor: Divisor to be witnessed.
        base: Reference vertex.

    Returns: The order and the winnability of D.
    """
    reduction = firing.reduce_divisor(divisor, base)
    return Order(reduction.burning), reduction.winnable


def is_nonspecial(divisor: Divisor, base: typing.Optional[graph.Vertex] = None) -> bool:
    """Test the divisor has the degree -𝖊 and no effective equivalent."""
    return divisor.degree == -divisor.graph.invariants.euler and not firing.is_winnable(divisor, base)

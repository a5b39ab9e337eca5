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
Rank unit tests.
"""
# pylint: disable=no-self-use
import fractions
import random

import pytest

from rrgraph import divisor, error, graph
from rrgraph.divisor import Divisor, Order, firing, rank

F = fractions.Fraction


class TestEnumeration:
    """Effective divisor enumeration unit tests."""

    def test_compositions(self):
        """Test the bounded knapsack ordering."""
        assert list(rank.compositions((3, 1, 2), 3, rank.Budget())) == [(1, 0, 0), (0, 1, 1), (0, 3, 0)]
        assert not list(rank.compositions((2, 4), 3, rank.Budget()))

    def test_effective(self, ex1: graph.Graph):
        """Test the effective divisors of a degree."""
        assert rank.enumerate_effective(ex1, F(1, 3)) == [Divisor(ex1, {'c': 1}), Divisor(ex1, {'b': 2})]
        assert rank.enumerate_effective(ex1, 0) == [Divisor.zero(ex1)]
        with pytest.raises(error.Invalid):
            rank.enumerate_effective(ex1, F(1, 4))
        with pytest.raises(error.Invalid):
            rank.enumerate_effective(ex1, F(-1, 6))

    def test_budget(self):
        """Test the budget accounting."""
        budget = rank.Budget(2)
        budget.charge(2)
        with pytest.raises(error.Exhausted):
            budget.charge()
        assert rank.Budget.ensure(budget) is budget
        assert rank.Budget.ensure(5).limit == 5


class TestRank:
    """Rank unit tests."""

    def test_ex1(self, ex1: graph.Graph):
        """Test the hand computed rank."""
        outcome = rank.rank(Divisor(ex1, {'b': 1}))
        assert outcome.rank == F(1, 6)
        assert outcome.k == 1
        assert outcome.obstruction == Divisor(ex1, {'c': 1})
        assert outcome.tested_count == 3
        assert outcome.exact

    def test_negative(self, ex1: graph.Graph):
        """Test the negative degree shortcut."""
        outcome = rank.rank(Divisor(ex1, {'a': -1}))
        assert outcome.rank == F(-1, 6)
        assert outcome.k == -1
        assert outcome.exact

    def test_exceeded(self, ex1: graph.Graph):
        """Test the budget exhaustion."""
        outcome = rank.rank(Divisor(ex1, {'b': 1}), budget=1)
        assert outcome.status is rank.Status.BUDGET_EXCEEDED
        assert not outcome.exact
        assert outcome.obstruction is None

    def test_parallel(self, ex1: graph.Graph):
        """Test the parallel obstruction testing."""
        instance = Divisor(ex1, {'a': 1, 'b': 1})
        assert rank.rank(instance, jobs=2).rank == rank.rank(instance, jobs=1).rank

    def test_parallel_budget(self, ex1: graph.Graph):
        """Test the parallel search spends the budget exactly as the serial one."""
        instance = Divisor(ex1, {'a': 1, 'b': 1})
        for limit in (1, 2, 3, 5, 8, 13, 21, 34):
            serial, parallel = rank.Budget(limit), rank.Budget(limit)
            expected = rank.rank(instance, budget=serial, jobs=1)
            outcome = rank.rank(instance, budget=parallel, jobs=2)
            assert outcome == expected
            if expected.exact:
                assert parallel.spent == serial.spent

    def test_monotonic(self, ex1: graph.Graph, triangle: graph.Graph):
        """Test r(D) <= r(D + E) <= r(D) + deg(E) for effective E."""
        rng = random.Random(3)
        for host in (ex1, triangle):
            for _ in range(50):
                instance = Divisor(host, [rng.randint(-2, 2) for _ in host.vertices])
                extra = Divisor.unit(host, rng.choice(host.vertices), rng.randint(1, 2))
                lower, upper = rank.rank(instance).rank, rank.rank(instance + extra).rank
                assert lower <= upper <= lower + extra.degree


class TestRiemannRoch:
    """Riemann-Roch identity unit tests."""

    def test_ex1(self, ex1: graph.Graph):
        """Test the hand computed identity."""
        check = rank.rr_check(Divisor(ex1, {'b': 1}))
        assert check.rank.rank == F(1, 6)
        assert check.corank.rank == F(-1, 6)
        assert check.lhs == check.rhs == F(1, 3)
        assert check.holds

    def test_incomplete(self, ex1: graph.Graph):
        """Test the undecided check."""
        check = rank.rr_check(Divisor(ex1, {'b': 1}), budget=1)
        assert check.lhs is None
        assert check.holds is None
        assert check.rhs == F(1, 3)

    def test_random(self, generator):
        """Test the identity on random graphs."""
        rng = random.Random(11)
        decided = 0
        for _ in range(200):
            host = generator(rng, rng.randint(3, 6), rng.randint(0, 1))
            check = rank.rr_check(Divisor(host, [rng.randint(-2, 2) for _ in host.vertices]), budget=3000)
            if check.holds is None:
                continue
            decided += 1
            assert check.holds
        assert decided > 0


class TestOrders:
    """Total order unit tests."""

    def test_nonspecial(self, ex1: graph.Graph, triangle: graph.Graph):
        """Test the order divisors are nonspecial."""
        for host in (ex1, triangle):
            for order in Order.all(host):
                nu = divisor.nu_divisor(host, order)
                assert rank.is_nonspecial(nu)
                assert rank.rank(nu).rank == -host.invariants.i_gcd

    def test_nonspecial_duality(self, generator):
        """Test r(D) = -i_gcd iff r(K - D) = -i_gcd on the degree -𝖊 divisors."""
        rng = random.Random(23)
        decided = 0
        for _ in range(100):
            host = generator(rng, rng.randint(2, 4), rng.randint(0, 1))
            quantum = host.invariants.i
            order = Order(rng.sample(list(host.vertices), len(host)))
            source, target = rng.sample(list(host.vertices), 2)
            step = rng.randint(-1, 2) * quantum[source] * quantum[target] / graph.gcd(quantum[source], quantum[target])
            shift = Divisor(host, {source: step / quantum[source], target: -step / quantum[target]})
            instance = divisor.nu_divisor(host, order) + shift
            assert instance.degree == -host.invariants.euler
            lower = rank.rank(instance, budget=3000)
            upper = rank.rank(divisor.canonical(host) - instance, budget=3000)
            if not (lower.exact and upper.exact):
                continue
            decided += 1
            floor = -host.invariants.i_gcd
            assert (lower.rank == floor) == (upper.rank == floor)
            assert rank.is_nonspecial(instance) == (lower.rank == floor)
        assert decided > 0

    def test_deficiency(self, ex1: graph.Graph):
        """Test the order deficiency."""
        instance = Divisor(ex1, {'b': 1})
        assert rank.order_deficiency(instance, Order('abc')) == F(1, 3)
        assert rank.order_deficiency(instance, Order('abc'), cap=F(1, 3)) is None

    def test_via_orders(self, ex1: graph.Graph, triangle: graph.Graph):
        """Test the order based rank against the enumeration."""
        rng = random.Random(5)
        for host in (ex1, triangle):
            for _ in range(10):
                instance = Divisor(host, [rng.randint(-2, 2) for _ in host.vertices])
                assert rank.rank_via_orders(instance) == rank.rank(instance).rank

    def test_via_orders_random(self, generator):
        """Test the order based rank against the enumeration on random graphs."""
        rng = random.Random(29)
        for _ in range(50):
            host = generator(rng, rng.randint(2, 4), rng.randint(0, 1))
            instance = Divisor(host, [rng.randint(-2, 2) for _ in host.vertices])
            assert rank.rank_via_orders(instance) == rank.rank(instance).rank

    def test_limit(self, generator):
        """Test the order enumeration size limit."""
        host = generator(random.Random(0), 7)
        with pytest.raises(error.Structural):
            rank.rank_via_orders(Divisor.zero(host))

    def test_rr_order(self, ex1: graph.Graph, generator):
        """Test exactly one of D and ν_O - D is winnable."""
        rng = random.Random(9)
        hosts = [ex1] + [generator(rng, rng.randint(2, 5)) for _ in range(10)]
        for host in hosts:
            instance = Divisor(host, [rng.randint(-2, 2) for _ in host.vertices])
            order, winnable = rank.rr_order(instance)
            order.validate(host)
            assert winnable == firing.is_winnable(instance)
            assert firing.is_winnable(divisor.nu_divisor(host, order) - instance) != winnable

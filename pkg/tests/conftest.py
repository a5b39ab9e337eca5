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
Global rrgraph unit tests fixtures.
"""
# pylint: disable=no-self-use
import fractions
import random
import typing

import pytest

from rrgraph import exhaustion, graph

Generator = typing.Callable[[random.Random, int], graph.Graph]


@pytest.fixture(scope='session')
def ex1() -> graph.Graph:
    """The a - b - c path with the 1/2 and 1/3 weights."""
    return graph.Graph([('a', 'b', fractions.Fraction(1, 2)), ('b', 'c', fractions.Fraction(1, 3))], 'a')


@pytest.fixture(scope='session')
def ex1_text() -> str:
    """Graph file content of the ex1 graph."""
    return '# ex1\nbase a\nedge a b 1/2\nedge b c 1/3\n'


@pytest.fixture(scope='session')
def triangle() -> graph.Graph:
    """Triangle with distinct weights."""
    return graph.Graph([('x', 'y', 1), ('y', 'z', fractions.Fraction(1, 2)), ('z', 'x', fractions.Fraction(1, 4))])


@pytest.fixture(scope='session')
def ray() -> exhaustion.Family:
    """Double exponential ray family."""
    return exhaustion.Family['ray-double-exp']()


@pytest.fixture(scope='session')
def tree() -> exhaustion.Family:
    """Double exponential binary tree family."""
    return exhaustion.Family['tree-double-exp']()


@pytest.fixture(scope='session')
def generator() -> Generator:
    """Factory of random connected graphs with the p/q weights (p, q <= 4)."""

    def weight(rng: random.Random) -> fractions.Fraction:
        return fractions.Fraction(rng.randint(1, 4), rng.randint(1, 4))

    def generate(rng: random.Random, size: int, extra: int = 1) -> graph.Graph:
        vertices = [f'v{i}' for i in range(size)]
        edges = {frozenset((vertices[i], vertices[rng.randrange(i)])) for i in range(1, size)}
        for _ in range(extra):
            source, target = rng.sample(vertices, 2)
            edges.add(frozenset((source, target)))
        return graph.Graph([(*sorted(e), weight(rng)) for e in sorted(edges, key=sorted)], 'v0')

    return generate

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
Zero extension of the ball eigenfunctions into larger balls.
"""
import collections
import logging
import typing

from rrgraph import error, exhaustion, graph, spectral

LOGGER = logging.getLogger(__name__)


class Extended(collections.namedtuple('Extended', 'lhs, rhs, slack, holds, gap, rho, volume, tail')):
    """Energy bound of the zero extended ball eigenfunction.

    Attributes:
        lhs: Energy 𝓔_N of the extension in the truncation ball.
        rhs: The m_n(V_n)λ_n + ρ_n/(1 - ρ_n)·m_n(V_n) + tail(N) bound (the custom function variant uses its own
             energy instead of the eigenvalue term).
        slack: The rhs - lhs difference.
        holds: The bound holds (within 1e-9).
        gap: The λ_n gap (None for the custom function).
        rho: The ρ_n escape probability.
        volume: Induced ball mass m_n(V_n).
        tail: The 2m(V ∖ V_N)·max ψ² allowance.
    """


def eigen_extension_probe(
    family: exhaustion.Family,
    radius: int,
    truncation: int,
    function: typing.Optional[typing.Mapping[graph.Vertex, typing.Any]] = None,
) -> Extended:
    """Extend the gap eigenfunction (or the mean-centered custom function) of the radius-n ball by zero.

    Args:
        family: Infinite graph family.
        radius: Eigenfunction ball radius n.
        truncation: Truncation ball radius N > n.
        function: Optional function on V_n replacing the eigenfunction.

    Returns: The probe outcome.
    """
    if truncation <= radius:
        raise error.Invalid(f'Truncation radius {truncation} not above {radius}')
    ball = exhaustion.build_ball(family, radius)
    outer = exhaustion.build_ball(family, truncation)
    induced = ball.graph.invariants.m
    rho = ball.rho
    correction = rho / (1 - rho)
    if function is None:
        spectrum = spectral.spectral_gap(ball.graph)
        psi = {x: graph.Rational(v) for x, v in spectrum.gap_vector.items()}
        gap = spectrum.gap
        bound = float(ball.volume) * gap + float(correction * ball.volume)
    else:
        function = {x: graph.Rational(function[x]) for x in ball.graph.vertices}
        mean = sum((function[x] * induced[x] for x in ball.graph.vertices), graph.Rational(0)) / ball.volume
        psi = {x: v - mean for x, v in function.items()}
        gap = None
        boundary = sum((psi[x] ** 2 * induced[x] for x in ball.boundary), graph.Rational(0))
        bound = float(spectral.dirichlet_energy(ball.graph, psi) + correction * boundary)
    extended = {x: psi.get(x, graph.Rational(0)) for x in outer.graph.vertices}
    lhs = float(spectral.dirichlet_energy(outer.graph, extended))
    remainder = family.tail(truncation)
    peak = max(float(v) ** 2 for v in psi.values())
    tail = 0.0 if remainder is None else 2 * float(remainder) * peak
    rhs = bound + tail
    holds = lhs <= rhs + 1e-9
    if not holds:
        LOGGER.error('Extension energy %g exceeds the bound %g on %s', lhs, rhs, family)
    return Extended(lhs, rhs, rhs - lhs, holds, gap, rho, ball.volume, tail)

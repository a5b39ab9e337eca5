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
Spectral analysis of the weighted graph Laplacians.

Energies, resolvent solves and harmonic extensions are exact rational computations; only the eigen decomposition of
the probabilistic Laplacian L = (1/m)Δ runs in floating point.
"""
import collections
import logging
import types
import typing

import numpy

from rrgraph import conf, error, graph
from rrgraph.graph import linalg
from rrgraph.spectral import jacobi

LOGGER = logging.getLogger(__name__)


class Spectrum(collections.namedtuple('Spectrum', 'eigenvalues, gap, gap_vector, residual')):
    """Spectrum of the probabilistic Laplacian.

    Attributes:
        eigenvalues: Ascending eigenvalues (starting with the kernel zero).
        gap: Smallest nonzero eigenvalue.
        gap_vector: Matching eigenfunction (μ-mean zero, μ-norm one).
        residual: Sup norm of Lψ - λψ.
    """


class Inequalities(
    collections.namedtuple(
        'Inequalities', 'interior_lhs, interior_rhs, interior_holds, escape_lhs, escape_rhs, escape_holds'
    )
):
    """Both sides of the interior energy bound and of the boundary escape bound (the latter None without a radius)."""


class Extension(collections.namedtuple('Extension', 'h, gfloor, diagnostics')):
    """Harmonic extension of the inner data with its integer part."""

    class Diagnostics(
        collections.namedtuple(
            'Diagnostics', 'harmonic, maximum, pointwise, pointwise_holds, mass, mass_bound, mass_holds'
        )
    ):
        """Extension checks.

        Attributes:
            harmonic: Laplacian of h vanishes exactly on the annulus.
            maximum: Maximum principle holds.
            pointwise: Maximum of |Δg|/m over the annulus.
            pointwise_holds: The pointwise value is at most 2.
            mass: Sum of |Δg| over the annulus.
            mass_bound: Twice the annulus mass.
            mass_holds: The mass is within its bound.
        """

        @property
        def holds(self) -> bool:
            """All the checks passed."""
            return self.harmonic and self.maximum and self.pointwise_holds and self.mass_holds


def _function(host: graph.Graph, function: typing.Mapping[graph.Vertex, typing.Any]) -> graph.Function:
    """Rational vertex function defined on all vertices."""
    missing = set(host.vertices).difference(function)
    if missing:
        raise error.Invalid(f'Function undefined on {", ".join(sorted(missing))}')
    return {v: graph.Rational(function[v]) for v in host.vertices}


def dirichlet_energy(
    host: graph.Graph,
    function: typing.Mapping[graph.Vertex, typing.Any],
    restrict: typing.Optional[typing.Iterable[graph.Vertex]] = None,
) -> graph.Rational:
    """Dirichlet energy Σ C(x,y)(f(x) - f(y))² over the (sub)graph edges.

    Args:
        host: Graph instance.
        function: Rational vertex function (only needed on the restriction if given).
        restrict: Optional vertex subset U (summing over edges inside U).

    Returns: Exact energy.
    """
    inside = host.subset(restrict) if restrict is not None else frozenset(host.vertices)
    return sum(
        (
            e.weight * (graph.Rational(function[e.source]) - graph.Rational(function[e.target])) ** 2
            for e in host.edges
            if e.source in inside and e.target in inside
        ),
        graph.Rational(0),
    )


def normalized_energy(
    host: graph.Graph,
    function: typing.Mapping[graph.Vertex, typing.Any],
    restrict: typing.Optional[typing.Iterable[graph.Vertex]] = None,
) -> graph.Rational:
    """Energy divided by the total subgraph mass m_U(V_U)."""
    inside = host.subset(restrict) if restrict is not None else frozenset(host.vertices)
    volume = sum((w for x in inside for y, w in host.neighbors(x).items() if y in inside), graph.Rational(0))
    return dirichlet_energy(host, function, inside) / volume


def norm(host: graph.Graph, function: typing.Mapping[graph.Vertex, typing.Any]) -> graph.Rational:
    """Squared L²(μ) norm."""
    invariants = host.invariants
    return sum((graph.Rational(function[x]) ** 2 * invariants.mu[x] for x in host.vertices), graph.Rational(0))


def operator(host: graph.Graph, function: typing.Mapping[graph.Vertex, typing.Any]) -> graph.Function:
    """The probabilistic Laplacian L = (1/m)Δ."""
    mass = host.invariants.m
    return {x: v / mass[x] for x, v in host.laplacian(_function(host, function)).items()}


def spectral_gap(
    host: graph.Graph, tolerance: typing.Optional[float] = None, max_sweeps: typing.Optional[int] = None
) -> Spectrum:
    """Spectrum and the spectral gap of the probabilistic Laplacian.

    The symmetric conjugate M^(-1/2)ΔM^(-1/2) has the known kernel direction √m which gets deflated exactly by the
    Householder reflection mapping it onto the first axis. The remaining block is diagonalized by Jacobi sweeps.

    Args:
        host: Connected graph.
        tolerance: Jacobi off-diagonal tolerance.
        max_sweeps: Jacobi sweep limit.

    Returns: Spectrum instance.
    """
    limit = conf.PARSER.option(conf.SECTION_SPECTRAL, conf.OPT_MAX_VERTICES)
    if len(host) > limit:
        raise error.Structural(f'Eigen solver limited to {limit} vertices (got {len(host)})')
    invariants = host.invariants
    mass = numpy.array([float(invariants.m[x]) for x in host.vertices])
    root = numpy.sqrt(mass)
    conjugate = numpy.eye(len(host))
    for edge in host.edges:
        i, j = host.index(edge.source), host.index(edge.target)
        conjugate[i, j] = conjugate[j, i] = -float(edge.weight) / (root[i] * root[j])
    kernel = root / numpy.linalg.norm(root)
    reflector = kernel.copy()
    reflector[0] += 1.0
    householder = numpy.eye(len(host)) - 2.0 * numpy.outer(reflector, reflector) / reflector.dot(reflector)
    deflated = householder @ conjugate @ householder
    values, vectors = jacobi.eigh(deflated[1:, 1:], tolerance, max_sweeps)
    gap = float(values[0])
    psi = householder @ numpy.concatenate(([0.0], vectors[:, 0])) / root
    psi /= numpy.sqrt(psi.dot(psi * mass) / mass.sum())
    leading = next((v for v in psi if abs(v) > 1e-9), 1.0)
    psi *= numpy.sign(leading)
    laplacian = numpy.diag(mass)
    for edge in host.edges:
        i, j = host.index(edge.source), host.index(edge.target)
        laplacian[i, j] = laplacian[j, i] = -float(edge.weight)
    residual = float(numpy.max(numpy.abs(laplacian @ psi / mass - gap * psi)))
    if residual > 1e-9:
        LOGGER.warning('Eigenpair residual %g on %s', residual, host)
    LOGGER.debug('Spectral gap of %s: %g', host, gap)
    return Spectrum(
        (0.0, *(float(v) for v in values)),
        gap,
        types.MappingProxyType({x: float(v) for x, v in zip(host.vertices, psi)}),
        residual,
    )


def resolvent_solve(host: graph.Graph, rhs: typing.Mapping[graph.Vertex, typing.Any]) -> graph.Function:
    """Exact 0-order resolvent solving L u = g with (u, 1)_μ = 0.

    Args:
        host: Connected graph.
        rhs: The μ-mean-zero right hand side g.

    Returns: The solution u.

    Raises:
        error.Invalid: If the right hand side is not mean zero.
    """
    rhs = _function(host, rhs)
    mass = host.invariants.m
    if sum((rhs[x] * mass[x] for x in host.vertices), graph.Rational(0)) != 0:
        raise error.Invalid('Resolvent right hand side not mean zero')
    free = [v for v in host.vertices if v != host.base]
    solution = {host.base: graph.Rational(0)}
    if free:
        position = {v: i for i, v in enumerate(free)}
        matrix = [[graph.Rational(0)] * len(free) for _ in free]
        for vertex in free:
            row = matrix[position[vertex]]
            for neighbor, weight in host.neighbors(vertex).items():
                row[position[vertex]] += weight
                if neighbor in position:
                    row[position[neighbor]] -= weight
        solution.update(zip(free, linalg.solve(matrix, [mass[v] * rhs[v] for v in free])))
    shift = sum((solution[x] * mass[x] for x in host.vertices), graph.Rational(0)) / host.invariants.volume
    return types.MappingProxyType({x: solution[x] - shift for x in host.vertices})


def inequality_probe(
    host: graph.Graph,
    subset: typing.Iterable[graph.Vertex],
    function: typing.Mapping[graph.Vertex, typing.Any],
    epsilon: graph.Rational,
    radius: typing.Optional[int] = None,
) -> Inequalities:
    """Evaluate the interior energy bound on a subgraph and (optionally) the boundary escape bound of a metric ball.

    The interior bound compares Σ_U f·(1/m)Δ_U f·μ against (ε/2)‖f‖²_μ + 𝓔(f, f)/(ε·m(V)). The escape bound
    compares Σ_{x ∈ V_n, y ∉ V_n} f(x)²C(x,y) against ρ_n·m(V)‖f‖²_μ where V_n is the ball of the given radius.

    Args:
        host: Graph instance.
        subset: Vertex subset U.
        function: Rational vertex function on all vertices.
        epsilon: Positive rational.
        radius: Optional ball radius n (around the graph base).

    Returns: Both sides of the inequalities.
    """
    epsilon = graph.Rational(epsilon)
    if epsilon <= 0:
        raise error.Invalid(f'Nonpositive epsilon: {epsilon}')
    function = _function(host, function)
    inside = host.subset(subset)
    volume = host.invariants.volume
    laplacian = host.laplacian(function, inside)
    interior_lhs = sum((function[x] * laplacian[x] for x in inside), graph.Rational(0)) / volume
    interior_rhs = epsilon / 2 * norm(host, function) + dirichlet_energy(host, function) / (epsilon * volume)
    escape_lhs = escape_rhs = escape_holds = None
    if radius is not None:
        ball = frozenset(host.profile.ball(radius))
        escape_lhs = sum(
            (function[x] ** 2 * w for x in ball for y, w in host.neighbors(x).items() if y not in ball),
            graph.Rational(0),
        )
        escape_rhs = escape(host, radius) * volume * norm(host, function)
        escape_holds = escape_lhs <= escape_rhs
    return Inequalities(interior_lhs, interior_rhs, interior_lhs <= interior_rhs, escape_lhs, escape_rhs, escape_holds)


def escape(host: graph.Graph, radius: int) -> graph.Rational:
    """The ρ_n = max_{x ∈ S_n} (1 - m₋(x)/m(x)) escape probability of the shell."""
    profile = host.profile
    if not 0 < radius <= profile.diameter:
        raise error.Invalid(f'Radius {radius} outside the graph range')
    transition = host.transition()
    mass = host.invariants.m
    return max(1 - transition.m_minus[x] / mass[x] for x in profile.shells[radius])


def harmonic_extension(
    host: graph.Graph, inner: typing.Iterable[graph.Vertex], function: typing.Mapping[graph.Vertex, int]
) -> Extension:
    """Harmonic extension of integer inner data with its integer part.

    Solves Δh = 0 on the annulus (the complement of the inner set) with h = f on the inner set exactly and takes the
    pointwise floor.

    Args:
        host: Graph instance.
        inner: Inner vertex set (typically a metric ball) strictly contained in the graph.
        function: Integer data on the inner set.

    Returns: Extension with its diagnostics.
    """
    inner = host.subset(inner)
    if not inner or len(inner) == len(host):
        raise error.Invalid('Inner set not strictly contained in the graph')
    if any(int(function[x]) != function[x] for x in inner):
        raise error.Invalid('Non-integer inner data')
    annulus = [v for v in host.vertices if v not in inner]
    position = {v: i for i, v in enumerate(annulus)}
    matrix = [[graph.Rational(0)] * len(annulus) for _ in annulus]
    rhs = [graph.Rational(0)] * len(annulus)
    for vertex in annulus:
        row = matrix[position[vertex]]
        for neighbor, weight in host.neighbors(vertex).items():
            row[position[vertex]] += weight
            if neighbor in position:
                row[position[neighbor]] -= weight
            else:
                rhs[position[vertex]] += weight * function[neighbor]
    values = {x: graph.Rational(function[x]) for x in inner}
    values.update(zip(annulus, linalg.solve(matrix, rhs)))
    h = types.MappingProxyType({x: values[x] for x in host.vertices})
    gfloor = types.MappingProxyType({x: int(v // 1) for x, v in h.items()})
    mass = host.invariants.m
    residual = host.laplacian(h)
    harmonic = all(residual[x] == 0 for x in annulus)
    bound = max(abs(graph.Rational(function[x])) for x in inner)
    maximum = all(abs(v) <= bound for v in h.values())
    floored = host.laplacian(gfloor)
    pointwise = max(abs(floored[x]) / mass[x] for x in annulus)
    total = sum((abs(floored[x]) for x in annulus), graph.Rational(0))
    limit = 2 * sum((mass[x] for x in annulus), graph.Rational(0))
    diagnostics = Extension.Diagnostics(harmonic, maximum, pointwise, pointwise <= 2, total, limit, total <= limit)
    if not diagnostics.holds:
        LOGGER.warning('Harmonic extension checks failed: %s', diagnostics)
    return Extension(h, gfloor, diagnostics)

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
Main cli frontend.
"""
# pylint: disable=no-self-argument, too-many-arguments
import csv
import math
import pathlib
import typing

from rrgraph import cli, divisor, error, exhaustion, graph, spectral
from rrgraph.divisor import firing, rank
from rrgraph.exhaustion import study
from rrgraph.graph import parser
from rrgraph.spectral import probe, threshold

PROBES = 'interior', 'escape', 'extension'
ACTIONS = 'series', 'converge', 'rr-report', 'orders', 'extension'
MODES = 'reduced', 'brute', 'crosscheck'


class Parser(cli.Parser, description='Riemann-Roch Analysis of Weighted Graphs'):
    """rrgraph command parser."""

    @classmethod
    def _read(cls, path: str) -> str:
        """Content of the given file (``-`` for stdin)."""
        if path == '-':
            return cls.stdin.read()
        try:
            return pathlib.Path(path).read_text(encoding='utf-8')
        except OSError as err:
            raise error.Missing(f'Unable to read {path}: {err}') from err

    @classmethod
    def _graph(cls, path: str, base: typing.Optional[str] = None) -> graph.Graph:
        """Graph loaded from the file optionally rebased."""
        instance = parser.parse(cls._read(path))
        return instance.rebase(base) if base else instance

    @classmethod
    def _divisor(cls, path: str, host: graph.Graph, raw: bool = False) -> divisor.Divisor:
        """Divisor loaded from the file."""
        return divisor.parse(cls._read(path), host, raw)

    @staticmethod
    def _function(text: typing.Optional[str]) -> typing.Dict[graph.Vertex, graph.Rational]:
        """Vertex function from the ``x=v,y=w`` listing."""
        if not text:
            raise error.Missing('Vertex function required (--function x=v,...)')
        result = dict()
        for item in text.split(','):
            key, sep, value = item.partition('=')
            if not sep:
                raise error.Syntax(f'Invalid function item: {item}')
            result[parser.vertex(key.strip())] = parser.rational(value)
        return result

    @staticmethod
    def _subset(text: typing.Optional[str], host: graph.Graph) -> typing.FrozenSet[graph.Vertex]:
        """Vertex subset from the comma separated listing (all vertices if empty)."""
        if not text:
            return frozenset(host.vertices)
        return host.subset(v.strip() for v in text.split(','))

    @staticmethod
    def _format(value: typing.Optional[graph.Rational], decimal: typing.Optional[int] = None) -> str:
        """Exact rational with the optional lossy decimal rendering."""
        if value is None:
            return '-'
        if decimal is None:
            return str(value)
        return f'{value} (~{float(value):.{decimal}f})'

    @classmethod
    def _family(cls, preset: str, params: typing.Optional[typing.Sequence[str]]) -> exhaustion.Family:
        """Family instance of the given preset."""
        kwargs = dict()
        for item in params or ():
            key, sep, value = item.partition('=')
            if not sep:
                raise error.Syntax(f'Invalid family parameter: {item}')
            kwargs[key.strip()] = value.strip()
        try:
            return exhaustion.Family[preset](**kwargs)
        except TypeError as err:
            raise error.Invalid(f'Invalid parameters for {preset}: {err}') from err

    @cli.Command(help='print the graph invariants', description='Graph invariants')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('--base', help='base vertex override')
    @cli.Param('--decimal', type=int, help='add lossy decimal values with given digits')
    def info(cls, graph: str, base: typing.Optional[str], decimal: typing.Optional[int]) -> None:
        """Graph invariants subcommand.

        Args:
            graph: Graph file path.
            base: Base vertex override.
            decimal: Decimal digits.
        """
        instance = cls._graph(graph, base)
        invariants = instance.invariants
        profile = instance.profile
        cli.tprint(
            [('vertex', 'distance', 'm', 'i', 'K')]
            + [
                (
                    x,
                    profile.distance[x],
                    cls._format(invariants.m[x], decimal),
                    cls._format(invariants.i[x], decimal),
                    cls._format(invariants.canonical[x] * invariants.i[x], decimal),
                )
                for x in instance.vertices
            ]
        )
        print(f'base = {instance.base}')
        print(f'i_gcd = {cls._format(invariants.i_gcd, decimal)}')
        print(f'euler = {cls._format(invariants.euler, decimal)}')
        print(f'volume = {cls._format(invariants.volume, decimal)}')
        print(f'm_common = {invariants.m_common}')
        cli.tprint(
            [('source', 'target', 'C', 'n')]
            + [(e.source, e.target, e.weight, int(e.weight * invariants.m_common)) for e in instance.edges]
        )

    @cli.Command(help='compute the base-reduced divisor', description='Divisor reduction')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('divisor', help='divisor file')
    @cli.Param('--base', help='reduction base vertex')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--rounds', type=int, default=0, help='number of randomized uniqueness probe rounds')
    @cli.Param('--seed', type=int, help='random seed of the uniqueness probe')
    def reduce(
        cls,
        graph: str,
        divisor: str,
        base: typing.Optional[str],
        raw: bool,
        rounds: int,
        seed: typing.Optional[int],
    ) -> None:
        """Reduction subcommand.

        Args:
            graph: Graph file path.
            divisor: Divisor file path.
            base: Reduction base.
            raw: Raw divisor values.
            rounds: Uniqueness probe rounds.
            seed: Random seed.
        """
        host = cls._graph(graph)
        instance = cls._divisor(divisor, host, raw)
        reduction = firing.reduce_divisor(instance, base)
        cli.tprint(
            [('vertex', 'value', 'firing')]
            + [(x, reduction.reduced.value(x), reduction.firing[x]) for x in host.vertices]
        )
        print(f'phase1_rounds = {reduction.phase1_rounds}')
        print(f'phase2_fires = {reduction.phase2_fires}')
        print(f'burning = {" ".join(reduction.burning)}')
        print(f'winnable = {"yes" if reduction.winnable else "no"}')
        if rounds:
            unique = firing.uniqueness_probe(instance, base, rounds, seed)
            print(f'unique = {"yes" if unique else "no"}')

    @cli.Command(help='test the divisor winnability', description='Winnability test')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('divisor', help='divisor file')
    @cli.Param('--base', help='reduction base vertex')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--mode', choices=MODES, default='reduced', help='winnability test mode')
    @cli.Param('--bound', type=int, help='brute force box half-width')
    def winnable(
        cls, graph: str, divisor: str, base: typing.Optional[str], raw: bool, mode: str, bound: typing.Optional[int]
    ) -> None:
        """Winnability subcommand.

        Args:
            graph: Graph file path.
            divisor: Divisor file path.
            base: Reduction base.
            raw: Raw divisor values.
            mode: Test mode.
            bound: Brute force bound.
        """
        instance = cls._divisor(divisor, cls._graph(graph), raw)
        if mode == 'crosscheck':
            outcome = firing.crosscheck(instance, base, bound)
            print(f'reduced = {"WINNABLE" if outcome.reduced else "UNWINNABLE"}')
            print(f'brute({outcome.bound}) = {"WINNABLE" if outcome.brute else "UNWINNABLE"}')
            print('AGREE' if outcome.agree else 'DISAGREE')
        else:
            print('WINNABLE' if firing.is_winnable(instance, base, mode, bound) else 'UNWINNABLE')

    @cli.Command(help='compute the divisor rank', description='Rank computation')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('divisor', help='divisor file')
    @cli.Param('--base', help='reduction base vertex')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--budget', type=int, help='search node budget')
    @cli.Param('--jobs', type=int, help='number of parallel workers')
    @cli.Param('--decimal', type=int, help='add lossy decimal values with given digits')
    def rank(
        cls,
        graph: str,
        divisor: str,
        base: typing.Optional[str],
        raw: bool,
        budget: typing.Optional[int],
        jobs: typing.Optional[int],
        decimal: typing.Optional[int],
    ) -> int:
        """Rank subcommand.

        Args:
            graph: Graph file path.
            divisor: Divisor file path.
            base: Reduction base.
            raw: Raw divisor values.
            budget: Search budget.
            jobs: Parallel workers.
            decimal: Decimal digits.

        Returns: Exit code.
        """
        instance = cls._divisor(divisor, cls._graph(graph), raw)
        outcome = rank.rank(instance, base, budget, jobs)
        print(f'rank = {cls._format(outcome.rank, decimal)}')
        print(f'k = {outcome.k}')
        if outcome.obstruction is not None:
            print(f'obstruction = {" ".join(f"{x}:{v}" for x, v in outcome.obstruction.values.items() if v) or "0"}')
        print(f'tested = {outcome.tested_count}')
        print(f'status = {outcome.status.value}')
        return cli.OK if outcome.exact else cli.EXHAUSTED

    @cli.Command('rr-check', help='verify the Riemann-Roch identity', description='Riemann-Roch check')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('divisor', help='divisor file')
    @cli.Param('--base', help='reduction base vertex')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--budget', type=int, help='search node budget')
    @cli.Param('--jobs', type=int, help='number of parallel workers')
    @cli.Param('--orders', action='store_true', help='report also the order witness')
    @cli.Param('--decimal', type=int, help='add lossy decimal values with given digits')
    def rr_check(
        cls,
        graph: str,
        divisor: str,
        base: typing.Optional[str],
        raw: bool,
        budget: typing.Optional[int],
        jobs: typing.Optional[int],
        orders: bool,
        decimal: typing.Optional[int],
    ) -> int:
        """Riemann-Roch check subcommand.

        Args:
            graph: Graph file path.
            divisor: Divisor file path.
            base: Reduction base.
            raw: Raw divisor values.
            budget: Search budget.
            jobs: Parallel workers.
            orders: Report the order witness.
            decimal: Decimal digits.

        Returns: Exit code.
        """
        instance = cls._divisor(divisor, cls._graph(graph), raw)
        check = rank.rr_check(instance, base, budget, jobs)
        print(f'r(D) = {cls._format(check.rank.rank, decimal)} [{check.rank.status.value}]')
        print(f'r(K-D) = {cls._format(check.corank.rank, decimal)} [{check.corank.status.value}]')
        print(f'lhs = {cls._format(check.lhs, decimal)}')
        print(f'rhs = {cls._format(check.rhs, decimal)}')
        if orders:
            order, winnable = rank.rr_order(instance, base)
            print(f'order = {" < ".join(order)}')
            print(f'empty = {"|nu_O - D|" if winnable else "|D|"}')
            print(f'nonspecial = {"yes" if rank.is_nonspecial(instance, base) else "no"}')
        if check.holds is None:
            print('INCOMPLETE')
            return cli.EXHAUSTED
        print('HOLDS' if check.holds else 'FAILS')
        return cli.OK

    @cli.Command('orders-rank', help='compute the rank through the total orders', description='Order based rank')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('divisor', help='divisor file')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--budget', type=int, help='search node budget')
    @cli.Param('--decimal', type=int, help='add lossy decimal values with given digits')
    def orders_rank(
        cls, graph: str, divisor: str, raw: bool, budget: typing.Optional[int], decimal: typing.Optional[int]
    ) -> None:
        """Order based rank subcommand.

        Args:
            graph: Graph file path.
            divisor: Divisor file path.
            raw: Raw divisor values.
            budget: Search budget.
            decimal: Decimal digits.
        """
        instance = cls._divisor(divisor, cls._graph(graph), raw)
        print(f'rank = {cls._format(rank.rank_via_orders(instance, budget), decimal)}')

    @cli.Command(help='spectral analysis and the energy probes', description='Spectral analysis')
    @cli.Param('graph', help='graph file (- for stdin)')
    @cli.Param('--base', help='base vertex override')
    @cli.Param('--probe', choices=PROBES, help='energy probe to evaluate')
    @cli.Param('--subset', help='comma separated vertex subset of the interior probe')
    @cli.Param('--inner', help='comma separated inner set of the harmonic extension')
    @cli.Param('--function', help='vertex function as x=v,y=w,...')
    @cli.Param('--epsilon', default='1', help='epsilon of the interior probe')
    @cli.Param('--radius', type=int, help='ball radius of the escape probe')
    def spectral(
        cls,
        graph: str,
        base: typing.Optional[str],
        probe: typing.Optional[str],
        subset: typing.Optional[str],
        inner: typing.Optional[str],
        function: typing.Optional[str],
        epsilon: str,
        radius: typing.Optional[int],
    ) -> None:
        """Spectral subcommand.

        Args:
            graph: Graph file path.
            base: Base vertex override.
            probe: Selected probe.
            subset: Interior probe subset.
            inner: Extension inner set.
            function: Vertex function.
            epsilon: Interior probe epsilon.
            radius: Escape probe radius.
        """
        instance = cls._graph(graph, base)
        if probe is None:
            outcome = spectral.spectral_gap(instance)
            psi = outcome.gap_vector
            rayleigh = float(spectral.normalized_energy(instance, psi) / spectral.norm(instance, psi))
            print(f'eigenvalues = {" ".join(f"{v:.12g}" for v in outcome.eigenvalues)}')
            print(f'gap = {outcome.gap:.12g}')
            print(f'residual = {outcome.residual:.3g}')
            print(f'rayleigh = {rayleigh:.12g}')
            cli.tprint([('vertex', 'psi')] + [(x, f'{v:.12g}') for x, v in psi.items()])
        elif probe == 'extension':
            values = cls._function(function)
            extension = spectral.harmonic_extension(instance, cls._subset(inner, instance), values)
            cli.tprint([('vertex', 'h', 'floor')] + [(x, extension.h[x], extension.gfloor[x]) for x in instance])
            for field, value in extension.diagnostics._asdict().items():
                print(f'{field} = {value}')
            print('HOLDS' if extension.diagnostics.holds else 'FAILS')
        else:
            values = cls._function(function)
            if probe == 'escape' and radius is None:
                raise error.Missing('Escape probe requires the --radius')
            outcome = spectral.inequality_probe(
                instance, cls._subset(subset, instance), values, parser.rational(epsilon), radius
            )
            if probe == 'interior':
                print(f'lhs = {outcome.interior_lhs}')
                print(f'rhs = {outcome.interior_rhs}')
                print('HOLDS' if outcome.interior_holds else 'FAILS')
            else:
                print(f'lhs = {outcome.escape_lhs}')
                print(f'rhs = {outcome.escape_rhs}')
                print('HOLDS' if outcome.escape_holds else 'FAILS')

    @cli.Command(help='exhaustion studies of an infinite family', description='Infinite family studies')
    @cli.Param('preset', help=f'family preset ({", ".join(exhaustion.Family)})')
    @cli.Param('action', choices=ACTIONS, help='study to run')
    @cli.Param('--param', action='append', help='family parameter as key=value (repeatable)')
    @cli.Param('--to', type=int, default=5, help='maximal radius N')
    @cli.Param('--gaps', action='store_true', help='compute also the spectral gaps')
    @cli.Param('--divisor', help='divisor file on the support radius ball')
    @cli.Param('--raw', action='store_true', help='divisor file carries raw rational values')
    @cli.Param('--support-radius', type=int, default=1, help='divisor support radius l')
    @cli.Param('--larger', help='divisor file of the larger support divisor')
    @cli.Param('--larger-radius', type=int, help='support radius of the larger divisor')
    @cli.Param('--budget', type=int, help='search node budget')
    @cli.Param('--jobs', type=int, help='number of parallel workers')
    @cli.Param('--window', type=int, help='stabilization window')
    @cli.Param('--epsilon', default='1/4', help='tail mass bound of the order probe')
    @cli.Param('--radius', type=int, default=1, help='probe ball radius')
    @cli.Param('--csv', help='write the series as CSV into the given path')
    @cli.Param('--decimal', type=int, help='add lossy decimal columns with given digits')
    def family(
        cls,
        preset: str,
        action: str,
        param: typing.Optional[typing.Sequence[str]],
        to: int,
        gaps: bool,
        divisor: typing.Optional[str],
        raw: bool,
        support_radius: int,
        larger: typing.Optional[str],
        larger_radius: typing.Optional[int],
        budget: typing.Optional[int],
        jobs: typing.Optional[int],
        window: typing.Optional[int],
        epsilon: str,
        radius: int,
        csv: typing.Optional[str],
        decimal: typing.Optional[int],
    ) -> int:  # pylint: disable=redefined-outer-name
        """Infinite family subcommand.

        Args:
            preset: Family preset alias.
            action: Study to run.
            param: Family parameters.
            to: Maximal radius.
            gaps: Compute the spectral gaps.
            divisor: Divisor file path.
            raw: Raw divisor values.
            support_radius: Divisor support radius.
            larger: Larger divisor file path.
            larger_radius: Larger divisor support radius.
            budget: Search budget.
            jobs: Parallel workers.
            window: Stabilization window.
            epsilon: Order probe tail bound.
            radius: Probe ball radius.
            csv: CSV output path.
            decimal: Decimal digits.

        Returns: Exit code.
        """
        instance = cls._family(preset, param)
        if action == 'series':
            series = exhaustion.exhaustion_series(instance, to, gaps, jobs)
            cls._series(series.records, csv, decimal)
            print(f'threshold = {series.threshold:.12g}')
            print(f'first_below = {series.first_below if series.first_below is not None else "-"}')
            print(f'vanishing = {"yes" if series.vanishing else "no"}')
            return cli.OK
        if action == 'orders':
            outcome = study.order_consistency_probe(instance, radius, parser.rational(epsilon), budget=budget)
            print(f'cutoff = {outcome.cutoff}')
            print(f'tail = {outcome.tail}')
            print(f'minimum = {outcome.minimum}')
            print(f'rank = {outcome.rank}')
            print(f'agree = {"yes" if outcome.agree else "no"}')
            print(f'nonspecial = {"yes" if outcome.nonspecial else "no"}')
            print(f'pairs = {outcome.pairs}')
            print(f'pointwise = {"yes" if outcome.pointwise else "no"}')
            print(f'bounded = {"yes" if outcome.bounded else "no"}')
            print(f'strict = {"yes" if outcome.strict else "no"} ({outcome.violations} violations)')
            return cli.OK
        if action == 'extension':
            outcome = probe.eigen_extension_probe(instance, radius, to)
            print(f'lhs = {outcome.lhs:.12g}')
            print(f'rhs = {outcome.rhs:.12g}')
            print(f'slack = {outcome.slack:.12g}')
            print('HOLDS' if outcome.holds else 'FAILS')
            return cli.OK
        if not divisor:
            raise error.Missing(f'The {action} study requires the --divisor')
        host = exhaustion.build_ball(instance, support_radius).graph
        primary = cls._divisor(divisor, host, raw)
        if action == 'converge':
            outcome = study.rank_series(instance, primary, support_radius, to, budget, jobs, window)
            ranks = {e.n: e.rank for e in outcome.entries}
            series = exhaustion.exhaustion_series(instance, to, gaps, jobs)
            cls._series([r._replace(rank=ranks.get(r.n)) for r in series.records], csv, decimal)
            print(f'stable = {outcome.stable}')
            print(f'stabilized = {"yes" if outcome.stabilized else "no"}')
            print(f'riemann_roch = {"exact" if outcome.exact else "FAILS"}')
            return cli.OK if outcome.status is rank.Status.EXACT else cli.EXHAUSTED
        other = None
        if larger:
            if larger_radius is None:
                raise error.Missing('Larger divisor requires the --larger-radius')
            other = cls._divisor(larger, exhaustion.build_ball(instance, larger_radius).graph, raw), larger_radius
        report = study.infinite_rr_report(instance, primary, support_radius, to, budget, jobs, window, other)
        cls._series(
            [
                exhaustion.Record(e.n, None, None, e.euler, None, None, None, None, None, e.rank)
                for e in report.series.entries
            ],
            csv,
            decimal,
        )
        print(f'verdict = {report.verdict}')
        print(f'rank = {cls._format(report.rank)}')
        print(f'corank = {cls._format(report.corank)}')
        print(f'euler = {cls._format(report.euler)}')
        print(f'residual = {cls._format(report.residual)}')
        print(f'hypothesis = {"met" if report.hypothesis else "unmet"}')
        if report.tail is not None:
            print(f'tail_bound = {report.tail}')
            print(f'difference = {cls._format(report.difference)}')
        print('note = stabilization and per-radius exactness only (no limit claims)')
        return cli.OK if report.series.status is rank.Status.EXACT else cli.EXHAUSTED

    @classmethod
    def _series(
        cls, records: typing.Sequence[exhaustion.Record], path: typing.Optional[str], decimal: typing.Optional[int]
    ) -> None:
        """Output the series records either as CSV file or as a table."""
        rows = [exhaustion.Record.header(decimal)] + [r.row(decimal) for r in records]
        if path:
            with open(path, 'w', newline='', encoding='utf-8') as output:
                csv.writer(output).writerows(rows)
        else:
            cli.tprint([[c or '-' for c in r] for r in rows])

    @cli.Command('threshold-A', help='compute the Poincaré threshold constant', description='Threshold constant')
    @cli.Param('--a-min', type=float, help='grid start (above log 2)')
    @cli.Param('--a-max', type=float, help='grid end')
    @cli.Param('--step', type=float, help='grid step')
    @cli.Param('--precision', type=float, help='golden-section precision')
    def threshold_a(
        cls,
        a_min: typing.Optional[float],
        a_max: typing.Optional[float],
        step: typing.Optional[float],
        precision: typing.Optional[float],
    ) -> None:
        """Threshold constant subcommand.

        Args:
            a_min: Grid start.
            a_max: Grid end.
            step: Grid step.
            precision: Refinement precision.
        """
        outcome = threshold.poincare_threshold(a_min, a_max, step, precision)
        print(f'A = {outcome.A:.12g}')
        print(f'argmax_a = {outcome.argmax_a:.12g}')
        print(f'B(log 2) = {threshold.root(math.exp(math.log(2))):.12g}')

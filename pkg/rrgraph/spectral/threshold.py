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
Poincaré threshold constant.

B(a) is the smaller root of (e^a - e^-a)t² - 2(e^a - 2e^-a + 1)t + (1 - 2e^-a) = 0 and the threshold A is its
maximum over a > log 2.
"""
import collections
import logging
import math
import typing

import numpy

from rrgraph import conf, error

LOGGER = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5) - 1) / 2


def roots(x: float) -> typing.Tuple[float, float]:
    """Both roots of the quadratic parametrized by x = e^a.

    The smaller root is evaluated in the cancellation free form c/(b + √(b² - ac)) so it is exactly zero at x = 2.

    Args:
        x: The e^a value (x > 1).

    Returns: The smaller and the larger root.
    """
    quadratic = x - 1 / x
    linear = x - 2 / x + 1
    constant = 1 - 2 / x
    discriminant = math.sqrt(linear * linear - quadratic * constant)
    return constant / (linear + discriminant), (linear + discriminant) / quadratic


def root(x: float) -> float:
    """The smaller root from x = e^a."""
    return roots(x)[0]


class Threshold(collections.namedtuple('Threshold', 'A, argmax_a')):
    """Threshold constant A = max B(a) attained at argmax_a."""

    @staticmethod
    def B(a: float) -> typing.Tuple[float, float]:  # pylint: disable=invalid-name
        """Smaller and larger roots at the given a."""
        return roots(math.exp(a))

    @staticmethod
    def bracket(a: float) -> typing.Tuple[float, float, float]:
        """The B(a) < (1 - e^-a)/(e^a - e^-a) < B'(a) bracket (ordered for a > log 2)."""
        smaller, larger = roots(math.exp(a))
        return smaller, (1 - math.exp(-a)) / (math.exp(a) - math.exp(-a)), larger


def golden(function: typing.Callable[[float], float], lower: float, upper: float, precision: float) -> float:
    """Golden-section maximization of a unimodal function.

    Args:
        function: Function to maximize.
        lower: Interval start.
        upper: Interval end.
        precision: Interval width to stop at.

    Returns: The maximizer.
    """
    left, right = upper - GOLDEN * (upper - lower), lower + GOLDEN * (upper - lower)
    fleft, fright = function(left), function(right)
    while upper - lower > precision:
        if fleft < fright:
            lower, left, fleft = left, right, fright
            right = lower + GOLDEN * (upper - lower)
            fright = function(right)
        else:
            upper, right, fright = right, left, fleft
            left = upper - GOLDEN * (upper - lower)
            fleft = function(left)
    return (lower + upper) / 2


def poincare_threshold(
    a_min: typing.Optional[float] = None,
    a_max: typing.Optional[float] = None,
    step: typing.Optional[float] = None,
    precision: typing.Optional[float] = None,
) -> Threshold:
    """Maximize B(a) over a grid refining the best grid point by the golden-section search.

    Args:
        a_min: Grid start (must exceed log 2).
        a_max: Grid end.
        step: Grid step.
        precision: Golden-section precision.

    Returns: The threshold.
    """
    a_min = conf.PARSER.option(conf.SECTION_THRESHOLD, conf.OPT_A_MIN, a_min)
    a_max = conf.PARSER.option(conf.SECTION_THRESHOLD, conf.OPT_A_MAX, a_max)
    step = conf.PARSER.option(conf.SECTION_THRESHOLD, conf.OPT_STEP, step)
    precision = conf.PARSER.option(conf.SECTION_THRESHOLD, conf.OPT_PRECISION, precision)
    if a_min <= math.log(2) or a_max <= a_min or step <= 0:
        raise error.Invalid(f'Invalid threshold grid ({a_min}, {a_max}, {step})')
    grid = numpy.arange(a_min, a_max + step / 2, step)
    values = [Threshold.B(a)[0] for a in grid]
    best = int(numpy.argmax(values))
    lower, upper = max(a_min, grid[best] - step), min(a_max, grid[best] + step)
    argmax = golden(lambda a: Threshold.B(a)[0], float(lower), float(upper), precision)
    LOGGER.debug('Threshold maximizer %g refined from grid point %g', argmax, grid[best])
    return Threshold(Threshold.B(argmax)[0], argmax)

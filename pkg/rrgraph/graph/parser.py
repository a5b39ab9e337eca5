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
Graph file format.

Line oriented UTF-8 text::

    # comment
    base <vertex>
    edge <u> <v> <p>/<q>
"""
import logging
import re
import typing

from rrgraph import error, graph

LOGGER = logging.getLogger(__name__)

TOKEN = re.compile(r'[A-Za-z0-9_]+')
RATIONAL = re.compile(r'(?P<p>[+-]?\d+)(?:/(?P<q>[+-]?\d+))?')


def rational(text: str) -> graph.Rational:
    """Parse the p/q (or plain integer) rational literal.

    Args:
        text: Literal to be parsed.

    Returns: Rational value.
    """
    match = RATIONAL.fullmatch(text.strip())
    if not match:
        raise error.Syntax(f'Invalid rational: {text}')
    denominator = int(match['q'] or 1)
    if denominator <= 0:
        raise error.Syntax(f'Nonpositive denominator: {text}')
    return graph.Rational(int(match['p']), denominator)


def vertex(text: str) -> graph.Vertex:
    """Validate the vertex token."""
    if not TOKEN.fullmatch(text):
        raise error.Syntax(f'Invalid vertex token: {text}')
    return text


def parse(text: str) -> graph.Graph:
    """Parse the graph document.

    Args:
        text: Document content.

    Returns: Validated graph instance.

    Raises:
        error.Syntax: On malformed lines, nonpositive weights or duplicate edges.
        error.Structural: On loops or disconnected graphs.
    """
    base: typing.Optional[str] = None
    edges: typing.List[typing.Tuple[str, str, graph.Rational]] = list()
    seen: typing.Set[typing.FrozenSet[str]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0].startswith('#'):
            continue
        try:
            if fields[0] == 'base' and len(fields) == 2:
                if base is not None:
                    raise error.Syntax('Base declared more than once')
                base = vertex(fields[1])
            elif fields[0] == 'edge' and len(fields) == 4:
                source, target, weight = vertex(fields[1]), vertex(fields[2]), rational(fields[3])
                if weight <= 0:
                    raise error.Syntax(f'Nonpositive weight {weight}')
                pair = frozenset((source, target))
                if source != target and pair in seen:
                    raise error.Syntax(f'Duplicate edge {source}-{target}')
                seen.add(pair)
                edges.append((source, target, weight))
            else:
                raise error.Syntax(f'Unexpected statement: {line.strip()}')
        except error.Syntax as err:
            raise error.Syntax(f'Line {lineno}: {err}') from err
    if base is None:
        raise error.Syntax('Missing base declaration')
    LOGGER.debug('Parsed %d edges with base %s', len(edges), base)
    return graph.Graph(edges, base)


def dumps(instance: graph.Graph) -> str:
    """Serialize the graph back to its text format.

    Args:
        instance: Graph to be serialized.

    Returns: Document text.
    """
    lines = [f'base {instance.base}']
    lines.extend(f'edge {e.source} {e.target} {e.weight.numerator}/{e.weight.denominator}' for e in instance.edges)
    return '\n'.join(lines) + '\n'

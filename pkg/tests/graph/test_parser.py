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
Graph file format unit tests.
"""
# pylint: disable=no-self-use
import fractions

import pytest

from rrgraph import error, graph
from rrgraph.graph import parser

F = fractions.Fraction


class TestParser:
    """Graph parser unit tests."""

    def test_parse(self, ex1_text: str, ex1: graph.Graph):
        """Test the regular document."""
        instance = parser.parse(ex1_text)
        assert instance.vertices == ex1.vertices
        assert instance.edges == ex1.edges
        assert instance.base == 'a'
        assert parser.parse(parser.dumps(instance)).edges == instance.edges

    def test_rational(self):
        """Test the rational literals."""
        assert parser.rational('3/6') == F(1, 2)
        assert parser.rational('-2') == -2
        for literal in ('1/0', '1/-2', 'x', '1.5', ''):
            with pytest.raises(error.Syntax):
                parser.rational(literal)

    @pytest.mark.parametrize(
        'text',
        [
            'edge a b 1\n',
            'base a\nbase b\nedge a b 1\n',
            'base a\nedge a b 0\n',
            'base a\nedge a b -1/2\n',
            'base a\nedge a b 1\nedge b a 2\n',
            'base a\nedge a-x b 1\n',
            'base a\nvertex a\n',
            'base a\nedge a b\n',
        ],
    )
    def test_syntax(self, text: str):
        """Test the malformed documents."""
        with pytest.raises(error.Syntax):
            parser.parse(text)

    def test_line(self):
        """Test the line number is reported."""
        with pytest.raises(error.Syntax, match='Line 3'):
            parser.parse('base a\n# fine\nedge a b x\n')

    def test_structural(self):
        """Test the structurally invalid documents."""
        with pytest.raises(error.Structural):
            parser.parse('base a\nedge a a 1\n')
        with pytest.raises(error.Structural):
            parser.parse('base a\nedge a b 1\nedge c d 1\n')
        with pytest.raises(error.Missing):
            parser.parse('base z\nedge a b 1\n')

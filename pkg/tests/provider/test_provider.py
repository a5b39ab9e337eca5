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
Provider tests.
"""
# pylint: disable=no-self-use
import abc
import typing

import pytest

from rrgraph import error
from rrgraph import provider as provmod


@pytest.fixture(scope='session')
def alias() -> str:
    """Provider key."""
    return 'foobar'


@pytest.fixture(scope='session')
def interface() -> typing.Type[provmod.Interface]:
    """Provider fixture."""

    class Provider(provmod.Interface):
        """Provider implementation."""

        def __init__(self, **kwargs):
            self.kwargs = kwargs

        def __eq__(self, other):
            return isinstance(other, self.__class__) and other.kwargs == self.kwargs

        @abc.abstractmethod
        def provide(self) -> None:
            """Method required to make provider abstract."""

    return Provider


@pytest.fixture(scope='session')
def provider(interface: typing.Type[provmod.Interface], alias: str) -> typing.Type[provmod.Interface]:
    """Provider fixture."""

    class SubProvider(interface, alias=alias):
        """Provider implementation."""

        def provide(self) -> None:
            """This provider must not be abstract."""

    return SubProvider


class TestInterface:
    """Provider interface tests."""

    def test_get(self, interface: typing.Type[provmod.Interface], provider: typing.Type[provmod.Interface], alias: str):
        """Test the provider lookup."""
        assert interface[alias] is provider
        assert provider[alias] is provider
        assert interface[str(provmod.Reference.qualifier(provider))] is provider
        assert interface[alias](val=100) == provider(val=100)
        with pytest.raises(error.Missing):
            assert provider['miss']

    def test_iter(
        self, interface: typing.Type[provmod.Interface], provider: typing.Type[provmod.Interface], alias: str
    ):
        """Test the alias listing."""
        assert provider
        assert list(interface) == [alias]
        assert alias in str(interface)

    def test_collision(self, provider: typing.Type[provmod.Interface], alias: str):
        """Test a colliding provider key."""
        with pytest.raises(error.Unexpected):

            class Colliding(provider, alias=alias):
                """colliding implementation."""

            assert Colliding

    def test_abstract(self, interface: typing.Type[provmod.Interface]):
        """Test the alias is refused on abstract providers."""
        with pytest.raises(error.Unexpected):

            class Abstract(interface, alias='abstract'):
                """Still abstract implementation."""

            assert Abstract

    def test_invalid(self, interface: typing.Type[provmod.Interface]):
        """Test the qualifier delimiter is refused in the alias."""
        with pytest.raises(error.Invalid):

            class Invalid(interface, alias='foo:bar'):
                """Invalid alias implementation."""

                def provide(self) -> None:
                    """Concrete."""

            assert Invalid


class TestFamily:
    """Family registry tests."""

    def test_presets(self):
        """Test the shipped presets are registered."""
        from rrgraph import exhaustion  # pylint: disable=import-outside-toplevel

        assert {'ray-double-exp', 'ray-geometric', 'tree-double-exp', 'lollipop'}.issubset(exhaustion.Family)
        assert exhaustion.Family['ray-double-exp'] is exhaustion.RayDoubleExp
        with pytest.raises(error.Missing):
            assert exhaustion.Family['ray-quadratic']

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
Provider management.
"""
import abc
import collections
import inspect
import logging
import typing

from rrgraph import error

LOGGER = logging.getLogger(__name__)


class Reference(str):
    """Provider reference either as its plain alias or as the ``module:qualname`` qualifier."""

    DELIMITER = ':'

    @classmethod
    def qualifier(cls, provider: typing.Type['Interface']) -> 'Reference':
        """Qualified name reference of the provider class."""
        return cls(f'{provider.__module__}{cls.DELIMITER}{provider.__qualname__}')

    @classmethod
    def alias(cls, value: str) -> 'Reference':
        """Validated alias reference."""
        if cls.DELIMITER in value:
            raise error.Invalid(f'Invalid alias: {value}')
        return cls(value)


class Registry(collections.namedtuple('Registry', 'provider')):
    """Registry of providers of certain interface."""

    def __new__(cls):
        return super().__new__(cls, dict())

    def add(self, provider: typing.Type['Interface'], alias: typing.Optional[Reference]) -> None:
        """Register the provider under its qualifier and the optional alias.

        Args:
            provider: Implementation class.
            alias: Provider alias.
        """
        references = {Reference.qualifier(provider)}
        if alias:
            references.add(alias)
        for ref in references:
            if ref in self.provider and provider is not self.provider[ref]:
                raise error.Unexpected(f'Provider reference collision ({ref})')
        if inspect.isabstract(provider):
            return
        for ref in references:
            LOGGER.debug('Registering provider %s as `%s`', provider.__name__, ref)
            self.provider[ref] = provider

    def get(self, reference: str) -> typing.Type['Interface']:
        """Get the registered provider.

        Args:
            reference: Provider reference.

        Returns: Registered provider.
        """
        return self.provider[reference]


REGISTRY: typing.Dict[typing.Type['Interface'], Registry] = collections.defaultdict(Registry)


class Meta(abc.ABCMeta):
    """Provider metaclass."""

    def __getitem__(cls, reference: str) -> typing.Type['Interface']:
        try:
            return REGISTRY[cls].get(reference)
        except KeyError as err:
            known = ', '.join(str(c) for c in cls)  # pylint: disable=not-an-iterable
            raise error.Missing(f'No {cls.__name__} provider registered as {reference} (known: {known})') from err

    def __iter__(cls):
        return iter(sorted(r for r in REGISTRY[cls].provider if Reference.DELIMITER not in r))

    def __str__(cls):
        return f'{cls.__name__}[{", ".join(str(c) for c in cls)}]'  # pylint: disable=not-an-iterable


class Interface(metaclass=Meta):
    """Base class for service providers."""

    def __init_subclass__(cls, alias: typing.Optional[str] = None, **kwargs):
        """Register the provider based on its optional alias.

        Args:
            alias: Optional reference to register the provider as (in addition to its qualified name).
        """
        super().__init_subclass__(**kwargs)
        if alias:
            if inspect.isabstract(cls):
                raise error.Unexpected(f'Provider reference ({alias}) illegal on abstract class')
            alias = Reference.alias(alias)
        for parent in (p for p in cls.__mro__ if issubclass(p, Interface) and p is not Interface):
            REGISTRY[parent].add(cls, alias)

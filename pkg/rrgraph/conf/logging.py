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
rrgraph logging.

The ``logging.ini`` files found along the config search path get merged into a single ``fileConfig`` setup. The log
file goes to the user config directory if it exists (current directory otherwise).
"""
import configparser
import itertools
import logging
import pathlib
import typing
from logging import config

from rrgraph import conf

LOGGER = logging.getLogger(__name__)
DEFAULTS = dict(
    prj_name=conf.PRJNAME,
    log_path=str((conf.USRDIR if conf.USRDIR.is_dir() else pathlib.Path('.')) / f'{conf.APPNAME}.log'),
)

_LEVEL: typing.Optional[int] = None


def _apply(level: int) -> None:
    """Force the level on all the package loggers and their handlers."""
    names = [conf.APPNAME] + [n for n in logging.root.manager.loggerDict if n.startswith(f'{conf.APPNAME}.')]
    for logger in (logging.getLogger(n) for n in names):
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)


def setup(*path: pathlib.Path, level: typing.Optional[typing.Union[int, str]] = None, **defaults: typing.Any):
    """Setup the loggers according to the merged ini files.

    Args:
        *path: Extra directories to look for the logging config in.
        level: Level overriding the configured ones (sticky across the config reloads).
        **defaults: Extra interpolation defaults for the ini files.

    Raises:
        ValueError: On unknown level.
    """
    global _LEVEL  # pylint: disable=global-statement
    if level is not None:
        if isinstance(level, str):
            level = level.upper()
        logging.getLogger(conf.APPNAME).setLevel(level)  # validates
        _LEVEL = logging.getLogger(conf.APPNAME).level
    parser = configparser.ConfigParser({**DEFAULTS, **defaults})
    tried = set()
    used = parser.read(
        (
            p
            for p in ((b / conf.logcfg).resolve() for b in itertools.chain(conf.PATH, path))
            if not (p in tried or tried.add(p))
        )
    )
    config.fileConfig(parser, disable_existing_loggers=False)
    logging.captureWarnings(capture=True)
    if _LEVEL is not None:
        _apply(_LEVEL)
    LOGGER.debug('Logging configs: %s', ', '.join(used) or 'none')
    LOGGER.debug('Application configs: %s', ', '.join(str(s) for s in conf.PARSER.sources) or 'none')
    for src, err in conf.PARSER.errors.items():
        LOGGER.warning('Error parsing config %s: %s', src, err)


conf.PARSER.subscribe(setup)

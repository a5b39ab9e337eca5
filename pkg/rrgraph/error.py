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
Core rrgraph exceptions.
"""


class Error(Exception):
    """Base rrgraph exception type."""


class Invalid(Error):
    """Base invalid state exception."""


class Missing(Invalid):
    """Exception state of a missing element."""


class Unexpected(Invalid):
    """Exception state of an unexpected element."""


class Syntax(Invalid):
    """Malformed input document."""


class Structural(Error):
    """Graph structure not acceptable for the operation (loops, disconnected, size limits)."""


class Failed(Error):
    """Exception indicating an unsuccessful result of an operation."""


class Exhausted(Failed):
    """Enumeration budget exceeded before the result could be verified."""

# Copyright 2026 The ESC Workbench Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Exponential substitution calculus workbench.

Terms are passed around as strings in the 7-bit concrete syntax, e.g.
``[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4``.
"""

from esc._core import (  # noqa: F401
    EscError,
    ParseError,
    alpha_eq,
    bam_run,
    check_proper,
    family,
    gc,
    infer_type,
    normalize,
    parse,
    sesame_run,
    size,
)

__all__ = [
    "EscError",
    "ParseError",
    "alpha_eq",
    "bam_run",
    "check_proper",
    "family",
    "gc",
    "infer_type",
    "normalize",
    "parse",
    "sesame_run",
    "size",
]

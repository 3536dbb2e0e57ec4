# Copyright 2026 The Authors.
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
"""Core-set selection for speech corpora under a duration budget."""

from coreset._core import (
    CoresetError,
    Manifest,
    SelectionResult,
    SelectionStep,
    UtteranceRecord,
    concat_features,
    diversity,
    entropy,
    evaluate_subset,
    load_features,
    load_manifest,
    marginal_gain,
    normalize_rows,
    parse_selection_report,
    select,
    selection_report_json,
    write_features,
    write_manifest,
)

METHODS = ("diversity", "phoneme_balance", "input_balance", "random", "farthest_point")

__all__ = [
    "CoresetError",
    "METHODS",
    "Manifest",
    "SelectionResult",
    "SelectionStep",
    "UtteranceRecord",
    "concat_features",
    "diversity",
    "entropy",
    "evaluate_subset",
    "load_features",
    "load_manifest",
    "marginal_gain",
    "normalize_rows",
    "parse_selection_report",
    "select",
    "selection_report_json",
    "write_features",
    "write_manifest",
]

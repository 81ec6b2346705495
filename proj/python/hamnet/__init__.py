# Copyright 2026 The hamnet Authors
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
"""Python access to the hamnet core library."""

import json

from hamnet._core import (
    ConvergenceError,
    DomainError,
    HamnetError,
    InvariantError,
    IoError,
    ResourceError,
    UsageError,
    collision_free_distribution,
    collision_probability,
    complexity,
    correlation_features,
    degrees,
    feature_names,
    haar_unitary,
    hamming_features,
    permanent,
    presets,
    sample_unique,
)
from hamnet._core import run_preset as _run_preset


def run_preset(preset, config):
    """Runs a preset with a config dict; returns the summary dict."""
    return json.loads(_run_preset(preset, json.dumps(config)))


__all__ = [
    "ConvergenceError",
    "DomainError",
    "HamnetError",
    "InvariantError",
    "IoError",
    "ResourceError",
    "UsageError",
    "collision_free_distribution",
    "collision_probability",
    "complexity",
    "correlation_features",
    "degrees",
    "feature_names",
    "haar_unitary",
    "hamming_features",
    "permanent",
    "presets",
    "run_preset",
    "sample_unique",
]

# Copyright 2026 The qmotion Authors
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

"""Qualitative action inference for rigid bodies."""

import json

from ._qmotion import (
    CapExceeded,
    InvalidScene,
    NoMovedObject,
    QMotionError,
    UnstableInitialStack,
    canonical_scene,
    envelope,
    run_cli,
    scene_digest,
    sign_add,
    sign_mul,
    sign_sub,
)
from . import _qmotion

__all__ = [
    "CapExceeded",
    "InvalidScene",
    "NoMovedObject",
    "QMotionError",
    "UnstableInitialStack",
    "canonical_scene",
    "enumerate_actions",
    "envelope",
    "generate",
    "infer",
    "run_cli",
    "scene_digest",
    "sign_add",
    "sign_mul",
    "sign_sub",
]


def _text(scene):
    return scene if isinstance(scene, str) else json.dumps(scene)


def infer(scene, heuristics="h1h2", max_solutions=None):
    """Distinct actions explaining `scene` (JSON text or dict), as dicts."""
    return [json.loads(a) for a in _qmotion.infer(_text(scene), heuristics, max_solutions)]


def enumerate_actions(scene, heuristics="h1h2"):
    """Brute-force action set for small scenes, as dicts."""
    return [json.loads(a) for a in _qmotion.enumerate_actions(_text(scene), heuristics)]


def generate(stack, impulse="random", seed=None):
    """Simulate a pushed tower. Returns (scene dict, truth action dict or None)."""
    scene, truth = _qmotion.generate(stack, impulse, seed)
    return json.loads(scene), json.loads(truth)["action"]

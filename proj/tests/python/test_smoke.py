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

import json

import pytest

import qmotion


def test_sign_ops_match_numeric_samples():
    reps = {"+": [0.5, 2.0], "0": [0.0], "-": [-0.5, -2.0]}

    def sign(x):
        return "+" if x > 0 else "-" if x < 0 else "0"

    def as_set(text):
        return set(text.strip("[]"))

    for a in "+0-":
        for b in "+0-":
            for name, op in (("sign_add", lambda x, y: x + y),
                             ("sign_sub", lambda x, y: x - y),
                             ("sign_mul", lambda x, y: x * y)):
                got = as_set(getattr(qmotion, name)(a, b))
                want = {sign(op(x, y)) for x in reps[a] for y in reps[b]}
                assert got == want, (name, a, b)


def test_generated_scene_recovers_truth():
    scene, truth = qmotion.generate(2, "1,0,0@top")
    assert truth["object"] == "box1"
    found = qmotion.infer(scene)
    assert truth in found
    assert sorted(map(json.dumps, found)) == sorted(map(json.dumps, qmotion.enumerate_actions(scene)))


def test_canonical_text_and_digest_are_stable():
    scene, _ = qmotion.generate(1, "0,1,0@top")
    text = qmotion.canonical_scene(json.dumps(scene))
    assert qmotion.canonical_scene(text) == text
    assert qmotion.scene_digest(text) == qmotion.scene_digest(json.dumps(scene))


def test_gravity_envelope():
    forces = json.dumps({"format": "aip-forces/1",
                         "forces": [{"qd": ["0", "0", "-"], "qr": ["0", "0", "0"], "object": "b"}]})
    changes = qmotion.envelope(forces)
    assert len(changes) == 2


def test_errors_map_to_exceptions():
    scene, _ = qmotion.generate(1, "zero")
    with pytest.raises(qmotion.NoMovedObject):
        qmotion.infer(scene)
    bad = dict(scene, contacts=[dict(scene["contacts"][0], b="ghost")])
    with pytest.raises(qmotion.InvalidScene):
        qmotion.infer(bad)
    with pytest.raises(qmotion.QMotionError):
        qmotion.infer(bad)
    with pytest.raises(ValueError):
        qmotion.infer(scene, heuristics="h9")


def test_cli_in_process():
    code, out, _ = qmotion.run_cli(["--help"])
    assert code == 0 and "infer" in out
    code, _, err = qmotion.run_cli(["infer", "/nonexistent.json"])
    assert code == 2 and err


def test_max_solutions_caps_the_search():
    scene, _ = qmotion.generate(1, "1,0,0@top")
    assert len(qmotion.infer(scene, heuristics="none", max_solutions=1)) == 1
    assert len(qmotion.infer(scene, heuristics="none")) > 1

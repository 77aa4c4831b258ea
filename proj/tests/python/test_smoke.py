# Copyright 2026 The Hidden Agenda Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import pathlib
import shutil
import subprocess

import numpy as np
import pytest

import hidden_agenda as ha

REPO = pathlib.Path(__file__).resolve().parents[2]


def cli_path():
    env = os.environ.get("HA_CLI")
    if env and pathlib.Path(env).exists():
        return env
    candidate = REPO / "build" / "tools" / "hidden_agenda"
    if candidate.exists():
        return str(candidate)
    return shutil.which("hidden_agenda")


def test_reset_shapes():
    env = ha.Env()
    obs = env.reset(7)
    assert env.num_players == 5
    assert len(obs) == 5
    for o in obs:
        assert o["rgb"].shape == (88, 88, 3)
        assert o["rgb"].dtype == np.uint8
        assert o["votes"].shape == (5, 7)
        assert o["votes"].dtype == np.float32
        assert o["inventory"] == 0.0
        assert o["progress"] == 0.0


def test_same_seed_same_digest():
    a, b = ha.Env(), ha.Env()
    a.reset(11)
    b.reset(11)
    assert a.state_digest() == b.state_digest()
    rng = np.random.default_rng(0)
    for _ in range(100):
        acts = [int(x) for x in rng.integers(0, 7, size=5)]
        ra = a.step(acts)
        rb = b.step(acts)
        assert np.array_equal(ra[1], rb[1])
        assert a.state_digest() == b.state_digest()
        if ra[2]:
            break


def test_replay_parity_with_core(tmp_path):
    cli = cli_path()
    if cli is None:
        pytest.skip("hidden_agenda CLI not built")
    subprocess.run([cli, "run", "-n", "1", "-s", "7", "--record", "-o", str(tmp_path)],
                   check=True, capture_output=True)
    replay = json.loads((tmp_path / "episode_7.json").read_text())
    env = ha.Env(replay["config"])
    env.reset(replay["seed"])
    totals = np.zeros(env.num_players)
    terminal = False
    for acts in replay["actions"]:
        _, rewards, terminal, info = env.step(acts)
        totals += rewards
    assert terminal
    assert info["outcome"] == replay["outcome"]
    if not replay["outcome"].startswith("Draw"):
        assert np.all(np.abs(rewards) >= 3.0)
    assert f"{env.state_digest():016x}" == replay["final_digest"]
    assert np.allclose(totals, replay["returns"])


def test_bad_config_key_names_field():
    with pytest.raises(ValueError, match="no_such_field"):
        ha.Env({"no_such_field": 1})
    with pytest.raises(ValueError, match="fuel_goal"):
        ha.Env({"fuel_goal": -3})


def test_config_round_trip_and_file(tmp_path):
    env = ha.Env({"fuel_goal": 10, "beam_flanks_own_row": True})
    assert env.config["fuel_goal"] == "10"
    assert env.config["beam_flanks_own_row"] == "true"
    assert set(env.config) == set(ha.config_keys())
    path = tmp_path / "c.cfg"
    path.write_text("fuel_goal = 9\n")
    assert ha.Env.from_file(str(path)).config["fuel_goal"] == "9"


def test_privileged_channel_toggle():
    plain = ha.Env()
    plain.reset(3)
    _, _, _, info = plain.step([0] * 5)
    assert "privileged" not in info

    priv = ha.Env(privileged=True)
    priv.reset(3)
    _, _, _, info = priv.step([0] * 5)
    assert len(info["privileged"]) == 5
    for p in info["privileged"]:
        assert p["identity"].sum() == pytest.approx(1.0)


def test_draw_pays_nothing_and_step_after_end_raises():
    env = ha.Env({"episode_limit": 400})
    env.reset(5)
    rng = np.random.default_rng(1)
    terminal = False
    while not terminal:
        acts = [int(x) for x in rng.integers(0, 8, size=5)]
        _, rewards, terminal, info = env.step(acts)
    assert info["outcome"] is not None
    if info["outcome"].startswith("Draw"):
        assert np.all(rewards == 0.0)
    with pytest.raises(RuntimeError):
        env.step([0] * 5)


def test_action_names():
    assert ha.action_id("noop") == 0
    assert ha.action_id("move_n") == 1
    assert ha.action_id("fire") == 7
    assert ha.action_id("abstain") == 8
    assert ha.action_id("vote_3") == 12
    assert ha.action_name(12) == "vote_3"
    with pytest.raises(ValueError):
        ha.action_id("jump")


def test_wrong_action_count():
    env = ha.Env()
    env.reset(0)
    with pytest.raises(ValueError):
        env.step([0, 0])
    with pytest.raises(ValueError):
        env.step([99] * 5)

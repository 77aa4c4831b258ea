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

"""Hidden Agenda environment: native engine bindings.

    env = hidden_agenda.Env({"fuel_goal": 32}, privileged=False)
    obs = env.reset(seed=7)
    obs, rewards, terminal, info = env.step([0] * env.num_players)
"""

from ._core import (
    ConfigError,
    EngineError,
    Env,
    MapError,
    action_id,
    action_name,
    config_keys,
)

__all__ = [
    "ConfigError",
    "EngineError",
    "Env",
    "MapError",
    "action_id",
    "action_name",
    "config_keys",
]

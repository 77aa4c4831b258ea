// Copyright 2026 The Hidden Agenda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin Python bindings: one environment per object, reset/step with numpy
// observations, optional hindsight channel in the step info.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "hidden_agenda/engine.hpp"
#include "hidden_agenda/json_io.hpp"
#include "hidden_agenda/observation.hpp"
#include "hidden_agenda/privileged.hpp"

namespace py = pybind11;
using namespace hidden_agenda;

namespace {

GameConfig config_from_mapping(const py::dict& mapping) {
  GameConfig c;
  for (const auto& [key, value] : mapping) {
    const auto name = py::cast<std::string>(key);
    std::string text;
    if (py::isinstance<py::bool_>(value)) {
      text = value.cast<bool>() ? "true" : "false";
    } else {
      text = py::str(value).cast<std::string>();
    }
    set_config_field(c, name, text);
  }
  c.validate();
  return c;
}

py::dict config_to_mapping(const GameConfig& c) {
  py::dict out;
  for (const auto& [k, v] : config_to_pairs(c)) out[py::str(k)] = v;
  return out;
}

py::object to_python(const json_io::json& j) {
  // Leaked on purpose: destroying it at interpreter exit would need the GIL.
  static auto* loads = new py::object(py::module_::import("json").attr("loads"));
  return (*loads)(j.dump());
}

py::dict observation_to_python(const ObservationBundle& o) {
  py::array_t<std::uint8_t> rgb({kObsHeight, kObsWidth, kObsChannels});
  std::memcpy(rgb.mutable_data(), o.rgb.data(), o.rgb.size());
  py::array_t<float> votes({o.vote_rows, o.vote_cols});
  std::memcpy(votes.mutable_data(), o.vote_matrix.data(), o.vote_matrix.size() * sizeof(float));
  py::dict d;
  d["rgb"] = rgb;
  d["inventory"] = o.inventory_fraction;
  d["progress"] = o.progress_fraction;
  d["votes"] = votes;
  return d;
}

class Env {
 public:
  Env(const py::dict& config, bool privileged) : config_(config_from_mapping(config)), privileged_(privileged) {}

  static Env from_file(const std::string& path, bool privileged) {
    Env env(py::dict(), privileged);
    env.config_ = load_config_file(path);
    return env;
  }

  py::list reset(std::uint64_t seed) {
    {
      py::gil_scoped_release release;
      state_ = reset_world(seed);
    }
    return observations();
  }

  py::tuple step(const std::vector<int>& action_ids) {
    if (!state_) throw std::runtime_error("call reset() before step()");
    const int n = state_->num_players();
    if (static_cast<int>(action_ids.size()) != n) {
      throw py::value_error("expected " + std::to_string(n) + " actions, got " + std::to_string(action_ids.size()));
    }
    std::vector<PlayerAction> actions;
    for (int id : action_ids) {
      if (id < 0 || id >= PlayerAction::num_ids(n)) throw py::value_error("action id out of range: " + std::to_string(id));
      actions.push_back(PlayerAction::from_id(id, n));
    }
    StepOutcome out;
    {
      py::gil_scoped_release release;
      out = hidden_agenda::step(*state_, actions);
    }
    py::array_t<double> rewards(n);
    std::memcpy(rewards.mutable_data(), out.rewards.data(), n * sizeof(double));
    py::list events;
    for (const auto& e : out.events) events.append(to_python(json_io::event_to_json(e)));
    py::dict info;
    info["events"] = events;
    info["outcome"] = out.terminal ? py::object(py::str(std::string(to_string(*out.terminal)))) : py::none();
    info["phase"] = std::string(to_string(state_->phase));
    if (privileged_) {
      py::list hindsight;
      for (int p = 0; p < n; ++p) {
        const PrivilegedInfo pi = privileged_info(*state_, p);
        py::dict d;
        d["identity"] = py::array_t<float>(pi.identity.size(), pi.identity.data());
        d["distances"] = py::array_t<float>(pi.distances.size(), pi.distances.data());
        hindsight.append(d);
      }
      info["privileged"] = hindsight;
    }
    return py::make_tuple(observations(), rewards, out.terminal.has_value(), info);
  }

  void close() { state_.reset(); }
  std::uint64_t digest() const {
    if (!state_) throw std::runtime_error("call reset() first");
    return state_digest(*state_);
  }
  int num_players() const { return config_.num_players; }
  py::dict config() const { return config_to_mapping(config_); }

 private:
  std::optional<WorldState> reset_world(std::uint64_t seed) const { return hidden_agenda::reset(config_, seed); }

  py::list observations() const {
    std::vector<ObservationBundle> bundles;
    {
      py::gil_scoped_release release;
      bundles = observe_all(*state_);
    }
    py::list out;
    for (const auto& b : bundles) out.append(observation_to_python(b));
    return out;
  }

  GameConfig config_;
  bool privileged_ = false;
  std::optional<WorldState> state_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hidden Agenda environment bindings";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);
  py::register_exception<MapError>(m, "MapError", PyExc_ValueError);

  py::class_<Env>(m, "Env")
      .def(py::init<const py::dict&, bool>(), py::arg("config") = py::dict(), py::arg("privileged") = false)
      .def_static("from_file", &Env::from_file, py::arg("path"), py::arg("privileged") = false)
      .def("reset", &Env::reset, py::arg("seed") = 0)
      .def("step", &Env::step, py::arg("actions"))
      .def("close", &Env::close)
      .def("state_digest", &Env::digest)
      .def_property_readonly("num_players", &Env::num_players)
      .def_property_readonly("config", &Env::config);

  m.def("action_id", [](const std::string& name, int num_players) {
    return PlayerAction::from_name(name, num_players).to_id();
  }, py::arg("name"), py::arg("num_players") = 5);
  m.def("action_name", [](int id, int num_players) { return PlayerAction::from_id(id, num_players).to_name(); },
        py::arg("id"), py::arg("num_players") = 5);
  m.def("config_keys", &config_keys);
}

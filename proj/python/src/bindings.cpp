// Copyright 2026 The hamnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamnet/complexity.hpp"
#include "hamnet/error.hpp"
#include "hamnet/experiments.hpp"
#include "hamnet/features.hpp"
#include "hamnet/hamming_net.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/pipeline.hpp"
#include "hamnet/sampler.hpp"

namespace py = pybind11;

namespace hamnet {
namespace {

std::vector<Bitstring> parse_all(const std::vector<std::string>& texts) {
  std::vector<Bitstring> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(Bitstring::parse(t));
  return out;
}

std::vector<std::string> render_all(const std::vector<Bitstring>& bits) {
  std::vector<std::string> out;
  out.reserve(bits.size());
  for (const auto& b : bits) out.push_back(b.to_string());
  return out;
}

CollisionFreeDistribution distribution_for(
    const std::optional<ComplexMatrix>& u, int modes, int photons,
    const std::string& regime_name, std::optional<std::vector<int>> inputs) {
  const Regime regime = parse_regime(regime_name);
  if (regime == Regime::kUniform) {
    const int m = u ? static_cast<int>(u->rows()) : modes;
    return uniform_distribution(m, photons);
  }
  if (!u) throw DomainError("a unitary is required for regime " + regime_name);
  const UnitaryMatrix checked = UnitaryMatrix::from_matrix(*u);
  const std::vector<int> in = inputs ? *inputs : default_input_modes(photons);
  return collision_free_distribution(checked, in, regime);
}

py::dict distribution_dict(const CollisionFreeDistribution& d) {
  py::dict out;
  out["bitstrings"] = render_all(d.outcomes);
  out["probabilities"] = d.probabilities;
  out["modes"] = d.modes;
  out["photons"] = d.photons;
  return out;
}

}  // namespace
}  // namespace hamnet

PYBIND11_MODULE(_core, m) {
  using namespace hamnet;
  m.doc() = "Hamming-network features and boson-sampling simulation";

  auto base = py::register_exception<Error>(m, "HamnetError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def("haar_unitary",
        [](int modes, std::uint64_t seed, std::uint64_t index) {
          return pool_matrix(seed, index, modes).matrix();
        },
        py::arg("modes"), py::arg("seed"), py::arg("index") = 0,
        "The index-th Haar-random unitary of the pool defined by seed.");

  m.def("permanent", py::overload_cast<const ComplexMatrix&>(&permanent),
        py::arg("a"));

  m.def("collision_free_distribution",
        [](const std::optional<ComplexMatrix>& u, int photons,
           const std::string& regime, int modes,
           std::optional<std::vector<int>> input_modes) {
          return distribution_dict(
              distribution_for(u, modes, photons, regime, input_modes));
        },
        py::arg("unitary"), py::arg("photons"), py::arg("regime"),
        py::arg("modes") = 0, py::arg("input_modes") = py::none(),
        "Outcome table conditioned on no collisions; pass unitary=None and "
        "modes=m for the uniform regime.");

  m.def("collision_probability",
        [](const ComplexMatrix& u, int photons, const std::string& regime) {
          return collision_probability(UnitaryMatrix::from_matrix(u),
                                       default_input_modes(photons),
                                       parse_regime(regime));
        },
        py::arg("unitary"), py::arg("photons"), py::arg("regime"));

  m.def("sample_unique",
        [](const std::optional<ComplexMatrix>& u, int photons,
           const std::string& regime, std::size_t num_unique,
           std::uint64_t seed, int modes) {
          const auto dist = distribution_for(u, modes, photons, regime, {});
          Rng rng = stream_rng(seed, StreamKind::kSample, 0, 0);
          const SampleSet s = draw_unique(dist, num_unique, rng);
          py::dict out;
          out["bitstrings"] = render_all(s.bitstrings);
          out["n_meas"] = s.n_meas;
          out["repetition_fraction"] = repetition_fraction(s);
          return out;
        },
        py::arg("unitary"), py::arg("photons"), py::arg("regime"),
        py::arg("num_unique"), py::arg("seed"), py::arg("modes") = 0);

  m.def("degrees",
        [](const std::vector<std::string>& nodes, int radius) {
          return build_network(parse_all(nodes), radius).degrees;
        },
        py::arg("bitstrings"), py::arg("radius"));

  m.def("hamming_features",
        [](const std::vector<std::string>& nodes, std::vector<int> radii) {
          return hamming_features(parse_all(nodes), RadiiSet(std::move(radii)));
        },
        py::arg("bitstrings"), py::arg("radii"));

  m.def("correlation_features",
        [](const std::vector<std::string>& nodes) {
          const auto f = correlation_features(correlation_matrix(parse_all(nodes)));
          py::dict out;
          out["nm"] = f.nm;
          out["cv"] = f.cv;
          out["skew"] = f.skew;
          return out;
        },
        py::arg("bitstrings"));

  m.def("feature_names", [](std::vector<int> radii, bool correlations) {
    return feature_names(RadiiSet(std::move(radii)), correlations);
  }, py::arg("radii"), py::arg("include_correlations") = true);

  m.def("complexity",
        [](const std::vector<std::string>& outcomes,
           const std::vector<double>& probabilities) {
          if (outcomes.empty() || outcomes.size() != probabilities.size()) {
            throw DomainError("need one probability per outcome");
          }
          CollisionFreeDistribution d;
          d.outcomes = parse_all(outcomes);
          d.probabilities = probabilities;
          d.modes = d.outcomes.front().length();
          d.photons = d.outcomes.front().weight();
          const ComplexityMeasures c =
              complexity_measures(d, Bipartition::half(d.modes));
          py::dict out;
          out["shannon"] = c.shannon;
          out["von_neumann"] = c.von_neumann;
          out["mutual_information"] = c.mutual_information;
          return out;
        },
        py::arg("bitstrings"), py::arg("probabilities"),
        "Shannon entropy, half-split entanglement entropy and classical "
        "mutual information, all in bits.");

  m.def("run_preset",
        [](const std::string& preset, const std::string& config_json) {
          const ExperimentConfig c =
              ExperimentConfig::from_json(nlohmann::json::parse(config_json));
          const PresetReport r = run_preset(preset, c);
          return r.summary.dump();
        },
        py::arg("preset"), py::arg("config_json"),
        "Runs a preset and returns its summary as a JSON string.");

  m.attr("presets") = [] {
    std::vector<std::string> names;
    for (auto n : kPresetNames) names.emplace_back(n);
    return names;
  }();
}

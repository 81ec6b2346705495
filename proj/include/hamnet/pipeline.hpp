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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamnet/classifier.hpp"
#include "hamnet/features.hpp"
#include "hamnet/sampler.hpp"
#include "json.hpp"

namespace hamnet {

/// Everything a preset needs. Loaded from a single JSON file; every field is
/// optional there and may be overridden on the command line. Each preset
/// reads only the fields relevant to it (see README).
struct ExperimentConfig {
  int photons = 4;
  int modes = 0;  // 0: photons^2
  std::vector<int> input_modes;
  std::size_t num_unique = 1024;
  std::vector<int> radii;  // empty: RadiiSet::defaults_for(photons)
  int radius = 4;          // single radius for degree-distribution figures
  int train_matrices = 80;
  int test_matrices = 20;
  int samples_per_matrix = 100;
  int matrices = 100;  // pool size for matrix-averaged curves
  std::vector<int> photon_list = {2, 3, 4, 5};  // m = n^2 sweeps
  std::vector<int> ml_photon_list = {4, 5};     // classifier and tables
  std::vector<std::size_t> sample_sizes = {512, 1024};
  std::vector<std::size_t> network_sizes = {16, 32, 64, 128, 256, 512, 1024};
  std::vector<std::uint64_t> checkpoints;  // empty: log-spaced to max
  std::uint64_t coverage_max_meas = 100000;
  int collision_fixed_photons = 3;
  std::vector<int> collision_modes = {3, 4, 6, 9, 12, 16, 20, 25, 30};
  int scan_max_size = 3;
  bool include_correlations = true;
  double lambda = 1.0;
  double tolerance = 1e-6;
  int max_iterations = 500;
  double threshold_sigma = 3.0;
  int reference_ensemble = 32;
  std::optional<std::uint64_t> seed;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  std::uint64_t max_measurements = kDefaultMaxMeasurements;
  bool long_running = false;
  std::filesystem::path output_dir = "hamnet_out";

  int effective_modes() const { return modes > 0 ? modes : photons * photons; }
  RadiiSet effective_radii() const;
  /// Throws DomainError on inconsistent settings.
  void validate() const;

  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  /// FNV-1a over the canonical JSON form, as 16 hex digits.
  std::string hash() const;
};

ExperimentConfig load_config(const std::filesystem::path& path);

inline constexpr std::string_view kPresetNames[] = {
    "fig3",        "fig4",        "fig5",
    "fig6-ml",     "fig-shannon", "fig7",
    "fig8",        "table-ml",    "table-repetitions",
    "radii-scan",  "collisions",
};

struct PresetReport {
  std::string preset;
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
};

/// Runs a named preset, writing CSVs (12 significant digits, a comment line
/// carrying config hash and seed, then a header row) and a matplotlib script
/// per CSV into config.output_dir. Internal invariant failures raise
/// InvariantError. The seed is mandatory.
PresetReport run_preset(std::string_view preset, const ExperimentConfig& config);

/// Context stored alongside a trained classifier so certification can
/// recompute matching features.
struct ModelContext {
  int modes = 0;
  int photons = 0;
  std::size_t num_unique = 0;
  std::vector<int> radii;
  bool include_correlations = true;
  std::uint64_t seed = 0;
};

struct ModelFile {
  Classifier classifier;
  ModelContext context;
};

void write_model_file(const std::filesystem::path& path, const ModelFile& m);
ModelFile read_model_file(const std::filesystem::path& path);

struct CertifyOptions {
  double threshold_sigma = 3.0;
  int reference_ensemble = 32;
  std::uint64_t seed = 0;
};

struct Verdict {
  std::string verdict;  // "uniform", "indistinguishable", "distinguishable"
  int radius = 0;
  double sample_mean_degree = 0.0;
  double reference_mean = 0.0;
  double reference_std = 0.0;
  double z_score = 0.0;
  bool nonuniform = false;
  std::optional<Prediction> prediction;

  nlohmann::json to_json() const;
};

/// Two stages: mean degree at the model's smallest radius against an
/// ensemble of uniform references of equal size (nonuniform beyond
/// threshold_sigma ensemble deviations), then the classifier for
/// nonuniform samples. Throws DomainError when the sample's m, n or N
/// differs from the model context.
Verdict certify(const SampleSet& sample, const ModelFile& model,
                const CertifyOptions& options);

}  // namespace hamnet

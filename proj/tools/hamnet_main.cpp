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

// hamnet: generate Haar matrices, draw unique sample sets, run experiment
// presets and certify sample sets against a trained model.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hamnet/error.hpp"
#include "hamnet/experiments.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/parallel.hpp"
#include "hamnet/pipeline.hpp"
#include "hamnet/sampler.hpp"

namespace fs = std::filesystem;
using namespace hamnet;

namespace {

struct HaarArgs {
  int modes = 0;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct SampleArgs {
  std::string matrix;
  int photons = 0;
  int modes = 0;
  std::string regime;
  std::size_t num_unique = 0;
  std::uint64_t seed = 0;
  int sets = 1;
  std::vector<int> input_modes;
  std::uint64_t max_meas = kDefaultMaxMeasurements;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out;
};

struct PipelineArgs {
  std::string preset;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> photons;
  std::optional<int> modes;
  std::optional<std::size_t> num_unique;
  std::optional<int> matrices;
  std::optional<int> samples_per_matrix;
  std::optional<int> train_matrices;
  std::optional<int> test_matrices;
  std::optional<int> radius;
  std::vector<int> radii;
  std::vector<int> photon_list;
  std::vector<int> ml_photon_list;
  std::vector<std::size_t> sample_sizes;
  std::optional<double> lambda;
  bool long_running = false;
  std::string out;
};

struct CertifyArgs {
  std::string samples;
  std::string model;
  std::uint64_t seed = 0;
  double threshold_sigma = 3.0;
  int reference_ensemble = 32;
  std::string out;
};

int run_haar_gen(const HaarArgs& a) {
  if (a.modes < 1 || a.modes > 64) {
    throw UsageError("--modes must be in [1, 64]");
  }
  if (a.count < 1) throw UsageError("--count must be >= 1");
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create " + a.out + ": " + ec.message());
  for (int i = 0; i < a.count; ++i) {
    const UnitaryMatrix u = pool_matrix(a.seed, i, a.modes);
    write_unitary_file(fs::path(a.out) / (matrix_id(a.seed, i) + ".json"), u);
  }
  std::cout << "wrote " << a.count << " unitaries of size " << a.modes
            << " to " << a.out << '\n';
  return 0;
}

int run_sample(const SampleArgs& a) {
  const Regime regime = parse_regime(a.regime);
  if (a.photons < 1) throw UsageError("--photons must be >= 1");
  if (a.num_unique < 1) throw UsageError("--num-unique must be >= 1");
  if (a.sets < 1) throw UsageError("--sets must be >= 1");
  CollisionFreeDistribution dist;
  std::string id;
  if (regime == Regime::kUniform) {
    int modes = a.modes;
    if (!a.matrix.empty()) modes = read_unitary_file(a.matrix).modes();
    if (modes < 1) throw UsageError("uniform regime needs --modes or --matrix");
    dist = uniform_distribution(modes, a.photons, a.budget);
    id = "uniform";
  } else {
    if (a.matrix.empty()) throw UsageError("--matrix is required for this regime");
    const UnitaryMatrix u = read_unitary_file(a.matrix);
    if (a.modes > 0 && a.modes != u.modes()) {
      throw DomainError("--modes disagrees with the matrix size");
    }
    const std::vector<int> inputs =
        a.input_modes.empty() ? default_input_modes(a.photons) : a.input_modes;
    dist = collision_free_distribution(u, inputs, regime, a.budget);
    id = fs::path(a.matrix).stem().string();
  }
  const CumulativeTable table(dist.probabilities);
  const bool to_stdout = a.out.empty() || a.out == "-";
  // Keep stdout pure JSON lines when the sets go there.
  std::ostream& log = to_stdout ? std::cerr : std::cout;
  std::vector<SampleSet> sets;
  for (int s = 0; s < a.sets; ++s) {
    Rng rng = stream_rng(a.seed, StreamKind::kSample, 0, s);
    SampleSet set = draw_unique(dist, table, a.num_unique, rng, a.max_meas);
    set.matrix_id = id;
    set.seed = stream_seed(a.seed, StreamKind::kSample, 0, s);
    log << "set " << s << ": N = " << set.size()
              << ", N_meas = " << set.n_meas
              << ", repetition fraction = " << repetition_fraction(set)
              << ", repetitions per unique = " << repetitions_per_unique(set)
              << '\n';
    sets.push_back(std::move(set));
  }
  if (to_stdout) {
    write_sample_sets(std::cout, sets);
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + a.out);
    write_sample_sets(out, sets);
  }
  return 0;
}

int run_pipeline(const PipelineArgs& a) {
  ExperimentConfig c = a.config.empty() ? ExperimentConfig{}
                                        : load_config(a.config);
  if (a.seed) c.seed = a.seed;
  if (a.photons) c.photons = *a.photons;
  if (a.modes) c.modes = *a.modes;
  if (a.num_unique) c.num_unique = *a.num_unique;
  if (a.matrices) c.matrices = *a.matrices;
  if (a.samples_per_matrix) c.samples_per_matrix = *a.samples_per_matrix;
  if (a.train_matrices) c.train_matrices = *a.train_matrices;
  if (a.test_matrices) c.test_matrices = *a.test_matrices;
  if (a.radius) c.radius = *a.radius;
  if (!a.radii.empty()) c.radii = a.radii;
  if (!a.photon_list.empty()) c.photon_list = a.photon_list;
  if (!a.ml_photon_list.empty()) c.ml_photon_list = a.ml_photon_list;
  if (!a.sample_sizes.empty()) c.sample_sizes = a.sample_sizes;
  if (a.lambda) c.lambda = *a.lambda;
  if (a.long_running) c.long_running = true;
  if (!a.out.empty()) c.output_dir = a.out;
  if (!c.seed) throw UsageError("--seed is required (or \"seed\" in the config)");

  const PresetReport report = run_preset(a.preset, c);
  for (const auto& f : report.files) std::cerr << "wrote " << f.string() << '\n';
  std::cout << report.summary.dump(2) << '\n';
  return 0;
}

int run_certify(const CertifyArgs& a) {
  const ModelFile model = read_model_file(a.model);
  const std::vector<SampleSet> sets = read_sample_sets(a.samples);
  if (sets.empty()) throw DomainError("no sample sets in " + a.samples);
  CertifyOptions opt;
  opt.seed = a.seed;
  opt.threshold_sigma = a.threshold_sigma;
  opt.reference_ensemble = a.reference_ensemble;
  nlohmann::json verdicts = nlohmann::json::array();
  for (const SampleSet& s : sets) {
    nlohmann::json v = certify(s, model, opt).to_json();
    v["matrix_id"] = s.matrix_id;
    verdicts.push_back(std::move(v));
  }
  const nlohmann::json doc =
      verdicts.size() == 1 ? verdicts.front() : verdicts;
  if (a.out.empty() || a.out == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + a.out);
    out << doc.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamming-network certification toolkit for boson samplers"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (default: OMP_NUM_THREADS or all cores)");

  HaarArgs haar;
  auto* cmd_haar = app.add_subcommand("haar-gen", "Write Haar-random unitaries");
  cmd_haar->add_option("--modes", haar.modes, "Matrix size m")->required();
  cmd_haar->add_option("--count", haar.count, "Number of matrices");
  cmd_haar->add_option("--seed", haar.seed, "Master seed")->required();
  cmd_haar->add_option("--out", haar.out, "Output directory");

  SampleArgs sample;
  auto* cmd_sample =
      app.add_subcommand("sample", "Draw unique collision-free sample sets");
  cmd_sample->add_option("--matrix", sample.matrix, "Unitary JSON file");
  cmd_sample->add_option("--modes", sample.modes,
                         "Mode count (uniform regime without --matrix)");
  cmd_sample->add_option("--photons", sample.photons, "Photon number n")
      ->required();
  cmd_sample
      ->add_option("--regime", sample.regime,
                   "indistinguishable, distinguishable or uniform")
      ->required();
  cmd_sample->add_option("--num-unique", sample.num_unique, "Unique outcomes N")
      ->required();
  cmd_sample->add_option("--seed", sample.seed, "Seed")->required();
  cmd_sample->add_option("--sets", sample.sets, "Number of sample sets");
  cmd_sample->add_option("--input-modes", sample.input_modes,
                         "Occupied input modes (default 0..n-1)")
      ->delimiter(',');
  cmd_sample->add_option("--max-meas", sample.max_meas, "Draw limit per set");
  cmd_sample->add_option("--budget", sample.budget, "Enumeration budget");
  cmd_sample->add_option("--out", sample.out, "JSON-lines output (default stdout)");

  PipelineArgs pipe;
  auto* cmd_pipe = app.add_subcommand("pipeline", "Run an experiment preset");
  std::vector<std::string> presets(std::begin(kPresetNames),
                                   std::end(kPresetNames));
  cmd_pipe->add_option("preset", pipe.preset, "Preset name")
      ->required()
      ->check(CLI::IsMember(presets));
  cmd_pipe->add_option("--config", pipe.config, "JSON config file");
  cmd_pipe->add_option("--seed", pipe.seed, "Master seed (mandatory)");
  cmd_pipe->add_option("--photons", pipe.photons);
  cmd_pipe->add_option("--modes", pipe.modes);
  cmd_pipe->add_option("--num-unique", pipe.num_unique);
  cmd_pipe->add_option("--matrices", pipe.matrices);
  cmd_pipe->add_option("--samples-per-matrix", pipe.samples_per_matrix);
  cmd_pipe->add_option("--train-matrices", pipe.train_matrices);
  cmd_pipe->add_option("--test-matrices", pipe.test_matrices);
  cmd_pipe->add_option("--radius", pipe.radius);
  cmd_pipe->add_option("--radii", pipe.radii)->delimiter(',');
  cmd_pipe->add_option("--photon-list", pipe.photon_list)->delimiter(',');
  cmd_pipe->add_option("--ml-photon-list", pipe.ml_photon_list)->delimiter(',');
  cmd_pipe->add_option("--sample-sizes", pipe.sample_sizes)->delimiter(',');
  cmd_pipe->add_option("--lambda", pipe.lambda);
  cmd_pipe->add_flag("--long-running", pipe.long_running,
                     "Allow n >= 6 exact enumeration");
  cmd_pipe->add_option("--out", pipe.out, "Output directory");

  CertifyArgs cert;
  auto* cmd_cert =
      app.add_subcommand("certify", "Certify sample sets against a model");
  cmd_cert->add_option("--samples", cert.samples, "JSON-lines sample sets")
      ->required();
  cmd_cert->add_option("--model", cert.model, "Model JSON")->required();
  cmd_cert->add_option("--seed", cert.seed, "Seed for the uniform references");
  cmd_cert->add_option("--threshold-sigma", cert.threshold_sigma);
  cmd_cert->add_option("--reference-ensemble", cert.reference_ensemble);
  cmd_cert->add_option("--out", cert.out, "Verdict JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  if (const char* env = std::getenv("HAMNET_THREADS")) {
    set_thread_count(std::atoi(env));
  }
  set_thread_count(threads);

  try {
    if (*cmd_haar) return run_haar_gen(haar);
    if (*cmd_sample) return run_sample(sample);
    if (*cmd_pipe) return run_pipeline(pipe);
    return run_certify(cert);
  } catch (const Error& e) {
    std::cerr << "hamnet: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "hamnet: internal error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInvariant);
  }
}

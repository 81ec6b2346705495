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

#include "hamnet/experiments.hpp"

#include <cmath>
#include <sstream>

#include "hamnet/error.hpp"
#include "hamnet/parallel.hpp"

namespace hamnet {

namespace {

std::uint64_t stream_tag(StreamKind kind, std::uint64_t sub) {
  return (static_cast<std::uint64_t>(kind) << 56) ^ sub;
}

int regime_index(Regime r) { return r == Regime::kIndistinguishable ? 0 : 1; }

constexpr Regime kPhysical[2] = {Regime::kIndistinguishable,
                                 Regime::kDistinguishable};

}  // namespace

Rng stream_rng(std::uint64_t seed, StreamKind kind, std::uint64_t index,
               std::uint64_t sub) {
  return make_rng(seed, index, stream_tag(kind, sub));
}

std::uint64_t stream_seed(std::uint64_t seed, StreamKind kind,
                          std::uint64_t index, std::uint64_t sub) {
  return derive_seed(seed, index, stream_tag(kind, sub));
}

std::string matrix_id(std::uint64_t seed, std::uint64_t index) {
  return "U_" + std::to_string(seed) + "_" + std::to_string(index);
}

UnitaryMatrix pool_matrix(std::uint64_t seed, std::uint64_t index,
                          int modes) {
  Rng rng = stream_rng(seed, StreamKind::kMatrix, index);
  return haar_unitary(modes, rng);
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

std::vector<int> PoolSpec::inputs() const {
  return input_modes.empty() ? default_input_modes(photons) : input_modes;
}

CollisionFreeDistribution pool_distribution(const PoolSpec& pool,
                                            std::uint64_t index,
                                            Regime regime) {
  if (regime == Regime::kUniform) {
    return uniform_distribution(pool.modes, pool.photons, pool.budget);
  }
  const UnitaryMatrix u = pool_matrix(pool.seed, index, pool.modes);
  const std::vector<int> inputs = pool.inputs();
  return collision_free_distribution(u, inputs, regime, pool.budget);
}

LabeledDataset build_ml_dataset(const MlDatasetSpec& spec) {
  spec.radii.check_photons(spec.pool.photons);
  LabeledDataset out;
  out.feature_names = feature_names(spec.radii, spec.include_correlations);
  const int samples = spec.samples_per_matrix;
  out.records.resize(static_cast<std::size_t>(spec.matrix_count) * 2 *
                     samples);
  for (int k = 0; k < spec.matrix_count; ++k) {
    const std::uint64_t index = static_cast<std::uint64_t>(spec.first_matrix + k);
    const std::string id = matrix_id(spec.pool.seed, index);
    const UnitaryMatrix u = pool_matrix(spec.pool.seed, index, spec.pool.modes);
    const std::vector<int> inputs = spec.pool.inputs();
    const CollisionFreeDistribution dists[2] = {
        collision_free_distribution(u, inputs, kPhysical[0], spec.pool.budget),
        collision_free_distribution(u, inputs, kPhysical[1], spec.pool.budget),
    };
    const CumulativeTable tables[2] = {CumulativeTable(dists[0].probabilities),
                                       CumulativeTable(dists[1].probabilities)};
    parallel_for(2 * samples, [&](std::int64_t task) {
      const int r = static_cast<int>(task / samples);
      const int s = static_cast<int>(task % samples);
      const std::uint64_t sub = (static_cast<std::uint64_t>(r) << 32) | s;
      Rng rng = stream_rng(spec.pool.seed, StreamKind::kMlSample, index, sub);
      SampleSet set = draw_unique(dists[r], tables[r], spec.num_unique, rng,
                                  spec.pool.max_meas);
      set.matrix_id = id;
      set.seed = stream_seed(spec.pool.seed, StreamKind::kMlSample, index, sub);
      FeatureVector v =
          assemble_features(set, spec.radii, spec.include_correlations);
      LabeledRecord& rec =
          out.records[(static_cast<std::size_t>(k) * 2 + r) * samples + s];
      rec.features = std::move(v.values);
      rec.label = kPhysical[r] == Regime::kIndistinguishable
                      ? kLabelIndistinguishable
                      : kLabelDistinguishable;
      rec.matrix_id = id;
    });
  }
  return out;
}

MlData generate_ml_data(const MlExperimentSpec& spec) {
  MlData data;
  MlDatasetSpec train_spec = spec.data;
  train_spec.first_matrix = 0;
  train_spec.matrix_count = spec.train_matrices;
  MlDatasetSpec test_spec = spec.data;
  test_spec.first_matrix = spec.train_matrices;
  test_spec.matrix_count = spec.test_matrices;
  data.train = build_ml_dataset(train_spec);
  data.test = build_ml_dataset(test_spec);
  for (int i = 0; i < spec.train_matrices; ++i) {
    data.train_ids.push_back(matrix_id(spec.data.pool.seed, i));
  }
  for (int i = 0; i < spec.test_matrices; ++i) {
    data.test_ids.push_back(
        matrix_id(spec.data.pool.seed, spec.train_matrices + i));
  }
  return data;
}

MlEvaluation train_and_evaluate(const MlData& data,
                                std::span<const std::string> columns,
                                const TrainingOptions& options) {
  const LabeledDataset train = data.train.select(columns);
  const LabeledDataset test = data.test.select(columns);
  MlEvaluation out;
  out.classifier = fit_classifier(train, options);
  out.train = evaluate(out.classifier, train);
  out.test = evaluate(out.classifier, test);
  return out;
}

RegimePair collision_statistics(const PoolSpec& pool, int matrices) {
  RegimePair out;
  const std::vector<int> inputs = pool.inputs();
  for (int i = 0; i < matrices; ++i) {
    const UnitaryMatrix u = pool_matrix(pool.seed, i, pool.modes);
    out.indistinguishable.push_back(collision_probability(
        u, inputs, Regime::kIndistinguishable, pool.budget));
    out.distinguishable.push_back(collision_probability(
        u, inputs, Regime::kDistinguishable, pool.budget));
  }
  return out;
}

RepetitionStats repetition_statistics(const PoolSpec& pool, int matrices,
                                      std::size_t num_unique) {
  RepetitionStats out;
  for (int i = 0; i < matrices; ++i) {
    for (Regime regime : kPhysical) {
      const CollisionFreeDistribution dist =
          pool_distribution(pool, i, regime);
      Rng rng = stream_rng(pool.seed, StreamKind::kRepetition, i,
                           regime_index(regime));
      const SampleSet s = draw_unique(dist, num_unique, rng, pool.max_meas);
      const bool indist = regime == Regime::kIndistinguishable;
      (indist ? out.fraction.indistinguishable : out.fraction.distinguishable)
          .push_back(repetition_fraction(s));
      (indist ? out.per_unique.indistinguishable
              : out.per_unique.distinguishable)
          .push_back(repetitions_per_unique(s));
    }
  }
  return out;
}

DegreeSampleStats degree_samples(const CollisionFreeDistribution& dist,
                                 std::size_t num_unique, int radius, int count,
                                 std::uint64_t seed, std::uint64_t stream) {
  const CumulativeTable table(dist.probabilities);
  DegreeSampleStats out;
  out.moments.resize(count);
  out.distributions.resize(count);
  out.unique_degrees.resize(count);
  parallel_for(count, [&](std::int64_t s) {
    Rng rng = stream_rng(seed, StreamKind::kDegree, stream, s);
    const SampleSet set = draw_unique(dist, table, num_unique, rng);
    const HammingNetwork net = build_network(set, radius);
    out.moments[s] = degree_moments(net);
    out.distributions[s] = degree_distribution(net);
    out.unique_degrees[s] = unique_degree_count(net);
  });
  return out;
}

ComplexityMeasures complexity_measures(const CollisionFreeDistribution& dist,
                                       const Bipartition& bp) {
  ComplexityMeasures out;
  out.shannon = shannon_entropy(dist);
  out.von_neumann = von_neumann_entropy(dicke_state(dist), bp).entropy_bits;
  out.mutual_information = classical_mutual_information(dist, bp);
  return out;
}

std::vector<ComplexityMeasures> complexity_sweep(const PoolSpec& pool,
                                                 Regime regime, int matrices) {
  const Bipartition bp = Bipartition::half(pool.modes);
  if (regime == Regime::kUniform) {
    const ComplexityMeasures uniform = complexity_measures(
        uniform_distribution(pool.modes, pool.photons, pool.budget), bp);
    return std::vector<ComplexityMeasures>(matrices, uniform);
  }
  std::vector<ComplexityMeasures> out;
  out.reserve(matrices);
  for (int i = 0; i < matrices; ++i) {
    out.push_back(complexity_measures(pool_distribution(pool, i, regime), bp));
  }
  return out;
}

void require_tractable(int modes, int photons, int matrices,
                       bool long_running) {
  if (photons < 6 || long_running) return;
  const double outcomes = static_cast<double>(binomial(modes, photons));
  // Ryser: 2^n steps of ~2n complex multiply-adds, two regimes per matrix.
  const double flops =
      outcomes * std::ldexp(1.0, photons) * 8.0 * photons * 2.0 * matrices;
  std::ostringstream msg;
  msg << "n = " << photons << " needs " << outcomes
      << " permanents per matrix and regime (~" << flops / 1e9 / 3600.0
      << " CPU-hours at 1 GFLOP/s for " << matrices
      << " matrices); rerun with --long-running to proceed";
  throw ResourceError(msg.str());
}

}  // namespace hamnet

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
#include <span>
#include <string>
#include <vector>

#include "hamnet/classifier.hpp"
#include "hamnet/complexity.hpp"
#include "hamnet/features.hpp"
#include "hamnet/hamming_net.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/random.hpp"
#include "hamnet/sampler.hpp"

namespace hamnet {

// Stream kinds keep the derived random streams of different experiment
// stages disjoint for the same master seed.
enum class StreamKind : std::uint64_t {
  kMatrix = 1,
  kMlSample = 2,
  kRepetition = 3,
  kDegree = 4,
  kCoverage = 5,
  kReference = 6,
  kRawDraws = 7,
  kSample = 8,
};

Rng stream_rng(std::uint64_t seed, StreamKind kind, std::uint64_t index,
               std::uint64_t sub = 0);
std::uint64_t stream_seed(std::uint64_t seed, StreamKind kind,
                          std::uint64_t index, std::uint64_t sub = 0);

/// "U_{seed}_{index}".
std::string matrix_id(std::uint64_t seed, std::uint64_t index);
/// The index-th Haar matrix of the pool defined by `seed`.
UnitaryMatrix pool_matrix(std::uint64_t seed, std::uint64_t index, int modes);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

/// Shared knobs for experiments over a pool of Haar matrices.
struct PoolSpec {
  int modes = 16;
  int photons = 4;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t max_meas = kDefaultMaxMeasurements;
  std::vector<int> input_modes;  // empty: modes 0..n-1

  std::vector<int> inputs() const;
};

/// Collision-free distribution of the regime for pool matrix `index`.
CollisionFreeDistribution pool_distribution(const PoolSpec& pool,
                                            std::uint64_t index,
                                            Regime regime);

struct MlDatasetSpec {
  PoolSpec pool;
  std::size_t num_unique = 1024;
  RadiiSet radii;
  bool include_correlations = true;
  int first_matrix = 0;
  int matrix_count = 0;
  int samples_per_matrix = 100;
};

/// Labeled feature records (indistinguishable = 1, distinguishable = 0) for
/// `samples_per_matrix` unique sets per regime per matrix. Record order is
/// (matrix, regime, sample) regardless of thread count.
LabeledDataset build_ml_dataset(const MlDatasetSpec& spec);

struct MlExperimentSpec {
  MlDatasetSpec data;  // first_matrix / matrix_count are ignored
  int train_matrices = 80;
  int test_matrices = 20;
  TrainingOptions training;
};

struct MlData {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

/// Train set from pool matrices [0, train), test set from the next `test`
/// matrices, so no matrix is seen by both.
MlData generate_ml_data(const MlExperimentSpec& spec);

struct MlEvaluation {
  Classifier classifier;
  EvaluationReport test;
  EvaluationReport train;
};

/// Fits on the named columns of `train` and scores both splits.
MlEvaluation train_and_evaluate(const MlData& data,
                                std::span<const std::string> columns,
                                const TrainingOptions& options);

struct RegimePair {
  std::vector<double> indistinguishable;
  std::vector<double> distinguishable;
};

/// Per-matrix collision probability for `matrices` pool matrices.
RegimePair collision_statistics(const PoolSpec& pool, int matrices);

struct RepetitionStats {
  RegimePair fraction;     // (N_meas - N) / N_meas
  RegimePair per_unique;   // (N_meas - N) / N
};

/// One unique set of size N per regime per pool matrix.
RepetitionStats repetition_statistics(const PoolSpec& pool, int matrices,
                                      std::size_t num_unique);

struct DegreeSampleStats {
  std::vector<DegreeMoments> moments;
  std::vector<DegreeDistribution> distributions;
  std::vector<std::size_t> unique_degrees;
};

/// `count` independent unique sets of size N from `dist`, each turned into a
/// network at `radius`. Streams are (seed, stream, sample).
DegreeSampleStats degree_samples(const CollisionFreeDistribution& dist,
                                 std::size_t num_unique, int radius, int count,
                                 std::uint64_t seed, std::uint64_t stream);

struct ComplexityMeasures {
  double shannon = 0.0;
  double von_neumann = 0.0;
  double mutual_information = 0.0;
};

ComplexityMeasures complexity_measures(const CollisionFreeDistribution& dist,
                                       const Bipartition& bp);

/// Measures for `matrices` pool matrices (one entry each; the uniform regime
/// is matrix-independent and yields identical entries).
std::vector<ComplexityMeasures> complexity_sweep(const PoolSpec& pool,
                                                 Regime regime, int matrices);

/// Cost guard for exact enumeration: throws ResourceError with an estimate
/// when n >= 6 and long-running mode is off.
void require_tractable(int modes, int photons, int matrices,
                       bool long_running);

}  // namespace hamnet

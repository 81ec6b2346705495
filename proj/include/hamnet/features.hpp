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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamnet/bitstring.hpp"
#include "hamnet/hamming_net.hpp"
#include "hamnet/sampler.hpp"

namespace hamnet {

/// Strictly increasing even cutoff radii, each >= 2.
class RadiiSet {
 public:
  RadiiSet() = default;
  explicit RadiiSet(std::vector<int> radii);

  /// {2n-8, 2n-6, 2n-4, 2n-2} restricted to radii >= 2 (falls back to {2}).
  /// Gives {2,4,6} for n=4, {2,4,6,8} for n=5, {4,6,8,10} for n=6 and
  /// {6,8,10,12} for n=7.
  static RadiiSet defaults_for(int photons);

  /// Throws DomainError when a radius exceeds 2n.
  void check_photons(int photons) const;

  const std::vector<int>& values() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  int front() const { return radii_.front(); }

 private:
  std::vector<int> radii_;
};

/// Mode-mode occupation covariances C_ij = <n_i n_j> - <n_i><n_j>.
using CorrelationMatrix = Eigen::MatrixXd;

/// Where the correlation statistics came from. Unique collision-free sets
/// and raw draws (with collisions and repetitions) are never mixed within a
/// dataset.
enum class CorrelationSource { kUniqueSet, kRawDraws };

/// [mu_R1, sigma_R1, mu_R2, sigma_R2, ...] from a single distance pass.
std::vector<double> hamming_features(const SampleSet& s, const RadiiSet& radii);
std::vector<double> hamming_features(std::span<const Bitstring> nodes,
                                     const RadiiSet& radii);

CorrelationMatrix correlation_matrix(std::span<const Bitstring> sample);
CorrelationMatrix correlation_matrix(
    std::span<const OutputConfiguration> sample);

struct CorrelationFeatures {
  double nm = 0.0;    // mean of off-diagonal C_ij
  double cv = 0.0;    // sigma / |mean|
  double skew = 0.0;  // third standardized moment
  // Zero spread: cv and skew reported as 0.
  bool degenerate_dispersion = false;
  // Zero mean: cv reported as 0.
  bool degenerate_mean = false;
};

/// Population statistics over {C_ij : i < j}. Needs m >= 2.
CorrelationFeatures correlation_features(const CorrelationMatrix& c);

struct FeatureMetadata {
  int modes = 0;
  int photons = 0;
  std::size_t sample_size = 0;
  Regime regime = Regime::kUniform;
  std::string matrix_id;
  CorrelationSource correlation_source = CorrelationSource::kUniqueSet;
};

struct FeatureVector {
  std::vector<double> values;
  FeatureMetadata metadata;
};

/// Column names matching assemble_features: mu_R{r}, sigma_R{r} per radius,
/// then nm, cv, skew when correlations are included.
std::vector<std::string> feature_names(const RadiiSet& radii,
                                       bool include_correlations);

FeatureVector assemble_features(const SampleSet& s, const RadiiSet& radii,
                                bool include_correlations);

/// Feature CSV: "matrix_id,regime,N,<feature names>".
void write_feature_csv_header(std::ostream& out,
                              std::span<const std::string> names);
void write_feature_csv_row(std::ostream& out, const FeatureVector& v);

}  // namespace hamnet

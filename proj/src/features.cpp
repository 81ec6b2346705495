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

#include "hamnet/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hamnet/error.hpp"

namespace hamnet {

RadiiSet::RadiiSet(std::vector<int> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw DomainError("radii set must not be empty");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    const int r = radii_[i];
    if (r < 2 || r % 2 != 0) {
      throw DomainError("cutoff radius " + std::to_string(r) +
                        " must be even and >= 2");
    }
    if (i > 0 && r <= radii_[i - 1]) {
      throw DomainError("cutoff radii must be strictly increasing");
    }
  }
}

RadiiSet RadiiSet::defaults_for(int photons) {
  std::vector<int> radii;
  for (int r = 2 * photons - 8; r <= 2 * photons - 2; r += 2) {
    if (r >= 2) radii.push_back(r);
  }
  if (radii.empty()) radii.push_back(2);
  return RadiiSet(std::move(radii));
}

void RadiiSet::check_photons(int photons) const {
  for (int r : radii_) {
    if (r > 2 * photons) {
      throw DomainError("cutoff radius " + std::to_string(r) +
                        " exceeds the maximal distance 2n = " +
                        std::to_string(2 * photons));
    }
  }
}

std::vector<double> hamming_features(std::span<const Bitstring> nodes,
                                     const RadiiSet& radii) {
  if (nodes.empty()) throw DomainError("hamming_features: empty sample");
  radii.check_photons(nodes.front().weight());
  const PairwiseDistances distances(nodes);
  std::vector<double> out;
  out.reserve(2 * radii.size());
  for (int r : radii.values()) {
    const DegreeMoments mom = degree_moments(distances.degrees(r));
    out.push_back(mom.mean);
    out.push_back(mom.stddev);
  }
  return out;
}

std::vector<double> hamming_features(const SampleSet& s,
                                     const RadiiSet& radii) {
  return hamming_features(s.bitstrings, radii);
}

namespace {

CorrelationMatrix covariance_from_sums(const Eigen::MatrixXd& second,
                                       const Eigen::VectorXd& first,
                                       double count) {
  const Eigen::VectorXd mean = first / count;
  return second / count - mean * mean.transpose();
}

}  // namespace

CorrelationMatrix correlation_matrix(std::span<const Bitstring> sample) {
  if (sample.empty()) throw DomainError("correlation_matrix: empty sample");
  const int m = sample.front().length();
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(m);
  for (const Bitstring& b : sample) {
    if (b.length() != m) {
      throw DomainError("correlation_matrix: mixed bitstring lengths");
    }
    const std::vector<int> occupied = b.modes();
    for (int i : occupied) {
      first(i) += 1.0;
      for (int j : occupied) second(i, j) += 1.0;
    }
  }
  return covariance_from_sums(second, first,
                              static_cast<double>(sample.size()));
}

CorrelationMatrix correlation_matrix(
    std::span<const OutputConfiguration> sample) {
  if (sample.empty()) throw DomainError("correlation_matrix: empty sample");
  const int m = sample.front().modes();
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(m);
  std::vector<int> occupied;
  for (const OutputConfiguration& s : sample) {
    if (s.modes() != m) {
      throw DomainError("correlation_matrix: mixed configuration sizes");
    }
    occupied.clear();
    for (int i = 0; i < m; ++i) {
      if (s.counts[i] != 0) occupied.push_back(i);
    }
    for (int i : occupied) {
      first(i) += s.counts[i];
      for (int j : occupied) second(i, j) += double(s.counts[i]) * s.counts[j];
    }
  }
  return covariance_from_sums(second, first,
                              static_cast<double>(sample.size()));
}

CorrelationFeatures correlation_features(const CorrelationMatrix& c) {
  const auto m = c.rows();
  if (m < 2 || c.cols() != m) {
    throw DomainError("correlation_features: need a square matrix with m >= 2");
  }
  std::vector<double> values;
  values.reserve(m * (m - 1) / 2);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      values.push_back(c(i, j));
      scale = std::max(scale, std::abs(c(i, j)));
    }
  }
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= count;
  m3 /= count;
  const double sigma = std::sqrt(m2);

  // Relative thresholds: exchangeable inputs give spreads at rounding level.
  constexpr double kRelative = 1e-10;
  CorrelationFeatures out;
  out.nm = mean;
  out.degenerate_dispersion = !(sigma > kRelative * scale);
  out.degenerate_mean = !(std::abs(mean) > kRelative * scale);
  if (out.degenerate_dispersion) return out;
  out.skew = m3 / (sigma * sigma * sigma);
  if (!out.degenerate_mean) out.cv = sigma / std::abs(mean);
  return out;
}

std::vector<std::string> feature_names(const RadiiSet& radii,
                                       bool include_correlations) {
  std::vector<std::string> names;
  for (int r : radii.values()) {
    names.push_back("mu_R" + std::to_string(r));
    names.push_back("sigma_R" + std::to_string(r));
  }
  if (include_correlations) {
    names.insert(names.end(), {"nm", "cv", "skew"});
  }
  return names;
}

FeatureVector assemble_features(const SampleSet& s, const RadiiSet& radii,
                                bool include_correlations) {
  FeatureVector v;
  v.values = hamming_features(s, radii);
  if (include_correlations) {
    const CorrelationFeatures cf =
        correlation_features(correlation_matrix(s.bitstrings));
    v.values.insert(v.values.end(), {cf.nm, cf.cv, cf.skew});
  }
  for (double x : v.values) {
    if (!std::isfinite(x)) throw InvariantError("non-finite feature value");
  }
  v.metadata.modes = s.modes;
  v.metadata.photons = s.photons;
  v.metadata.sample_size = s.size();
  v.metadata.regime = s.regime;
  v.metadata.matrix_id = s.matrix_id;
  v.metadata.correlation_source = CorrelationSource::kUniqueSet;
  return v;
}

void write_feature_csv_header(std::ostream& out,
                              std::span<const std::string> names) {
  out << "matrix_id,regime,N";
  for (const std::string& name : names) out << ',' << name;
  out << '\n';
}

void write_feature_csv_row(std::ostream& out, const FeatureVector& v) {
  const auto old_precision = out.precision(12);
  out << v.metadata.matrix_id << ',' << to_string(v.metadata.regime) << ','
      << v.metadata.sample_size;
  for (double x : v.values) out << ',' << x;
  out << '\n';
  out.precision(old_precision);
}

}  // namespace hamnet

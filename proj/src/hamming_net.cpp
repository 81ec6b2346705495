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

#include "hamnet/hamming_net.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "hamnet/error.hpp"

namespace hamnet {

PairwiseDistances::PairwiseDistances(std::span<const Bitstring> nodes)
    : node_count_(nodes.size()) {
  if (nodes.empty()) return;
  const int length = nodes.front().length();
  photons_ = nodes.front().weight();
  for (const Bitstring& b : nodes) {
    if (b.length() != length || b.weight() != photons_) {
      throw DomainError(
          "network nodes must share length and weight; got " + b.to_string());
    }
  }
  buckets_ = photons_ + 1;
  histogram_.assign(node_count_ * buckets_, 0);
  pair_counts_.assign(buckets_, 0);

  std::vector<std::uint64_t> words(node_count_);
  for (std::size_t i = 0; i < node_count_; ++i) words[i] = nodes[i].bits();

  const auto n = static_cast<std::int64_t>(node_count_);
  bool duplicate = false;
  // Rows are independent: row i owns histogram row i and counts each pair
  // from both ends, so no two threads write the same cell.
#pragma omp parallel for schedule(dynamic, 16) reduction(|| : duplicate)
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint32_t* row = histogram_.data() + i * buckets_;
    const std::uint64_t wi = words[i];
    for (std::int64_t j = 0; j < n; ++j) {
      const int half = std::popcount(wi ^ words[j]) >> 1;
      ++row[half];
    }
    --row[0];  // self
    if (row[0] != 0) duplicate = true;
  }
  if (duplicate) {
    throw InvariantError(
        "network nodes must be distinct (repetition-free sample set)");
  }
  for (std::size_t i = 0; i < node_count_; ++i) {
    for (int d = 0; d < buckets_; ++d) {
      pair_counts_[d] += histogram_[i * buckets_ + d];
    }
  }
  for (auto& c : pair_counts_) c /= 2;
}

std::vector<int> PairwiseDistances::degrees(int radius) const {
  if (radius < 0) throw DomainError("cutoff radius must be >= 0");
  const int top = std::min(radius / 2, buckets_ - 1);
  std::vector<int> out(node_count_, 0);
  for (std::size_t i = 0; i < node_count_; ++i) {
    int deg = 0;
    for (int d = 1; d <= top; ++d) deg += histogram_[i * buckets_ + d];
    out[i] = deg;
  }
  return out;
}

std::uint64_t PairwiseDistances::edge_count(int radius) const {
  if (radius < 0) throw DomainError("cutoff radius must be >= 0");
  const int top = std::min(radius / 2, buckets_ - 1);
  std::uint64_t total = 0;
  for (int d = 1; d <= top; ++d) total += pair_counts_[d];
  return total;
}

HammingNetwork build_network(std::span<const Bitstring> nodes,
                             const PairwiseDistances& distances, int radius) {
  if (distances.node_count() != nodes.size()) {
    throw DomainError("distance pass does not match node list");
  }
  HammingNetwork net;
  net.nodes.assign(nodes.begin(), nodes.end());
  net.radius = radius;
  net.degrees = distances.degrees(radius);
  net.edge_count = distances.edge_count(radius);
  std::uint64_t degree_sum = 0;
  for (int d : net.degrees) degree_sum += static_cast<std::uint64_t>(d);
  if (degree_sum != 2 * net.edge_count) {
    throw InvariantError("handshake identity violated: sum of degrees " +
                         std::to_string(degree_sum) + " != 2 * " +
                         std::to_string(net.edge_count) + " edges");
  }
  return net;
}

HammingNetwork build_network(std::span<const Bitstring> nodes, int radius) {
  if (radius < 0) throw DomainError("cutoff radius must be >= 0");
  const PairwiseDistances distances(nodes);
  return build_network(nodes, distances, radius);
}

HammingNetwork build_network(const SampleSet& s, int radius) {
  return build_network(s.bitstrings, radius);
}

double DegreeDistribution::probability(int k) const {
  const auto it = counts.find(k);
  if (it == counts.end() || node_count == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(node_count);
}

std::vector<std::pair<int, double>> DegreeDistribution::entries() const {
  std::vector<std::pair<int, double>> out;
  out.reserve(counts.size());
  for (const auto& [k, c] : counts) out.emplace_back(k, probability(k));
  return out;
}

DegreeDistribution degree_distribution(std::span<const int> degrees) {
  DegreeDistribution dist;
  dist.node_count = degrees.size();
  for (int d : degrees) ++dist.counts[d];
  return dist;
}

DegreeDistribution degree_distribution(const HammingNetwork& net) {
  return degree_distribution(net.degrees);
}

DegreeMoments degree_moments(std::span<const int> degrees) {
  DegreeMoments out;
  if (degrees.empty()) return out;
  const double n = static_cast<double>(degrees.size());
  double sum = 0.0;
  for (int d : degrees) sum += d;
  out.mean = sum / n;
  double sq = 0.0;
  for (int d : degrees) sq += (d - out.mean) * (d - out.mean);
  out.stddev = std::sqrt(sq / n);
  return out;
}

DegreeMoments degree_moments(const HammingNetwork& net) {
  return degree_moments(net.degrees);
}

std::size_t unique_degree_count(std::span<const int> degrees) {
  return std::set<int>(degrees.begin(), degrees.end()).size();
}

std::size_t unique_degree_count(const HammingNetwork& net) {
  return unique_degree_count(net.degrees);
}

std::vector<std::pair<std::size_t, std::size_t>> edges(
    const HammingNetwork& net) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(net.edge_count);
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      if (hamming_distance(net.nodes[i], net.nodes[j]) <= net.radius) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

void export_edges(const HammingNetwork& net, std::ostream& sink) {
  sink << "# nodes " << net.size() << " radius " << net.radius << '\n';
  for (const auto& [i, j] : edges(net)) sink << i << ' ' << j << '\n';
  if (!sink) throw IoError("failed writing edge list");
}

void write_degree_csv(const HammingNetwork& net, std::ostream& sink) {
  sink << "node_index,degree\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    sink << i << ',' << net.degrees[i] << '\n';
  }
  if (!sink) throw IoError("failed writing degree CSV");
}

void write_distribution_csv(const DegreeDistribution& dist,
                            std::ostream& sink) {
  sink << "k,P_k\n";
  const auto old_precision = sink.precision(12);
  for (const auto& [k, p] : dist.entries()) sink << k << ',' << p << '\n';
  sink.precision(old_precision);
  if (!sink) throw IoError("failed writing degree distribution CSV");
}

}  // namespace hamnet

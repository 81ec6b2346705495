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
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hamnet/bitstring.hpp"
#include "hamnet/sampler.hpp"

namespace hamnet {

/// Per-node histogram of Hamming distances to every other node, computed in
/// one O(N^2) pass and then queried at any number of cutoff radii.
///
/// Nodes must be distinct bitstrings of equal length and weight, so every
/// pairwise distance is even and at least 2; a violation raises
/// InvariantError.
class PairwiseDistances {
 public:
  explicit PairwiseDistances(std::span<const Bitstring> nodes);

  std::size_t node_count() const { return node_count_; }
  int photons() const { return photons_; }
  /// Degree of every node at cutoff `radius` (edge iff D_ij <= radius).
  std::vector<int> degrees(int radius) const;
  /// Number of unordered pairs at distance <= radius.
  std::uint64_t edge_count(int radius) const;

 private:
  std::size_t node_count_ = 0;
  int photons_ = 0;
  int buckets_ = 1;
  // node_count_ x buckets_, bucket d counts neighbours at distance 2d.
  std::vector<std::uint32_t> histogram_;
  std::vector<std::uint64_t> pair_counts_;
};

struct HammingNetwork {
  std::vector<Bitstring> nodes;
  int radius = 0;
  std::vector<int> degrees;
  std::uint64_t edge_count = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Builds the unweighted network at cutoff `radius`; node order follows the
/// sample set. The handshake identity is verified on every build.
HammingNetwork build_network(const SampleSet& s, int radius);
HammingNetwork build_network(std::span<const Bitstring> nodes, int radius);
/// Reuses an existing distance pass.
HammingNetwork build_network(std::span<const Bitstring> nodes,
                             const PairwiseDistances& distances, int radius);

struct DegreeDistribution {
  std::size_t node_count = 0;
  std::map<int, std::uint64_t> counts;  // degree k -> number of nodes

  double probability(int k) const;
  /// (k, P_k) in ascending k.
  std::vector<std::pair<int, double>> entries() const;
};

DegreeDistribution degree_distribution(const HammingNetwork& net);
DegreeDistribution degree_distribution(std::span<const int> degrees);

struct DegreeMoments {
  double mean = 0.0;
  double stddev = 0.0;  // population convention
};

DegreeMoments degree_moments(const HammingNetwork& net);
DegreeMoments degree_moments(std::span<const int> degrees);

std::size_t unique_degree_count(const HammingNetwork& net);
std::size_t unique_degree_count(std::span<const int> degrees);

/// Unordered edge list (i < j, 0-based), ascending.
std::vector<std::pair<std::size_t, std::size_t>> edges(
    const HammingNetwork& net);

/// Writes "# nodes N radius R" then one "i j" line per edge. Throws IoError
/// when the stream fails.
void export_edges(const HammingNetwork& net, std::ostream& sink);
/// CSV with columns node_index,degree.
void write_degree_csv(const HammingNetwork& net, std::ostream& sink);
/// CSV with columns k,P_k.
void write_distribution_csv(const DegreeDistribution& dist,
                            std::ostream& sink);

}  // namespace hamnet

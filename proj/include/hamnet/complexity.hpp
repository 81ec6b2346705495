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
#include <utility>
#include <vector>

#include "hamnet/bitstring.hpp"
#include "hamnet/random.hpp"
#include "hamnet/sampler.hpp"

namespace hamnet {

struct CoveragePoint {
  std::uint64_t measurements = 0;
  double fraction = 0.0;  // distinct outcomes seen / C(m, n)
};

/// Simulates i.i.d. draws and reports the covered fraction of the
/// collision-free state space at each checkpoint (sorted, deduplicated,
/// clipped to max_meas). Nondecreasing in t.
std::vector<CoveragePoint> coverage_curve(
    const CollisionFreeDistribution& dist, std::uint64_t max_meas,
    std::span<const std::uint64_t> checkpoints, Rng& rng);

/// H = -sum p log2 p, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

template <class Outcome>
double shannon_entropy(const OutcomeDistribution<Outcome>& dist) {
  return shannon_entropy(dist.probabilities);
}

/// Probabilities in descending order.
std::vector<double> sorted_profile(std::span<const double> probabilities);

template <class Outcome>
std::vector<double> sorted_profile(const OutcomeDistribution<Outcome>& dist) {
  return sorted_profile(dist.probabilities);
}

/// Random Dicke-like state sum_j alpha_j |b_j> over weight-n bitstrings with
/// alpha_j = sqrt(p_j) (real, nonnegative). Only |alpha_j| enters the
/// entropies, so the phase choice is immaterial.
struct DickeState {
  int modes = 0;
  int photons = 0;
  std::vector<Bitstring> basis;
  std::vector<double> amplitudes;
};

/// Throws DomainError unless the input sums to one within 1e-9.
DickeState dicke_state(const CollisionFreeDistribution& dist);

/// Split of the modes into two disjoint groups covering all of them.
class Bipartition {
 public:
  /// Left = modes 0..ceil(m/2)-1, right = the rest.
  static Bipartition half(int modes);
  Bipartition(int modes, std::vector<int> left);

  int modes() const { return modes_; }
  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }
  std::uint64_t left_mask() const { return left_mask_; }
  std::uint64_t right_mask() const { return right_mask_; }
  /// Same split with the roles of the groups exchanged.
  Bipartition swapped() const;

 private:
  int modes_ = 0;
  std::vector<int> left_;
  std::vector<int> right_;
  std::uint64_t left_mask_ = 0;
  std::uint64_t right_mask_ = 0;
};

inline constexpr std::uint64_t kDefaultSvdBudget = 200'000'000;
// Reduced-density eigenvalues below this are dropped from entropy sums.
inline constexpr double kEigenvalueFloor = 1e-15;

struct EntanglementResult {
  double entropy_bits = 0.0;                // S_A
  std::vector<double> spectrum;             // eigenvalues of rho_A, descending
  double quantum_mutual_information = 0.0;  // I(A:B) = 2 S_A
};

/// Exploits photon-number conservation: basis states are grouped by the
/// number k of photons in the left group; each block (left configs of weight
/// k) x (right configs of weight n-k) is decomposed separately and the
/// squared singular values of all blocks form the Schmidt spectrum. Throws
/// ResourceError when a block exceeds `svd_budget` entries.
EntanglementResult von_neumann_entropy(
    const DickeState& psi, const Bipartition& bp,
    std::uint64_t svd_budget = kDefaultSvdBudget);

/// J(A:B) = H(A) + H(B) - H(X) from exact marginals.
double classical_mutual_information(const CollisionFreeDistribution& dist,
                                    const Bipartition& bp);

/// Empirical collision-free distribution from draws (frequencies).
CollisionFreeDistribution empirical_distribution(
    std::span<const Bitstring> draws, Regime regime);

}  // namespace hamnet

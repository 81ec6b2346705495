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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamnet/bitstring.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/random.hpp"

namespace hamnet {

enum class Regime { kIndistinguishable, kDistinguishable, kUniform };

std::string_view to_string(Regime regime);
/// Accepts "indistinguishable", "distinguishable", "uniform".
Regime parse_regime(std::string_view text);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;
inline constexpr std::uint64_t kDefaultMaxMeasurements = 1'000'000'000;
// Collision-free mass at or below this makes conditioning undefined.
inline constexpr double kDegenerateMass = 1e-12;

/// Exact outcome table. Probabilities are nonnegative and the outcome list is
/// duplicate-free. Collision-free distributions are enumerated in
/// lexicographic order of the occupied-mode lists and renormalized to the
/// collision-free event.
template <class Outcome>
struct OutcomeDistribution {
  int modes = 0;
  int photons = 0;
  Regime regime = Regime::kUniform;
  std::vector<Outcome> outcomes;
  std::vector<double> probabilities;

  std::size_t size() const { return outcomes.size(); }
};

using CollisionFreeDistribution = OutcomeDistribution<Bitstring>;
using FullDistribution = OutcomeDistribution<OutputConfiguration>;

/// Photons enter modes 0..n-1, one per mode.
std::vector<int> default_input_modes(int photons);

/// |Perm(U[S,T])|^2 / prod s_i! (indistinguishable) or Perm(|U|^2[S,T]) /
/// prod s_i! (distinguishable); rows of S repeat per occupation, T are the
/// input modes.
double outcome_probability(const UnitaryMatrix& u,
                           std::span<const int> input_modes,
                           const OutputConfiguration& s, Regime regime);

CollisionFreeDistribution collision_free_distribution(
    const UnitaryMatrix& u, std::span<const int> input_modes, Regime regime,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Total unconditioned probability of the collision-free outcomes.
double collision_free_mass(const UnitaryMatrix& u,
                           std::span<const int> input_modes, Regime regime,
                           std::uint64_t budget = kDefaultEnumerationBudget);

/// Every output multiset, C(m+n-1, n) of them; not renormalized.
FullDistribution full_distribution(
    const UnitaryMatrix& u, std::span<const int> input_modes, Regime regime,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Mass of outcomes with at least one mode holding two or more photons.
double collision_probability(const UnitaryMatrix& u,
                             std::span<const int> input_modes, Regime regime,
                             std::uint64_t budget = kDefaultEnumerationBudget);

CollisionFreeDistribution uniform_distribution(
    int modes, int photons, std::uint64_t budget = kDefaultEnumerationBudget);

/// Throws InvariantError unless probabilities are nonnegative, sum to one
/// within `tolerance`, and match the outcome count.
template <class Outcome>
void check_distribution(const OutcomeDistribution<Outcome>& dist,
                        double tolerance = 1e-9);

/// Inverse-CDF sampler over a fixed probability vector. Zero-probability
/// entries are never drawn. Immutable after construction.
class CumulativeTable {
 public:
  explicit CumulativeTable(std::span<const double> probabilities);

  std::size_t draw(Rng& rng) const;
  std::size_t size() const { return cumulative_.size(); }
  std::size_t support_size() const { return support_; }

 private:
  std::vector<double> cumulative_;
  std::size_t last_positive_ = 0;
  std::size_t support_ = 0;
};

/// i.i.d. draws with replacement.
template <class Outcome>
std::vector<Outcome> draw_samples(const OutcomeDistribution<Outcome>& dist,
                                  std::size_t count, Rng& rng);

/// A repetition-free set of N unique bitstrings and the number of draws that
/// produced it.
struct SampleSet {
  int modes = 0;
  int photons = 0;
  Regime regime = Regime::kUniform;
  std::string matrix_id;
  std::uint64_t seed = 0;
  std::uint64_t n_meas = 0;
  std::vector<Bitstring> bitstrings;

  std::size_t size() const { return bitstrings.size(); }
};

/// Draws with replacement, discarding repeats, until `num_unique` distinct
/// bitstrings are collected (in order of first appearance). Throws
/// DomainError when the support is too small and ResourceError once
/// `max_meas` draws did not suffice.
SampleSet draw_unique(const CollisionFreeDistribution& dist,
                      std::size_t num_unique, Rng& rng,
                      std::uint64_t max_meas = kDefaultMaxMeasurements);

/// Same as draw_unique but reuses a prebuilt table for repeated sampling.
SampleSet draw_unique(const CollisionFreeDistribution& dist,
                      const CumulativeTable& table, std::size_t num_unique,
                      Rng& rng,
                      std::uint64_t max_meas = kDefaultMaxMeasurements);

/// (N_meas - N) / N_meas.
double repetition_fraction(const SampleSet& s);
/// (N_meas - N) / N; the alternative reading of the repetition statistic.
double repetitions_per_unique(const SampleSet& s);

// JSON lines, one record per set:
// {"m","n","regime","matrix_id","seed","n_meas","bitstrings":["0101",...]}
std::string sample_set_to_json(const SampleSet& s);
SampleSet sample_set_from_json(std::string_view line);
void write_sample_sets(std::ostream& out, std::span<const SampleSet> sets);
std::vector<SampleSet> read_sample_sets(std::istream& in);
std::vector<SampleSet> read_sample_sets(const std::filesystem::path& path);

}  // namespace hamnet

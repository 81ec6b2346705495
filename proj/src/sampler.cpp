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

#include "hamnet/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "hamnet/error.hpp"
#include "json.hpp"

namespace hamnet {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kIndistinguishable:
      return "indistinguishable";
    case Regime::kDistinguishable:
      return "distinguishable";
    case Regime::kUniform:
      return "uniform";
  }
  return "unknown";
}

Regime parse_regime(std::string_view text) {
  if (text == "indistinguishable") return Regime::kIndistinguishable;
  if (text == "distinguishable") return Regime::kDistinguishable;
  if (text == "uniform") return Regime::kUniform;
  throw DomainError("unknown regime '" + std::string(text) + "'");
}

std::vector<int> default_input_modes(int photons) {
  std::vector<int> modes(photons);
  std::iota(modes.begin(), modes.end(), 0);
  return modes;
}

namespace {

void check_inputs(int m, std::span<const int> inputs) {
  if (inputs.empty()) throw DomainError("at least one photon is required");
  if (static_cast<int>(inputs.size()) > m) {
    throw DomainError("more photons than modes");
  }
  std::vector<int> sorted(inputs.begin(), inputs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("input modes must be distinct");
  }
  if (sorted.front() < 0 || sorted.back() >= m) {
    throw DomainError("input mode outside [0, m)");
  }
}

void check_physical_regime(Regime regime) {
  if (regime == Regime::kUniform) {
    throw DomainError(
        "uniform regime has no interferometer; use uniform_distribution");
  }
}

void check_budget(std::uint64_t required, std::uint64_t budget,
                  const char* what) {
  if (required > budget) {
    throw ResourceError(std::string(what) + " requires " +
                        std::to_string(required) +
                        " outcomes, enumeration budget is " +
                        std::to_string(budget));
  }
}

// Evaluates outcome probabilities for fixed input columns. Holds the
// column-restricted matrices so each outcome only gathers rows.
class ProbabilityKernel {
 public:
  ProbabilityKernel(const UnitaryMatrix& u, std::span<const int> inputs,
                    Regime regime)
      : regime_(regime), n_(static_cast<int>(inputs.size())) {
    check_physical_regime(regime);
    check_inputs(u.modes(), inputs);
    columns_.resize(u.modes(), n_);
    for (int j = 0; j < n_; ++j) columns_.col(j) = u.matrix().col(inputs[j]);
    if (regime == Regime::kDistinguishable) abs2_ = columns_.cwiseAbs2();
  }

  int photons() const { return n_; }

  // `rows` lists output modes with repetition; `multiplicity` is prod s_i!.
  double operator()(std::span<const int> rows, double multiplicity,
                    ComplexMatrix& scratch_c, RealMatrix& scratch_r) const {
    if (regime_ == Regime::kIndistinguishable) {
      for (int i = 0; i < n_; ++i) scratch_c.row(i) = columns_.row(rows[i]);
      return std::norm(permanent(scratch_c)) / multiplicity;
    }
    for (int i = 0; i < n_; ++i) scratch_r.row(i) = abs2_.row(rows[i]);
    return permanent(scratch_r) / multiplicity;
  }

 private:
  Regime regime_;
  int n_;
  ComplexMatrix columns_;
  RealMatrix abs2_;
};

double occupation_factorials(const OutputConfiguration& s) {
  double f = 1.0;
  for (int c : s.counts) f *= std::tgamma(c + 1.0);
  return f;
}

// Probabilities of every weight-n bitstring, unconditioned.
CollisionFreeDistribution raw_collision_free(const UnitaryMatrix& u,
                                             std::span<const int> inputs,
                                             Regime regime,
                                             std::uint64_t budget) {
  const ProbabilityKernel kernel(u, inputs, regime);
  const int m = u.modes();
  const int n = kernel.photons();
  if (m > Bitstring::kMaxLength) {
    throw DomainError("collision-free outcomes need m <= 64");
  }
  const std::uint64_t count = binomial(m, n);
  check_budget(count, budget, "collision-free enumeration");

  CollisionFreeDistribution dist;
  dist.modes = m;
  dist.photons = n;
  dist.regime = regime;
  dist.outcomes.reserve(count);
  SubsetIterator it(m, n);
  do {
    dist.outcomes.push_back(Bitstring::from_modes(it.current(), m));
  } while (it.next());
  dist.probabilities.assign(count, 0.0);

  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    ComplexMatrix scratch_c(n, n);
    RealMatrix scratch_r(n, n);
    std::vector<int> rows;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      rows = dist.outcomes[i].modes();
      dist.probabilities[i] = kernel(rows, 1.0, scratch_c, scratch_r);
    }
  }
  return dist;
}

}  // namespace

double outcome_probability(const UnitaryMatrix& u,
                           std::span<const int> input_modes,
                           const OutputConfiguration& s, Regime regime) {
  const ProbabilityKernel kernel(u, input_modes, regime);
  if (s.modes() != u.modes()) {
    throw DomainError("configuration has " + std::to_string(s.modes()) +
                      " modes, interferometer has " +
                      std::to_string(u.modes()));
  }
  for (int c : s.counts) {
    if (c < 0) throw DomainError("negative occupation in " + s.to_string());
  }
  if (s.photons() != kernel.photons()) {
    throw DomainError("configuration " + s.to_string() + " holds " +
                      std::to_string(s.photons()) + " photons, expected " +
                      std::to_string(kernel.photons()));
  }
  const int n = kernel.photons();
  ComplexMatrix scratch_c(n, n);
  RealMatrix scratch_r(n, n);
  const std::vector<int> rows = s.occupied_rows();
  return kernel(rows, occupation_factorials(s), scratch_c, scratch_r);
}

CollisionFreeDistribution collision_free_distribution(
    const UnitaryMatrix& u, std::span<const int> input_modes, Regime regime,
    std::uint64_t budget) {
  CollisionFreeDistribution dist =
      raw_collision_free(u, input_modes, regime, budget);
  const double mass = std::accumulate(dist.probabilities.begin(),
                                      dist.probabilities.end(), 0.0);
  if (!(mass > kDegenerateMass)) {
    std::ostringstream msg;
    msg << "collision-free mass is " << mass
        << "; conditional distribution undefined";
    throw DegenerateDistributionError(msg.str());
  }
  for (double& p : dist.probabilities) p /= mass;
  return dist;
}

double collision_free_mass(const UnitaryMatrix& u,
                           std::span<const int> input_modes, Regime regime,
                           std::uint64_t budget) {
  const CollisionFreeDistribution dist =
      raw_collision_free(u, input_modes, regime, budget);
  return std::accumulate(dist.probabilities.begin(), dist.probabilities.end(),
                         0.0);
}

FullDistribution full_distribution(const UnitaryMatrix& u,
                                   std::span<const int> input_modes,
                                   Regime regime, std::uint64_t budget) {
  const ProbabilityKernel kernel(u, input_modes, regime);
  const int m = u.modes();
  const int n = kernel.photons();
  const std::uint64_t count = binomial(m + n - 1, n);
  check_budget(count, budget, "full enumeration");

  FullDistribution dist;
  dist.modes = m;
  dist.photons = n;
  dist.regime = regime;
  dist.outcomes.reserve(count);
  // Stars and bars: a sorted n-subset c of [0, m+n-1) maps to the multiset
  // {c_i - i} of output modes.
  SubsetIterator it(m + n - 1, n);
  do {
    OutputConfiguration s;
    s.counts.assign(m, 0);
    const auto c = it.current();
    for (int i = 0; i < n; ++i) ++s.counts[c[i] - i];
    dist.outcomes.push_back(std::move(s));
  } while (it.next());
  dist.probabilities.assign(count, 0.0);

  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    ComplexMatrix scratch_c(n, n);
    RealMatrix scratch_r(n, n);
    std::vector<int> rows;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      const OutputConfiguration& s = dist.outcomes[i];
      rows = s.occupied_rows();
      dist.probabilities[i] =
          kernel(rows, occupation_factorials(s), scratch_c, scratch_r);
    }
  }
  return dist;
}

double collision_probability(const UnitaryMatrix& u,
                             std::span<const int> input_modes, Regime regime,
                             std::uint64_t budget) {
  const FullDistribution dist = full_distribution(u, input_modes, regime, budget);
  double mass = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!dist.outcomes[i].collision_free()) mass += dist.probabilities[i];
  }
  return mass;
}

CollisionFreeDistribution uniform_distribution(int modes, int photons,
                                               std::uint64_t budget) {
  if (photons < 1 || photons > modes) {
    throw DomainError("uniform_distribution: need 1 <= n <= m");
  }
  if (modes > Bitstring::kMaxLength) {
    throw DomainError("collision-free outcomes need m <= 64");
  }
  const std::uint64_t count = binomial(modes, photons);
  check_budget(count, budget, "uniform enumeration");
  CollisionFreeDistribution dist;
  dist.modes = modes;
  dist.photons = photons;
  dist.regime = Regime::kUniform;
  dist.outcomes.reserve(count);
  SubsetIterator it(modes, photons);
  do {
    dist.outcomes.push_back(Bitstring::from_modes(it.current(), modes));
  } while (it.next());
  dist.probabilities.assign(count, 1.0 / static_cast<double>(count));
  return dist;
}

template <class Outcome>
void check_distribution(const OutcomeDistribution<Outcome>& dist,
                        double tolerance) {
  if (dist.outcomes.size() != dist.probabilities.size()) {
    throw InvariantError("distribution: outcome/probability count mismatch");
  }
  double total = 0.0;
  for (double p : dist.probabilities) {
    if (!(p >= 0.0)) throw InvariantError("distribution: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tolerance) {
    std::ostringstream msg;
    msg << "distribution: probabilities sum to " << total;
    throw InvariantError(msg.str());
  }
}

template void check_distribution(const CollisionFreeDistribution&, double);
template void check_distribution(const FullDistribution&, double);

CumulativeTable::CumulativeTable(std::span<const double> probabilities)
    : cumulative_(probabilities.size()) {
  if (probabilities.empty()) throw DomainError("cannot sample: no outcomes");
  double running = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("cannot sample: invalid probability");
    }
    running += p;
    cumulative_[i] = running;
    if (p > 0.0) {
      last_positive_ = i;
      ++support_;
    }
  }
  if (!(running > 0.0)) throw DomainError("cannot sample: zero total mass");
}

std::size_t CumulativeTable::draw(Rng& rng) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = uniform(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(index, last_positive_);
}

template <class Outcome>
std::vector<Outcome> draw_samples(const OutcomeDistribution<Outcome>& dist,
                                  std::size_t count, Rng& rng) {
  const CumulativeTable table(dist.probabilities);
  std::vector<Outcome> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(dist.outcomes[table.draw(rng)]);
  }
  return out;
}

template std::vector<Bitstring> draw_samples(const CollisionFreeDistribution&,
                                             std::size_t, Rng&);
template std::vector<OutputConfiguration> draw_samples(const FullDistribution&,
                                                       std::size_t, Rng&);

SampleSet draw_unique(const CollisionFreeDistribution& dist,
                      std::size_t num_unique, Rng& rng,
                      std::uint64_t max_meas) {
  const CumulativeTable table(dist.probabilities);
  return draw_unique(dist, table, num_unique, rng, max_meas);
}

SampleSet draw_unique(const CollisionFreeDistribution& dist,
                      const CumulativeTable& table, std::size_t num_unique,
                      Rng& rng, std::uint64_t max_meas) {
  if (table.size() != dist.size()) {
    throw DomainError("draw_unique: table does not match distribution");
  }
  if (num_unique > table.support_size()) {
    throw DomainError("draw_unique: requested " + std::to_string(num_unique) +
                      " unique outcomes but only " +
                      std::to_string(table.support_size()) +
                      " have nonzero probability");
  }
  SampleSet out;
  out.modes = dist.modes;
  out.photons = dist.photons;
  out.regime = dist.regime;
  out.bitstrings.reserve(num_unique);
  std::unordered_set<std::size_t> seen;
  seen.reserve(2 * num_unique);
  while (out.bitstrings.size() < num_unique) {
    if (out.n_meas >= max_meas) {
      throw ResourceError("draw_unique: collected " +
                          std::to_string(out.bitstrings.size()) + " of " +
                          std::to_string(num_unique) + " unique outcomes in " +
                          std::to_string(out.n_meas) + " measurements");
    }
    const std::size_t index = table.draw(rng);
    ++out.n_meas;
    if (seen.insert(index).second) out.bitstrings.push_back(dist.outcomes[index]);
  }
  return out;
}

namespace {

void check_measurements(const SampleSet& s) {
  if (s.n_meas < s.size()) {
    throw InvariantError("sample set has N_meas = " + std::to_string(s.n_meas) +
                         " < N = " + std::to_string(s.size()));
  }
}

}  // namespace

double repetition_fraction(const SampleSet& s) {
  check_measurements(s);
  if (s.n_meas == 0) return 0.0;
  return static_cast<double>(s.n_meas - s.size()) /
         static_cast<double>(s.n_meas);
}

double repetitions_per_unique(const SampleSet& s) {
  check_measurements(s);
  if (s.size() == 0) return 0.0;
  return static_cast<double>(s.n_meas - s.size()) /
         static_cast<double>(s.size());
}

std::string sample_set_to_json(const SampleSet& s) {
  nlohmann::json strings = nlohmann::json::array();
  for (const Bitstring& b : s.bitstrings) strings.push_back(b.to_string());
  nlohmann::ordered_json doc;
  doc["m"] = s.modes;
  doc["n"] = s.photons;
  doc["regime"] = std::string(to_string(s.regime));
  doc["matrix_id"] = s.matrix_id;
  doc["seed"] = s.seed;
  doc["n_meas"] = s.n_meas;
  doc["bitstrings"] = std::move(strings);
  return doc.dump();
}

SampleSet sample_set_from_json(std::string_view line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sample set: invalid JSON: ") + e.what());
  }
  SampleSet s;
  try {
    s.modes = doc.at("m").get<int>();
    s.photons = doc.at("n").get<int>();
    s.regime = parse_regime(doc.at("regime").get<std::string>());
    s.matrix_id = doc.value("matrix_id", std::string());
    s.seed = doc.value("seed", std::uint64_t{0});
    s.n_meas = doc.at("n_meas").get<std::uint64_t>();
    for (const auto& item : doc.at("bitstrings")) {
      s.bitstrings.push_back(Bitstring::parse(item.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sample set: ") + e.what());
  }
  std::unordered_set<Bitstring, BitstringHash> unique;
  for (const Bitstring& b : s.bitstrings) {
    if (b.length() != s.modes || b.weight() != s.photons) {
      throw DomainError("sample set: bitstring " + b.to_string() +
                        " does not have length m and weight n");
    }
    if (!unique.insert(b).second) {
      throw InvariantError("sample set: duplicate bitstring " + b.to_string());
    }
  }
  check_measurements(s);
  return s;
}

void write_sample_sets(std::ostream& out, std::span<const SampleSet> sets) {
  for (const SampleSet& s : sets) out << sample_set_to_json(s) << '\n';
  if (!out) throw IoError("failed writing sample sets");
}

std::vector<SampleSet> read_sample_sets(std::istream& in) {
  std::vector<SampleSet> sets;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    sets.push_back(sample_set_from_json(line));
  }
  return sets;
}

std::vector<SampleSet> read_sample_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_sample_sets(in);
}

}  // namespace hamnet

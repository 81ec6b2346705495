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

#include "hamnet/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include <Eigen/SVD>

#include "hamnet/error.hpp"

namespace hamnet {

std::vector<CoveragePoint> coverage_curve(
    const CollisionFreeDistribution& dist, std::uint64_t max_meas,
    std::span<const std::uint64_t> checkpoints, Rng& rng) {
  const CumulativeTable table(dist.probabilities);
  std::vector<std::uint64_t> marks;
  for (std::uint64_t t : checkpoints) {
    if (t >= 1 && t <= max_meas) marks.push_back(t);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const double space = static_cast<double>(
      binomial(static_cast<std::uint64_t>(dist.modes),
               static_cast<std::uint64_t>(dist.photons)));
  std::vector<char> seen(dist.size(), 0);
  std::uint64_t distinct = 0;
  std::uint64_t t = 0;
  std::vector<CoveragePoint> out;
  out.reserve(marks.size());
  for (std::uint64_t mark : marks) {
    for (; t < mark; ++t) {
      const std::size_t index = table.draw(rng);
      if (!seen[index]) {
        seen[index] = 1;
        ++distinct;
      }
    }
    out.push_back({mark, static_cast<double>(distinct) / space});
  }
  return out;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

std::vector<double> sorted_profile(std::span<const double> probabilities) {
  std::vector<double> out(probabilities.begin(), probabilities.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DickeState dicke_state(const CollisionFreeDistribution& dist) {
  const double total = std::accumulate(dist.probabilities.begin(),
                                       dist.probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("dicke_state: probabilities sum to " +
                      std::to_string(total) + ", not 1");
  }
  DickeState psi;
  psi.modes = dist.modes;
  psi.photons = dist.photons;
  psi.basis = dist.outcomes;
  psi.amplitudes.reserve(dist.size());
  for (double p : dist.probabilities) {
    if (p < 0.0) throw DomainError("dicke_state: negative probability");
    psi.amplitudes.push_back(std::sqrt(p));
  }
  return psi;
}

Bipartition::Bipartition(int modes, std::vector<int> left)
    : modes_(modes), left_(std::move(left)) {
  if (modes < 1 || modes > Bitstring::kMaxLength) {
    throw DomainError("bipartition: modes must be in [1, 64]");
  }
  std::sort(left_.begin(), left_.end());
  if (std::adjacent_find(left_.begin(), left_.end()) != left_.end()) {
    throw DomainError("bipartition: repeated mode in left group");
  }
  for (int mode : left_) {
    if (mode < 0 || mode >= modes) {
      throw DomainError("bipartition: mode outside [0, m)");
    }
    left_mask_ |= std::uint64_t{1} << mode;
  }
  for (int mode = 0; mode < modes; ++mode) {
    if (!((left_mask_ >> mode) & 1U)) {
      right_.push_back(mode);
      right_mask_ |= std::uint64_t{1} << mode;
    }
  }
}

Bipartition Bipartition::half(int modes) {
  std::vector<int> left((modes + 1) / 2);
  std::iota(left.begin(), left.end(), 0);
  return Bipartition(modes, std::move(left));
}

Bipartition Bipartition::swapped() const { return Bipartition(modes_, right_); }

namespace {

struct Block {
  std::unordered_map<std::uint64_t, Eigen::Index> rows;
  std::unordered_map<std::uint64_t, Eigen::Index> cols;
  std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
};

}  // namespace

EntanglementResult von_neumann_entropy(const DickeState& psi,
                                       const Bipartition& bp,
                                       std::uint64_t svd_budget) {
  if (bp.modes() != psi.modes) {
    throw DomainError("bipartition covers " + std::to_string(bp.modes()) +
                      " modes, state has " + std::to_string(psi.modes));
  }
  std::map<int, Block> blocks;
  for (std::size_t j = 0; j < psi.basis.size(); ++j) {
    const double a = psi.amplitudes[j];
    if (a == 0.0) continue;
    const std::uint64_t bits = psi.basis[j].bits();
    const std::uint64_t left = bits & bp.left_mask();
    const std::uint64_t right = bits & bp.right_mask();
    Block& block = blocks[std::popcount(left)];
    const auto r = block.rows.try_emplace(left, block.rows.size()).first->second;
    const auto c = block.cols.try_emplace(right, block.cols.size()).first->second;
    block.entries.emplace_back(r, c, a);
  }

  EntanglementResult out;
  for (auto& [k, block] : blocks) {
    const auto rows = static_cast<Eigen::Index>(block.rows.size());
    const auto cols = static_cast<Eigen::Index>(block.cols.size());
    if (static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols) >
        svd_budget) {
      throw ResourceError("von_neumann_entropy: block with " +
                          std::to_string(k) + " left photons is " +
                          std::to_string(rows) + "x" + std::to_string(cols) +
                          ", over the SVD budget of " +
                          std::to_string(svd_budget) + " entries");
    }
    Eigen::MatrixXd amp = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& [r, c, a] : block.entries) amp(r, c) = a;
    if (rows == 1 || cols == 1) {
      out.spectrum.push_back(amp.squaredNorm());
      continue;
    }
    // BDCSVD in Eigen 3.4.0 returns NaN on exactly rank-deficient blocks
    // (the uniform state), so the two-sided Jacobi SVD is used instead.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(amp);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double s = svd.singularValues()(i);
      out.spectrum.push_back(s * s);
    }
  }
  for (double lambda : out.spectrum) {
    if (!std::isfinite(lambda)) {
      throw InvariantError("non-finite Schmidt coefficient");
    }
  }
  std::sort(out.spectrum.begin(), out.spectrum.end(), std::greater<>());
  while (!out.spectrum.empty() && out.spectrum.back() < kEigenvalueFloor) {
    out.spectrum.pop_back();
  }
  double entropy = 0.0;
  for (double lambda : out.spectrum) entropy -= lambda * std::log2(lambda);
  out.entropy_bits = std::max(entropy, 0.0);
  out.quantum_mutual_information = 2.0 * out.entropy_bits;
  return out;
}

double classical_mutual_information(const CollisionFreeDistribution& dist,
                                    const Bipartition& bp) {
  if (bp.modes() != dist.modes) {
    throw DomainError("bipartition does not match distribution modes");
  }
  std::unordered_map<std::uint64_t, double> left;
  std::unordered_map<std::uint64_t, double> right;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    const double p = dist.probabilities[j];
    if (p == 0.0) continue;
    const std::uint64_t bits = dist.outcomes[j].bits();
    left[bits & bp.left_mask()] += p;
    right[bits & bp.right_mask()] += p;
  }
  auto marginal_entropy = [](const auto& table) {
    std::vector<double> p;
    p.reserve(table.size());
    for (const auto& [key, value] : table) p.push_back(value);
    // Summation order must not depend on hash layout.
    std::sort(p.begin(), p.end());
    return shannon_entropy(p);
  };
  return marginal_entropy(left) + marginal_entropy(right) -
         shannon_entropy(dist.probabilities);
}

CollisionFreeDistribution empirical_distribution(
    std::span<const Bitstring> draws, Regime regime) {
  if (draws.empty()) throw DomainError("empirical_distribution: no draws");
  std::map<std::uint64_t, std::uint64_t> counts;
  const int m = draws.front().length();
  const int n = draws.front().weight();
  for (const Bitstring& b : draws) {
    if (b.length() != m || b.weight() != n) {
      throw DomainError("empirical_distribution: mixed bitstring shapes");
    }
    ++counts[b.bits()];
  }
  CollisionFreeDistribution dist;
  dist.modes = m;
  dist.photons = n;
  dist.regime = regime;
  const double total = static_cast<double>(draws.size());
  for (const auto& [bits, c] : counts) {
    dist.outcomes.emplace_back(bits, m);
    dist.probabilities.push_back(static_cast<double>(c) / total);
  }
  return dist;
}

}  // namespace hamnet

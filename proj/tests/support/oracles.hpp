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

// Slow, independent reference implementations used to check the library.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamnet/bitstring.hpp"
#include "hamnet/complexity.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/sampler.hpp"

namespace hamnet::oracle {

/// Character-by-character Hamming distance of the 0/1 renderings.
int string_distance(const std::string& a, const std::string& b);

/// Degrees from an explicit double loop over string renderings.
std::vector<int> degrees(std::span<const Bitstring> nodes, int radius);

/// Outcome probability straight from the permutation sum.
double probability(const ComplexMatrix& u, const std::vector<int>& inputs,
                   const std::vector<int>& counts, bool indistinguishable);

/// -sum p_k log2 p_k with p_k = C(|A|,k) C(|B|,n-k) / C(m,n): the
/// entanglement entropy of the uniform Dicke state.
double uniform_dicke_entropy(int modes, int photons, int left);

/// Entropy from the full 2^|A| x 2^|B| coefficient matrix (small m only).
double dense_entanglement_entropy(const DickeState& psi,
                                  const Bipartition& bp);

/// Occupation covariance from plain double loops.
Eigen::MatrixXd covariance(std::span<const Bitstring> sample);

/// Regularized logistic loss minimized by plain gradient descent with a
/// fixed step; slow but independent of the Newton solver.
Eigen::VectorXd logistic_gradient_descent(const Eigen::MatrixXd& x,
                                          std::span<const int> labels,
                                          double lambda, int iterations,
                                          double step);

}  // namespace hamnet::oracle

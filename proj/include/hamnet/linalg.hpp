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

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamnet/random.hpp"

namespace hamnet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Largest matrix order accepted by permanent(); 2^k terms beyond this are not
// a realistic request.
inline constexpr int kMaxPermanentOrder = 30;
// Factorial-cost oracle refuses anything larger.
inline constexpr int kMaxNaivePermanentOrder = 8;

/// Exact binomial coefficient C(m, n). Throws DomainError for n > m and
/// OverflowError when the result exceeds 64 bits.
std::uint64_t binomial(std::uint64_t m, std::uint64_t n);

/// Yields the size-n subsets of {0, ..., m-1} in lexicographic order.
///
///   SubsetIterator it(5, 2);
///   do { use(it.current()); } while (it.next());
///
/// n = 0 yields exactly one (empty) subset.
class SubsetIterator {
 public:
  SubsetIterator(int m, int n);

  std::span<const int> current() const { return indices_; }
  /// Advances to the next subset; false once the sequence is exhausted.
  bool next();
  std::uint64_t rank() const { return rank_; }

 private:
  int m_;
  std::vector<int> indices_;
  std::uint64_t rank_ = 0;
};

/// Unitary interferometer matrix, m x m, with ||UU^† - I||_max and
/// ||U^†U - I||_max both within the tolerance it was validated against.
class UnitaryMatrix {
 public:
  /// Validates unitarity; throws DomainError reporting the residual otherwise.
  static UnitaryMatrix from_matrix(ComplexMatrix u, double tolerance = 1e-10);

  const ComplexMatrix& matrix() const { return u_; }
  int modes() const { return static_cast<int>(u_.rows()); }
  Complex operator()(int row, int col) const { return u_(row, col); }

 private:
  explicit UnitaryMatrix(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

/// max(||UU^† - I||_max, ||U^†U - I||_max); infinity for non-square input.
double unitarity_residual(const ComplexMatrix& u);

/// Haar-random m x m unitary: complex Ginibre matrix, QR, then the phases of
/// diag(R) are divided out so the distribution is exactly Haar.
UnitaryMatrix haar_unitary(int m, Rng& rng);

/// Permanent by Ryser inclusion-exclusion with Gray-code column updates,
/// O(2^k k). The permanent of a 0 x 0 matrix is 1.
Complex permanent(const ComplexMatrix& a);
double permanent(const RealMatrix& a);

/// Direct sum over all k! permutations; test oracle, refuses k > 8.
Complex permanent_naive(const ComplexMatrix& a);

/// Entry (i, j) = u(rows[i], cols[j]); repeated indices are allowed.
ComplexMatrix submatrix(const ComplexMatrix& u, std::span<const int> rows,
                        std::span<const int> cols);

/// Throws DomainError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a);

// Matrix file format: {"m": int, "re": [[...]], "im": [[...]]}, row-major.
std::string unitary_to_json(const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const std::string& text,
                                double tolerance = 1e-10);
void write_unitary_file(const std::filesystem::path& path,
                        const UnitaryMatrix& u);
UnitaryMatrix read_unitary_file(const std::filesystem::path& path,
                                double tolerance = 1e-10);

}  // namespace hamnet

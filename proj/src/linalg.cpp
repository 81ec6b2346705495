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

#include "hamnet/linalg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "hamnet/error.hpp"
#include "json.hpp"

namespace hamnet {

std::uint64_t binomial(std::uint64_t m, std::uint64_t n) {
  if (n > m) {
    throw DomainError("binomial: n = " + std::to_string(n) + " exceeds m = " +
                      std::to_string(m));
  }
  n = std::min(n, m - n);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    // result == C(m - n + i - 1, i - 1) here, so the division is exact.
    result = result * (m - n + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial: C(" + std::to_string(m) + ", " +
                          std::to_string(n) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

SubsetIterator::SubsetIterator(int m, int n) : m_(m) {
  if (n < 0 || m < 0 || n > m) {
    throw DomainError("SubsetIterator: need 0 <= n <= m, got m = " +
                      std::to_string(m) + ", n = " + std::to_string(n));
  }
  indices_.resize(n);
  std::iota(indices_.begin(), indices_.end(), 0);
}

bool SubsetIterator::next() {
  const int n = static_cast<int>(indices_.size());
  int i = n - 1;
  while (i >= 0 && indices_[i] == m_ - n + i) --i;
  if (i < 0) return false;
  ++indices_[i];
  for (int j = i + 1; j < n; ++j) indices_[j] = indices_[j - 1] + 1;
  ++rank_;
  return true;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const auto identity = ComplexMatrix::Identity(u.rows(), u.cols());
  const double left = (u * u.adjoint() - identity).cwiseAbs().maxCoeff();
  const double right = (u.adjoint() * u - identity).cwiseAbs().maxCoeff();
  return std::max(left, right);
}

void require_finite(const ComplexMatrix& a) {
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
}

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix u, double tolerance) {
  require_finite(u);
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw DomainError("unitary matrix must be square and non-empty, got " +
                      std::to_string(u.rows()) + "x" +
                      std::to_string(u.cols()));
  }
  const double residual = unitarity_residual(u);
  if (!(residual <= tolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: residual " << residual << " > tolerance "
        << tolerance;
    throw DomainError(msg.str());
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix haar_unitary(int m, Rng& rng) {
  if (m < 1) throw DomainError("haar_unitary: m must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix::from_matrix(std::move(q), 1e-12);
}

namespace {

template <class Scalar>
Scalar ryser_gray(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("permanent: matrix must be square");
  }
  const int k = static_cast<int>(a.rows());
  if (k == 0) return Scalar(1);
  if (k > kMaxPermanentOrder) {
    throw DomainError("permanent: order " + std::to_string(k) +
                      " exceeds supported maximum");
  }
  std::array<Scalar, kMaxPermanentOrder> row_sums{};
  Scalar total(0);
  std::uint64_t gray = 0;
  const std::uint64_t steps = std::uint64_t{1} << k;
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int col = std::countr_zero(g);
    gray ^= std::uint64_t{1} << col;
    const auto column = a.col(col);
    if (gray & (std::uint64_t{1} << col)) {
      for (int i = 0; i < k; ++i) row_sums[i] += column(i);
    } else {
      for (int i = 0; i < k; ++i) row_sums[i] -= column(i);
    }
    Scalar prod = row_sums[0];
    for (int i = 1; i < k; ++i) prod *= row_sums[i];
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return (k & 1) ? -total : total;
}

}  // namespace

Complex permanent(const ComplexMatrix& a) { return ryser_gray(a); }
double permanent(const RealMatrix& a) { return ryser_gray(a); }

Complex permanent_naive(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("permanent_naive: matrix must be square");
  }
  const int k = static_cast<int>(a.rows());
  if (k > kMaxNaivePermanentOrder) {
    throw DomainError("permanent_naive: order " + std::to_string(k) +
                      " refused (factorial cost, limit 8)");
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) prod *= a(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ComplexMatrix submatrix(const ComplexMatrix& u, std::span<const int> rows,
                        std::span<const int> cols) {
  auto check = [](std::span<const int> idx, Eigen::Index bound,
                  const char* what) {
    for (int i : idx) {
      if (i < 0 || i >= bound) {
        throw DomainError(std::string("submatrix: ") + what + " index " +
                          std::to_string(i) + " out of bounds [0, " +
                          std::to_string(bound) + ")");
      }
    }
  };
  check(rows, u.rows(), "row");
  check(cols, u.cols(), "column");
  ComplexMatrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out(i, j) = u(rows[i], cols[j]);
    }
  }
  return out;
}

std::string unitary_to_json(const UnitaryMatrix& u) {
  const ComplexMatrix& a = u.matrix();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      re_row.push_back(a(i, j).real());
      im_row.push_back(a(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc = {{"m", a.rows()}, {"re", re}, {"im", im}};
  return doc.dump();
}

UnitaryMatrix unitary_from_json(const std::string& text, double tolerance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  try {
    const int m = doc.at("m").get<int>();
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    if (m < 1 || re.size() != static_cast<std::size_t>(m) ||
        im.size() != static_cast<std::size_t>(m)) {
      throw DomainError("matrix file: shape does not match m = " +
                        std::to_string(m));
    }
    ComplexMatrix a(m, m);
    for (int i = 0; i < m; ++i) {
      if (re[i].size() != static_cast<std::size_t>(m) ||
          im[i].size() != static_cast<std::size_t>(m)) {
        throw DomainError("matrix file: row " + std::to_string(i) +
                          " has wrong length");
      }
      for (int j = 0; j < m; ++j) {
        a(i, j) = Complex(re[i][j].get<double>(), im[i][j].get<double>());
      }
    }
    return UnitaryMatrix::from_matrix(std::move(a), tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("matrix file: ") + e.what());
  }
}

void write_unitary_file(const std::filesystem::path& path,
                        const UnitaryMatrix& u) {
  std::ofstream out(path);
  out << unitary_to_json(u) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

UnitaryMatrix read_unitary_file(const std::filesystem::path& path,
                                double tolerance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return unitary_from_json(buffer.str(), tolerance);
}

}  // namespace hamnet

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "hamnet/error.hpp"
#include "hamnet/random.hpp"

namespace hamnet {
namespace {

TEST(Binomial, KnownValues) {
  EXPECT_EQ(binomial(16, 4), 1820u);
  EXPECT_EQ(binomial(25, 5), 53130u);
  EXPECT_EQ(binomial(36, 6), 1947792u);
  EXPECT_EQ(binomial(49, 7), 85900584u);
  EXPECT_EQ(binomial(19, 4), 3876u);
  EXPECT_EQ(binomial(7, 0), 1u);
  EXPECT_EQ(binomial(0, 0), 1u);
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ULL);
}

TEST(Binomial, Errors) {
  EXPECT_THROW(binomial(3, 4), DomainError);
  EXPECT_THROW(binomial(200, 100), OverflowError);
  // Overflow is a domain error for exit-code purposes.
  EXPECT_THROW(binomial(200, 100), DomainError);
}

TEST(SubsetIterator, SmallCaseInOrder) {
  SubsetIterator it(4, 2);
  std::vector<std::vector<int>> seen;
  do {
    seen.emplace_back(it.current().begin(), it.current().end());
  } while (it.next());
  const std::vector<std::vector<int>> want = {{0, 1}, {0, 2}, {0, 3},
                                              {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(seen, want);
}

TEST(SubsetIterator, EmptySubsetYieldsOnce) {
  SubsetIterator it(5, 0);
  EXPECT_TRUE(it.current().empty());
  EXPECT_FALSE(it.next());
}

TEST(SubsetIterator, RejectsBadSizes) {
  EXPECT_THROW(SubsetIterator(3, 4), DomainError);
  EXPECT_THROW(SubsetIterator(3, -1), DomainError);
}

TEST(Haar, OneModeIsAPhase) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed);
    const UnitaryMatrix u = haar_unitary(1, rng);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
  }
}

TEST(Haar, UnitaryAndDeterministic) {
  Rng a = make_rng(7);
  Rng b = make_rng(7);
  const UnitaryMatrix u = haar_unitary(4, a);
  const UnitaryMatrix v = haar_unitary(4, b);
  EXPECT_LE(unitarity_residual(u.matrix()), 1e-12);
  EXPECT_EQ(u.matrix(), v.matrix());
  Rng c = make_rng(8);
  EXPECT_NE(u.matrix(), haar_unitary(4, c).matrix());
}

TEST(Haar, SecondMomentIsOneOverM) {
  Rng rng = make_rng(11);
  double sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += std::norm(haar_unitary(4, rng)(0, 0));
  EXPECT_NEAR(sum / draws, 0.25, 0.01);
}

TEST(Haar, PhasesOfDiagonalAreUniform) {
  // Without the phase fix the QR diagonal is real positive and arg(u_00)
  // clusters; with it the argument is uniform on the circle.
  Rng rng = make_rng(12);
  double c = 0.0;
  double s = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const Complex z = haar_unitary(3, rng)(0, 0);
    c += std::cos(std::arg(z));
    s += std::sin(std::arg(z));
  }
  EXPECT_LT(std::hypot(c, s) / draws, 0.03);
}

TEST(Haar, RejectsZeroModes) {
  Rng rng = make_rng(1);
  EXPECT_THROW(haar_unitary(0, rng), DomainError);
}

TEST(Permanent, SmallCases) {
  ComplexMatrix a(1, 1);
  a(0, 0) = Complex(2.0, -3.0);
  EXPECT_EQ(permanent(a), Complex(2.0, -3.0));
  EXPECT_EQ(permanent(ComplexMatrix(ComplexMatrix::Ones(3, 3))), Complex(6.0, 0.0));
  EXPECT_EQ(permanent(ComplexMatrix(0, 0)), Complex(1.0, 0.0));
  EXPECT_EQ(permanent(RealMatrix(0, 0)), 1.0);
  EXPECT_EQ(permanent(RealMatrix(RealMatrix::Ones(4, 4))), 24.0);
}

TEST(Permanent, NaiveOracleExamples) {
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(permanent_naive(swap), Complex(1.0, 0.0));
  EXPECT_EQ(permanent_naive(ComplexMatrix::Ones(2, 2)), Complex(2.0, 0.0));
  for (int k = 1; k <= 8; ++k) {
    EXPECT_EQ(permanent_naive(ComplexMatrix::Identity(k, k)), Complex(1.0, 0.0));
    EXPECT_EQ(permanent(ComplexMatrix(ComplexMatrix::Identity(k, k))), Complex(1.0, 0.0));
  }
  EXPECT_THROW(permanent_naive(ComplexMatrix::Identity(9, 9)), DomainError);
}

TEST(Permanent, MatchesNaiveOnRandom5x5) {
  Rng rng = make_rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    const Complex ref = permanent_naive(a);
    EXPECT_LE(std::abs(permanent(a) - ref), 1e-12 * std::abs(ref));
  }
}

TEST(Permanent, RealMatchesComplex) {
  Rng rng = make_rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix a(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) a(i, j) = u(rng);
  }
  const Complex z = permanent(ComplexMatrix(a.cast<Complex>()));
  EXPECT_NEAR(permanent(a), z.real(), 1e-12 * std::abs(z));
}

TEST(Permanent, Errors) {
  EXPECT_THROW(permanent(ComplexMatrix(2, 3)), DomainError);
  EXPECT_THROW(permanent(ComplexMatrix(ComplexMatrix::Ones(31, 31))), DomainError);
}

TEST(Submatrix, Selection) {
  ComplexMatrix u(2, 2);
  u << 1, 2, 3, 4;
  const std::vector<int> r0 = {0};
  EXPECT_EQ(submatrix(u, r0, r0)(0, 0), Complex(1.0, 0.0));
  const std::vector<int> dup = {1, 1};
  const std::vector<int> all = {0, 1};
  const ComplexMatrix d = submatrix(u, dup, all);
  EXPECT_EQ(d.row(0), u.row(1));
  EXPECT_EQ(d.row(1), u.row(1));
  EXPECT_EQ(submatrix(u, all, all), u);
  const std::vector<int> bad = {2};
  EXPECT_THROW(submatrix(u, bad, all), DomainError);
  const std::vector<int> neg = {-1};
  EXPECT_THROW(submatrix(u, all, neg), DomainError);
}

TEST(Finite, RejectsNaN) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  EXPECT_NO_THROW(require_finite(a));
  a(1, 0) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(require_finite(a), DomainError);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  ComplexMatrix a = ComplexMatrix::Identity(3, 3);
  a(0, 0) = 1.001;
  try {
    UnitaryMatrix::from_matrix(a);
    FAIL() << "accepted a non-unitary matrix";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
  EXPECT_THROW(UnitaryMatrix::from_matrix(ComplexMatrix(2, 3)), DomainError);
  EXPECT_TRUE(std::isinf(unitarity_residual(ComplexMatrix(2, 3))));
}

TEST(UnitaryFile, RoundTripIsExact) {
  Rng rng = make_rng(5);
  const UnitaryMatrix u = haar_unitary(6, rng);
  const UnitaryMatrix v = unitary_from_json(unitary_to_json(u));
  EXPECT_EQ(u.matrix(), v.matrix());
  const auto path =
      std::filesystem::temp_directory_path() / "hamnet_unitary_test.json";
  write_unitary_file(path, u);
  EXPECT_EQ(read_unitary_file(path).matrix(), u.matrix());
  std::filesystem::remove(path);
}

TEST(UnitaryFile, Errors) {
  EXPECT_THROW(unitary_from_json("{not json"), DomainError);
  EXPECT_THROW(unitary_from_json(R"({"m":2,"re":[[1,0]],"im":[[0,0]]})"),
               DomainError);
  EXPECT_THROW(
      unitary_from_json(R"({"m":2,"re":[[1,0],[0,2]],"im":[[0,0],[0,0]]})"),
      DomainError);
  EXPECT_THROW(read_unitary_file("/nonexistent/dir/u.json"), IoError);
}

}  // namespace
}  // namespace hamnet

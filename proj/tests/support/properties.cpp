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

#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hamnet/classifier.hpp"
#include "hamnet/complexity.hpp"
#include "hamnet/experiments.hpp"
#include "hamnet/features.hpp"
#include "hamnet/hamming_net.hpp"
#include "hamnet/linalg.hpp"
#include "hamnet/random.hpp"
#include "hamnet/sampler.hpp"
#include "oracles.hpp"

namespace hamnet::props {

namespace {

// Records the first failure with a message; later checks are still counted.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && passed_) {
      passed_ = false;
      first_ = what;
    }
  }
  Outcome done() const {
    std::ostringstream s;
    if (passed_) {
      s << checks_ << " checks";
    } else {
      s << "first failure: " << first_;
    }
    return {passed_, s.str()};
  }

 private:
  bool passed_ = true;
  std::size_t checks_ = 0;
  std::string first_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

Bitstring random_bitstring(int m, int n, Rng& rng) {
  std::vector<int> modes(m);
  std::iota(modes.begin(), modes.end(), 0);
  std::shuffle(modes.begin(), modes.end(), rng);
  modes.resize(n);
  return Bitstring::from_modes(modes, m);
}

std::vector<Bitstring> random_unique_set(int m, int n, std::size_t count,
                                         Rng& rng) {
  // Clamped so small spaces cannot stall the rejection loop.
  count = std::min<std::size_t>(count, binomial(m, n));
  std::set<Bitstring> seen;
  std::vector<Bitstring> out;
  while (out.size() < count) {
    const Bitstring b = random_bitstring(m, n, rng);
    if (seen.insert(b).second) out.push_back(b);
  }
  return out;
}

ComplexMatrix random_complex(int k, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

// ------------------------------------------------------------ core six

Outcome hamming_metric(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 1);
  std::uniform_int_distribution<int> pick_m(2, 64);
  for (int t = 0; t < 2000; ++t) {
    const int m = pick_m(rng);
    const int n = std::uniform_int_distribution<int>(1, m)(rng);
    const Bitstring a = random_bitstring(m, n, rng);
    const Bitstring b = random_bitstring(m, n, rng);
    const Bitstring x = random_bitstring(m, n, rng);
    const int ab = hamming_distance(a, b);
    c.expect(hamming_distance(a, a) == 0, "d(a,a) != 0");
    c.expect(ab == hamming_distance(b, a), "asymmetric distance");
    c.expect((ab == 0) == (a == b), "d(a,b) = 0 for a != b");
    c.expect(ab <= hamming_distance(a, x) + hamming_distance(x, b),
             "triangle inequality violated");
    c.expect(ab % 2 == 0 && ab <= 2 * n, "distance odd or above 2n");
    c.expect(ab == oracle::string_distance(a.to_string(), b.to_string()),
             "disagrees with character count");
  }
  return c.done();
}

Outcome degree_monotonicity(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 2);
  for (int t = 0; t < 20; ++t) {
    const int m = 8 + 2 * (t % 5);
    const int n = 2 + t % 3;
    const auto nodes = random_unique_set(m, n, 60, rng);
    const PairwiseDistances d(nodes);
    std::vector<int> prev(nodes.size(), 0);
    for (int r = 0; r <= 2 * n + 1; ++r) {
      const std::vector<int> deg = d.degrees(r);
      c.expect(deg == oracle::degrees(nodes, r), "degrees disagree with oracle");
      for (std::size_t i = 0; i < deg.size(); ++i) {
        c.expect(deg[i] >= prev[i], "degree decreased as R grew");
      }
      prev = deg;
    }
  }
  return c.done();
}

Outcome handshake(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 3);
  for (int t = 0; t < 30; ++t) {
    const int m = 6 + t % 20;
    const int n = 1 + t % std::min(m - 1, 5);
    const std::size_t space = binomial(m, n);
    const auto nodes = random_unique_set(
        m, n, std::min<std::size_t>(space, 10 + 7 * t), rng);
    for (int r = 0; r <= 2 * n; r += 2) {
      const HammingNetwork net = build_network(nodes, r);
      const long sum = std::accumulate(net.degrees.begin(), net.degrees.end(), 0L);
      c.expect(2 * static_cast<long>(net.edge_count) == sum,
               "2|E| != sum of degrees");
      c.expect(edges(net).size() == net.edge_count, "edge list size mismatch");
    }
  }
  return c.done();
}

Outcome correlation_row_sum(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 4);
  for (int t = 0; t < 40; ++t) {
    const int m = 4 + t % 13;
    const int n = 1 + t % std::min(m - 1, 4);
    std::vector<Bitstring> sample;
    if (t % 2 == 0) {
      sample = random_unique_set(
          m, n, std::min<std::size_t>(binomial(m, n), 50), rng);
    } else {
      for (int k = 0; k < 80; ++k) sample.push_back(random_bitstring(m, n, rng));
    }
    const CorrelationMatrix cm = correlation_matrix(sample);
    const Eigen::MatrixXd ref = oracle::covariance(sample);
    c.expect((cm - ref).cwiseAbs().maxCoeff() <= 1e-12,
             "covariance disagrees with oracle");
    for (int i = 0; i < m; ++i) {
      double off = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j != i) off += cm(i, j);
      }
      c.expect(std::abs(off + cm(i, i)) <= 1e-12,
               "row sum " + num(off) + " != -Var " + num(-cm(i, i)));
      for (int j = 0; j < m; ++j) {
        c.expect(cm(i, j) == cm(j, i), "C not symmetric");
        c.expect(std::abs(cm(i, j)) <= 0.25 + 1e-15, "|C_ij| > 1/4");
      }
    }
  }
  return c.done();
}

Outcome schmidt_normalization(std::uint64_t seed) {
  Checker c;
  for (int m : {4, 6, 9, 12, 16}) {
    const int n = m == 16 ? 4 : (m >= 9 ? 3 : 2);
    for (int i = 0; i < 4; ++i) {
      const UnitaryMatrix u = pool_matrix(seed, i, m);
      const std::vector<int> inputs = default_input_modes(n);
      for (Regime r : {Regime::kIndistinguishable, Regime::kDistinguishable,
                       Regime::kUniform}) {
        const CollisionFreeDistribution dist =
            r == Regime::kUniform
                ? uniform_distribution(m, n)
                : collision_free_distribution(u, inputs, r);
        const DickeState psi = dicke_state(dist);
        for (int left = 1; left < m; left += std::max(1, m / 4)) {
          std::vector<int> a(left);
          std::iota(a.begin(), a.end(), 0);
          const Bipartition bp(m, a);
          const EntanglementResult ea = von_neumann_entropy(psi, bp);
          const EntanglementResult eb = von_neumann_entropy(psi, bp.swapped());
          const double sum =
              std::accumulate(ea.spectrum.begin(), ea.spectrum.end(), 0.0);
          c.expect(std::abs(sum - 1.0) <= 1e-9,
                   "spectrum sums to " + num(sum));
          c.expect(std::abs(ea.entropy_bits - eb.entropy_bits) <= 1e-9,
                   "S_A != S_B");
        }
      }
    }
  }
  return c.done();
}

LabeledDataset synthetic_dataset(Rng& rng, int records, int dim) {
  std::normal_distribution<double> g;
  LabeledDataset d;
  for (int f = 0; f < dim; ++f) d.feature_names.push_back("f" + std::to_string(f));
  for (int i = 0; i < records; ++i) {
    LabeledRecord r;
    r.label = i % 2;
    for (int f = 0; f < dim; ++f) {
      r.features.push_back(g(rng) * (1.0 + f) + (r.label ? 0.7 : -0.7) * (f % 2) +
                           10.0 * f);
    }
    r.matrix_id = "M" + std::to_string(i % 7);
    d.records.push_back(std::move(r));
  }
  return d;
}

Outcome standardization_invariance(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 6);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (int t = 0; t < 20; ++t) {
    const LabeledDataset train = synthetic_dataset(rng, 200, 4);
    const LabeledDataset test = synthetic_dataset(rng, 100, 4);
    LabeledDataset train2 = train;
    LabeledDataset test2 = test;
    const int f = t % 4;
    const double a = scale(rng);
    const double b = t % 2 ? shift(rng) : 0.0;
    for (auto* d : {&train2, &test2}) {
      for (auto& r : d->records) r.features[f] = a * r.features[f] + b;
    }
    const Classifier c1 = fit_classifier(train);
    const Classifier c2 = fit_classifier(train2);
    for (std::size_t i = 0; i < test.size(); ++i) {
      const Eigen::VectorXd z1 =
          c1.standardizer.apply(test.records[i].features);
      const Eigen::VectorXd z2 =
          c2.standardizer.apply(test2.records[i].features);
      c.expect((z1 - z2).cwiseAbs().maxCoeff() <= 1e-9,
               "standardized vectors differ");
      const Prediction p1 = c1.predict_raw(test.records[i].features);
      const Prediction p2 = c2.predict_raw(test2.records[i].features);
      c.expect(p1.label == p2.label, "class label changed under rescaling");
      c.expect(std::abs(p1.probability - p2.probability) <= 1e-9,
               "probability changed under rescaling");
    }
  }
  return c.done();
}

// ------------------------------------------------------------ linalg

Outcome permanent_oracle(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 10);
  for (int k = 2; k <= 8; ++k) {
    for (int t = 0; t < 100; ++t) {
      const ComplexMatrix a = random_complex(k, rng);
      const Complex fast = permanent(a);
      const Complex slow = permanent_naive(a);
      c.expect(std::abs(fast - slow) <= 1e-12 * std::abs(slow),
               "k = " + std::to_string(k) + " relative error " +
                   num(std::abs(fast - slow) / std::abs(slow)));
    }
  }
  return c.done();
}

Outcome permanent_structure(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 11);
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + t % 10;
    ComplexMatrix a = random_complex(k, rng);
    a.row(t % k).setZero();
    c.expect(permanent(a) == Complex(0.0, 0.0), "zero row, nonzero permanent");
  }
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix a = random_complex(6, rng);
    std::vector<int> rp(6), cp(6);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    const ComplexMatrix b = submatrix(a, rp, cp);
    const Complex pa = permanent(a);
    c.expect(std::abs(permanent(b) - pa) <= 1e-12 * std::abs(pa),
             "permanent changed under row/column permutation");
  }
  return c.done();
}

Outcome binomial_pascal(std::uint64_t) {
  Checker c;
  for (std::uint64_t m = 1; m <= 50; ++m) {
    c.expect(binomial(m, 0) == 1 && binomial(m, m) == 1, "edge values");
    for (std::uint64_t n = 1; n < m; ++n) {
      c.expect(binomial(m, n) == binomial(m - 1, n - 1) + binomial(m - 1, n),
               "Pascal identity at C(" + std::to_string(m) + "," +
                   std::to_string(n) + ")");
    }
  }
  return c.done();
}

Outcome subset_iterator(std::uint64_t) {
  Checker c;
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; n <= m; ++n) {
      SubsetIterator it(m, n);
      std::vector<int> prev;
      std::uint64_t count = 0;
      bool ok = true;
      do {
        const auto cur = it.current();
        std::vector<int> v(cur.begin(), cur.end());
        for (std::size_t i = 1; i < v.size(); ++i) ok &= v[i - 1] < v[i];
        if (!v.empty()) ok &= v.front() >= 0 && v.back() < m;
        if (count > 0) ok &= prev < v;
        ok &= it.rank() == count;
        prev = std::move(v);
        ++count;
      } while (it.next());
      c.expect(ok, "order or range violated at m = " + std::to_string(m));
      c.expect(count == binomial(m, n), "wrong subset count");
    }
  }
  return c.done();
}

Outcome haar_unitarity(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 12);
  for (int m = 1; m <= 40; ++m) {
    for (int t = 0; t < 5; ++t) {
      const UnitaryMatrix u = haar_unitary(m, rng);
      c.expect(unitarity_residual(u.matrix()) <= 1e-12,
               "residual " + num(unitarity_residual(u.matrix())));
    }
  }
  return c.done();
}

// ------------------------------------------------------------ sampler

Outcome full_normalization(std::uint64_t seed) {
  Checker c;
  for (int m : {2, 5, 9, 16}) {
    for (int n = 1; n <= std::min(4, m); ++n) {
      for (int i = 0; i < 3; ++i) {
        const UnitaryMatrix u = pool_matrix(seed, 100 + i, m);
        for (Regime r : {Regime::kIndistinguishable, Regime::kDistinguishable}) {
          const FullDistribution full =
              full_distribution(u, default_input_modes(n), r);
          double sum = 0.0;
          for (double p : full.probabilities) sum += p;
          c.expect(std::abs(sum - 1.0) <= 1e-9, "sum " + num(sum));
          c.expect(full.probabilities.size() == binomial(m + n - 1, n),
                   "outcome count");
        }
      }
    }
  }
  return c.done();
}

Outcome conditioned_matches_full(std::uint64_t seed) {
  Checker c;
  for (int m = 3; m <= 10; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const UnitaryMatrix u = pool_matrix(seed, 200 + m, m);
      const std::vector<int> in = default_input_modes(n);
      for (Regime r : {Regime::kIndistinguishable, Regime::kDistinguishable}) {
        const FullDistribution full = full_distribution(u, in, r);
        const CollisionFreeDistribution cf =
            collision_free_distribution(u, in, r);
        std::map<std::uint64_t, double> restricted;
        double mass = 0.0;
        for (std::size_t k = 0; k < full.outcomes.size(); ++k) {
          if (!full.outcomes[k].collision_free()) continue;
          restricted[full.outcomes[k].to_bitstring().bits()] =
              full.probabilities[k];
          mass += full.probabilities[k];
        }
        c.expect(restricted.size() == cf.outcomes.size(), "support differs");
        for (std::size_t k = 0; k < cf.outcomes.size(); ++k) {
          const double want = restricted[cf.outcomes[k].bits()] / mass;
          c.expect(std::abs(cf.probabilities[k] - want) <= 1e-12,
                   "conditioned probability differs");
        }
        for (std::size_t k = 0; k < full.outcomes.size(); ++k) {
          if (n > 3) break;
          const double slow = oracle::probability(
              u.matrix(), in, full.outcomes[k].counts,
              r == Regime::kIndistinguishable);
          c.expect(std::abs(full.probabilities[k] - slow) <= 1e-12,
                   "fast and naive probabilities differ");
        }
      }
    }
  }
  return c.done();
}

Outcome distinguishable_phase_invariance(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 13);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (int t = 0; t < 10; ++t) {
    const int m = 6 + t;
    const int n = 2 + t % 2;
    const UnitaryMatrix u = pool_matrix(seed, 300 + t, m);
    ComplexMatrix v = u.matrix();
    v.row(t % m) *= std::polar(1.0, phase(rng));
    v.col((t + 1) % m) *= std::polar(1.0, phase(rng));
    const UnitaryMatrix w = UnitaryMatrix::from_matrix(v);
    const auto in = default_input_modes(n);
    const auto a = collision_free_distribution(u, in, Regime::kDistinguishable);
    const auto b = collision_free_distribution(w, in, Regime::kDistinguishable);
    for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
      c.expect(std::abs(a.probabilities[k] - b.probabilities[k]) <= 1e-12,
               "distinguishable distribution depends on phases");
    }
  }
  return c.done();
}

Outcome unique_draws(std::uint64_t seed) {
  Checker c;
  for (int t = 0; t < 20; ++t) {
    const int m = 9 + t % 8;
    const int n = 2 + t % 3;
    const Regime r = t % 3 == 0   ? Regime::kUniform
                     : t % 3 == 1 ? Regime::kIndistinguishable
                                  : Regime::kDistinguishable;
    PoolSpec pool{m, n, seed, kDefaultEnumerationBudget,
                  kDefaultMaxMeasurements, {}};
    const auto dist = pool_distribution(pool, t, r);
    Rng rng = make_rng(seed, 14, t);
    const std::size_t want = std::min<std::size_t>(binomial(m, n) / 2, 300);
    const SampleSet s = draw_unique(dist, want, rng);
    std::unordered_set<Bitstring, BitstringHash> seen(s.bitstrings.begin(),
                                                     s.bitstrings.end());
    c.expect(seen.size() == s.size() && s.size() == want, "duplicates drawn");
    c.expect(s.n_meas >= s.size(), "N_meas < N");
    for (const auto& b : s.bitstrings) {
      c.expect(b.weight() == n && b.length() == m, "wrong weight or length");
    }
  }
  return c.done();
}

Outcome uniform_max_entropy(std::uint64_t seed) {
  Checker c;
  for (int t = 0; t < 10; ++t) {
    const int m = 5 + t;
    const int n = 2 + t % 3;
    const double hu = shannon_entropy(uniform_distribution(m, n));
    c.expect(std::abs(hu - std::log2(static_cast<double>(binomial(m, n)))) <=
                 1e-12,
             "uniform entropy != log2 C(m,n)");
    const UnitaryMatrix u = pool_matrix(seed, 400 + t, m);
    for (Regime r : {Regime::kIndistinguishable, Regime::kDistinguishable}) {
      const double h = shannon_entropy(
          collision_free_distribution(u, default_input_modes(n), r));
      c.expect(h <= hu + 1e-12, "entropy above uniform");
    }
  }
  return c.done();
}

// ------------------------------------------------------------ features

Outcome feature_permutation_invariance(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 15);
  for (int t = 0; t < 15; ++t) {
    const int m = 12 + t % 5;
    const int n = 3 + t % 2;
    SampleSet s;
    s.modes = m;
    s.photons = n;
    s.bitstrings = random_unique_set(m, n, 120, rng);
    s.n_meas = s.size();
    const RadiiSet radii = RadiiSet::defaults_for(n);
    const FeatureVector a = assemble_features(s, radii, true);
    SampleSet shuffled = s;
    std::shuffle(shuffled.bitstrings.begin(), shuffled.bitstrings.end(), rng);
    const FeatureVector b = assemble_features(shuffled, radii, true);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      c.expect(std::abs(a.values[k] - b.values[k]) <=
                   1e-12 * std::max(1.0, std::abs(a.values[k])),
               "feature depends on node order");
    }
    for (std::size_t k = 2; k < 2 * radii.size(); k += 2) {
      c.expect(a.values[k - 2] <= a.values[k], "mu not monotone in R");
    }
  }
  return c.done();
}

Outcome full_basis_correlations(std::uint64_t) {
  Checker c;
  for (int m = 3; m <= 16; ++m) {
    for (int n = 1; n < m && n <= 4; ++n) {
      const auto dist = uniform_distribution(m, n);
      const CorrelationMatrix cm = correlation_matrix(dist.outcomes);
      const double want = static_cast<double>(n) * (n - 1) / (m * (m - 1.0)) -
                          static_cast<double>(n) * n / (m * m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i != j) {
            c.expect(std::abs(cm(i, j) - want) <= 1e-12,
                     "off-diagonal correlator not exchangeable");
          }
        }
      }
      const CorrelationFeatures f = correlation_features(cm);
      c.expect(f.degenerate_dispersion && f.cv == 0.0 && f.skew == 0.0,
               "expected degenerate dispersion");
    }
  }
  return c.done();
}

// ------------------------------------------------------------ classifier

Outcome training_optimality(std::uint64_t seed) {
  Checker c;
  Rng rng = make_rng(seed, 16);
  for (int t = 0; t < 20; ++t) {
    const LabeledDataset d = synthetic_dataset(rng, 150, 3);
    const Standardizer st = fit_standardizer(d);
    const Eigen::MatrixXd x = st.apply(d.matrix());
    const std::vector<int> y = d.labels();
    const LogisticModel model = train_logistic(x, y);
    LogisticModel zero;
    zero.weights = Eigen::VectorXd::Zero(x.cols());
    c.expect(logistic_loss(model, x, y, 1.0) <= logistic_loss(zero, x, y, 1.0),
             "loss above the starting point");
    c.expect(model.info.gradient_norm <= 1e-6, "gradient above tolerance");
  }
  return c.done();
}

Outcome train_beats_test(std::uint64_t seed) {
  Checker c;
  double train_sum = 0.0;
  double test_sum = 0.0;
  for (int s = 0; s < 10; ++s) {
    MlExperimentSpec spec;
    spec.data.pool = PoolSpec{9, 3, seed + 1000 + s, kDefaultEnumerationBudget,
                              kDefaultMaxMeasurements, {}};
    spec.data.num_unique = 30;
    spec.data.radii = RadiiSet({2, 4});
    spec.data.include_correlations = true;
    spec.data.samples_per_matrix = 10;
    spec.train_matrices = 8;
    spec.test_matrices = 4;
    const MlData data = generate_ml_data(spec);
    std::set<std::string> train_ids, test_ids;
    for (const auto& r : data.train.records) train_ids.insert(r.matrix_id);
    for (const auto& r : data.test.records) test_ids.insert(r.matrix_id);
    for (const auto& id : test_ids) {
      c.expect(!train_ids.count(id), "matrix leaked between splits");
    }
    const auto names = data.train.feature_names;
    const MlEvaluation e = train_and_evaluate(data, names, spec.training);
    train_sum += e.train.accuracy();
    test_sum += e.test.accuracy();
  }
  c.expect(train_sum >= test_sum, "mean train accuracy " + num(train_sum / 10) +
                                      " below test " + num(test_sum / 10));
  return c.done();
}

// ------------------------------------------------------------ complexity

Outcome uniform_dicke_closed_form(std::uint64_t) {
  Checker c;
  for (int m = 2; m <= 25; ++m) {
    for (int n = 1; n <= std::min(m - 1, 5); ++n) {
      const auto psi = dicke_state(uniform_distribution(m, n));
      const Bipartition bp = Bipartition::half(m);
      const double s = von_neumann_entropy(psi, bp).entropy_bits;
      const double want =
          oracle::uniform_dicke_entropy(m, n, static_cast<int>(bp.left().size()));
      c.expect(std::abs(s - want) <= 1e-9,
               "m = " + std::to_string(m) + ", n = " + std::to_string(n) +
                   ": " + num(s) + " vs " + num(want));
    }
  }
  return c.done();
}

Outcome dense_entropy_agreement(std::uint64_t seed) {
  Checker c;
  for (int m = 3; m <= 10; ++m) {
    const int n = 1 + m % 3;
    const UnitaryMatrix u = pool_matrix(seed, 500 + m, m);
    for (Regime r : {Regime::kIndistinguishable, Regime::kDistinguishable}) {
      const auto psi = dicke_state(
          collision_free_distribution(u, default_input_modes(n), r));
      const Bipartition bp = Bipartition::half(m);
      const double fast = von_neumann_entropy(psi, bp).entropy_bits;
      const double dense = oracle::dense_entanglement_entropy(psi, bp);
      c.expect(std::abs(fast - dense) <= 1e-9, "block and dense entropies differ");
    }
  }
  return c.done();
}

Outcome point_mass_zero(std::uint64_t) {
  Checker c;
  for (int m = 2; m <= 12; ++m) {
    const int n = 1 + m % (m - 1);
    CollisionFreeDistribution d = uniform_distribution(m, n);
    std::fill(d.probabilities.begin(), d.probabilities.end(), 0.0);
    d.probabilities[d.probabilities.size() / 2] = 1.0;
    const Bipartition bp = Bipartition::half(m);
    c.expect(shannon_entropy(d) == 0.0, "H != 0");
    c.expect(von_neumann_entropy(dicke_state(d), bp).entropy_bits == 0.0,
             "S_A != 0");
    c.expect(classical_mutual_information(d, bp) == 0.0, "J != 0");
  }
  return c.done();
}

Outcome coverage_bounds(std::uint64_t seed) {
  Checker c;
  const auto uni = uniform_distribution(16, 4);
  const std::uint64_t total = 1820ULL * 1000ULL;
  const std::vector<std::uint64_t> points = {1, 10, 100, 1000, 10000, total};
  Rng rng = make_rng(seed, 17);
  const auto curve = coverage_curve(uni, total, points, rng);
  c.expect(curve.front().fraction == 1.0 / 1820.0, "t = 1 fraction");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    c.expect(curve[i].fraction <= 1.0, "fraction above 1");
    if (i) c.expect(curve[i].fraction >= curve[i - 1].fraction, "not monotone");
  }
  c.expect(curve.back().fraction > 0.99, "uniform coverage below 0.99");
  const auto ind = pool_distribution(
      PoolSpec{16, 4, seed, kDefaultEnumerationBudget, kDefaultMaxMeasurements,
               {}},
      0, Regime::kIndistinguishable);
  Rng rng2 = make_rng(seed, 18);
  const auto c2 = coverage_curve(ind, 100000, points, rng2);
  for (std::size_t i = 1; i < c2.size(); ++i) {
    c.expect(c2[i].fraction >= c2[i - 1].fraction, "not monotone");
  }
  return c.done();
}

// Plug-in entropy with the Miller-Madow bias correction (K - 1) / (2 N ln 2).
double corrected_entropy(const std::map<std::uint64_t, double>& counts,
                         double total) {
  double h = 0.0;
  for (const auto& [k, v] : counts) {
    const double p = v / total;
    h -= p * std::log2(p);
  }
  return h + (static_cast<double>(counts.size()) - 1.0) /
                 (2.0 * total * std::log(2.0));
}

Outcome mutual_information_sampling(std::uint64_t seed) {
  Checker c;
  for (int i = 0; i < 3; ++i) {
    PoolSpec pool{16, 4, seed, kDefaultEnumerationBudget,
                  kDefaultMaxMeasurements, {}};
    const Regime r = i == 2 ? Regime::kDistinguishable
                            : Regime::kIndistinguishable;
    const auto dist = pool_distribution(pool, 600 + i, r);
    const Bipartition bp = Bipartition::half(16);
    const double exact = classical_mutual_information(dist, bp);
    Rng rng = make_rng(seed, 19, i);
    const std::size_t draws = 1'000'000;
    const auto sample = draw_samples(dist, draws, rng);
    std::map<std::uint64_t, double> cx, ca, cb;
    for (const auto& b : sample) {
      cx[b.bits()] += 1;
      ca[b.bits() & bp.left_mask()] += 1;
      cb[b.bits() & bp.right_mask()] += 1;
    }
    const double n = static_cast<double>(draws);
    const double est = corrected_entropy(ca, n) + corrected_entropy(cb, n) -
                       corrected_entropy(cx, n);
    // Standard error from the variance of the pointwise information.
    double m1 = 0.0, m2 = 0.0;
    for (const auto& [k, v] : cx) {
      const double pmi = std::log2((v / n) / ((ca[k & bp.left_mask()] / n) *
                                             (cb[k & bp.right_mask()] / n)));
      m1 += v / n * pmi;
      m2 += v / n * pmi * pmi;
    }
    const double se = std::sqrt((m2 - m1 * m1) / n);
    c.expect(std::abs(est - exact) <= 3.0 * se,
             "exact " + num(exact) + " vs sampled " + num(est) + " (se " +
                 num(se) + ")");
    c.expect(exact >= -1e-12, "negative J");
  }
  return c.done();
}

}  // namespace

const std::vector<Property>& all_properties() {
  static const std::vector<Property> list = {
      {"hamming_metric_axioms", hamming_metric},
      {"degree_monotone_in_radius", degree_monotonicity},
      {"handshake_identity", handshake},
      {"correlation_row_sum_identity", correlation_row_sum},
      {"schmidt_spectrum_normalized", schmidt_normalization},
      {"standardization_affine_invariance", standardization_invariance},
      {"permanent_matches_naive", permanent_oracle},
      {"permanent_zero_row_and_permutation", permanent_structure},
      {"binomial_pascal_identity", binomial_pascal},
      {"subset_iterator_exhaustive", subset_iterator},
      {"haar_unitarity", haar_unitarity},
      {"full_distribution_normalized", full_normalization},
      {"conditioned_equals_restricted_full", conditioned_matches_full},
      {"distinguishable_phase_invariance", distinguishable_phase_invariance},
      {"unique_draws_distinct", unique_draws},
      {"uniform_maximizes_entropy", uniform_max_entropy},
      {"features_order_invariant", feature_permutation_invariance},
      {"full_basis_correlations_exchangeable", full_basis_correlations},
      {"training_reaches_optimum", training_optimality},
      {"train_accuracy_not_below_test", train_beats_test},
      {"uniform_dicke_closed_form", uniform_dicke_closed_form},
      {"block_entropy_matches_dense", dense_entropy_agreement},
      {"point_mass_measures_zero", point_mass_zero},
      {"coverage_monotone_bounded", coverage_bounds},
      {"mutual_information_sampling_consistent", mutual_information_sampling},
  };
  return list;
}

const std::vector<std::string>& core_property_names() {
  static const std::vector<std::string> names = {
      "hamming_metric_axioms",        "degree_monotone_in_radius",
      "handshake_identity",           "correlation_row_sum_identity",
      "schmidt_spectrum_normalized",  "standardization_affine_invariance",
  };
  return names;
}

}  // namespace hamnet::props

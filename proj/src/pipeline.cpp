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

#include "hamnet/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hamnet/complexity.hpp"
#include "hamnet/error.hpp"
#include "hamnet/experiments.hpp"
#include "hamnet/hamming_net.hpp"
#include "hamnet/parallel.hpp"

namespace hamnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr Regime kAllRegimes[3] = {Regime::kIndistinguishable,
                                   Regime::kDistinguishable, Regime::kUniform};
constexpr Regime kPhysical[2] = {Regime::kIndistinguishable,
                                 Regime::kDistinguishable};

// Lifted enumeration budget for long-running mode (n = 7 needs ~8.6e7).
constexpr std::uint64_t kLongRunningBudget = 1'000'000'000;

void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
std::string fmt_int(T v) {
  return std::to_string(v);
}

std::string join_radii(const std::vector<int>& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(r[i]);
  }
  return out;
}

struct PlotSpec {
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  // Scatter mode for wide tables: the two columns to plot.
  std::string scatter_x;
  std::string scatter_y;
  std::string group = "regime";
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    ensure(row.size() == header.size(), "CSV row width mismatch");
    rows.push_back(std::move(row));
  }
};

class Writer {
 public:
  Writer(const ExperimentConfig& c, std::string_view preset, PresetReport& r)
      : dir_(c.output_dir), preset_(preset), report_(r) {
    comment_ = "# config_hash=" + c.hash() + " seed=" +
               std::to_string(c.seed.value_or(0)) + " preset=" + preset_;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const Csv& csv,
             const std::optional<PlotSpec>& plot = std::nullopt) {
    const fs::path path = dir_ / (name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << comment_ << '\n';
    write_row(out, csv.header);
    for (const auto& row : csv.rows) write_row(out, row);
    if (!out) throw IoError("write failed: " + path.string());
    report_.files.push_back(path);
    if (plot) write_plot(name, *plot);
  }

 private:
  static void write_row(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      out << r[i];
    }
    out << '\n';
  }

  void write_plot(const std::string& name, const PlotSpec& p) {
    const fs::path path = dir_ / ("plot_" + name + ".py");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "#!/usr/bin/env python3\n"
        << "# Renders " << name << ".csv to " << name
        << ".png. Requires matplotlib.\n"
        << "import csv\nimport sys\nfrom collections import defaultdict\n\n"
        << "import matplotlib\nmatplotlib.use(\"Agg\")\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "path = sys.argv[1] if len(sys.argv) > 1 else \"" << name
        << ".csv\"\n"
        << "with open(path) as f:\n"
        << "    rows = list(csv.DictReader(l for l in f if not "
           "l.startswith(\"#\")))\n"
        << "fig, ax = plt.subplots()\n";
    if (p.scatter_x.empty()) {
      out << "groups = defaultdict(list)\n"
          << "for r in rows:\n"
          << "    groups[r[\"" << p.group << "\"]].append((float(r[\"x\"]), "
             "float(r[\"mean\"]), float(r[\"std\"])))\n"
          << "for name, pts in sorted(groups.items()):\n"
          << "    pts.sort()\n"
          << "    xs, ys, es = zip(*pts)\n"
          << "    ax.errorbar(xs, ys, yerr=es, marker=\"o\", ms=3, capsize=2, "
             "label=name)\n";
    } else {
      out << "key = \"regime\" if rows and \"regime\" in rows[0] else None\n"
          << "groups = defaultdict(list)\n"
          << "for r in rows:\n"
          << "    groups[r[key] if key else \"\"].append((float(r[\""
          << p.scatter_x << "\"]), float(r[\"" << p.scatter_y << "\"])))\n"
          << "for name, pts in sorted(groups.items()):\n"
          << "    xs, ys = zip(*pts)\n"
          << "    ax.scatter(xs, ys, s=6, alpha=0.6, label=name or None)\n";
    }
    if (p.log_x) out << "ax.set_xscale(\"log\")\n";
    out << "ax.set_xlabel(\"" << p.xlabel << "\")\n"
        << "ax.set_ylabel(\"" << p.ylabel << "\")\n"
        << "if len(groups) > 1:\n    ax.legend()\n"
        << "fig.tight_layout()\n"
        << "fig.savefig(path.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n";
    if (!out) throw IoError("write failed: " + path.string());
    report_.files.push_back(path);
  }

  fs::path dir_;
  std::string preset_;
  std::string comment_;
  PresetReport& report_;
};

Csv long_csv() { return Csv{{"regime", "x", "mean", "std"}, {}}; }

void add_point(Csv& csv, Regime r, double x, const Summary& s) {
  csv.add({std::string(to_string(r)), fmt(x), fmt(s.mean), fmt(s.stddev)});
}

std::uint64_t effective_budget(const ExperimentConfig& c) {
  return c.long_running ? std::max(c.enumeration_budget, kLongRunningBudget)
                        : c.enumeration_budget;
}

PoolSpec make_pool(const ExperimentConfig& c, int modes, int photons) {
  PoolSpec pool;
  pool.modes = modes;
  pool.photons = photons;
  pool.seed = *c.seed;
  pool.budget = effective_budget(c);
  pool.max_meas = c.max_measurements;
  if (photons == c.photons && modes == c.effective_modes()) {
    pool.input_modes = c.input_modes;
  }
  return pool;
}

// ---------------------------------------------------------------- fig3

void run_fig3(const ExperimentConfig& c, Writer& w, json& summary) {
  const int m = c.effective_modes();
  const int n = c.photons;
  const PoolSpec pool = make_pool(c, m, n);
  Csv single = long_csv();
  Csv one_matrix = long_csv();
  Csv averaged = long_csv();

  for (int ri = 0; ri < 3; ++ri) {
    const Regime regime = kAllRegimes[ri];
    // Per matrix: mean P_k over its samples, keyed by k.
    std::vector<std::map<int, double>> per_matrix(c.matrices);
    std::vector<double> mean_degrees;
    for (int i = 0; i < c.matrices; ++i) {
      const CollisionFreeDistribution dist = pool_distribution(pool, i, regime);
      const DegreeSampleStats stats =
          degree_samples(dist, c.num_unique, c.radius, c.samples_per_matrix,
                         *c.seed, static_cast<std::uint64_t>(i) * 4 + ri);
      std::map<int, std::vector<double>> pk;
      for (int s = 0; s < c.samples_per_matrix; ++s) {
        for (const auto& [k, p] : stats.distributions[s].entries()) {
          pk[k].resize(c.samples_per_matrix, 0.0);
          pk[k][s] = p;
        }
      }
      for (auto& [k, v] : pk) {
        v.resize(c.samples_per_matrix, 0.0);
        per_matrix[i][k] = summarize(v).mean;
        if (i == 0) add_point(one_matrix, regime, k, summarize(v));
      }
      if (i == 0) {
        for (const auto& [k, p] : stats.distributions[0].entries()) {
          add_point(single, regime, k, Summary{p, 0.0, 1});
        }
        std::vector<double> md;
        for (const auto& mo : stats.moments) md.push_back(mo.mean);
        const Summary sm = summarize(md);
        summary["fig3"][std::string(to_string(regime))] = {
            {"mean_degree", sm.mean}, {"mean_degree_std", sm.stddev}};
      }
      for (const auto& mo : stats.moments) mean_degrees.push_back(mo.mean);
    }
    std::set<int> ks;
    for (const auto& mk : per_matrix) {
      for (const auto& [k, p] : mk) ks.insert(k);
    }
    for (int k : ks) {
      std::vector<double> v;
      for (const auto& mk : per_matrix) {
        const auto it = mk.find(k);
        v.push_back(it == mk.end() ? 0.0 : it->second);
      }
      add_point(averaged, regime, k, summarize(v));
    }
    summary["fig3_all_matrices"][std::string(to_string(regime))] =
        summarize(mean_degrees).mean;
  }
  const PlotSpec plot{"degree k", "P_k", false, "", ""};
  w.write("fig3_single_sample", single, plot);
  w.write("fig3_one_matrix", one_matrix, plot);
  w.write("fig3_matrices", averaged, plot);
}

// ---------------------------------------------------------------- fig4

void run_fig4(const ExperimentConfig& c, Writer& w, json& summary) {
  const int m = c.effective_modes();
  const int n = c.photons;
  MlDatasetSpec spec;
  spec.pool = make_pool(c, m, n);
  spec.num_unique = c.num_unique;
  spec.radii = c.effective_radii();
  spec.include_correlations = true;
  spec.first_matrix = 0;
  spec.matrix_count = c.matrices;
  spec.samples_per_matrix = c.samples_per_matrix;
  const LabeledDataset d = build_ml_dataset(spec);

  Csv features;
  features.header = {"matrix_id", "regime", "N"};
  for (const auto& name : d.feature_names) features.header.push_back(name);
  for (const auto& r : d.records) {
    std::vector<std::string> row = {
        r.matrix_id,
        std::string(to_string(r.label == kLabelIndistinguishable
                                  ? Regime::kIndistinguishable
                                  : Regime::kDistinguishable)),
        fmt_int(c.num_unique)};
    for (double v : r.features) row.push_back(fmt(v));
    features.add(std::move(row));
  }
  const std::string r0 = std::to_string(spec.radii.front());
  w.write("fig4_unique_sets", features,
          PlotSpec{"mu_R" + r0, "sigma_R" + r0, false, "mu_R" + r0,
                   "sigma_R" + r0});

  // Raw draws keep collisions and repetitions: N draws from the full
  // distribution per sample.
  Csv raw{{"matrix_id", "regime", "N", "nm", "cv", "skew"}, {}};
  const std::vector<int> inputs = spec.pool.inputs();
  const std::size_t per_matrix = 2 * static_cast<std::size_t>(c.samples_per_matrix);
  std::vector<std::vector<std::string>> rows(c.matrices * per_matrix);
  for (int i = 0; i < c.matrices; ++i) {
    const UnitaryMatrix u = pool_matrix(*c.seed, i, m);
    for (int ri = 0; ri < 2; ++ri) {
      const FullDistribution full =
          full_distribution(u, inputs, kPhysical[ri], spec.pool.budget);
      const CumulativeTable table(full.probabilities);
      parallel_for(c.samples_per_matrix, [&](std::int64_t s) {
        Rng rng = stream_rng(*c.seed, StreamKind::kRawDraws, i,
                             static_cast<std::uint64_t>(ri) << 32 | s);
        std::vector<OutputConfiguration> draws;
        draws.reserve(c.num_unique);
        for (std::size_t k = 0; k < c.num_unique; ++k) {
          draws.push_back(full.outcomes[table.draw(rng)]);
        }
        const CorrelationFeatures f =
            correlation_features(correlation_matrix(draws));
        rows[i * per_matrix + ri * c.samples_per_matrix + s] = {
            matrix_id(*c.seed, i), std::string(to_string(kPhysical[ri])),
            fmt_int(c.num_unique), fmt(f.nm), fmt(f.cv), fmt(f.skew)};
      });
    }
  }
  for (auto& row : rows) raw.add(std::move(row));
  w.write("fig4_raw_draws", raw, PlotSpec{"NM", "CV", false, "nm", "cv"});
  summary["fig4"] = {{"records", d.size()}, {"raw_records", raw.rows.size()}};
}

// ---------------------------------------------------------------- fig5

std::vector<std::uint64_t> coverage_checkpoints(const ExperimentConfig& c) {
  if (!c.checkpoints.empty()) return c.checkpoints;
  std::vector<std::uint64_t> out;
  for (std::uint64_t decade = 1; decade <= c.coverage_max_meas; decade *= 10) {
    for (std::uint64_t f : {1, 2, 5}) {
      if (f * decade <= c.coverage_max_meas) out.push_back(f * decade);
    }
  }
  if (out.empty() || out.back() != c.coverage_max_meas) {
    out.push_back(c.coverage_max_meas);
  }
  return out;
}

void run_fig5(const ExperimentConfig& c, Writer& w, json& summary) {
  const int m = c.effective_modes();
  const int n = c.photons;
  const PoolSpec pool = make_pool(c, m, n);
  const std::vector<std::uint64_t> checkpoints = coverage_checkpoints(c);

  Csv coverage = long_csv();
  for (int ri = 0; ri < 3; ++ri) {
    const Regime regime = kAllRegimes[ri];
    std::vector<std::vector<double>> fractions(checkpoints.size(),
                                               std::vector<double>(c.matrices));
    parallel_for(c.matrices, [&](std::int64_t i) {
      const CollisionFreeDistribution dist = pool_distribution(pool, i, regime);
      Rng rng = stream_rng(*c.seed, StreamKind::kCoverage, i, ri);
      const auto curve =
          coverage_curve(dist, c.coverage_max_meas, checkpoints, rng);
      ensure(curve.size() == checkpoints.size(), "coverage checkpoints lost");
      for (std::size_t t = 0; t < curve.size(); ++t) {
        ensure(t == 0 || curve[t].fraction >= curve[t - 1].fraction,
               "coverage curve decreased");
        fractions[t][i] = curve[t].fraction;
      }
    });
    for (std::size_t t = 0; t < checkpoints.size(); ++t) {
      add_point(coverage, regime, static_cast<double>(checkpoints[t]),
                summarize(fractions[t]));
    }
  }
  w.write("fig5_coverage", coverage,
          PlotSpec{"measurements", "fraction of state space", true, "", ""});

  // Unique degree count against sample size, one matrix, many samples.
  Csv unique = long_csv();
  const std::uint64_t space = binomial(m, n);
  for (int ri = 0; ri < 3; ++ri) {
    const Regime regime = kAllRegimes[ri];
    const CollisionFreeDistribution dist = pool_distribution(pool, 0, regime);
    for (std::size_t si = 0; si < c.network_sizes.size(); ++si) {
      const std::size_t size = c.network_sizes[si];
      if (size > space) continue;
      const DegreeSampleStats stats = degree_samples(
          dist, size, c.radius, c.samples_per_matrix, *c.seed,
          (static_cast<std::uint64_t>(si) << 8) | (1u << 4) | ri);
      std::vector<double> counts(stats.unique_degrees.begin(),
                                 stats.unique_degrees.end());
      add_point(unique, regime, static_cast<double>(size), summarize(counts));
    }
  }
  w.write("fig5_unique_degrees", unique,
          PlotSpec{"sample size N", "unique degrees", true, "", ""});
  summary["fig5"] = {{"checkpoints", checkpoints.size()}};
}

// ---------------------------------------------------------------- ML

struct MlResult {
  int photons = 0;
  std::size_t num_unique = 0;
  double hamming = 0.0;
  double correlation = 0.0;
  double combined = 0.0;
  std::size_t test_total = 0;
  ModelFile model;
};

MlResult run_ml(const ExperimentConfig& c, int n, std::size_t num_unique) {
  const int m = n * n;
  require_tractable(m, n, c.train_matrices + c.test_matrices, c.long_running);
  if (num_unique > binomial(m, n)) {
    throw DomainError("N = " + std::to_string(num_unique) +
                      " exceeds the collision-free space for n = " +
                      std::to_string(n));
  }
  MlExperimentSpec spec;
  spec.data.pool = make_pool(c, m, n);
  spec.data.num_unique = num_unique;
  spec.data.radii = (n == c.photons && !c.radii.empty())
                        ? RadiiSet(c.radii)
                        : RadiiSet::defaults_for(n);
  spec.data.include_correlations = true;
  spec.data.samples_per_matrix = c.samples_per_matrix;
  spec.train_matrices = c.train_matrices;
  spec.test_matrices = c.test_matrices;
  spec.training = TrainingOptions{c.lambda, c.tolerance, c.max_iterations,
                                  *c.seed};
  const MlData data = generate_ml_data(spec);

  const std::vector<std::string> hamming =
      feature_names(spec.data.radii, false);
  const std::vector<std::string> correlation = {"nm", "cv", "skew"};
  const std::vector<std::string> combined = feature_names(spec.data.radii, true);

  MlResult out;
  out.photons = n;
  out.num_unique = num_unique;
  const MlEvaluation eh = train_and_evaluate(data, hamming, spec.training);
  const MlEvaluation ec = train_and_evaluate(data, correlation, spec.training);
  const MlEvaluation eb = train_and_evaluate(data, combined, spec.training);
  out.hamming = eh.test.accuracy();
  out.correlation = ec.test.accuracy();
  out.combined = eb.test.accuracy();
  out.test_total = eb.test.total;
  for (double a : {out.hamming, out.correlation, out.combined}) {
    ensure(a >= 0.0 && a <= 1.0, "accuracy outside [0, 1]");
  }
  out.model.classifier =
      c.include_correlations ? eb.classifier : eh.classifier;
  out.model.context = ModelContext{m, n, num_unique, spec.data.radii.values(),
                                   c.include_correlations, *c.seed};
  return out;
}

double binomial_se(double accuracy, std::size_t total) {
  return total ? std::sqrt(accuracy * (1.0 - accuracy) /
                           static_cast<double>(total))
               : 0.0;
}

void run_fig6(const ExperimentConfig& c, Writer& w, json& summary) {
  Csv acc{{"features", "x", "mean", "std"}, {}};
  for (int n : c.ml_photon_list) {
    const MlResult r = run_ml(c, n, c.num_unique);
    const std::pair<const char*, double> sets[] = {
        {"hamming", r.hamming},
        {"correlation", r.correlation},
        {"combined", r.combined}};
    for (const auto& [name, a] : sets) {
      acc.add({name, fmt_int(n), fmt(a), fmt(binomial_se(a, r.test_total))});
    }
    write_model_file(c.output_dir / ("model_n" + std::to_string(n) + "_N" +
                                     std::to_string(c.num_unique) + ".json"),
                     r.model);
    summary["fig6-ml"][std::to_string(n)] = {{"hamming", r.hamming},
                                             {"correlation", r.correlation},
                                             {"combined", r.combined}};
  }
  w.write("fig6_accuracy", acc,
          PlotSpec{"photons n", "test accuracy", false, "", "", "features"});
}

void run_table_ml(const ExperimentConfig& c, Writer& w, json& summary) {
  Csv table{{"n", "m", "N", "accuracy_hamming", "accuracy_correlation",
             "accuracy_combined", "test_samples"},
            {}};
  for (int n : c.ml_photon_list) {
    for (std::size_t size : c.sample_sizes) {
      const MlResult r = run_ml(c, n, size);
      table.add({fmt_int(n), fmt_int(n * n), fmt_int(size), fmt(r.hamming),
                 fmt(r.correlation), fmt(r.combined), fmt_int(r.test_total)});
      summary["table-ml"].push_back({{"n", n},
                                     {"N", size},
                                     {"hamming", r.hamming},
                                     {"correlation", r.correlation},
                                     {"combined", r.combined}});
    }
  }
  w.write("table_ml", table);
}

void run_radii_scan(const ExperimentConfig& c, Writer& w, json& summary) {
  const int n = c.photons;
  const int m = c.effective_modes();
  require_tractable(m, n, c.train_matrices + c.test_matrices, c.long_running);
  std::vector<int> candidates;
  for (int r = 2; r <= 2 * n; r += 2) candidates.push_back(r);

  MlExperimentSpec spec;
  spec.data.pool = make_pool(c, m, n);
  spec.data.num_unique = c.num_unique;
  spec.data.radii = RadiiSet(candidates);
  spec.data.include_correlations = false;
  spec.data.samples_per_matrix = c.samples_per_matrix;
  spec.train_matrices = c.train_matrices;
  spec.test_matrices = c.test_matrices;
  spec.training = TrainingOptions{c.lambda, c.tolerance, c.max_iterations,
                                  *c.seed};
  const MlData data = generate_ml_data(spec);

  std::vector<std::vector<int>> combos;
  const std::size_t k = candidates.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const int size = std::popcount(mask);
    if (size > c.scan_max_size) continue;
    std::vector<int> combo;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1u) combo.push_back(candidates[b]);
    }
    combos.push_back(std::move(combo));
  }
  std::sort(combos.begin(), combos.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  const RadiiScanReport report =
      radii_scan(data.train, data.test, combos, spec.training);
  Csv out{{"combination", "size", "accuracy"}, {}};
  double best = 0.0;
  for (const auto& row : report.rows) {
    out.add({join_radii(row.radii), fmt_int(row.radii.size()),
             fmt(row.accuracy)});
    best = std::max(best, row.accuracy);
  }
  w.write("radii_scan", out,
          PlotSpec{"number of radii", "test accuracy", false, "size",
                   "accuracy"});
  summary["radii-scan"] = {{"combinations", report.rows.size()},
                           {"best_accuracy", best}};
}

// ---------------------------------------------------------------- tables

void run_table_repetitions(const ExperimentConfig& c, Writer& w,
                           json& summary) {
  Csv table{{"n", "m", "N", "regime", "fraction_mean", "fraction_std",
             "per_unique_mean", "per_unique_std"},
            {}};
  for (int n : c.ml_photon_list) {
    const int m = n * n;
    require_tractable(m, n, c.matrices, c.long_running);
    for (std::size_t size : c.sample_sizes) {
      if (size > binomial(m, n)) {
        throw DomainError("N = " + std::to_string(size) +
                          " exceeds the collision-free space for n = " +
                          std::to_string(n));
      }
      const RepetitionStats stats =
          repetition_statistics(make_pool(c, m, n), c.matrices, size);
      const std::pair<Regime, std::pair<const std::vector<double>*,
                                        const std::vector<double>*>>
          regimes[] = {{Regime::kDistinguishable,
                        {&stats.fraction.distinguishable,
                         &stats.per_unique.distinguishable}},
                       {Regime::kIndistinguishable,
                        {&stats.fraction.indistinguishable,
                         &stats.per_unique.indistinguishable}}};
      for (const auto& [regime, v] : regimes) {
        const Summary f = summarize(*v.first);
        const Summary p = summarize(*v.second);
        table.add({fmt_int(n), fmt_int(m), fmt_int(size),
                   std::string(to_string(regime)), fmt(f.mean), fmt(f.stddev),
                   fmt(p.mean), fmt(p.stddev)});
        summary["table-repetitions"].push_back(
            {{"n", n},
             {"N", size},
             {"regime", to_string(regime)},
             {"fraction_percent", 100.0 * f.mean}});
      }
    }
  }
  w.write("table_repetitions", table);
}

void run_collisions(const ExperimentConfig& c, Writer& w, json& summary) {
  const auto sweep = [&](int m, int n, Csv& csv, double x) {
    require_tractable(m, n, c.matrices, c.long_running);
    const RegimePair p = collision_statistics(make_pool(c, m, n), c.matrices);
    const Summary si = summarize(p.indistinguishable);
    const Summary sd = summarize(p.distinguishable);
    add_point(csv, Regime::kIndistinguishable, x, si);
    add_point(csv, Regime::kDistinguishable, x, sd);
    return std::pair{si.mean, sd.mean};
  };
  Csv fixed = long_csv();
  for (int m : c.collision_modes) {
    if (m < c.collision_fixed_photons) {
      throw DomainError("collision sweep needs m >= n");
    }
    sweep(m, c.collision_fixed_photons, fixed, m);
  }
  w.write("collisions_fixed_n", fixed,
          PlotSpec{"modes m", "collision probability", false, "", ""});
  Csv quadratic = long_csv();
  for (int n : c.photon_list) {
    const auto [pi, pd] = sweep(n * n, n, quadratic, n * n);
    summary["collisions"][std::to_string(n)] = {{"indistinguishable", pi},
                                                {"distinguishable", pd}};
  }
  w.write("collisions_quadratic", quadratic,
          PlotSpec{"modes m = n^2", "collision probability", false, "", ""});
}

// ---------------------------------------------------------------- complexity

enum class Measure { kShannon, kVonNeumann, kMutualInformation };

void run_complexity(const ExperimentConfig& c, Writer& w, json& summary,
                    Measure measure, const std::string& name,
                    const std::string& ylabel) {
  Csv csv = long_csv();
  for (int n : c.photon_list) {
    const int m = n * n;
    require_tractable(m, n, c.matrices, c.long_running);
    for (Regime regime : kAllRegimes) {
      const std::vector<ComplexityMeasures> v =
          complexity_sweep(make_pool(c, m, n), regime, c.matrices);
      std::vector<double> values;
      for (const auto& e : v) {
        switch (measure) {
          case Measure::kShannon: values.push_back(e.shannon); break;
          case Measure::kVonNeumann: values.push_back(e.von_neumann); break;
          case Measure::kMutualInformation:
            ensure(e.mutual_information >= -1e-12,
                   "negative mutual information");
            values.push_back(e.mutual_information);
            break;
        }
      }
      const Summary s = summarize(values);
      add_point(csv, regime, m, s);
      summary[name][std::string(to_string(regime))][std::to_string(m)] = s.mean;
    }
  }
  w.write(name, csv, PlotSpec{"modes m", ylabel, false, "", ""});
}

void run_fig_shannon(const ExperimentConfig& c, Writer& w, json& summary) {
  run_complexity(c, w, summary, Measure::kShannon, "fig_shannon",
                 "Shannon entropy H(X) [bits]");
  // Average sorted profiles at the configured (m, n).
  const int m = c.effective_modes();
  const int n = c.photons;
  const PoolSpec pool = make_pool(c, m, n);
  Csv profiles = long_csv();
  for (Regime regime : kAllRegimes) {
    std::vector<std::vector<double>> sorted;
    const int count = regime == Regime::kUniform ? 1 : c.matrices;
    for (int i = 0; i < count; ++i) {
      sorted.push_back(sorted_profile(pool_distribution(pool, i, regime)));
    }
    const std::size_t len = sorted.front().size();
    for (std::size_t rank = 0; rank < len; ++rank) {
      std::vector<double> v;
      for (const auto& s : sorted) v.push_back(s[rank]);
      add_point(profiles, regime, static_cast<double>(rank), summarize(v));
    }
  }
  w.write("fig_shannon_profiles", profiles,
          PlotSpec{"rank", "probability", false, "", ""});
}

}  // namespace

// ---------------------------------------------------------------- config

RadiiSet ExperimentConfig::effective_radii() const {
  return radii.empty() ? RadiiSet::defaults_for(photons) : RadiiSet(radii);
}

void ExperimentConfig::validate() const {
  const int m = effective_modes();
  if (photons < 1) throw DomainError("photons must be >= 1");
  if (m < photons) throw DomainError("modes must be >= photons");
  if (m > 64) throw DomainError("at most 64 modes are supported");
  if (num_unique < 1) throw DomainError("num_unique must be >= 1");
  if (num_unique > binomial(m, photons)) {
    throw DomainError("num_unique = " + std::to_string(num_unique) +
                      " exceeds C(m, n) = " +
                      std::to_string(binomial(m, photons)));
  }
  effective_radii().check_photons(photons);
  if (radius < 2 || radius % 2 != 0 || radius > 2 * photons) {
    throw DomainError("radius must be even, >= 2 and <= 2n");
  }
  if (!input_modes.empty()) {
    if (static_cast<int>(input_modes.size()) != photons) {
      throw DomainError("input_modes needs one entry per photon");
    }
    std::set<int> seen;
    for (int t : input_modes) {
      if (t < 0 || t >= m || !seen.insert(t).second) {
        throw DomainError("input_modes must be distinct modes in [0, m)");
      }
    }
  }
  if (train_matrices < 1 || test_matrices < 1) {
    throw DomainError("train and test matrix counts must be >= 1");
  }
  if (samples_per_matrix < 1 || matrices < 1) {
    throw DomainError("sample and matrix counts must be >= 1");
  }
  for (int n : photon_list) {
    if (n < 1 || n > 8) throw DomainError("photon_list entries must be in [1, 8]");
  }
  for (int n : ml_photon_list) {
    if (n < 1 || n > 8) {
      throw DomainError("ml_photon_list entries must be in [1, 8]");
    }
  }
  for (std::size_t s : sample_sizes) {
    if (s < 1) throw DomainError("sample_sizes entries must be >= 1");
  }
  for (int cm : collision_modes) {
    if (cm < 1 || cm > 64) throw DomainError("collision_modes out of range");
  }
  if (scan_max_size < 1) throw DomainError("scan_max_size must be >= 1");
  if (!(lambda >= 0.0) || !(tolerance > 0.0) || max_iterations < 1) {
    throw DomainError("invalid training options");
  }
  if (!(threshold_sigma > 0.0) || reference_ensemble < 2) {
    throw DomainError("threshold_sigma > 0 and reference_ensemble >= 2");
  }
  if (coverage_max_meas < 1) throw DomainError("coverage_max_meas must be >= 1");
}

namespace {

template <class T>
void read_field(const json& doc, const char* key, T& field,
                std::set<std::string>& seen) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  seen.insert(key);
  try {
    field = it->template get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  ExperimentConfig c;
  std::set<std::string> seen;
  read_field(doc, "photons", c.photons, seen);
  read_field(doc, "modes", c.modes, seen);
  read_field(doc, "input_modes", c.input_modes, seen);
  read_field(doc, "num_unique", c.num_unique, seen);
  read_field(doc, "radii", c.radii, seen);
  read_field(doc, "radius", c.radius, seen);
  read_field(doc, "train_matrices", c.train_matrices, seen);
  read_field(doc, "test_matrices", c.test_matrices, seen);
  read_field(doc, "samples_per_matrix", c.samples_per_matrix, seen);
  read_field(doc, "matrices", c.matrices, seen);
  read_field(doc, "photon_list", c.photon_list, seen);
  read_field(doc, "ml_photon_list", c.ml_photon_list, seen);
  read_field(doc, "sample_sizes", c.sample_sizes, seen);
  read_field(doc, "network_sizes", c.network_sizes, seen);
  read_field(doc, "checkpoints", c.checkpoints, seen);
  read_field(doc, "coverage_max_meas", c.coverage_max_meas, seen);
  read_field(doc, "collision_fixed_photons", c.collision_fixed_photons, seen);
  read_field(doc, "collision_modes", c.collision_modes, seen);
  read_field(doc, "scan_max_size", c.scan_max_size, seen);
  read_field(doc, "include_correlations", c.include_correlations, seen);
  read_field(doc, "lambda", c.lambda, seen);
  read_field(doc, "tolerance", c.tolerance, seen);
  read_field(doc, "max_iterations", c.max_iterations, seen);
  read_field(doc, "threshold_sigma", c.threshold_sigma, seen);
  read_field(doc, "reference_ensemble", c.reference_ensemble, seen);
  read_field(doc, "enumeration_budget", c.enumeration_budget, seen);
  read_field(doc, "max_measurements", c.max_measurements, seen);
  read_field(doc, "long_running", c.long_running, seen);
  if (const auto it = doc.find("seed"); it != doc.end()) {
    seen.insert("seed");
    if (!it->is_null()) {
      if (!it->is_number_unsigned()) {
        throw DomainError("config field 'seed' must be a nonnegative integer");
      }
      c.seed = it->get<std::uint64_t>();
    }
  }
  if (const auto it = doc.find("output_dir"); it != doc.end()) {
    seen.insert("output_dir");
    if (!it->is_string()) throw DomainError("output_dir must be a string");
    c.output_dir = it->get<std::string>();
  }
  for (const auto& [key, value] : doc.items()) {
    if (!seen.count(key)) throw DomainError("unknown config field '" + key + "'");
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["photons"] = photons;
  j["modes"] = effective_modes();
  j["input_modes"] = input_modes;
  j["num_unique"] = num_unique;
  j["radii"] = effective_radii().values();
  j["radius"] = radius;
  j["train_matrices"] = train_matrices;
  j["test_matrices"] = test_matrices;
  j["samples_per_matrix"] = samples_per_matrix;
  j["matrices"] = matrices;
  j["photon_list"] = photon_list;
  j["ml_photon_list"] = ml_photon_list;
  j["sample_sizes"] = sample_sizes;
  j["network_sizes"] = network_sizes;
  j["checkpoints"] = checkpoints;
  j["coverage_max_meas"] = coverage_max_meas;
  j["collision_fixed_photons"] = collision_fixed_photons;
  j["collision_modes"] = collision_modes;
  j["scan_max_size"] = scan_max_size;
  j["include_correlations"] = include_correlations;
  j["lambda"] = lambda;
  j["tolerance"] = tolerance;
  j["max_iterations"] = max_iterations;
  j["threshold_sigma"] = threshold_sigma;
  j["reference_ensemble"] = reference_ensemble;
  j["enumeration_budget"] = enumeration_budget;
  j["max_measurements"] = max_measurements;
  j["long_running"] = long_running;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["output_dir"] = output_dir.string();
  return j;
}

std::string ExperimentConfig::hash() const {
  // The output location does not change results, so it is left out.
  json j = to_json();
  j.erase("output_dir");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed config " + path.string() + ": " + e.what());
  }
  return ExperimentConfig::from_json(doc);
}

PresetReport run_preset(std::string_view preset, const ExperimentConfig& c) {
  if (std::find(std::begin(kPresetNames), std::end(kPresetNames), preset) ==
      std::end(kPresetNames)) {
    throw DomainError("unknown preset '" + std::string(preset) + "'");
  }
  if (!c.seed) throw DomainError("a seed is required to run a preset");
  c.validate();
  PresetReport report;
  report.preset = std::string(preset);
  Writer w(c, preset, report);
  json& s = report.summary;
  if (preset == "fig3") {
    run_fig3(c, w, s);
  } else if (preset == "fig4") {
    run_fig4(c, w, s);
  } else if (preset == "fig5") {
    run_fig5(c, w, s);
  } else if (preset == "fig6-ml") {
    run_fig6(c, w, s);
  } else if (preset == "fig-shannon") {
    run_fig_shannon(c, w, s);
  } else if (preset == "fig7") {
    run_complexity(c, w, s, Measure::kVonNeumann, "fig7",
                   "von Neumann entropy S_A [bits]");
  } else if (preset == "fig8") {
    run_complexity(c, w, s, Measure::kMutualInformation, "fig8",
                   "classical mutual information J [bits]");
  } else if (preset == "table-ml") {
    run_table_ml(c, w, s);
  } else if (preset == "table-repetitions") {
    run_table_repetitions(c, w, s);
  } else if (preset == "radii-scan") {
    run_radii_scan(c, w, s);
  } else {
    run_collisions(c, w, s);
  }
  s["config_hash"] = c.hash();
  s["seed"] = *c.seed;
  s["bipartition"] = "left = first ceil(m/2) modes";
  return report;
}

// ---------------------------------------------------------------- model

void write_model_file(const fs::path& path, const ModelFile& m) {
  json doc = classifier_to_json(m.classifier);
  doc["context"] = {{"modes", m.context.modes},
                    {"photons", m.context.photons},
                    {"num_unique", m.context.num_unique},
                    {"radii", m.context.radii},
                    {"include_correlations", m.context.include_correlations},
                    {"seed", m.context.seed}};
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

ModelFile read_model_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed model " + path.string() + ": " + e.what());
  }
  ModelFile m;
  m.classifier = classifier_from_json(doc);
  try {
    const json& ctx = doc.at("context");
    m.context.modes = ctx.at("modes").get<int>();
    m.context.photons = ctx.at("photons").get<int>();
    m.context.num_unique = ctx.at("num_unique").get<std::size_t>();
    m.context.radii = ctx.at("radii").get<std::vector<int>>();
    m.context.include_correlations = ctx.at("include_correlations").get<bool>();
    m.context.seed = ctx.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw IoError("model " + path.string() + " lacks context: " + e.what());
  }
  const std::vector<std::string> expected = feature_names(
      RadiiSet(m.context.radii), m.context.include_correlations);
  if (expected != m.classifier.feature_names) {
    throw IoError("model " + path.string() +
                  ": feature names disagree with the stored context");
  }
  return m;
}

// ---------------------------------------------------------------- certify

json Verdict::to_json() const {
  json j = {{"verdict", verdict},
            {"radius", radius},
            {"sample_mean_degree", sample_mean_degree},
            {"reference_mean", reference_mean},
            {"reference_std", reference_std},
            {"z_score", z_score},
            {"nonuniform", nonuniform}};
  if (prediction) {
    j["label"] = prediction->label;
    j["p_indistinguishable"] = prediction->probability;
  }
  return j;
}

Verdict certify(const SampleSet& sample, const ModelFile& model,
                const CertifyOptions& options) {
  const ModelContext& ctx = model.context;
  if (sample.modes != ctx.modes || sample.photons != ctx.photons) {
    throw DomainError("sample has m = " + std::to_string(sample.modes) +
                      ", n = " + std::to_string(sample.photons) +
                      " but the model expects m = " +
                      std::to_string(ctx.modes) +
                      ", n = " + std::to_string(ctx.photons));
  }
  if (sample.size() != ctx.num_unique) {
    throw DomainError("sample has N = " + std::to_string(sample.size()) +
                      " but the model was trained with N = " +
                      std::to_string(ctx.num_unique));
  }
  if (!(options.threshold_sigma > 0.0) || options.reference_ensemble < 2) {
    throw DomainError("threshold_sigma > 0 and reference_ensemble >= 2");
  }
  const RadiiSet radii(ctx.radii);
  Verdict v;
  v.radius = radii.front();
  v.sample_mean_degree = degree_moments(build_network(sample, v.radius)).mean;

  const CollisionFreeDistribution uniform =
      uniform_distribution(ctx.modes, ctx.photons);
  const DegreeSampleStats ref =
      degree_samples(uniform, sample.size(), v.radius,
                     options.reference_ensemble, options.seed,
                     static_cast<std::uint64_t>(StreamKind::kReference));
  std::vector<double> means;
  for (const auto& m : ref.moments) means.push_back(m.mean);
  const Summary s = summarize(means);
  v.reference_mean = s.mean;
  v.reference_std = s.stddev;
  const double diff = v.sample_mean_degree - s.mean;
  if (s.stddev > 0.0) {
    v.z_score = diff / s.stddev;
    v.nonuniform = std::abs(v.z_score) > options.threshold_sigma;
  } else {
    v.z_score = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    v.nonuniform = diff != 0.0;
  }
  if (!v.nonuniform) {
    v.verdict = "uniform";
    return v;
  }
  const FeatureVector f =
      assemble_features(sample, radii, ctx.include_correlations);
  v.prediction = model.classifier.predict_raw(f.values);
  v.verdict = v.prediction->label == kLabelIndistinguishable
                  ? "indistinguishable"
                  : "distinguishable";
  return v;
}

}  // namespace hamnet

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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace hamnet {

inline constexpr int kLabelIndistinguishable = 1;
inline constexpr int kLabelDistinguishable = 0;

struct LabeledRecord {
  std::vector<double> features;
  int label = 0;  // 1 indistinguishable, 0 distinguishable
  std::string matrix_id;
};

struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<LabeledRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  /// Throws DomainError on inconsistent feature lengths or bad labels.
  void validate() const;
  bool has_both_labels() const;
  /// Keeps the named columns, in the given order.
  LabeledDataset select(std::span<const std::string> names) const;
  Eigen::MatrixXd matrix() const;
  std::vector<int> labels() const;
};

/// Routes every record by matrix id. Throws DomainError if the id lists
/// overlap or a record's id is in neither list.
std::pair<LabeledDataset, LabeledDataset> split_by_matrix(
    const LabeledDataset& d, std::span<const std::string> train_ids,
    std::span<const std::string> test_ids);

/// Per-feature (x - mean) / std with training statistics (population std).
/// Zero-variance features are dropped and listed in `dropped`.
struct Standardizer {
  std::size_t input_dim = 0;
  std::vector<std::size_t> kept;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<std::string> dropped;

  std::size_t output_dim() const { return kept.size(); }
  Eigen::VectorXd apply(std::span<const double> x) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

Standardizer fit_standardizer(const LabeledDataset& train);

struct TrainingOptions {
  double lambda = 1.0;
  double tolerance = 1e-6;
  int max_iterations = 500;
  std::uint64_t seed = 0;
};

struct TrainingInfo {
  double lambda = 0.0;
  double tolerance = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;  // max-norm at the returned solution
  double initial_loss = 0.0;   // at w = 0, b = 0
  double final_loss = 0.0;
  std::uint64_t seed = 0;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  TrainingInfo info;
};

/// Minimizes sum_i log(1 + exp(-y_i (w.x_i + b))) + lambda/2 ||w||^2 with
/// y in {-1, +1} (labels 0/1 on input) and the bias unregularized. Full-batch
/// Newton with backtracking from zero; converged when ||grad||_max <= tol.
/// Throws ConvergenceError carrying the residual when the cap is hit.
LogisticModel train_logistic(const Eigen::MatrixXd& x,
                             std::span<const int> labels,
                             const TrainingOptions& options = {});

double logistic_loss(const LogisticModel& model, const Eigen::MatrixXd& x,
                     std::span<const int> labels, double lambda);

struct Prediction {
  int label = 0;
  double probability = 0.5;  // P(indistinguishable)
};

/// p = 1 / (1 + exp(-(w.x + b))); label 1 iff p >= 0.5.
Prediction predict(const LogisticModel& model, const Eigen::VectorXd& x);

/// Standardizer + model + the feature names they were fitted on.
struct Classifier {
  std::vector<std::string> feature_names;
  Standardizer standardizer;
  LogisticModel model;

  Prediction predict_raw(std::span<const double> raw) const;
};

Classifier fit_classifier(const LabeledDataset& train,
                          const TrainingOptions& options = {});

struct EvaluationReport {
  std::size_t total = 0;
  std::size_t true_positive = 0;   // indistinguishable predicted as such
  std::size_t true_negative = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;

  double accuracy() const;
};

EvaluationReport evaluate(const Classifier& classifier,
                          const LabeledDataset& test);

struct RadiiScanRow {
  std::vector<int> radii;
  double accuracy = 0.0;
};

struct RadiiScanReport {
  std::vector<RadiiScanRow> rows;  // one per requested combination
  std::size_t fits = 0;            // distinct combinations trained
};

/// Trains and evaluates one classifier per radii combination using the
/// mu_R{r} / sigma_R{r} columns. Repeated combinations are fitted once.
RadiiScanReport radii_scan(const LabeledDataset& train,
                           const LabeledDataset& test,
                           std::span<const std::vector<int>> combinations,
                           const TrainingOptions& options = {});

void write_radii_scan_csv(std::ostream& out, const RadiiScanReport& report);

nlohmann::json classifier_to_json(const Classifier& c);
Classifier classifier_from_json(const nlohmann::json& doc);

}  // namespace hamnet

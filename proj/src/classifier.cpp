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

#include "hamnet/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hamnet/error.hpp"
#include "hamnet/parallel.hpp"

namespace hamnet {

void LabeledDataset::validate() const {
  for (const LabeledRecord& r : records) {
    if (r.features.size() != feature_names.size()) {
      throw DomainError("dataset: record has " +
                        std::to_string(r.features.size()) +
                        " features, expected " +
                        std::to_string(feature_names.size()));
    }
    if (r.label != 0 && r.label != 1) {
      throw DomainError("dataset: labels must be 0 or 1");
    }
  }
}

bool LabeledDataset::has_both_labels() const {
  bool zero = false;
  bool one = false;
  for (const LabeledRecord& r : records) {
    (r.label == 1 ? one : zero) = true;
  }
  return zero && one;
}

LabeledDataset LabeledDataset::select(
    std::span<const std::string> names) const {
  std::vector<std::size_t> columns;
  for (const std::string& name : names) {
    const auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) {
      throw DomainError("dataset has no feature column '" + name + "'");
    }
    columns.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  LabeledDataset out;
  out.feature_names.assign(names.begin(), names.end());
  out.records.reserve(records.size());
  for (const LabeledRecord& r : records) {
    LabeledRecord sub{{}, r.label, r.matrix_id};
    sub.features.reserve(columns.size());
    for (std::size_t c : columns) sub.features.push_back(r.features[c]);
    out.records.push_back(std::move(sub));
  }
  return out;
}

Eigen::MatrixXd LabeledDataset::matrix() const {
  Eigen::MatrixXd x(records.size(), feature_names.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
      x(i, j) = records[i].features[j];
    }
  }
  return x;
}

std::vector<int> LabeledDataset::labels() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const LabeledRecord& r : records) out.push_back(r.label);
  return out;
}

std::pair<LabeledDataset, LabeledDataset> split_by_matrix(
    const LabeledDataset& d, std::span<const std::string> train_ids,
    std::span<const std::string> test_ids) {
  const std::set<std::string> train(train_ids.begin(), train_ids.end());
  const std::set<std::string> test(test_ids.begin(), test_ids.end());
  for (const std::string& id : test) {
    if (train.count(id)) {
      throw DomainError("matrix id '" + id + "' is in both train and test");
    }
  }
  std::pair<LabeledDataset, LabeledDataset> out;
  out.first.feature_names = d.feature_names;
  out.second.feature_names = d.feature_names;
  for (const LabeledRecord& r : d.records) {
    if (train.count(r.matrix_id)) {
      out.first.records.push_back(r);
    } else if (test.count(r.matrix_id)) {
      out.second.records.push_back(r);
    } else {
      throw DomainError("record with matrix id '" + r.matrix_id +
                        "' is in neither split");
    }
  }
  return out;
}

Eigen::VectorXd Standardizer::apply(std::span<const double> x) const {
  if (x.size() != input_dim) {
    throw DomainError("standardizer expects " + std::to_string(input_dim) +
                      " features, got " + std::to_string(x.size()));
  }
  Eigen::VectorXd out(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out(k) = (x[kept[k]] - mean[k]) / stddev[k];
  }
  return out;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& rows) const {
  if (static_cast<std::size_t>(rows.cols()) != input_dim) {
    throw DomainError("standardizer dimension mismatch");
  }
  Eigen::MatrixXd out(rows.rows(), kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.col(k) = (rows.col(kept[k]).array() - mean[k]) / stddev[k];
  }
  return out;
}

Standardizer fit_standardizer(const LabeledDataset& train) {
  if (train.empty()) throw DomainError("cannot standardize an empty dataset");
  train.validate();
  const Eigen::MatrixXd x = train.matrix();
  Standardizer s;
  s.input_dim = train.feature_names.size();
  const double count = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mu = x.col(j).mean();
    const double sd =
        std::sqrt((x.col(j).array() - mu).square().sum() / count);
    if (!(sd > 1e-12 * (1.0 + std::abs(mu)))) {
      s.dropped.push_back(train.feature_names[j]);
      continue;
    }
    s.kept.push_back(static_cast<std::size_t>(j));
    s.mean.push_back(mu);
    s.stddev.push_back(sd);
  }
  return s;
}

namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double loss_at(const Eigen::MatrixXd& x, const Eigen::VectorXd& signs,
               const Eigen::VectorXd& w, double b, double lambda) {
  const Eigen::VectorXd z = (x * w).array() + b;
  double loss = 0.5 * lambda * w.squaredNorm();
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(-signs(i) * z(i));
  return loss;
}

}  // namespace

double logistic_loss(const LogisticModel& model, const Eigen::MatrixXd& x,
                     std::span<const int> labels, double lambda) {
  Eigen::VectorXd signs(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    signs(i) = labels[i] == 1 ? 1.0 : -1.0;
  }
  return loss_at(x, signs, model.weights, model.bias, lambda);
}

LogisticModel train_logistic(const Eigen::MatrixXd& x,
                             std::span<const int> labels,
                             const TrainingOptions& options) {
  if (static_cast<std::size_t>(x.rows()) != labels.size() || x.rows() == 0) {
    throw DomainError("train_logistic: need one label per (nonempty) row");
  }
  bool zero = false;
  bool one = false;
  Eigen::VectorXd signs(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DomainError("train_logistic: labels must be 0 or 1");
    }
    (labels[i] == 1 ? one : zero) = true;
    signs(i) = labels[i] == 1 ? 1.0 : -1.0;
  }
  if (!zero || !one) {
    throw DomainError("train_logistic: both classes must be present");
  }
  if (!(options.lambda >= 0.0)) {
    throw DomainError("train_logistic: lambda must be >= 0");
  }

  const Eigen::Index d = x.cols();
  const Eigen::Index rows = x.rows();
  // Augmented design [x, 1]; the last parameter is the bias.
  Eigen::MatrixXd xa(rows, d + 1);
  xa.leftCols(d) = x;
  xa.col(d).setOnes();
  Eigen::VectorXd reg = Eigen::VectorXd::Constant(d + 1, options.lambda);
  reg(d) = 0.0;

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  auto objective = [&](const Eigen::VectorXd& t) {
    return loss_at(x, signs, t.head(d), t(d), options.lambda);
  };

  LogisticModel model;
  model.info.lambda = options.lambda;
  model.info.tolerance = options.tolerance;
  model.info.seed = options.seed;
  model.info.initial_loss = objective(theta);
  double loss = model.info.initial_loss;

  Eigen::VectorXd grad(d + 1);
  Eigen::VectorXd curvature(rows);
  double residual = 0.0;
  int iteration = 0;
  for (;; ++iteration) {
    const Eigen::VectorXd z = xa * theta;
    Eigen::VectorXd coeff(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double p = sigmoid(z(i));
      // d/dz of softplus(-y z) = -y * sigmoid(-y z)
      coeff(i) = -signs(i) * sigmoid(-signs(i) * z(i));
      curvature(i) = p * (1.0 - p);
    }
    grad = xa.transpose() * coeff + reg.cwiseProduct(theta);
    residual = grad.cwiseAbs().maxCoeff();
    if (residual <= options.tolerance) break;
    if (iteration >= options.max_iterations) {
      std::ostringstream msg;
      msg << "logistic regression did not converge in "
          << options.max_iterations << " iterations (gradient max-norm "
          << residual << ")";
      throw ConvergenceError(msg.str(), residual);
    }
    Eigen::MatrixXd hessian =
        xa.transpose() * curvature.asDiagonal() * xa;
    hessian.diagonal() += reg;
    // Keeps the bias direction solvable when every curvature weight
    // underflows.
    hessian.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = hessian.ldlt().solve(-grad);

    double alpha = 1.0;
    const double slope = grad.dot(step);
    Eigen::VectorXd candidate = theta + step;
    double candidate_loss = objective(candidate);
    while (candidate_loss > loss + 1e-4 * alpha * slope && alpha > 1e-10) {
      alpha *= 0.5;
      candidate = theta + alpha * step;
      candidate_loss = objective(candidate);
    }
    if (!(candidate_loss <= loss)) {
      // No descent left at machine precision; accept only if converged.
      std::ostringstream msg;
      msg << "logistic regression line search stalled (gradient max-norm "
          << residual << ")";
      throw ConvergenceError(msg.str(), residual);
    }
    theta = candidate;
    loss = candidate_loss;
  }
  model.weights = theta.head(d);
  model.bias = theta(d);
  model.info.iterations = iteration;
  model.info.gradient_norm = residual;
  model.info.final_loss = loss;
  return model;
}

Prediction predict(const LogisticModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.weights.size()) {
    throw DomainError("predict: model has " +
                      std::to_string(model.weights.size()) +
                      " weights, input has " + std::to_string(x.size()));
  }
  Prediction out;
  out.probability = sigmoid(model.weights.dot(x) + model.bias);
  out.label = out.probability >= 0.5 ? 1 : 0;
  return out;
}

Prediction Classifier::predict_raw(std::span<const double> raw) const {
  return predict(model, standardizer.apply(raw));
}

Classifier fit_classifier(const LabeledDataset& train,
                          const TrainingOptions& options) {
  train.validate();
  if (!train.has_both_labels()) {
    throw DomainError("training data must contain both classes");
  }
  Classifier c;
  c.feature_names = train.feature_names;
  c.standardizer = fit_standardizer(train);
  const Eigen::MatrixXd x = c.standardizer.apply(train.matrix());
  const std::vector<int> y = train.labels();
  c.model = train_logistic(x, y, options);
  return c;
}

double EvaluationReport::accuracy() const {
  if (total == 0) return 0.0;
  return static_cast<double>(true_positive + true_negative) /
         static_cast<double>(total);
}

EvaluationReport evaluate(const Classifier& classifier,
                          const LabeledDataset& test) {
  if (test.empty()) throw DomainError("evaluate: empty test set");
  if (test.feature_names != classifier.feature_names) {
    throw DomainError("evaluate: feature columns do not match the model");
  }
  EvaluationReport report;
  for (const LabeledRecord& r : test.records) {
    const int predicted = classifier.predict_raw(r.features).label;
    ++report.total;
    if (r.label == 1) {
      ++(predicted == 1 ? report.true_positive : report.false_negative);
    } else {
      ++(predicted == 0 ? report.true_negative : report.false_positive);
    }
  }
  return report;
}

RadiiScanReport radii_scan(const LabeledDataset& train,
                           const LabeledDataset& test,
                           std::span<const std::vector<int>> combinations,
                           const TrainingOptions& options) {
  std::vector<std::vector<int>> keys;
  for (const auto& combo : combinations) {
    std::vector<int> key = combo;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) throw DomainError("radii_scan: empty combination");
    keys.push_back(std::move(key));
  }
  std::vector<std::vector<int>> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::vector<double> accuracy(distinct.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(distinct.size()), [&](std::int64_t i) {
    std::vector<std::string> names;
    for (int r : distinct[i]) {
      names.push_back("mu_R" + std::to_string(r));
      names.push_back("sigma_R" + std::to_string(r));
    }
    const Classifier c = fit_classifier(train.select(names), options);
    accuracy[i] = evaluate(c, test.select(names)).accuracy();
  });

  RadiiScanReport report;
  report.fits = distinct.size();
  for (const auto& key : keys) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), key);
    report.rows.push_back(
        {key, accuracy[static_cast<std::size_t>(it - distinct.begin())]});
  }
  return report;
}

void write_radii_scan_csv(std::ostream& out, const RadiiScanReport& report) {
  out << "combination,accuracy\n";
  const auto old_precision = out.precision(12);
  for (const RadiiScanRow& row : report.rows) {
    std::string name;
    for (int r : row.radii) {
      if (!name.empty()) name += '-';
      name += std::to_string(r);
    }
    out << name << ',' << row.accuracy << '\n';
  }
  out.precision(old_precision);
}

nlohmann::json classifier_to_json(const Classifier& c) {
  nlohmann::ordered_json doc;
  doc["feature_names"] = c.feature_names;
  doc["weights"] = std::vector<double>(
      c.model.weights.data(), c.model.weights.data() + c.model.weights.size());
  doc["bias"] = c.model.bias;
  doc["standardizer"] = {
      {"input_dim", c.standardizer.input_dim},
      {"kept", c.standardizer.kept},
      {"mean", c.standardizer.mean},
      {"std", c.standardizer.stddev},
      {"dropped", c.standardizer.dropped},
  };
  const TrainingInfo& info = c.model.info;
  doc["training"] = {
      {"solver", "newton"},
      {"lambda", info.lambda},
      {"tolerance", info.tolerance},
      {"iterations", info.iterations},
      {"gradient_norm", info.gradient_norm},
      {"initial_loss", info.initial_loss},
      {"final_loss", info.final_loss},
      {"seed", info.seed},
  };
  return nlohmann::json::parse(doc.dump());
}

Classifier classifier_from_json(const nlohmann::json& doc) {
  try {
    Classifier c;
    c.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto weights = doc.at("weights").get<std::vector<double>>();
    c.model.weights =
        Eigen::Map<const Eigen::VectorXd>(weights.data(), weights.size());
    c.model.bias = doc.at("bias").get<double>();
    const auto& st = doc.at("standardizer");
    c.standardizer.input_dim = st.at("input_dim").get<std::size_t>();
    c.standardizer.kept = st.at("kept").get<std::vector<std::size_t>>();
    c.standardizer.mean = st.at("mean").get<std::vector<double>>();
    c.standardizer.stddev = st.at("std").get<std::vector<double>>();
    c.standardizer.dropped = st.at("dropped").get<std::vector<std::string>>();
    const auto& tr = doc.at("training");
    c.model.info.lambda = tr.at("lambda").get<double>();
    c.model.info.tolerance = tr.at("tolerance").get<double>();
    c.model.info.iterations = tr.at("iterations").get<int>();
    c.model.info.gradient_norm = tr.at("gradient_norm").get<double>();
    c.model.info.initial_loss = tr.at("initial_loss").get<double>();
    c.model.info.final_loss = tr.at("final_loss").get<double>();
    c.model.info.seed = tr.at("seed").get<std::uint64_t>();
    if (c.standardizer.input_dim != c.feature_names.size() ||
        c.standardizer.kept.size() != c.standardizer.mean.size() ||
        c.standardizer.kept.size() != c.standardizer.stddev.size() ||
        static_cast<std::size_t>(c.model.weights.size()) !=
            c.standardizer.kept.size()) {
      throw DomainError("model file: inconsistent dimensions");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("model file: ") + e.what());
  }
}

}  // namespace hamnet

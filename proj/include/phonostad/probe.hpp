#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "phonostad/embeddings.hpp"

namespace phonostad {

struct ProbeConfig {
  std::vector<double> alphas{10, 100, 500, 1000, 2000};
  double logistic_c = 10;
  int max_iter = 1000;
  double tolerance = 1e-4;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  double train_fraction = 0.8;
  /// Class-stratified splits for binary labels.
  bool stratify = true;

  /// Throws DomainError on a non-positive alpha or train_fraction outside (0, 1).
  void validate() const;
};

/// Ridge regression with an unpenalised intercept.
struct RidgeModel {
  Eigen::MatrixXd weights;       // d x k
  Eigen::RowVectorXd intercept;  // k
  double alpha = 0;
  /// Mean squared leave-one-out residual per candidate alpha, grid order.
  std::vector<double> loo_mse;

  Eigen::MatrixXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
};

/// Closed-form ridge on centred data, alpha picked by exact leave-one-out
/// error from one eigendecomposition of the smaller Gram matrix (xᵀx or xxᵀ).
/// Ties go to the first alpha in the grid. Throws FitError for fewer than two
/// rows or when every column of x is constant.
RidgeModel ridge_fit(const Eigen::Ref<const Eigen::MatrixXd>& x, const Eigen::Ref<const Eigen::MatrixXd>& y,
                     std::span<const double> alphas);

/// L2-regularised logistic regression:
///   minimise mean_i log(1 + exp(-s_i (x_i·w + b))) + |w|² / (2C),  s_i = ±1,
/// by truncated Newton (conjugate-gradient inner solve) with Armijo
/// backtracking. The intercept is not penalised.
struct LogisticModel {
  Eigen::VectorXd weights;
  double intercept = 0;
  int iterations = 0;
  bool converged = false;
  /// Objective before the first step and after every accepted step.
  std::vector<double> objective_trace;

  Eigen::VectorXd decision(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Eigen::VectorXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
};

/// Converged when the gradient's infinity norm drops below tolerance.
/// Throws FitError unless y holds both classes (0/1 values only).
LogisticModel logistic_fit(const Eigen::Ref<const Eigen::MatrixXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                           double c = 10, int max_iter = 1000, double tolerance = 1e-4);

/// 1 - SS_res / SS_tot; 0 when y_true is constant. Throws DimensionError on
/// length mismatch or fewer than two values.
double r2(const Eigen::Ref<const Eigen::VectorXd>& y_true, const Eigen::Ref<const Eigen::VectorXd>& y_pred);
/// Uniform average of per-column R².
double r2_mean(const Eigen::Ref<const Eigen::MatrixXd>& y_true, const Eigen::Ref<const Eigen::MatrixXd>& y_pred);
double accuracy(const Eigen::Ref<const Eigen::VectorXd>& y_true, const Eigen::Ref<const Eigen::VectorXd>& y_pred);

struct Split {
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> test;
};

/// One shuffled train/test split per configured seed.
std::vector<Split> make_splits(const LabelSet& labels, const ProbeConfig& cfg);

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  double metric = 0;
  double alpha = 0;  // ridge only
  std::string error;
};

struct ProtocolResult {
  std::string metric;  // "accuracy" or "r2"
  std::vector<SeedResult> seeds;
  double mean = 0;
  double std = 0;

  std::vector<double> metrics() const;
};

/// Fits the matching probe on every split and scores the held-out rows:
/// logistic + accuracy for binary labels, ridge + R² otherwise. Seeds run in
/// parallel; results do not depend on thread count. Pass splits to reuse a
/// paired run's partition. Throws DomainError for n < 10 and FitError when
/// every seed fails.
ProtocolResult run_protocol(const Eigen::Ref<const Eigen::MatrixXd>& x, const LabelSet& y, const ProbeConfig& cfg,
                            const std::vector<Split>* splits = nullptr);

enum class ProbeTask { rhyme, g2p, syllable };

/// Throws DomainError for an unknown name.
ProbeTask parse_probe_task(std::string_view name);
LabelKind label_kind(ProbeTask task) noexcept;

/// Labels from the dataset CSVs: rhyme pairs give binary labels with ids
/// "word1 word2"; the G2P file gives vector8 labels (g2p) or syllable counts
/// (syllable) keyed by word.
LabelSet load_task_labels(const std::filesystem::path& path, ProbeTask task);

/// Matrix rows for the given ids, in id order. Throws AlignmentError when an
/// id is missing from the matrix.
Eigen::MatrixXd select_rows(const EmbeddingMatrix& m, const std::vector<std::string>& ids);

struct ProbeRecord {
  std::string layer;
  std::string condition;
  ProtocolResult result;
  std::optional<double> p_value;
};

struct ProbeReport {
  std::string task;
  std::string model_name;
  bool stratified = true;
  ProbeConfig config;
  std::vector<ProbeRecord> records;

  /// Columns: layer, condition, metric, mean, std, p_value.
  void write_csv(const std::filesystem::path& path) const;
  void write_json(const std::filesystem::path& path) const;
  std::string to_csv() const;
  std::string to_json() const;
};

}  // namespace phonostad

#include "phonostad/probe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "phonostad/error.hpp"
#include "phonostad/kernels.hpp"
#include "phonostad/phonotasks.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/stats.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void ProbeConfig::validate() const {
  if (alphas.empty()) throw DomainError("alpha grid is empty");
  for (const double a : alphas) {
    if (!(a > 0)) throw DomainError("ridge alphas must be positive");
  }
  if (!(train_fraction > 0 && train_fraction < 1)) throw DomainError("train_fraction must lie in (0, 1)");
  if (!(logistic_c > 0)) throw DomainError("logistic C must be positive");
  if (seeds.empty()) throw DomainError("no seeds configured");
}

// ---------------------------------------------------------------- ridge

MatrixXd RidgeModel::predict(const Eigen::Ref<const MatrixXd>& x) const {
  MatrixXd out = kernels::matmul(x, weights);
  out.rowwise() += intercept;
  return out;
}

RidgeModel ridge_fit(const Eigen::Ref<const MatrixXd>& x, const Eigen::Ref<const MatrixXd>& y,
                     std::span<const double> alphas) {
  const Index n = x.rows(), d = x.cols(), k = y.cols();
  if (n < 2) throw FitError("ridge needs at least two training rows");
  if (y.rows() != n) throw DimensionError("ridge: x and y row counts differ");
  if (alphas.empty()) throw DomainError("alpha grid is empty");

  const VectorXd x_mean = kernels::column_means(x);
  const MatrixXd xc = kernels::center(x, x_mean);
  if (xc.cwiseAbs().maxCoeff() == 0.0) throw FitError("every feature column is constant");
  const VectorXd y_mean = kernels::column_means(y);
  const MatrixXd yc = kernels::center(y, y_mean);
  const double inv_n = 1.0 / static_cast<double>(n);

  RidgeModel model;
  model.loo_mse.reserve(alphas.size());

  // Primal route (d <= n): xcᵀxc = V diag(lam) Vᵀ.
  // Dual route (d > n):    xc xcᵀ = U diag(lam) Uᵀ.
  const bool primal = d <= n;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(primal ? kernels::gram(xc) : kernels::outer_gram(xc));
  if (eig.info() != Eigen::Success) throw FitError("eigendecomposition failed");
  const VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  const MatrixXd& basis = eig.eigenvectors();

  // primal: proj = xc V (n x d), rhs = Vᵀ xcᵀ yc (d x k)
  // dual:   proj = U (n x n),    rhs = Uᵀ yc (n x k)
  const MatrixXd proj = primal ? kernels::matmul(xc, basis) : basis;
  const MatrixXd rhs = primal ? kernels::matmul_tn(basis, kernels::matmul_tn(xc, yc)) : kernels::matmul_tn(basis, yc);
  const MatrixXd proj_sq = proj.array().square();

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_at = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double alpha = alphas[a];
    // Shrinkage applied to each spectral component of the fitted values.
    VectorXd fit_scale(lam.size());
    VectorXd hat_scale(lam.size());
    for (Index j = 0; j < lam.size(); ++j) {
      fit_scale[j] = primal ? 1.0 / (lam[j] + alpha) : lam[j] / (lam[j] + alpha);
      hat_scale[j] = fit_scale[j];
    }
    const MatrixXd coef = fit_scale.asDiagonal() * rhs;
    const MatrixXd fitted = kernels::matmul(proj, coef);
    const VectorXd hat = kernels::matvec(proj_sq, hat_scale).array() + inv_n;
    double sse = 0;
    for (Index i = 0; i < n; ++i) {
      const double denom = 1.0 - hat[i];
      for (Index t = 0; t < k; ++t) {
        const double r = (yc(i, t) - fitted(i, t)) / denom;
        sse += r * r;
      }
    }
    const double mse = sse / static_cast<double>(n * k);
    model.loo_mse.push_back(mse);
    if (mse < best) {
      best = mse;
      best_at = a;
    }
  }

  model.alpha = alphas[best_at];
  VectorXd inv(lam.size());
  for (Index j = 0; j < lam.size(); ++j) inv[j] = 1.0 / (lam[j] + model.alpha);
  const MatrixXd coef = inv.asDiagonal() * rhs;
  model.weights = primal ? kernels::matmul(basis, coef) : kernels::matmul_tn(xc, kernels::matmul(basis, coef));
  model.intercept = (y_mean - model.weights.transpose() * x_mean).transpose();
  return model;
}

// ---------------------------------------------------------------- logistic

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(-m))
double softplus_neg(double m) {
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

struct LogisticProblem {
  const Eigen::Ref<const MatrixXd>& x;
  VectorXd sign;  // ±1
  VectorXd y01;
  double lambda;
  double inv_n;

  double objective(const VectorXd& w, double b) const {
    const VectorXd z = kernels::matvec(x, w);
    double loss = 0;
    for (Index i = 0; i < z.size(); ++i) loss += softplus_neg(sign[i] * (z[i] + b));
    return loss * inv_n + 0.5 * lambda * w.squaredNorm();
  }
};

}  // namespace

VectorXd LogisticModel::decision(const Eigen::Ref<const MatrixXd>& x) const {
  return kernels::matvec(x, weights).array() + intercept;
}

VectorXd LogisticModel::predict_proba(const Eigen::Ref<const MatrixXd>& x) const {
  return decision(x).unaryExpr([](double z) { return sigmoid(z); });
}

VectorXd LogisticModel::predict(const Eigen::Ref<const MatrixXd>& x) const {
  return decision(x).unaryExpr([](double z) { return z > 0 ? 1.0 : 0.0; });
}

LogisticModel logistic_fit(const Eigen::Ref<const MatrixXd>& x, const Eigen::Ref<const VectorXd>& y, double c,
                           int max_iter, double tolerance) {
  const Index n = x.rows(), d = x.cols();
  if (y.size() != n) throw DimensionError("logistic: x and y row counts differ");
  if (!(c > 0)) throw DomainError("logistic C must be positive");
  Index positives = 0;
  for (Index i = 0; i < n; ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) throw FitError("logistic labels must be 0 or 1");
    positives += y[i] == 1.0;
  }
  if (positives == 0 || positives == n) throw FitError("training labels contain a single class");

  LogisticProblem prob{x, (2.0 * y.array() - 1.0).matrix(), y, 1.0 / c, 1.0 / static_cast<double>(n)};
  LogisticModel m;
  m.weights = VectorXd::Zero(d);
  m.intercept = 0;
  double obj = prob.objective(m.weights, m.intercept);
  m.objective_trace.push_back(obj);

  for (int iter = 0; iter < max_iter; ++iter) {
    const VectorXd z = kernels::matvec(x, m.weights).array() + m.intercept;
    VectorXd r(n), curv(n);
    for (Index i = 0; i < n; ++i) {
      const double p = sigmoid(z[i]);
      r[i] = (p - y[i]) * prob.inv_n;
      curv[i] = p * (1.0 - p) * prob.inv_n;
    }
    const VectorXd g_w = kernels::matvec_t(x, r) + prob.lambda * m.weights;
    const double g_b = r.sum();
    const double g_inf = std::max(g_w.size() ? g_w.cwiseAbs().maxCoeff() : 0.0, std::abs(g_b));
    if (g_inf < tolerance) {
      m.converged = true;
      break;
    }
    m.iterations = iter + 1;

    // Conjugate gradient on H [dw; db] = -g.
    auto hess = [&](const VectorXd& vw, double vb, VectorXd& out_w, double& out_b) {
      const VectorXd u = (kernels::matvec(x, vw).array() + vb).matrix();
      const VectorXd t = curv.cwiseProduct(u);
      out_w = kernels::matvec_t(x, t) + prob.lambda * vw;
      out_b = t.sum();
    };
    VectorXd step_w = VectorXd::Zero(d);
    double step_b = 0;
    VectorXd res_w = -g_w;
    double res_b = -g_b;
    VectorXd dir_w = res_w;
    double dir_b = res_b;
    double rr = res_w.squaredNorm() + res_b * res_b;
    const double g_norm = std::sqrt(rr);
    const double cg_tol = std::min(0.5, std::sqrt(g_norm)) * g_norm;
    const int cg_max = static_cast<int>(std::min<Index>(d + 1, 250));
    for (int cg = 0; cg < cg_max && std::sqrt(rr) > cg_tol; ++cg) {
      VectorXd h_w;
      double h_b = 0;
      hess(dir_w, dir_b, h_w, h_b);
      const double curvature = dir_w.dot(h_w) + dir_b * h_b;
      if (!(curvature > 0)) break;
      const double alpha = rr / curvature;
      step_w += alpha * dir_w;
      step_b += alpha * dir_b;
      res_w -= alpha * h_w;
      res_b -= alpha * h_b;
      const double rr_new = res_w.squaredNorm() + res_b * res_b;
      const double beta = rr_new / rr;
      rr = rr_new;
      dir_w = res_w + beta * dir_w;
      dir_b = res_b + beta * dir_b;
    }
    if (step_w.squaredNorm() + step_b * step_b == 0) {
      step_w = -g_w;
      step_b = -g_b;
    }

    // Armijo backtracking keeps the objective non-increasing.
    const double slope = g_w.dot(step_w) + g_b * step_b;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const VectorXd w_new = m.weights + t * step_w;
      const double b_new = m.intercept + t * step_b;
      const double obj_new = prob.objective(w_new, b_new);
      if (obj_new <= obj + 1e-4 * t * slope) {
        m.weights = w_new;
        m.intercept = b_new;
        obj = obj_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    m.objective_trace.push_back(obj);
  }
  return m;
}

// ---------------------------------------------------------------- metrics

double r2(const Eigen::Ref<const VectorXd>& y_true, const Eigen::Ref<const VectorXd>& y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("r2: length mismatch");
  if (y_true.size() < 2) throw DimensionError("r2 needs at least two values");
  const double m = y_true.mean();
  const double ss_tot = (y_true.array() - m).square().sum();
  if (ss_tot == 0) return 0.0;
  const double ss_res = (y_true - y_pred).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

double r2_mean(const Eigen::Ref<const MatrixXd>& y_true, const Eigen::Ref<const MatrixXd>& y_pred) {
  if (y_true.cols() != y_pred.cols() || y_true.rows() != y_pred.rows()) throw DimensionError("r2: shape mismatch");
  double s = 0;
  for (Index c = 0; c < y_true.cols(); ++c) s += r2(y_true.col(c), y_pred.col(c));
  return s / static_cast<double>(y_true.cols());
}

double accuracy(const Eigen::Ref<const VectorXd>& y_true, const Eigen::Ref<const VectorXd>& y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("accuracy: length mismatch");
  if (y_true.size() == 0) throw DomainError("accuracy of an empty set");
  Index hits = 0;
  for (Index i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

// ---------------------------------------------------------------- protocol

std::vector<Split> make_splits(const LabelSet& labels, const ProbeConfig& cfg) {
  cfg.validate();
  const Index n = labels.size();
  const double test_fraction = 1.0 - cfg.train_fraction;
  std::vector<Split> out;
  for (const auto seed : cfg.seeds) {
    Rng rng(derive_seed(seed, "probe/split"));
    Split s;
    std::vector<std::vector<Index>> strata;
    if (labels.kind == LabelKind::binary && cfg.stratify) {
      strata.resize(2);
      for (Index i = 0; i < n; ++i) strata[labels.values(i, 0) == 1.0 ? 1 : 0].push_back(i);
    } else {
      strata.resize(1);
      for (Index i = 0; i < n; ++i) strata[0].push_back(i);
    }
    for (auto& stratum : strata) {
      rng.shuffle(std::span<Index>(stratum));
      const auto size = static_cast<double>(stratum.size());
      auto n_test = static_cast<std::size_t>(std::ceil(test_fraction * size - 1e-9));
      if (n_test >= stratum.size() && !stratum.empty()) n_test = stratum.size() - 1;
      s.test.insert(s.test.end(), stratum.begin(), stratum.begin() + static_cast<std::ptrdiff_t>(n_test));
      s.train.insert(s.train.end(), stratum.begin() + static_cast<std::ptrdiff_t>(n_test), stratum.end());
    }
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> ProtocolResult::metrics() const {
  std::vector<double> out;
  for (const auto& s : seeds) {
    if (s.ok) out.push_back(s.metric);
  }
  return out;
}

namespace {

MatrixXd take_rows(const Eigen::Ref<const MatrixXd>& m, const std::vector<Index>& rows) {
  MatrixXd out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

ProtocolResult run_protocol(const Eigen::Ref<const MatrixXd>& x, const LabelSet& y, const ProbeConfig& cfg,
                            const std::vector<Split>* splits) {
  cfg.validate();
  if (x.rows() < 10) throw DomainError("the probing protocol needs at least 10 rows");
  if (y.size() != x.rows()) throw DimensionError("labels and matrix differ in row count");
  std::vector<Split> own;
  if (!splits) {
    own = make_splits(y, cfg);
    splits = &own;
  }
  if (splits->size() != cfg.seeds.size()) throw DimensionError("one split per seed required");

  ProtocolResult result;
  result.metric = y.kind == LabelKind::binary ? "accuracy" : "r2";
  result.seeds.resize(cfg.seeds.size());
  const auto n_seeds = static_cast<std::ptrdiff_t>(cfg.seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t si = 0; si < n_seeds; ++si) {
    auto& out = result.seeds[static_cast<std::size_t>(si)];
    const auto& split = (*splits)[static_cast<std::size_t>(si)];
    out.seed = cfg.seeds[static_cast<std::size_t>(si)];
    try {
      const MatrixXd x_train = take_rows(x, split.train);
      const MatrixXd x_test = take_rows(x, split.test);
      const MatrixXd y_train = take_rows(y.values, split.train);
      const MatrixXd y_test = take_rows(y.values, split.test);
      if (y.kind == LabelKind::binary) {
        const auto model = logistic_fit(x_train, y_train.col(0), cfg.logistic_c, cfg.max_iter, cfg.tolerance);
        out.metric = accuracy(y_test.col(0), model.predict(x_test));
      } else {
        const auto model = ridge_fit(x_train, y_train, cfg.alphas);
        out.metric = r2_mean(y_test, model.predict(x_test));
        out.alpha = model.alpha;
      }
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  }

  auto values = result.metrics();
  if (values.empty()) throw FitError("every seed failed: " + result.seeds.front().error);
  std::sort(values.begin(), values.end());
  result.mean = mean(values);
  result.std = stddev(values);
  return result;
}

// ---------------------------------------------------------------- labels

ProbeTask parse_probe_task(std::string_view name) {
  if (name == "rhyme") return ProbeTask::rhyme;
  if (name == "g2p") return ProbeTask::g2p;
  if (name == "syllable") return ProbeTask::syllable;
  throw DomainError("unknown task '" + std::string(name) + "'");
}

LabelKind label_kind(ProbeTask task) noexcept {
  switch (task) {
    case ProbeTask::rhyme: return LabelKind::binary;
    case ProbeTask::g2p: return LabelKind::vector8;
    case ProbeTask::syllable: return LabelKind::scalar;
  }
  return LabelKind::binary;
}

LabelSet load_task_labels(const std::filesystem::path& path, ProbeTask task) {
  LabelSet out;
  out.kind = label_kind(task);
  if (task == ProbeTask::rhyme) {
    const auto pairs = read_rhyme_csv(path);
    out.values.resize(static_cast<Index>(pairs.size()), 1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out.values(static_cast<Index>(i), 0) = pairs[i].label ? 1.0 : 0.0;
      out.ids.push_back(pairs[i].word1 + " " + pairs[i].word2);
    }
    return out;
  }
  const auto rows = read_g2p_csv(path);
  out.values.resize(static_cast<Index>(rows.size()), task == ProbeTask::g2p ? 8 : 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Index>(i);
    if (task == ProbeTask::g2p) {
      for (std::size_t c = 0; c < kG2pLabelLength; ++c) out.values(r, static_cast<Index>(c)) = rows[i].phonemes[c];
    } else {
      out.values(r, 0) = rows[i].syllables;
    }
    out.ids.push_back(rows[i].word);
  }
  return out;
}

MatrixXd select_rows(const EmbeddingMatrix& m, const std::vector<std::string>& ids) {
  std::unordered_map<std::string, Index> where;
  for (std::size_t i = 0; i < m.ids.size(); ++i) where.emplace(m.ids[i], static_cast<Index>(i));
  MatrixXd out(static_cast<Index>(ids.size()), m.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto it = where.find(ids[i]);
    if (it == where.end()) throw AlignmentError("label id '" + ids[i] + "' is not a row of the matrix");
    out.row(static_cast<Index>(i)) = m.data.row(it->second);
  }
  return out;
}

// ---------------------------------------------------------------- report

std::string ProbeReport::to_csv() const {
  std::ostringstream out;
  out << "layer,condition,metric,mean,std,p_value\n";
  for (const auto& r : records) {
    out << csv_field(r.layer) << ',' << csv_field(r.condition) << ',' << r.result.metric << ','
        << format_double(r.result.mean) << ',' << format_double(r.result.std) << ','
        << (r.p_value ? format_double(*r.p_value) : std::string()) << '\n';
  }
  return out.str();
}

std::string ProbeReport::to_json() const {
  nlohmann::json j;
  j["task"] = task;
  j["model_name"] = model_name;
  j["stratified_splits"] = stratified;
  j["config"] = {{"alphas", config.alphas},
                 {"logistic_c", config.logistic_c},
                 {"max_iter", config.max_iter},
                 {"tolerance", config.tolerance},
                 {"seeds", config.seeds},
                 {"train_fraction", config.train_fraction}};
  auto& rows = j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json row;
    row["layer"] = r.layer;
    row["condition"] = r.condition;
    row["metric"] = r.result.metric;
    row["mean"] = r.result.mean;
    row["std"] = r.result.std;
    row["p_value"] = r.p_value ? nlohmann::json(*r.p_value) : nlohmann::json(nullptr);
    auto& seeds = row["seeds"] = nlohmann::json::array();
    for (const auto& s : r.result.seeds) {
      nlohmann::json e{{"seed", s.seed}, {"ok", s.ok}};
      if (s.ok) {
        e["value"] = s.metric;
        if (r.result.metric == "r2") e["alpha"] = s.alpha;
      } else {
        e["error"] = s.error;
      }
      seeds.push_back(std::move(e));
    }
    rows.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

void ProbeReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_csv();
}

void ProbeReport::write_json(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json();
}

}  // namespace phonostad

#include <doctest.h>

#include <omp.h>

#include <fstream>
#include <json.hpp>
#include <set>

#include "oracles.hpp"
#include "phonostad/error.hpp"
#include "phonostad/probe.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace phonostad;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const std::vector<double> kGrid{10, 100, 500, 1000, 2000};

double objective(const MatrixXd& x, const VectorXd& y, const LogisticModel& m, double c) {
  double loss = 0;
  const VectorXd z = x * m.weights;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double s = y[i] == 1.0 ? 1.0 : -1.0;
    loss += std::log1p(std::exp(-s * (z[i] + m.intercept)));
  }
  return loss / static_cast<double>(x.rows()) + m.weights.squaredNorm() / (2 * c);
}

}  // namespace

TEST_SUITE("probe") {
  TEST_CASE("config validation") {
    ProbeConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.alphas = {10, 0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.train_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("ridge alpha and LOO error match brute-force refits") {
    int instance = 0;
    for (const auto& [n, d, k] : {std::tuple{12, 3, 1}, {30, 8, 3}, {50, 10, 1}, {20, 45, 2}, {40, 40, 1}}) {
      for (const double noise : {0.5, 3.0, 12.0}) {
        const auto data = synthetic::planted(n, d, k, 100 + static_cast<std::uint64_t>(instance++), noise);
        for (const auto& grid : {kGrid, std::vector<double>{0.01, 0.3, 4, 50, 700}}) {
          const auto model = ridge_fit(data.x, data.y, grid);
          const auto brute = oracle::ridge_loo_mse(data.x, data.y, grid);
          REQUIRE(model.loo_mse.size() == brute.size());
          for (std::size_t a = 0; a < brute.size(); ++a) {
            CHECK(model.loo_mse[a] == doctest::Approx(brute[a]).epsilon(1e-9));
          }
          CHECK(model.alpha == grid[oracle::argmin_first(brute)]);
        }
      }
    }
  }

  TEST_CASE("ridge solves the normal equations on both routes") {
    for (const auto& [n, d] : {std::pair{60, 12}, {15, 70}}) {
      const auto data = synthetic::planted(n, d, 3, 7, 1.0);
      const auto model = ridge_fit(data.x, data.y, kGrid);
      const MatrixXd xc = data.x.rowwise() - data.x.colwise().mean();
      const MatrixXd yc = data.y.rowwise() - data.y.colwise().mean();
      MatrixXd a = xc.transpose() * xc;
      a.diagonal().array() += model.alpha;
      const MatrixXd rhs = xc.transpose() * yc;
      const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
      CHECK((a * model.weights - rhs).cwiseAbs().maxCoeff() < 1e-6 * scale);
      Eigen::RowVectorXd b;
      const auto w = oracle::ridge_weights(data.x, data.y, model.alpha, b);
      CHECK((model.weights - w).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((model.intercept - b).cwiseAbs().maxCoeff() < 1e-8);
    }
  }

  TEST_CASE("ridge recovers a noiseless planted map") {
    const auto data = synthetic::planted(200, 10, 1, 5);
    const auto split_at = 160;
    const auto model = ridge_fit(data.x.topRows(split_at), data.y.topRows(split_at), kGrid);
    const MatrixXd pred = model.predict(data.x.bottomRows(40));
    CHECK(r2(data.y.bottomRows(40).col(0), pred.col(0)) >= 0.99);
  }

  TEST_CASE("ridge degenerate inputs") {
    MatrixXd x = MatrixXd::Constant(10, 3, 2.0);
    MatrixXd y = synthetic::gaussian(10, 1, 1);
    CHECK_THROWS_AS(ridge_fit(x, y, kGrid), FitError);
    CHECK_THROWS_AS(ridge_fit(synthetic::gaussian(1, 3, 1), MatrixXd::Ones(1, 1), kGrid), FitError);
    CHECK_THROWS_AS(ridge_fit(synthetic::gaussian(5, 3, 1), MatrixXd::Ones(4, 1), kGrid), DimensionError);
    const auto xs = synthetic::gaussian(40, 4, 2);
    const auto constant = ridge_fit(xs, MatrixXd::Constant(40, 1, 3.0), kGrid);
    CHECK((constant.predict(synthetic::gaussian(5, 4, 3)).array() - 3.0).abs().maxCoeff() < 1e-12);
  }

  TEST_CASE("logistic separates blobs") {
    const auto data = synthetic::blobs(400, 10, 10.0, 3);
    const auto m = logistic_fit(data.x.topRows(320), data.y.head(320), 10, 1000, 1e-4);
    CHECK(m.converged);
    CHECK(accuracy(data.y.tail(80), m.predict(data.x.bottomRows(80))) >= 0.99);
  }

  TEST_CASE("logistic objective is non-increasing and stationary at the end") {
    const auto data = synthetic::blobs(300, 20, 1.5, 8);
    const auto m = logistic_fit(data.x, data.y, 10, 1000, 1e-4);
    REQUIRE(m.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < m.objective_trace.size(); ++i) {
      CHECK(m.objective_trace[i] <= m.objective_trace[i - 1]);
    }
    CHECK(m.objective_trace.back() == doctest::Approx(objective(data.x, data.y, m, 10)).epsilon(1e-12));
    // Independent gradient of the objective at the solution.
    VectorXd r(data.x.rows());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double z = data.x.row(i).dot(m.weights) + m.intercept;
      r[i] = (1.0 / (1.0 + std::exp(-z)) - data.y[i]) / static_cast<double>(r.size());
    }
    const VectorXd g = data.x.transpose() * r + m.weights / 10.0;
    CHECK(m.converged);
    CHECK(g.cwiseAbs().maxCoeff() < 1e-4);
    CHECK(std::abs(r.sum()) < 1e-4);
  }

  TEST_CASE("logistic decision is invariant to duplicating every row") {
    const auto data = synthetic::blobs(120, 6, 1.0, 4);
    MatrixXd x2(240, 6);
    x2 << data.x, data.x;
    VectorXd y2(240);
    y2 << data.y, data.y;
    const auto a = logistic_fit(data.x, data.y, 10, 1000, 1e-10);
    const auto b = logistic_fit(x2, y2, 10, 1000, 1e-10);
    const auto probe = synthetic::gaussian(50, 6, 9);
    CHECK((a.predict_proba(probe) - b.predict_proba(probe)).cwiseAbs().maxCoeff() < 1e-6);
  }

  TEST_CASE("flipping labels flips the classifier") {
    const auto data = synthetic::blobs(100, 5, 1.0, 6);
    const VectorXd flipped = (1.0 - data.y.array()).matrix();
    const auto a = logistic_fit(data.x, data.y, 10, 1000, 1e-10);
    const auto b = logistic_fit(data.x, flipped, 10, 1000, 1e-10);
    CHECK((a.weights + b.weights).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(std::abs(a.intercept + b.intercept) < 1e-6);
  }

  TEST_CASE("logistic rejects one-class or non-binary labels") {
    const auto x = synthetic::gaussian(10, 2, 1);
    CHECK_THROWS_AS(logistic_fit(x, VectorXd::Ones(10)), FitError);
    VectorXd y = VectorXd::Zero(10);
    y[0] = 2;
    CHECK_THROWS_AS(logistic_fit(x, y), FitError);
  }

  TEST_CASE("r2 and accuracy") {
    VectorXd t(4), p(4);
    t << 1, 2, 3, 4;
    CHECK(r2(t, t) == 1.0);
    p.setConstant(2.5);
    CHECK(r2(t, p) == 0.0);
    p << 4, 3, 2, 1;
    CHECK(r2(t, p) < 0);
    CHECK(r2(VectorXd::Constant(4, 2.0), t) == 0.0);
    CHECK_THROWS_AS(r2(t, VectorXd::Zero(3)), DimensionError);
    MatrixXd tm(4, 2), pm(4, 2);
    tm << 1, 5, 2, 5, 3, 5, 4, 5;
    pm << 1, 0, 2, 0, 3, 0, 4, 0;
    CHECK(r2_mean(tm, pm) == 0.5);
    CHECK(accuracy(t, t) == 1.0);
  }

  TEST_CASE("splits are disjoint, complete and stratified") {
    ProbeConfig cfg;
    LabelSet bin;
    bin.kind = LabelKind::binary;
    bin.values.resize(53, 1);
    for (Eigen::Index i = 0; i < 53; ++i) bin.values(i, 0) = i < 21 ? 1 : 0;
    const auto splits = make_splits(bin, cfg);
    REQUIRE(splits.size() == 10);
    std::set<std::vector<Eigen::Index>> distinct;
    for (const auto& s : splits) {
      CHECK(s.train.size() + s.test.size() == 53);
      std::set<Eigen::Index> all(s.train.begin(), s.train.end());
      all.insert(s.test.begin(), s.test.end());
      CHECK(all.size() == 53);
      std::size_t pos = 0;
      for (auto i : s.test) pos += bin.values(i, 0) == 1;
      CHECK(pos == 5);                  // ceil(0.2 * 21)
      CHECK(s.test.size() == 5 + 7);    // + ceil(0.2 * 32)
      distinct.insert(s.test);
    }
    CHECK(distinct.size() == 10);
    auto scalar = bin;
    scalar.kind = LabelKind::scalar;
    for (const auto& s : make_splits(scalar, cfg)) CHECK(s.test.size() == 11);
    const auto again = make_splits(bin, cfg);
    for (std::size_t i = 0; i < splits.size(); ++i) CHECK(again[i].test == splits[i].test);
  }

  TEST_CASE("protocol is deterministic across thread counts") {
    const auto data = synthetic::planted(120, 15, 8, 2, 2.0);
    const auto labels = synthetic::as_labels(data.y, LabelKind::vector8);
    ProbeConfig cfg;
    omp_set_num_threads(1);
    const auto one = run_protocol(data.x, labels, cfg);
    omp_set_num_threads(4);
    const auto four = run_protocol(data.x, labels, cfg);
    omp_set_num_threads(1);
    CHECK(one.mean == four.mean);
    CHECK(one.std == four.std);
    CHECK(one.metric == "r2");
    REQUIRE(one.seeds.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(one.seeds[i].seed == i);
      CHECK(one.seeds[i].metric == four.seeds[i].metric);
      CHECK(one.seeds[i].alpha == four.seeds[i].alpha);
    }
  }

  TEST_CASE("protocol failures") {
    const auto x = synthetic::gaussian(9, 3, 1);
    CHECK_THROWS_AS(run_protocol(x, synthetic::as_labels(MatrixXd::Zero(9, 1), LabelKind::scalar), {}), DomainError);
    const auto x20 = synthetic::gaussian(20, 3, 1);
    CHECK_THROWS_AS(run_protocol(x20, synthetic::as_labels(MatrixXd::Zero(20, 1), LabelKind::binary), {}), FitError);
    auto labels = synthetic::as_labels(MatrixXd::Zero(20, 1), LabelKind::binary);
    labels.values(0, 0) = 1;
    // One positive: stratified splits leave it in training, so every test set is one-class but fits succeed.
    CHECK_NOTHROW(run_protocol(x20, labels, {}));
  }

  TEST_CASE("random labels collapse to chance") {
    const auto x = synthetic::gaussian(400, 64, 17);
    ProbeConfig cfg;
    const auto bin = run_protocol(x, random_labels(LabelKind::binary, 400, 1), cfg);
    CHECK(bin.mean >= 0.42);
    CHECK(bin.mean <= 0.58);
    CHECK(run_protocol(x, random_labels(LabelKind::scalar, 400, 2), cfg).mean <= 0.05);
    CHECK(run_protocol(x, random_labels(LabelKind::vector8, 400, 3), cfg).mean <= 0.05);
  }

  TEST_CASE("task labels load from the dataset CSVs") {
    const auto dir = testsupport::scratch_dir("probe-labels");
    {
      std::ofstream r(dir / "rhyme.csv");
      r << "word1,word2,label\nnight,kite,1\ncough,tough,0\n";
      std::ofstream g(dir / "g2p.csv");
      g << "word,p1,p2,p3,p4,p5,p6,p7,p8,syllable_count\ncat,20,2,31,0,0,0,0,0,1\n";
    }
    const auto rhyme = load_task_labels(dir / "rhyme.csv", ProbeTask::rhyme);
    CHECK(rhyme.kind == LabelKind::binary);
    CHECK(rhyme.ids == std::vector<std::string>{"night kite", "cough tough"});
    CHECK(rhyme.values(0, 0) == 1);
    const auto g2p = load_task_labels(dir / "g2p.csv", ProbeTask::g2p);
    CHECK(g2p.values.cols() == 8);
    CHECK(g2p.values(0, 2) == 31);
    const auto syl = load_task_labels(dir / "g2p.csv", ProbeTask::syllable);
    CHECK(syl.values(0, 0) == 1);
    CHECK_THROWS_AS(parse_probe_task("vowel"), DomainError);

    EmbeddingMatrix m;
    m.data = synthetic::gaussian(3, 2, 1);
    m.ids = {"a", "b", "c"};
    const auto rows = select_rows(m, {"c", "a"});
    CHECK(rows.row(0) == m.data.row(2));
    CHECK_THROWS_AS(select_rows(m, {"z"}), AlignmentError);
  }

  TEST_CASE("report formats") {
    ProbeReport report;
    report.task = "rhyme";
    report.model_name = "tiny";
    ProtocolResult res;
    res.metric = "accuracy";
    res.mean = 0.75;
    res.std = 0.05;
    res.seeds = {{0, true, 0.7, 0, ""}, {1, true, 0.8, 0, ""}};
    report.records.push_back({"40%", "probe", res, 0.01});
    report.records.push_back({"baseline", "random-embedding", res, std::nullopt});
    CHECK(report.to_csv() ==
          "layer,condition,metric,mean,std,p_value\n40%,probe,accuracy,0.75,0.05,0.01\n"
          "baseline,random-embedding,accuracy,0.75,0.05,\n");
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["records"].size() == 2);
    CHECK(j["records"][0]["seeds"].size() == 2);
    CHECK(j["records"][1]["p_value"].is_null());
    CHECK(j["stratified_splits"] == true);
  }
}

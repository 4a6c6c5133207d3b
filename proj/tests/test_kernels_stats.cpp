#include <doctest.h>

#include <omp.h>

#include "phonostad/error.hpp"
#include "phonostad/kernels.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/stats.hpp"

using namespace phonostad;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  Rng rng(seed);
  MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.normal();
  }
  return m;
}

bool identical(const MatrixXd& a, const MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("parallel kernels are bit-identical to the serial reference") {
    for (const auto& [r, c] : {std::pair{1, 1}, {7, 3}, {64, 129}, {257, 33}}) {
      const auto x = random_matrix(r, c, static_cast<std::uint64_t>(r * 1000 + c));
      const auto y = random_matrix(r, 5, 99);
      const auto b = random_matrix(c, 4, 7);
      const VectorXd v = random_matrix(c, 1, 3).col(0);
      const VectorXd u = random_matrix(r, 1, 4).col(0);
      for (int threads : {1, 3, 8}) {
        omp_set_num_threads(threads);
        CHECK(identical(kernels::column_means(x), kernels::serial::column_means(x)));
        const VectorXd m = kernels::column_means(x);
        CHECK(identical(kernels::center(x, m), kernels::serial::center(x, m)));
        CHECK(identical(kernels::gram(x), kernels::serial::gram(x)));
        CHECK(identical(kernels::outer_gram(x), kernels::serial::outer_gram(x)));
        CHECK(identical(kernels::matmul(x, b), kernels::serial::matmul(x, b)));
        CHECK(identical(kernels::matmul_tn(x, y), kernels::serial::matmul_tn(x, y)));
        CHECK(identical(kernels::matvec(x, v), kernels::serial::matvec(x, v)));
        CHECK(identical(kernels::matvec_t(x, u), kernels::serial::matvec_t(x, u)));
      }
    }
    omp_set_num_threads(1);
  }

  TEST_CASE("kernels agree with Eigen products") {
    const auto x = random_matrix(91, 37, 1);
    const auto y = random_matrix(91, 6, 2);
    const auto b = random_matrix(37, 6, 3);
    const VectorXd v = random_matrix(37, 1, 4).col(0);
    const VectorXd u = random_matrix(91, 1, 5).col(0);
    const double tol = 1e-10;
    CHECK((kernels::column_means(x) - x.colwise().mean().transpose()).cwiseAbs().maxCoeff() < tol);
    const MatrixXd xc = x.rowwise() - x.colwise().mean();
    CHECK((kernels::center(x, kernels::column_means(x)) - xc).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::gram(x) - x.transpose() * x).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::outer_gram(x) - x * x.transpose()).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::matmul(x, b) - x * b).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::matmul_tn(x, y) - x.transpose() * y).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::matvec(x, v) - x * v).cwiseAbs().maxCoeff() < tol);
    CHECK((kernels::matvec_t(x, u) - x.transpose() * u).cwiseAbs().maxCoeff() < tol);
  }

  TEST_CASE("gram matrices are exactly symmetric") {
    const auto x = random_matrix(40, 17, 8);
    const auto g = kernels::gram(x);
    CHECK(identical(g, g.transpose()));
    const auto k = kernels::outer_gram(x);
    CHECK(identical(k, k.transpose()));
  }
}

TEST_SUITE("stats") {
  TEST_CASE("t distribution critical values") {
    CHECK(student_t_sf(1.833, 9) == doctest::Approx(0.05).epsilon(0.002));
    CHECK(student_t_sf(2.821, 9) == doctest::Approx(0.01).epsilon(0.002));
    CHECK(student_t_sf(0.0, 9) == doctest::Approx(0.5));
    CHECK(student_t_sf(1.96, 1e6) == doctest::Approx(0.025).epsilon(0.001));
  }

  TEST_CASE("chi-square critical values") {
    CHECK(chi_square_sf(5.991, 2) == doctest::Approx(0.05).epsilon(0.001));
    CHECK(chi_square_sf(9.210, 2) == doctest::Approx(0.01).epsilon(0.001));
    const std::vector<std::size_t> even{100, 100, 100};
    CHECK(chi_square_uniform_p(even) == doctest::Approx(1.0));
    const std::vector<std::size_t> skew{300, 0, 0};
    CHECK(chi_square_uniform_p(skew) < 1e-10);
  }

  TEST_CASE("paired t-test") {
    // d = a - b = {1, 2, 3, 4, 5, 6}: mean 3.5, sd 1.8708, t = 4.5826 on 5 df.
    const std::vector<double> a{2, 4, 6, 8, 10, 12}, b{1, 2, 3, 4, 5, 6};
    const auto r = paired_t_test(a, b, true);
    CHECK(r.t == doctest::Approx(4.582576));
    CHECK(r.df == 5);
    CHECK(r.p_value == doctest::Approx(student_t_sf(4.582576, 5)).epsilon(1e-6));
    CHECK(paired_t_test(b, a, true).p_value > 0.99);
    CHECK(paired_t_test(a, b, false).p_value == doctest::Approx(2 * r.p_value));
    CHECK_THROWS_AS(paired_t_test(a, a, true), DegenerateTestError);
    std::vector<double> shifted(b);
    for (auto& v : shifted) v += 1;
    CHECK_THROWS_AS(paired_t_test(shifted, b, true), DegenerateTestError);
    CHECK_THROWS_AS(paired_t_test(std::vector<double>{1}, std::vector<double>{2}, true), DimensionError);
    CHECK_THROWS_AS(paired_t_test(a, std::vector<double>{1, 2}, true), DimensionError);
  }

  TEST_CASE("population standard deviation") {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(xs) == 5);
    CHECK(stddev(xs) == 2);
    CHECK_THROWS_AS(mean(std::vector<double>{}), DomainError);
  }
}

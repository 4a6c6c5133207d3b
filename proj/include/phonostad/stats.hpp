#pragma once

#include <cstddef>
#include <span>

namespace phonostad {

struct TTestResult {
  double t = 0;
  double df = 0;
  double p_value = 1;
};

/// Paired t-test of a against b. One-sided tests the alternative mean(a - b) > 0.
/// Throws DimensionError for unequal lengths or fewer than two pairs and
/// DegenerateTestError when the differences have zero variance.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, bool one_sided = true);

/// P(T > t) for Student's t with df degrees of freedom.
double student_t_sf(double t, double df);

/// P(X > x) for chi-square with df degrees of freedom.
double chi_square_sf(double x, double df);

/// Pearson goodness-of-fit p-value of counts against the uniform distribution.
double chi_square_uniform_p(std::span<const std::size_t> counts);

double mean(std::span<const double> xs);
/// Population standard deviation (ddof = 0).
double stddev(std::span<const double> xs);

}  // namespace phonostad

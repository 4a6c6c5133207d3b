#include "phonostad/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "phonostad/error.hpp"

namespace phonostad {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean of an empty sample");
  double s = 0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  const double m = mean(xs);
  double ss = 0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

double student_t_sf(double t, double df) {
  const boost::math::students_t dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

double chi_square_sf(double x, double df) {
  const boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, bool one_sided) {
  if (a.size() != b.size()) throw DimensionError("paired samples differ in length");
  if (a.size() < 2) throw DimensionError("paired t-test needs at least two pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double n = static_cast<double>(d.size());
  const double m = mean(d);
  double ss = 0;
  for (const double x : d) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / (n - 1));
  if (!(sd > 0)) throw DegenerateTestError("differences have zero variance");
  TTestResult r;
  r.t = m / (sd / std::sqrt(n));
  r.df = n - 1;
  r.p_value = one_sided ? student_t_sf(r.t, r.df) : 2.0 * student_t_sf(std::abs(r.t), r.df);
  return r;
}

double chi_square_uniform_p(std::span<const std::size_t> counts) {
  if (counts.size() < 2) throw DomainError("chi-square test needs at least two categories");
  double total = 0;
  for (const auto c : counts) total += static_cast<double>(c);
  if (total <= 0) throw DomainError("chi-square test on zero observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (const auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi_square_sf(stat, static_cast<double>(counts.size() - 1));
}

}  // namespace phonostad

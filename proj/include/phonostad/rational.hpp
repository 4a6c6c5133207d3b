#pragma once

#include <cstdint>
#include <string>

namespace phonostad {

/// Unreduced non-negative fraction; the numerator keeps its meaning
/// (e.g. a Hamming distance), so it is never normalised.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.num * b.den == b.num * a.den; }
  friend bool operator<(const Rational& a, const Rational& b) noexcept { return a.num * b.den < b.num * a.den; }
};

}  // namespace phonostad

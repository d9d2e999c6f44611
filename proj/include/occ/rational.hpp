#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "occ/common.hpp"

namespace occ {

// Metric values and thresholds. Every branch of the algorithm compares these
// exactly, so no floating point is involved.
using Dist = boost::rational<std::int64_t>;

// Unbounded exact rational for sums whose denominators can grow (fractional
// costs, sampling polynomials).
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

}  // namespace occ

// Boost 1.74 defines rational == integer as a template that calls itself
// once C++20 rewrites the comparison. Exact-match overloads win resolution.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace occ {

inline BigRational to_big(const Dist& d) {
  return BigRational(BigInt(d.numerator()), BigInt(d.denominator()));
}

inline double to_double(const Dist& d) {
  return boost::rational_cast<double>(d);
}

inline std::string to_string(const Dist& d) {
  if (d.denominator() == 1) return std::to_string(d.numerator());
  return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator());
}

// Parses "p/q", an integer, or a plain decimal ("0.25") into an exact value.
inline Dist parse_rational(std::string_view text) {
  auto fail = [&] {
    return ParameterError("not a rational number: '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) throw fail();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return Dist(parse_int(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Dist(parse_int(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 17 || frac.empty()) throw fail();
  const bool negative = !whole.empty() && whole.front() == '-';
  if (negative) whole.remove_prefix(1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
  const std::int64_t f = parse_int(frac);
  if (w > (INT64_MAX - f) / den) throw fail();
  Dist out(w * den + f, den);
  return negative ? -out : out;
}

// Fixed parameters of the online algorithm.
struct AlgConstants {
  static Dist delta() { return Dist(10, 7); }
  // c = 2*delta^2 + delta
  static Dist c() { return 2 * delta() * delta() + delta(); }
  // r = 1 / (2 c delta^2)
  static Dist r() { return 1 / (2 * c() * delta() * delta()); }
  static Dist cr() { return c() * r(); }
  // analysis threshold t = r / (2 delta)
  static Dist t() { return r() / (2 * delta()); }
  // Negative edges with metric above this are rounded up to 1.
  static Dist round_threshold() { return Dist(7, 10); }
  // Isolation: |R1(u) ∩ W| >= (10/3) |N_u^+ ∩ U|.
  static constexpr std::int64_t isolate_num = 10;
  static constexpr std::int64_t isolate_den = 3;
  // Semi-metric factor of the adjusted estimate.
  static Dist semi_metric_factor() { return delta(); }
};

}  // namespace occ

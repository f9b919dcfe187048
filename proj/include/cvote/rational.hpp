#ifndef CVOTE_RATIONAL_HPP
#define CVOTE_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed integer==rational template recurses forever once C++20
// rewritten comparisons kick in. Plain overloads win resolution over it.
namespace boost {
#define CVOTE_MIXED_EQ(Int)                                                        \
  constexpr bool operator==(const rational<std::int64_t>& a, Int b) {              \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);  \
  }                                                                                \
  constexpr bool operator==(Int b, const rational<std::int64_t>& a) { return a == b; } \
  constexpr bool operator!=(const rational<std::int64_t>& a, Int b) { return !(a == b); } \
  constexpr bool operator!=(Int b, const rational<std::int64_t>& a) { return !(a == b); }
CVOTE_MIXED_EQ(int)
CVOTE_MIXED_EQ(long)
CVOTE_MIXED_EQ(long long)
#undef CVOTE_MIXED_EQ
}  // namespace boost

namespace cvote {

/// Exact vote arithmetic. Thresholds and apportioned path votes are compared
/// with ==/>= so no floating point is ever involved.
using Rational = boost::rational<std::int64_t>;
using Vote = Rational;

/// Parses "7", "-3", "0.95", ".5" or "3/4" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (num.denominator() != 1 || den.denominator() != 1 || den == 0) return fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return fail();
    seen_digit = true;
    if (numerator > (INT64_MAX - 9) / 10 || (seen_point && denominator > INT64_MAX / 10))
      throw std::out_of_range("rational out of range: '" + std::string(text) + "'");
    numerator = numerator * 10 + (c - '0');
    if (seen_point) denominator *= 10;
  }
  if (!seen_digit) return fail();
  Rational r(numerator, denominator);
  return negative ? -r : r;
}

/// "3" for integers, "3/2" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Fixed-point rendering with `digits` fractional digits, rounded half away
/// from zero. Exact; suitable for golden files.
inline std::string to_decimal(const Rational& r, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  bool negative = r < 0;
  Rational a = negative ? -r : r;
  // round(a * scale) using integer arithmetic
  std::int64_t num = a.numerator();
  std::int64_t den = a.denominator();
  std::int64_t whole = num / den;
  std::int64_t rem = num % den;
  const __int128 scaled = static_cast<__int128>(rem) * scale;
  auto frac = static_cast<std::int64_t>(scaled / den);
  auto frac_rem = static_cast<std::int64_t>(scaled % den);
  if (2 * static_cast<__int128>(frac_rem) >= den) ++frac;
  if (frac >= scale) {
    frac -= scale;
    ++whole;
  }
  std::string out = (negative && (whole != 0 || frac != 0)) ? "-" : "";
  out += std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

}  // namespace cvote

#endif  // CVOTE_RATIONAL_HPP

#include "echcap/rational.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

#include <boost/integer/common_factor.hpp>

#include "echcap/errors.hpp"

namespace echcap {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional sign followed by at least one digit.
BigInt parse_int(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("malformed rational: \"" + std::string(whole) + "\"");
  }
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_int(text.substr(0, slash), text);
    BigInt q = parse_int(text.substr(slash + 1), text);
    if (q == 0) throw DivisionByZero("zero denominator in \"" + std::string(text) + "\"");
    return Rat(p, q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw ParseError("malformed decimal: \"" + std::string(text) + "\"");
    bool negative = !head.empty() && head.front() == '-';
    BigInt whole = parse_int(head, text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt digits{std::string(frac)};
    BigInt mag = abs(whole) * scale + digits;
    return Rat(negative ? BigInt(-mag) : mag, scale);
  }
  return Rat(parse_int(text, text));
}

std::string to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string approx(const Rat& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x.convert_to<double>());
  return buf;
}

std::strong_ordering rat_cmp(const Rat& x, const Rat& y) {
  BigInt lhs = numerator(x) * denominator(y);
  BigInt rhs = numerator(y) * denominator(x);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt floor(const Rat& x) {
  BigInt n = numerator(x);
  BigInt d = denominator(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

BigInt ceil(const Rat& x) {
  BigInt f = floor(x);
  return f * denominator(x) == numerator(x) ? f : BigInt(f + 1);
}

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw PreconditionError("integer " + x.str() + " exceeds 64-bit range");
  }
  return x.convert_to<std::int64_t>();
}

BigInt gcd(const BigInt& x, const BigInt& y) { return boost::multiprecision::gcd(x, y); }

std::int64_t gcd(std::int64_t x, std::int64_t y) { return boost::integer::gcd(x, y); }

}  // namespace echcap

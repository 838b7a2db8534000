#pragma once

// Exact rational scalars. Every real quantity handled by the library (ellipsoid
// parameters, actions, lengths, gaps) is a Rat; there is no floating-point
// path through any comparison that decides a result.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace echcap {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

// Always reduced, denominator > 0. Zero is 0/1.
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Accepts "p/q", a finite decimal ("1.618", "-0.5") or an integer.
// Throws ParseError on malformed text and DivisionByZero when q = 0.
Rat parse_rat(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise. parse_rat inverts it.
std::string to_string(const Rat& x);

// 12 significant digits, for display columns only.
std::string approx(const Rat& x);

std::strong_ordering rat_cmp(const Rat& x, const Rat& y);

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) {
  return Rat(BigInt(num), BigInt(den));
}

inline BigInt numerator(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator(const Rat& x) { return boost::multiprecision::denominator(x); }

BigInt floor(const Rat& x);
BigInt ceil(const Rat& x);
inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

// Throws PreconditionError when the value does not fit.
std::int64_t to_int64(const BigInt& x);

BigInt gcd(const BigInt& x, const BigInt& y);
std::int64_t gcd(std::int64_t x, std::int64_t y);

}  // namespace echcap

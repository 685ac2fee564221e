#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "antichain/errors.hpp"

namespace antichain {

// Exact nonnegative counts (|F_n|, |P(k)|, ...). Never overflows.
using BigCount = mpz_class;

// Canonical exact rational (Kraft sums, slopes, probabilities with 2^n
// denominators).
using ExactRational = mpq_class;

inline BigCount pow2(unsigned long exponent) {
  BigCount r;
  mpz_setbit(r.get_mpz_t(), exponent);
  return r;
}

inline BigCount binomial(unsigned long n, unsigned long k) {
  BigCount r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// log2 of a nonnegative integer; -inf for zero.
inline double log2_of(const BigCount& v) {
  if (sgn(v) <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

inline double log2_of(const ExactRational& q) {
  if (sgn(q) <= 0) return -std::numeric_limits<double>::infinity();
  return log2_of(BigCount(q.get_num())) - log2_of(BigCount(q.get_den()));
}

// Accurate double even when numerator and denominator overflow a double.
// Truncates toward zero.
inline double to_double(const ExactRational& q) { return q.get_d(); }

inline BigCount floor_of(const ExactRational& q) {
  BigCount r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline long to_long(const BigCount& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + v.get_str());
  return v.get_si();
}

// Parses "num/den" or a plain integer. The result is canonicalized.
inline ExactRational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw input_error("empty rational");
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = (allow_sign && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (num.size() > 1 && num[0] == '+') num.erase(0, 1);
  if (!valid(num, true) || !valid(den, false)) throw input_error("malformed rational: '" + s + "'");
  BigCount d{den};
  if (sgn(d) == 0) throw input_error("zero denominator: '" + s + "'");
  ExactRational q{BigCount{num}, d};
  q.canonicalize();
  return q;
}

inline std::string to_string(const ExactRational& q) { return q.get_str(); }
inline std::string to_string(const BigCount& v) { return v.get_str(); }

}  // namespace antichain

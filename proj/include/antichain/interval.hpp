#pragma once

#include <mpfr.h>

#include <optional>
#include <utility>

#include "antichain/numeric.hpp"

namespace antichain {

// Closed interval [lo, hi] of MPFR numbers with outward (directed) rounding.
// Only monotone increasing operations on nonnegative operands are supported,
// which is all the boundary formulas need: sqrt, log, +, * and division by a
// positive rational. Each result encloses the true real value.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  explicit Interval(const ExactRational& q) : Interval() {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
  }
  explicit Interval(long v) : Interval(ExactRational(v)) {}

  Interval(const Interval& o) : Interval() {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  // Both operands must be nonnegative.
  friend Interval operator*(const Interval& a, const Interval& b) {
    require_nonnegative(a);
    require_nonnegative(b);
    Interval r;
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  Interval sqrt() const {
    require_nonnegative(*this);
    Interval r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  // Natural logarithm; requires a strictly positive lower bound.
  Interval log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log of non-positive value");
    Interval r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  bool is_exact() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }

  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const {
    mpfr_t m;
    mpfr_init2(m, kPrecision);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
  }

  // a >= b for every point of both intervals; nullopt when they overlap.
  friend std::optional<bool> certainly_ge(const Interval& a, const Interval& b) {
    if (mpfr_cmp(a.lo_, b.hi_) >= 0) return true;
    if (mpfr_cmp(a.hi_, b.lo_) < 0) return false;
    return std::nullopt;
  }

  // Floor of the enclosed value. Throws floor_ambiguity_error unless the whole
  // interval sits at least `margin` away from an integer, or the interval is a
  // single exactly-known point.
  BigCount floor(double margin = 1e-30) const {
    BigCount fl;
    mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
    if (is_exact()) return fl;
    mpfr_t t;
    mpfr_init2(t, kPrecision);
    // lo - fl >= margin
    mpfr_sub_z(t, lo_, fl.get_mpz_t(), MPFR_RNDD);
    bool ok = mpfr_cmp_d(t, margin) >= 0;
    // fl + 1 - hi >= margin
    mpfr_z_sub(t, fl.get_mpz_t(), hi_, MPFR_RNDD);
    mpfr_add_ui(t, t, 1, MPFR_RNDD);
    ok = ok && mpfr_cmp_d(t, margin) >= 0;
    mpfr_clear(t);
    if (!ok) throw floor_ambiguity_error("value too close to an integer to floor safely (near " + fl.get_str() + ")");
    return fl;
  }

 private:
  Interval() {
    mpfr_init2(lo_, kPrecision);
    mpfr_init2(hi_, kPrecision);
  }

  static void require_nonnegative(const Interval& a) {
    if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("Interval operation requires a nonnegative operand");
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

// sqrt(x * ln ln(x + shift)); needs x >= 0 and x + shift > e so ln ln > 0.
inline Interval sqrt_x_loglog(const ExactRational& x, const ExactRational& shift = ExactRational(3)) {
  Interval inner = Interval(ExactRational(x + shift)).log().log();
  return (Interval(x) * inner).sqrt();
}

}  // namespace antichain

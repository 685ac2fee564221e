#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "antichain/numeric.hpp"

namespace antichain {

// Exact big-integer counts.
struct ExactBackend {
  using value_type = BigCount;
  static constexpr const char* name = "exact";
  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  static bool is_zero(const value_type& v) { return sgn(v) == 0; }
  static void add_to(value_type& acc, const value_type& v) { acc += v; }
  static value_type sum(const value_type& a, const value_type& b) { return a + b; }
  static value_type product(const value_type& a, const value_type& b) { return a * b; }
  static double log2(const value_type& v) { return log2_of(v); }
  static std::string str(const value_type& v) { return v.get_str(); }
};

// Counts held as log2 values (-inf is zero). For profiling beyond the exact
// envelope only.
struct Log2Backend {
  using value_type = double;
  static constexpr const char* name = "logfloat";
  static value_type zero() { return -std::numeric_limits<double>::infinity(); }
  static value_type one() { return 0.0; }
  static bool is_zero(value_type v) { return std::isinf(v) && v < 0; }
  static value_type sum(value_type a, value_type b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp2(lo - hi)) / std::log(2.0);
  }
  static void add_to(value_type& acc, value_type v) { acc = sum(acc, v); }
  static value_type product(value_type a, value_type b) { return (is_zero(a) || is_zero(b)) ? zero() : a + b; }
  static double log2(value_type v) { return v; }
  static std::string str(value_type v) {
    if (is_zero(v)) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
  }
};

// Path counts over one column of the lattice. Only heights of a single parity
// are populated, so cell j holds height lowest() + 2j. The same spread step
// serves forward DP (paths from a source) and backward DP (paths to a sink).
template <class Backend>
class HeightColumn {
 public:
  using value_type = typename Backend::value_type;

  explicit HeightColumn(long height) : lo_(height), cells_{Backend::one()} {}

  long lowest() const { return lo_; }
  long highest() const { return lo_ + 2 * (static_cast<long>(cells_.size()) - 1); }
  bool empty() const { return cells_.empty(); }

  value_type at(long h) const {
    if (cells_.empty() || h < lo_ || h > highest() || ((h - lo_) & 1)) return Backend::zero();
    return cells_[(h - lo_) / 2];
  }

  // One lattice step in either direction: new(h) = old(h-1) + old(h+1).
  void spread() {
    if (cells_.empty()) return;
    std::vector<value_type> next(cells_.size() + 1, Backend::zero());
    for (std::size_t j = 0; j < cells_.size(); ++j) {
      Backend::add_to(next[j], cells_[j]);
      Backend::add_to(next[j + 1], cells_[j]);
    }
    cells_ = std::move(next);
    lo_ -= 1;
    trim();
  }

  // Drops every height >= limit.
  void keep_below(long limit) {
    while (!cells_.empty() && highest() >= limit) cells_.pop_back();
    trim();
  }

  // Drops every height < limit.
  void keep_at_least(long limit) {
    std::size_t drop = 0;
    while (drop < cells_.size() && lo_ + 2 * static_cast<long>(drop) < limit) ++drop;
    cells_.erase(cells_.begin(), cells_.begin() + drop);
    lo_ += 2 * static_cast<long>(drop);
    trim();
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t j = 0; j < cells_.size(); ++j)
      if (!Backend::is_zero(cells_[j])) fn(lo_ + 2 * static_cast<long>(j), cells_[j]);
  }

  value_type total() const {
    value_type t = Backend::zero();
    for (const auto& v : cells_) Backend::add_to(t, v);
    return t;
  }

 private:
  void trim() {
    std::size_t front = 0;
    while (front < cells_.size() && Backend::is_zero(cells_[front])) ++front;
    if (front == cells_.size()) {
      cells_.clear();
      return;
    }
    cells_.erase(cells_.begin(), cells_.begin() + front);
    lo_ += 2 * static_cast<long>(front);
    while (Backend::is_zero(cells_.back())) cells_.pop_back();
  }

  long lo_;
  std::vector<value_type> cells_;
};

}  // namespace antichain

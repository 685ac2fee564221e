#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antichain/growth_function.hpp"
#include "antichain/subset_mask.hpp"

namespace antichain {

// Walk with steps (1, +1) and (1, -1) from an integer start point.
class LatticePath {
 public:
  using Step = std::int8_t;

  LatticePath() = default;
  LatticePath(std::vector<Step> steps, long x0 = 0, long y0 = 0) : steps_(std::move(steps)), x0_(x0), y0_(y0) {
    for (Step s : steps_)
      if (s != 1 && s != -1) throw input_error("lattice path steps must be +1 or -1");
  }

  // "+-+" style notation; '+' / 'u' / 'U' up, '-' / 'd' / 'D' down.
  static LatticePath parse(std::string_view text) {
    std::vector<Step> steps;
    for (char ch : text) {
      if (ch == '+' || ch == 'u' || ch == 'U') steps.push_back(1);
      else if (ch == '-' || ch == 'd' || ch == 'D') steps.push_back(-1);
      else if (ch == ',' || ch == ' ') continue;
      else throw input_error(std::string("bad path step character '") + ch + "'");
    }
    return LatticePath(std::move(steps));
  }

  const std::vector<Step>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  long start_x() const { return x0_; }
  long start_y() const { return y0_; }

  // Heights y_0 .. y_L (L + 1 entries).
  std::vector<long> heights() const {
    std::vector<long> h{y0_};
    h.reserve(steps_.size() + 1);
    for (Step s : steps_) h.push_back(h.back() + s);
    return h;
  }

  std::pair<long, long> end_point() const {
    long y = y0_;
    for (Step s : steps_) y += s;
    return {x0_ + static_cast<long>(steps_.size()), y};
  }

  std::string to_string() const {
    std::string out;
    for (Step s : steps_) out += s > 0 ? '+' : '-';
    return out;
  }

  friend bool operator==(const LatticePath&, const LatticePath&) = default;

 private:
  std::vector<Step> steps_;
  long x0_ = 0;
  long y0_ = 0;
};

// Step i is +1 iff i ∈ A; 2n steps from (0, 0).
inline LatticePath set_to_path(const SubsetMask& a, long n) {
  if (n < 0) throw input_error("n must be nonnegative");
  std::size_t len = static_cast<std::size_t>(2 * n);
  if (a.max_element() > len)
    throw input_error("set " + a.to_string() + " is not contained in [" + std::to_string(len) + "]");
  std::vector<LatticePath::Step> steps(len, -1);
  for (std::size_t e : a.elements()) steps[e - 1] = 1;
  return LatticePath(std::move(steps));
}

// The growth function plays no role in the encoding; accepted for symmetry
// with the membership predicates.
inline LatticePath set_to_path(const SubsetMask& a, long n, const GrowthFunction&) { return set_to_path(a, n); }

inline SubsetMask path_to_set(const LatticePath& p) {
  if (p.start_x() != 0 || p.start_y() != 0) throw input_error("path_to_set expects a path starting at (0,0)");
  SubsetMask s(p.length());
  for (std::size_t i = 0; i < p.length(); ++i)
    if (p.steps()[i] > 0) s.insert(i + 1);
  return s;
}

// Membership in G_n: from (0,0) to (2n, 2f(n)), strictly below y = 2f(x/2)
// at every even x with 0 < x < 2n.
inline bool is_in_Gn(const LatticePath& p, long n, BoundaryCurve& curve) {
  if (p.start_x() != 0 || p.start_y() != 0) return false;
  if (static_cast<long>(p.length()) != 2 * n) return false;
  auto h = p.heights();
  if (h.back() != 2 * curve.f(n)) return false;
  for (long x = 2; x < 2 * n; x += 2)
    if (h[x] >= curve.at_even(x)) return false;
  return true;
}

inline bool is_in_Gn(const LatticePath& p, long n, const GrowthFunction& gf) {
  BoundaryCurve curve(gf);
  return is_in_Gn(p, n, curve);
}

}  // namespace antichain

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antichain/height_column.hpp"
#include "antichain/numeric.hpp"

namespace antichain::cycle {

// ±1 values arranged on a circle; p and q are recomputed from the values.
class CircularSequence {
 public:
  using Value = std::int8_t;

  explicit CircularSequence(std::vector<Value> values) : values_(std::move(values)) {
    for (Value v : values_) {
      if (v == 1) ++p_;
      else if (v == -1) ++q_;
      else throw input_error("circular sequence entries must be +1 or -1");
    }
  }

  // "+-++"; ',' and ' ' are ignored.
  static CircularSequence parse(std::string_view text) {
    std::vector<Value> v;
    for (char c : text) {
      if (c == '+') v.push_back(1);
      else if (c == '-') v.push_back(-1);
      else if (c == ',' || c == ' ') continue;
      else throw input_error(std::string("bad sequence character '") + c + "'");
    }
    return CircularSequence(std::move(v));
  }

  // Low n bits of `bits`, bit i set means x_{i+1} = +1.
  static CircularSequence from_bits(std::size_t n, std::uint64_t bits) {
    std::vector<Value> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ((bits >> i) & 1u) ? 1 : -1;
    return CircularSequence(std::move(v));
  }

  std::size_t size() const { return values_.size(); }
  long p() const { return p_; }
  long q() const { return q_; }
  std::span<const Value> values() const { return values_; }
  Value operator[](std::size_t i) const { return values_[i]; }

  // The linear sequence read clockwise starting at 1-based position r.
  std::vector<Value> rotation(std::size_t r) const {
    std::vector<Value> out(values_.size());
    for (std::size_t j = 0; j < values_.size(); ++j) out[j] = values_[(r - 1 + j) % values_.size()];
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (Value v : values_) s += v > 0 ? '+' : '-';
    return s;
  }

 private:
  std::vector<Value> values_;
  long p_ = 0;
  long q_ = 0;
};

namespace detail {
struct Slope {
  long num;
  long den;
};
inline Slope slope(const ExactRational& mu) { return {to_long(mu.get_num()), to_long(mu.get_den())}; }

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

// Every prefix sum strictly exceeds μ j, compared as prefix * den > num * j.
inline bool is_good_sequence(std::span<const CircularSequence::Value> x, const ExactRational& mu) {
  auto [num, den] = detail::slope(mu);
  long prefix = 0;
  for (std::size_t j = 1; j <= x.size(); ++j) {
    prefix += x[j - 1];
    if (prefix * den <= num * static_cast<long>(j)) return false;
  }
  return true;
}

// p - floor((1+μ)/(1-μ) q); may be negative.
inline long head_bound(long p, long q, const ExactRational& mu) {
  if (mu == 1) throw input_error("head_bound is undefined at mu = 1");
  ExactRational ratio = (1 + mu) / (1 - mu) * q;
  return p - to_long(floor_of(ratio));
}

struct HeadReport {
  std::vector<std::size_t> positions;  // 1-based, increasing
  long bound = 0;
};

// Reference O(n^2) detector: r is a head iff every clockwise arc starting at
// x_r of length j in [n] has sum > μ j.
inline HeadReport heads(const CircularSequence& x, const ExactRational& mu) {
  auto [num, den] = detail::slope(mu);
  const std::size_t n = x.size();
  HeadReport report;
  report.bound = mu == 1 ? x.p() : head_bound(x.p(), x.q(), mu);
  for (std::size_t r = 0; r < n; ++r) {
    long sum = 0;
    bool head = true;
    for (std::size_t j = 1; j <= n && head; ++j) {
      sum += x[(r + j - 1) % n];
      head = sum * den > num * static_cast<long>(j);
    }
    if (head) report.positions.push_back(r + 1);
  }
  return report;
}

inline bool lemma_hypotheses_hold(long p, long q, const ExactRational& mu) {
  return q != 0 && sgn(mu) > 0 && mu <= ExactRational(p - q, p + q);
}

inline void require_lemma_hypotheses(long p, long q, const ExactRational& mu) {
  if (q == 0) throw hypothesis_error("cycle lemma requires q != 0");
  if (sgn(mu) <= 0) throw hypothesis_error("cycle lemma requires mu > 0");
  if (mu > ExactRational(p - q, p + q)) throw hypothesis_error("cycle lemma requires mu <= (p-q)/(p+q)");
}

// Explicit heads from the proof's level construction. With
// S_i = (x_1 + ... + x_i) - μ i, t = min S_i and B = head_bound, level i is
// d_i = t + S_n - (B - i)(1 - μ) and γ_i is the largest index with S_γ < d_i;
// position γ_i + 1 (mod n) is a head. The levels are spaced by exactly 1 - μ
// inside (t, t + S_n], which keeps the γ_i distinct modulo n.
inline std::vector<std::size_t> gamma_heads(const CircularSequence& x, const ExactRational& mu) {
  require_lemma_hypotheses(x.p(), x.q(), mu);
  auto [num, den] = detail::slope(mu);
  const std::size_t n = x.size();
  // Everything scaled by den.
  std::vector<long> s(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) s[i] = s[i - 1] + den * x[i - 1] - num;
  const long t = *std::min_element(s.begin(), s.end());
  const long total = s[n];
  const long step = den - num;
  const long bound = head_bound(x.p(), x.q(), mu);
  std::vector<std::size_t> out;
  for (long i = 1; i <= bound; ++i) {
    const long level = t + total - (bound - i) * step;
    std::size_t gamma = n + 1;
    for (std::size_t g = n + 1; g-- > 0;) {
      if (s[g] < level) {
        gamma = g;
        break;
      }
    }
    if (gamma > n) throw std::logic_error("gamma_heads: no index below level");
    out.push_back(gamma % n + 1);
  }
  return out;
}

struct ClassFraction {
  std::size_t class_size = 0;     // |E|, distinct rotations
  std::size_t good_in_class = 0;  // good sequences in E
  std::size_t heads_count = 0;
  std::size_t length = 0;
  // good_in_class >= heads_count |E| / n, in integers.
  bool holds() const { return good_in_class * length >= heads_count * class_size; }
};

inline ClassFraction class_good_fraction(const CircularSequence& x, const ExactRational& mu) {
  ClassFraction c;
  c.length = x.size();
  std::set<std::vector<CircularSequence::Value>> rotations;
  for (std::size_t r = 1; r <= x.size(); ++r) rotations.insert(x.rotation(r));
  c.class_size = rotations.size();
  for (const auto& rot : rotations)
    if (is_good_sequence(rot, mu)) ++c.good_in_class;
  c.heads_count = heads(x, mu).positions.size();
  return c;
}

// Number of ±1 sequences with p (+1)s and q (-1)s whose prefix sums all
// exceed μ j: paths (0,0) -> (p+q, p-q) strictly above y = μ x after the origin.
inline BigCount count_good_sequences(long p, long q, const ExactRational& mu) {
  if (p < 0 || q < 0) throw input_error("composition counts must be nonnegative");
  auto [num, den] = detail::slope(mu);
  const long n = p + q;
  if (n == 0) return 1;
  HeightColumn<ExactBackend> col(0);
  for (long x = 1; x <= n; ++x) {
    col.spread();
    col.keep_at_least(detail::floor_div(num * x, den) + 1);
    if (col.empty()) return 0;
  }
  return col.at(p - q);
}

inline constexpr long kMaxExhaustiveLength = 22;

enum class FractionMode { automatic, exhaustive, dp };

// (# good sequences with composition (p, q)) / C(p+q, p).
inline ExactRational total_good_fraction(long p, long q, const ExactRational& mu,
                                         FractionMode mode = FractionMode::automatic) {
  if (p < 0 || q < 0) throw input_error("composition counts must be nonnegative");
  const long n = p + q;
  if (mode == FractionMode::automatic) mode = n <= kMaxExhaustiveLength ? FractionMode::exhaustive : FractionMode::dp;
  BigCount good = 0;
  if (mode == FractionMode::exhaustive) {
    if (n > kMaxExhaustiveLength)
      throw resource_guard_error("total_good_fraction: exhaustive mode limited to p + q <= " +
                                 std::to_string(kMaxExhaustiveLength));
    if (n == 0) return 1;
    std::uint64_t m = p == 0 ? 0 : (std::uint64_t{1} << p) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (m < limit) {
      if (is_good_sequence(CircularSequence::from_bits(n, m).values(), mu)) good += 1;
      if (m == 0) break;
      std::uint64_t c = m & (~m + 1);
      std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  } else {
    good = count_good_sequences(p, q, mu);
  }
  ExactRational frac(good, binomial(n, p));
  frac.canonicalize();
  return frac;
}

// Reduced fractions a/b with 0 < a/b < 1 and b <= max_den, increasing.
inline std::vector<ExactRational> slopes_up_to(long max_den) {
  std::set<ExactRational> s;
  for (long b = 2; b <= max_den; ++b)
    for (long a = 1; a < b; ++a) {
      ExactRational r(a, b);
      r.canonicalize();
      s.insert(r);
    }
  return {s.begin(), s.end()};
}

struct ExhaustiveReport {
  long max_length = 0;
  long max_den = 0;
  std::size_t cases = 0;             // (sequence, μ) pairs under the hypotheses
  std::size_t compositions = 0;      // (p, q, μ) triples checked for the total fraction
  std::size_t failures = 0;
  std::optional<std::string> first_failure;
  bool ok() const { return failures == 0; }
};

// For all ±1 sequences of length <= max_length and all μ = a/b, b <= max_den,
// with q >= 1 and 0 < μ <= (p-q)/(p+q): head count >= bound, gamma heads are
// max(bound, 0) distinct heads, heads coincide with good rotations, the
// per-class fraction holds, and per composition the total good fraction is at
// least bound / n (exhaustive count cross-checked against the DP count).
inline ExhaustiveReport exhaustive_suite(long max_length, long max_den) {
  if (max_length > kMaxExhaustiveLength) throw resource_guard_error("exhaustive_suite: length guard exceeded");
  ExhaustiveReport rep;
  rep.max_length = max_length;
  rep.max_den = max_den;
  const auto slopes = slopes_up_to(max_den);
  auto fail = [&](const std::string& what) {
    ++rep.failures;
    if (!rep.first_failure) rep.first_failure = what;
  };
  for (long n = 1; n <= max_length; ++n) {
    // good counts per (p, slope index)
    std::vector<std::vector<std::size_t>> good_counts(n + 1, std::vector<std::size_t>(slopes.size(), 0));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      CircularSequence x = CircularSequence::from_bits(n, bits);
      if (x.q() == 0) continue;
      for (std::size_t si = 0; si < slopes.size(); ++si) {
        const ExactRational& mu = slopes[si];
        if (!lemma_hypotheses_hold(x.p(), x.q(), mu)) break;  // slopes increase
        ++rep.cases;
        const std::string tag = x.to_string() + " mu=" + mu.get_str();
        if (is_good_sequence(x.values(), mu)) ++good_counts[x.p()][si];
        HeadReport h = heads(x, mu);
        const long need = std::max(h.bound, 0L);
        if (static_cast<long>(h.positions.size()) < need) fail("too few heads: " + tag);
        auto g = gamma_heads(x, mu);
        std::set<std::size_t> gs(g.begin(), g.end());
        if (static_cast<long>(gs.size()) != need || static_cast<long>(g.size()) != need)
          fail("gamma heads not distinct: " + tag);
        for (auto pos : gs)
          if (!std::binary_search(h.positions.begin(), h.positions.end(), pos)) fail("gamma position not a head: " + tag);
        for (std::size_t r = 1; r <= x.size(); ++r) {
          bool is_head = std::binary_search(h.positions.begin(), h.positions.end(), r);
          if (is_head != is_good_sequence(x.rotation(r), mu)) fail("head/good-rotation mismatch: " + tag);
        }
        if (!class_good_fraction(x, mu).holds()) fail("class fraction: " + tag);
      }
    }
    for (long p = 0; p <= n; ++p) {
      const long q = n - p;
      if (q == 0) continue;
      for (std::size_t si = 0; si < slopes.size(); ++si) {
        const ExactRational& mu = slopes[si];
        if (!lemma_hypotheses_hold(p, q, mu)) break;
        ++rep.compositions;
        const std::string tag = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " mu=" + mu.get_str();
        BigCount good = good_counts[p][si];
        if (good != count_good_sequences(p, q, mu)) fail("good count DP mismatch: " + tag);
        // good / C(n,p) >= bound / n
        if (good * n < binomial(n, p) * head_bound(p, q, mu)) fail("total fraction: " + tag);
      }
    }
  }
  return rep;
}

}  // namespace antichain::cycle

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "antichain/growth_function.hpp"
#include "antichain/numeric.hpp"
#include "antichain/prefix_kraft.hpp"
#include "antichain/subset_mask.hpp"

namespace antichain::family {

// Largest 2n for which enumerate_Fn / verify_union_antichain will run.
inline constexpr long kMaxBruteForceGround = 28;

// F_n = {A ⊆ [2n] : |A| = n + f(n), |A ∩ [2i]| < i + f(i) for 0 < i < n}.
// Caches the cardinality and the prefix limits i + f(i).
class FamilySpec {
 public:
  FamilySpec(GrowthFunction gf, long n) : gf_(std::move(gf)), n_(n) {
    if (n < 1) throw input_error("family index n must be >= 1");
    cardinality_ = n + gf_(n);
    limits_.resize(n);
    for (long i = 1; i < n; ++i) limits_[i] = i + gf_(i);
  }

  const GrowthFunction& growth() const { return gf_; }
  long n() const { return n_; }
  long ground() const { return 2 * n_; }
  long cardinality() const { return cardinality_; }
  // i + f(i), valid for 0 < i < n.
  long prefix_limit(long i) const { return limits_[i]; }
  bool possibly_nonempty() const { return cardinality_ <= 2 * n_; }

 private:
  GrowthFunction gf_;
  long n_;
  long cardinality_;
  std::vector<long> limits_;
};

namespace detail {
inline void require_within(const SubsetMask& a, long ground) {
  if (a.max_element() > static_cast<std::size_t>(ground))
    throw input_error("set " + a.to_string() + " is not contained in [" + std::to_string(ground) + "]");
}
}  // namespace detail

inline bool member_Fn(const SubsetMask& a, const FamilySpec& spec) {
  detail::require_within(a, spec.ground());
  if (static_cast<long>(a.size()) != spec.cardinality()) return false;
  for (long i = 1; i < spec.n(); ++i)
    if (static_cast<long>(a.count_upto(2 * i)) >= spec.prefix_limit(i)) return false;
  return true;
}

// Warm-up family: |A| = n and |A ∩ [2i]| < i for 0 < i < n.
inline bool member_warmup(const SubsetMask& a, long n) {
  if (n < 1) throw input_error("family index n must be >= 1");
  detail::require_within(a, 2 * n);
  if (static_cast<long>(a.size()) != n) return false;
  for (long i = 1; i < n; ++i)
    if (static_cast<long>(a.count_upto(2 * i)) >= i) return false;
  return true;
}

// All members of F_n in increasing bitmask order (element i = bit i-1), by
// walking the fixed-popcount masks with Gosper's successor.
inline std::vector<SubsetMask> enumerate_Fn(const FamilySpec& spec) {
  const long ground = spec.ground();
  if (ground > kMaxBruteForceGround)
    throw resource_guard_error("enumerate_Fn: 2n = " + std::to_string(ground) + " exceeds the brute-force guard " +
                               std::to_string(kMaxBruteForceGround));
  std::vector<SubsetMask> out;
  const long k = spec.cardinality();
  if (k < 0 || k > ground) return out;

  std::vector<std::uint64_t> prefix_mask(spec.n());
  for (long i = 1; i < spec.n(); ++i) prefix_mask[i] = (std::uint64_t{1} << (2 * i)) - 1;
  auto accept = [&](std::uint64_t m) {
    for (long i = 1; i < spec.n(); ++i)
      if (std::popcount(m & prefix_mask[i]) >= spec.prefix_limit(i)) return false;
    return true;
  };

  if (k == 0) {
    if (accept(0)) out.push_back(SubsetMask(ground));
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << ground;
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  while (m < limit) {
    if (accept(m)) out.push_back(SubsetMask::from_bits(ground, m));
    std::uint64_t c = m & (~m + 1);
    std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

inline std::vector<SubsetMask> enumerate_warmup(long n) { return enumerate_Fn(FamilySpec(GrowthFunction::zero(), n)); }

// |F_n| for the warm-up family: (1/n) C(2n-2, n-1), the Catalan number C_{n-1}.
inline BigCount warmup_closed_form(long n) {
  if (n < 1) throw input_error("warmup_closed_form needs n >= 1");
  BigCount c = binomial(2 * n - 2, n - 1);
  mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n));
  return c;
}

struct UnionCheck {
  std::size_t members = 0;
  std::optional<std::pair<SubsetMask, SubsetMask>> violation;  // (A, B) with A ⊆ B
  bool ok() const { return !violation.has_value(); }
};

// Enumerates F_1 ∪ ... ∪ F_M and tests the antichain property.
inline UnionCheck verify_union_antichain(const GrowthFunction& gf, long M) {
  if (M < 1) throw input_error("verify_union_antichain needs M >= 1");
  if (2 * M > kMaxBruteForceGround)
    throw resource_guard_error("verify_union_antichain: 2M = " + std::to_string(2 * M) + " exceeds the guard");
  if (!is_monotone_on(gf, 1, M)) throw input_error("growth function is not monotone nondecreasing on [1, M]");
  std::vector<SubsetMask> all;
  for (long m = 1; m <= M; ++m)
    for (auto& a : enumerate_Fn(FamilySpec(gf, m))) all.push_back(a.with_ground(2 * M));
  UnionCheck result;
  result.members = all.size();
  if (auto bad = kraft::find_antichain_violation(all)) result.violation = std::make_pair(all[bad->first], all[bad->second]);
  return result;
}

}  // namespace antichain::family

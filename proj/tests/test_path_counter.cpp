#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "antichain/family_builder.hpp"
#include "antichain/path_counter.hpp"
#include "antichain/walk_bounds.hpp"

using namespace antichain;
using namespace antichain::paths;

namespace {
const std::vector<GrowthFunction>& matrix() {
  static const std::vector<GrowthFunction> m = {GrowthFunction::zero(), GrowthFunction::formula(0, 1),
                                                GrowthFunction::formula(0, 2),
                                                GrowthFunction::formula(ExactRational(1, 2), 0)};
  return m;
}

long f_of(const GrowthFunction& gf, long num, long den) { return gf(ExactRational(num, den)); }

// Direct enumeration of ±1 step sequences; heights checked against 2 f(x/2).
BigCount brute_Gn(long n, const GrowthFunction& gf) {
  long count = 0;
  const long target = 2 * gf(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * n)); ++bits) {
    long h = 0;
    bool ok = true;
    for (long x = 1; x <= 2 * n && ok; ++x) {
      h += (bits >> (x - 1)) & 1 ? 1 : -1;
      if (x % 2 == 0 && x < 2 * n && h >= 2 * f_of(gf, x, 2)) ok = false;
    }
    if (ok && h == target) ++count;
  }
  return count;
}

std::map<long, long> brute_Pk(long n, const GrowthFunction& gf) {
  std::map<long, long> t;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    long h = 0;
    bool ok = true;
    for (long x = 1; x <= n && ok; ++x) {
      h += (bits >> (x - 1)) & 1 ? 1 : -1;
      if (x % 2 == 0 && h >= 2 * f_of(gf, x, 2)) ok = false;
    }
    if (ok) ++t[h];
  }
  return t;
}

std::map<long, long> brute_Qk(long n, const GrowthFunction& gf) {
  std::map<long, long> t;
  const long target = 2 * gf(n);
  for (long k = -n - target; k <= n + target; ++k) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      long h = k;
      bool ok = !(n % 2 == 0 && h >= 2 * f_of(gf, n, 2));
      for (long x = n + 1; x <= 2 * n && ok; ++x) {
        h += (bits >> (x - n - 1)) & 1 ? 1 : -1;
        if (x % 2 == 0 && x < 2 * n && h >= 2 * f_of(gf, x, 2)) ok = false;
      }
      if (ok && h == target) ++t[k];
    }
  }
  return t;
}
}  // namespace

TEST(PathCounter, GnAgainstBruteForce) {
  for (const auto& gf : matrix())
    for (long n = 1; n <= 9; ++n) EXPECT_EQ(count_Gn(n, gf), brute_Gn(n, gf)) << gf.label() << " n=" << n;
}

TEST(PathCounter, GnAgainstEnumeration) {
  for (const auto& gf : matrix())
    for (long n = 1; n <= 10; ++n) {
      auto fam = family::enumerate_Fn(family::FamilySpec(gf, n));
      EXPECT_EQ(count_Gn(n, gf), BigCount(static_cast<unsigned long>(fam.size()))) << gf.label() << " n=" << n;
    }
}

TEST(PathCounter, PkQkAgainstBruteForce) {
  for (const auto& gf : matrix())
    for (long n = 1; n <= 12; ++n) {
      auto p = count_Pk(n, gf);
      auto q = count_Qk(n, gf);
      auto bp = brute_Pk(n, gf);
      auto bq = brute_Qk(n, gf);
      for (long k = -3 * n - 10; k <= 3 * n + 10; ++k) {
        EXPECT_EQ(p.at(k), BigCount(bp.count(k) ? bp[k] : 0)) << gf.label() << " n=" << n << " k=" << k;
        EXPECT_EQ(q.at(k), BigCount(bq.count(k) ? bq[k] : 0)) << gf.label() << " n=" << n << " k=" << k;
      }
    }
}

TEST(PathCounter, WarmupIsCatalanBeyondOne) {
  BigCount c = 1;  // C_{n-1} by C_m = C_{m-1} (4m-2)/(m+1)
  for (long n = 2; n <= 300; ++n) {
    const long m = n - 1;
    c = c * (4 * m - 2) / (m + 1);
    ASSERT_EQ(count_Gn(n, GrowthFunction::zero()), c) << n;
  }
}

TEST(PathCounter, Convolution) {
  for (const auto& gf : matrix())
    for (long n = 2; n <= 64; ++n) EXPECT_TRUE(convolution_check(n, gf)) << gf.label() << " n=" << n;
  for (long n : {150L, 256L}) EXPECT_TRUE(convolution_check(n, GrowthFunction::paper_default())) << n;
}

TEST(PathCounter, DefaultSmallSlicesEmpty) {
  for (long n = 1; n <= 100; ++n) EXPECT_EQ(count_Gn(n, GrowthFunction::paper_default()), 0) << n;
}

TEST(PathCounter, LogBackendAgrees) {
  for (const auto& gf : {GrowthFunction::zero(), GrowthFunction::paper_default(), GrowthFunction::formula(ExactRational(1, 2), 0)})
    for (long n : {20L, 150L, 300L, 600L}) {
      BigCount exact = count_Gn(n, gf);
      double lg = count_Gn<Log2Backend>(n, gf);
      if (sgn(exact) == 0) {
        EXPECT_TRUE(std::isinf(lg)) << n;
        continue;
      }
      double ex = log2_of(exact);
      EXPECT_LE(std::abs(lg - ex), 1e-9 * std::abs(ex)) << gf.label() << " n=" << n;
      auto p = count_Pk(n, gf);
      auto pl = count_Pk<Log2Backend>(n, gf);
      for (const auto& [k, v] : p.entries)
        EXPECT_LE(std::abs(pl.at(k) - log2_of(v)), 1e-9 * std::max(1.0, log2_of(v))) << k;
    }
}

// Exhaustive oracle: a subset A ⊆ [N] is in F iff A ∈ F_m for some m with
// max(A) <= 2m and |A| = m + f(m).
TEST(PathCounter, CumulativeCountExhaustive) {
  for (const auto& gf : matrix()) {
    auto counts = cumulative_counts(14, gf);
    for (long N = 0; N <= 14; ++N) {
      long brute = 0;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << N); ++bits) {
        auto a = SubsetMask::from_bits(static_cast<std::size_t>(std::max(N, 1L)), bits);
        const long size = static_cast<long>(a.size());
        for (long m = 1; m <= size; ++m) {
          if (2 * m < static_cast<long>(a.max_element())) continue;
          if (family::member_Fn(a.with_ground(2 * m), family::FamilySpec(gf, m))) {
            ++brute;
            break;
          }
        }
      }
      EXPECT_EQ(counts[N], brute) << gf.label() << " N=" << N;
    }
  }
  EXPECT_THROW(cumulative_counts(5, GrowthFunction::table({0, 2, 1, 1, 1, 1})), input_error);
}

TEST(PathCounter, GoodPathsBothWays) {
  auto gf = GrowthFunction::paper_default();
  for (long n : {256L, 512L}) {
    auto band = walk::bandwidth(n);
    auto q = count_Qk(n, gf);
    for (long k : band.k_range()) {
      BigCount good = count_good_paths(n, k, gf);
      EXPECT_LE(good, q.at(k)) << "n=" << n << " k=" << k;
    }
  }
  EXPECT_THROW(count_good_paths(10, 1, gf), input_error);
}

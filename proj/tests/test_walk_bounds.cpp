#include <gtest/gtest.h>

#include <cmath>

#include "antichain/walk_bounds.hpp"

using namespace antichain;
using namespace antichain::walk;

namespace {
// All 2^N walks; boundary evaluated in long double (cases chosen away from ties).
ExactRational brute_crossing(long N, long double C, long offset) {
  long hits = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << N); ++bits) {
    long s = 0;
    for (long j = 1; j <= N; ++j) {
      s += (bits >> (j - 1)) & 1 ? 1 : -1;
      long double b = C * std::sqrt(j * std::log(std::log(j + 3.0L))) + offset;
      if (s > b) {
        ++hits;
        break;
      }
    }
  }
  ExactRational r(hits, BigCount(1) << N);
  r.canonicalize();
  return r;
}

double log2_binom(long n, long k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}
}  // namespace

TEST(Crossing, TrivialCases) {
  EXPECT_EQ(crossing_probability_exact(5, 3, 5).probability, 0);
  EXPECT_EQ(crossing_probability_exact(5, 0, 7).probability, 0);
  EXPECT_EQ(crossing_probability_exact(1, 0, 0).probability, ExactRational(1, 2));
  EXPECT_THROW(crossing_probability_exact(0, 0, 0), input_error);
}

TEST(Crossing, AgainstBruteForce) {
  for (long N = 1; N <= 16; ++N)
    for (long off = 0; off <= 2; ++off) {
      EXPECT_EQ(crossing_probability_exact(N, 0, off, true).probability, brute_crossing(N, 0, off)) << N << " " << off;
      EXPECT_EQ(crossing_probability_exact(N, ExactRational(1, 2), off, true).probability,
                brute_crossing(N, 0.5L, off))
          << N << " " << off;
      EXPECT_EQ(crossing_probability_exact(N, 1, off, true).probability, brute_crossing(N, 1, off)) << N << " " << off;
    }
}

TEST(Crossing, MonotoneInHorizonAndConserved) {
  ExactRational prev = 0;
  for (long N = 1; N <= 400; N += 13) {
    auto r = crossing_probability_exact(N, 1, 1, true);
    EXPECT_GE(r.probability, prev) << N;
    EXPECT_EQ(r.absorbed + r.survivors, BigCount(1) << N);
    prev = r.probability;
  }
}

TEST(Crossing, PruningDoesNotChangeAbsorption) {
  auto limits = lemma_limits(300, 1, 3);
  auto a = absorbing_walk_exact(limits, false, true);
  auto b = absorbing_walk_exact(limits, true, true);
  EXPECT_EQ(a.absorbed, b.absorbed);
  EXPECT_EQ(a.survivors(), b.survivors());
  EXPECT_EQ(sgn(a.safe), 0);
}

TEST(Crossing, FloatUpperBound) {
  for (long N : {100L, 1500L}) {
    auto ex = crossing_probability_exact(N, 0, 2);
    double up = crossing_probability_upper(N, 0, 2);
    EXPECT_GE(up, ex.value);
    EXPECT_LE(up - ex.value, 1e-9);
  }
  auto ex = crossing_probability_exact(3000, 3, 10);
  EXPECT_GE(crossing_probability_upper(3000, 3, 10), ex.value);
}

TEST(MonteCarlo, DeterministicAndConsistent) {
  auto a = crossing_probability_mc(60, 0, 1, 50000, 9);
  auto b = crossing_probability_mc(60, 0, 1, 50000, 9);
  EXPECT_EQ(a.crossings, b.crossings);
  auto c = crossing_probability_mc(60, 0, 1, 50000, 10);
  EXPECT_NE(a.crossings, c.crossings);
  auto ex = crossing_probability_exact(60, 0, 1).value;
  EXPECT_LE(std::abs(a.estimate - ex), 4 * std::sqrt(ex * (1 - ex) / 50000));
  EXPECT_THROW(crossing_probability_mc(60, 0, 1, 0, 1), input_error);
  auto one = crossing_probability_mc(10, 0, 0, 1, 3);
  EXPECT_EQ(one.trials, 1);
}

TEST(Chernoff, Basics) {
  auto zero = chernoff_check(50, 0);
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.rhs_log2, 0.0);
  for (long n : {3L, 10L, 100L, 1000L}) {
    auto t = chernoff_tail(n, 3);
    EXPECT_TRUE(t.routes_agree) << n;
    EXPECT_EQ(t.upper_direct, t.upper_complement);
  }
  EXPECT_THROW(chernoff_check(2, 3), input_error);
  // the exact tail agrees with a lgamma summation
  auto t = chernoff_tail(1000, 3);
  double ref = 0;
  for (long u = t.first_index; u <= 1000; ++u) ref += std::exp2(log2_binom(1000, u) - 1000);
  EXPECT_NEAR(t.tail_log2_direct, std::log2(ref), 1e-9);
}

TEST(Dyadic, Basics) {
  auto k0 = dyadic_sum(3, 0);
  EXPECT_EQ(k0.partial, 0.0);
  EXPECT_NEAR(k0.tail, std::pow(std::log(100.0), -1.0) / std::log(2.0), 1e-15);
  double prev = 0;
  for (long k : {1L, 10L, 100L, 1000L}) {
    auto d = dyadic_sum(3, k);
    EXPECT_GE(d.partial, prev);
    prev = d.partial;
    EXPECT_LE(d.total, k0.total + 1e-15);
  }
  EXPECT_THROW(dyadic_sum(2, 10), input_error);
  EXPECT_THROW(dyadic_sum(3, -1), input_error);
}

TEST(Bandwidth, RangeAndValues) {
  auto b = bandwidth(512);
  EXPECT_NEAR(b.A, 2 * (2.5 * std::sqrt(256 * std::log(std::log(515.0 / 2))) + 90), 1e-9);
  auto ks = b.k_range();
  EXPECT_EQ(ks.front(), -ks.back());
  for (long k : ks) EXPECT_EQ((512 + k) % 2, 0);
  EXPECT_EQ(b.floor_A, static_cast<long>(std::floor(b.A)));
  EXPECT_THROW(bandwidth(2), input_error);
}

TEST(Sandwich, HoldsAtTestedSizes) {
  auto gf = GrowthFunction::paper_default();
  for (long n : {256L, 512L, 1024L}) EXPECT_TRUE(sandwich_check(n, gf).holds) << n;
}

TEST(BandMass, CentralMassHeadroom) {
  auto gf = GrowthFunction::paper_default();
  auto c = claim_Pk(256, gf);
  EXPECT_TRUE(c.holds());
  EXPECT_LE(c.central_mass, c.half);
  EXPECT_LE(c.mass_in_band, c.total_mass);
}

// P(k) counts equal (1 - crossing probability) 2^n over the matching boundary.
TEST(BandMass, AgreesWithAbsorbingWalk) {
  auto gf = GrowthFunction::paper_default();
  for (long n : {150L, 256L}) {
    BoundaryCurve curve(gf);
    std::vector<long> limits(n + 1, kNoLimit);
    for (long j = 2; j <= n; j += 2) limits[j] = curve.at_even(j) - 1;
    auto w = absorbing_walk_exact(limits, false, true);
    auto c = claim_Pk(n, gf);
    EXPECT_EQ(w.survivors(), c.total_mass);
    BigCount in_band = 0;
    for (const auto& [h, v] : w.alive)
      if (std::abs(h) <= c.band.floor_A) in_band += v;
    EXPECT_EQ(in_band, c.mass_in_band);
  }
}

TEST(BinomialEstimate, UnitConstantNeverHolds) {
  // C(n, n/2) ~ sqrt(2/pi) 2^n / sqrt(n): the stated estimate misses by about
  // log2 sqrt(2/pi) at d = 0 and by more in the tails.
  for (long n = 64; n <= 4096; n *= 2) {
    auto v = binomial_estimate_check(n, 0);
    EXPECT_FALSE(v.pass) << n;
    EXPECT_NEAR(v.lhs_log2 - v.rhs_log2, 0.5 * std::log2(2 / M_PI), 0.01) << n;
  }
  EXPECT_FALSE(binomial_estimate_check(1024, 32).pass);
  EXPECT_FALSE(binomial_estimate_check(1024, 512).pass);
  for (long d = 0; d <= 128; ++d) EXPECT_FALSE(binomial_estimate_check(256, d).pass) << d;
  auto v = binomial_estimate_check(1024, 32);
  EXPECT_NEAR(v.lhs_log2, log2_binom(1024, 544), 1e-9);
  EXPECT_THROW(binomial_estimate_check(11, 0), input_error);
  EXPECT_THROW(binomial_estimate_check(10, 6), input_error);
}

TEST(HeadCount, LargeSizes) {
  auto gf = GrowthFunction::paper_default();
  EXPECT_TRUE(head_count_check(1024, gf).pass);
  EXPECT_TRUE(head_count_check(2048, gf).pass);
  // at n = 512 the band reaches k with q < 0
  EXPECT_FALSE(head_count_check(512, gf).pass);
}

TEST(Warmup, DensityWindow) {
  for (long n = 64; n <= 512; n += 64) {
    double d = warmup_density(n);
    EXPECT_GT(d, 0.1);
    EXPECT_LT(d, 0.2);
  }
}

TEST(Verdict, GuardBand) {
  EXPECT_THROW(log2_at_least(100.0, 100.0 + 1e-8, "x"), guard_band_error);
  EXPECT_TRUE(log2_at_least(101.0, 100.0, "x"));
  EXPECT_FALSE(log2_at_least(-std::numeric_limits<double>::infinity(), 1.0, "x"));
  Verdict v;
  v.lhs_log2 = -std::numeric_limits<double>::infinity();
  EXPECT_TRUE(v.to_json()["lhs_log2"].is_null());
}

// Values frozen from the first exact computation.
TEST(Regression, FrozenConstants) {
  auto ex = crossing_probability_exact(20000, 3, 100);
  EXPECT_LE(ex.probability, ExactRational(1, 2));
  EXPECT_NEAR(ex.value / 6.4627806293963239e-07, 1.0, 1e-12);
  ExactRational scaled = ex.probability * ExactRational(BigCount(1) << 20000);
  scaled.canonicalize();
  EXPECT_EQ(scaled.get_den(), 1);
  auto d = dyadic_sum(3, 1000000);
  EXPECT_NEAR(d.total, 0.29087838049912473, 1e-12);
  EXPECT_LE(d.total, 0.5);
}

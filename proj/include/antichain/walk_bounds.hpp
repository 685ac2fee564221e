#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "antichain/cycle_lemma.hpp"
#include "antichain/growth_function.hpp"
#include "antichain/interval.hpp"
#include "antichain/numeric.hpp"
#include "antichain/path_counter.hpp"
#include "antichain/verdict.hpp"

namespace antichain::walk {

// ---------------------------------------------------------------------------
// Bandwidth A = 2((5/2) sqrt((n/2) ln ln((n+3)/2)) + 90); k ranges over the
// integers with |k| <= floor(A) and n + k even.

inline Interval bandwidth_interval(long n) {
  if (n < 3) throw input_error("bandwidth needs n >= 3 (ln ln((n+3)/2) must be positive)");
  Interval root = sqrt_x_loglog(ExactRational(n, 2), ExactRational(3, 2));
  return Interval(ExactRational(5)) * root + Interval(ExactRational(180));
}

struct Bandwidth {
  long n = 0;
  double A = 0.0;
  long floor_A = 0;

  std::vector<long> k_range() const {
    std::vector<long> ks;
    for (long k = -floor_A; k <= floor_A; ++k)
      if (((n + k) % 2 + 2) % 2 == 0) ks.push_back(k);
    return ks;
  }
};

inline Bandwidth bandwidth(long n) {
  Interval a = bandwidth_interval(n);
  return Bandwidth{n, a.mid(), to_long(a.floor())};
}

// ---------------------------------------------------------------------------
// Absorbing ±1 walk from height 0. At step j a walk at height h > limits[j]
// is absorbed. With prune_safe, heights that cannot reach any later limit
// even by stepping up every time are merged into one "safe" count.

struct AbsorbingWalk {
  long steps = 0;
  BigCount absorbed;                // paths absorbed at some step <= steps
  BigCount safe;                    // paths that can never be absorbed again
  std::map<long, BigCount> alive;   // surviving paths by final height (not in safe)

  BigCount survivors() const {
    BigCount s = safe;
    for (const auto& [h, v] : alive) s += v;
    return s;
  }
};

inline constexpr long kNoLimit = LONG_MAX;

// limits[j] for j = 1..N (limits[0] unused).
inline AbsorbingWalk absorbing_walk_exact(const std::vector<long>& limits, bool prune_safe,
                                          bool check_conservation = false) {
  const long N = static_cast<long>(limits.size()) - 1;
  if (N < 1) throw input_error("absorbing walk needs at least one step");
  std::vector<long> suffix_min(N + 2, kNoLimit);
  for (long j = N; j >= 1; --j) suffix_min[j] = std::min(limits[j], suffix_min[j + 1]);

  const long base = N + 1;
  std::vector<BigCount> cur(2 * N + 3), nxt(2 * N + 3);
  cur[base] = 1;
  long lo = 0, hi = 0;
  AbsorbingWalk w;
  w.steps = N;
  w.absorbed = 0;
  w.safe = 0;
  for (long j = 1; j <= N; ++j) {
    mpz_mul_2exp(w.absorbed.get_mpz_t(), w.absorbed.get_mpz_t(), 1);
    mpz_mul_2exp(w.safe.get_mpz_t(), w.safe.get_mpz_t(), 1);
    long nlo = lo - 1, nhi = hi + 1;
    if (lo > hi) {
      nlo = 1;
      nhi = 0;
    }
    for (long h = nlo; h <= nhi; h += 2) {
      BigCount& dst = nxt[h + base];
      const bool from_below = h - 1 >= lo && h - 1 <= hi;
      const bool from_above = h + 1 >= lo && h + 1 <= hi;
      if (from_below && from_above) mpz_add(dst.get_mpz_t(), cur[h - 1 + base].get_mpz_t(), cur[h + 1 + base].get_mpz_t());
      else if (from_below) dst = cur[h - 1 + base];
      else if (from_above) dst = cur[h + 1 + base];
      else dst = 0;
    }
    if (limits[j] != kNoLimit) {
      while (nlo <= nhi && nhi > limits[j]) {
        w.absorbed += nxt[nhi + base];
        nhi -= 2;
      }
    }
    if (prune_safe && j < N && suffix_min[j + 1] != kNoLimit) {
      const long safe_limit = suffix_min[j + 1] - (N - j);
      while (nlo <= nhi && nlo <= safe_limit) {
        w.safe += nxt[nlo + base];
        nlo += 2;
      }
    }
    std::swap(cur, nxt);
    lo = nlo;
    hi = nhi;
    if (check_conservation) {
      BigCount total = w.absorbed + w.safe;
      for (long h = lo; h <= hi; h += 2) total += cur[h + base];
      if (total != pow2(j)) throw std::logic_error("absorbing walk lost mass at step " + std::to_string(j));
    }
  }
  for (long h = lo; h <= hi; h += 2)
    if (sgn(cur[h + base]) != 0) w.alive.emplace(h, cur[h + base]);
  return w;
}

// ---------------------------------------------------------------------------
// Boundary b(n) = C sqrt(n ln ln(n+3)) + offset. S_n is an integer, so
// S_n > b(n) iff S_n > floor(b(n)).

inline std::vector<long> lemma_limits(long N, const ExactRational& C, long offset) {
  GrowthFunction b = GrowthFunction::formula(C, offset);
  std::vector<long> limits(N + 1, kNoLimit);
  for (long j = 1; j <= N; ++j) limits[j] = b(j);
  return limits;
}

struct CrossingProbability {
  long N = 0;
  ExactRational probability;  // P(exists n <= N : S_n > b(n)), denominator 2^N
  double value = 0.0;
  BigCount absorbed;
  BigCount survivors;
};

inline CrossingProbability crossing_probability_exact(long N, const ExactRational& C, long offset,
                                                      bool check_conservation = false) {
  if (N < 1) throw input_error("crossing probability needs N >= 1");
  CrossingProbability r;
  r.N = N;
  if (offset >= N) {
    r.probability = 0;
    r.absorbed = 0;
    r.survivors = pow2(N);
    return r;
  }
  auto w = absorbing_walk_exact(lemma_limits(N, C, offset), true, check_conservation);
  r.absorbed = w.absorbed;
  r.survivors = w.survivors();
  if (r.absorbed + r.survivors != pow2(N)) throw std::logic_error("crossing probability: mass not conserved");
  r.probability = ExactRational(r.absorbed, pow2(N));
  r.probability.canonicalize();
  r.value = to_double(r.probability);
  return r;
}

// Floating variant for N beyond the exact envelope. Surviving mass is
// rounded toward zero at every operation, so the returned crossing
// probability is an upper bound.
inline double crossing_probability_upper(long N, const ExactRational& C, long offset) {
  if (N < 1) throw input_error("crossing probability needs N >= 1");
  if (offset >= N) return 0.0;
  auto limits = lemma_limits(N, C, offset);
  std::vector<long> suffix_min(N + 2, kNoLimit);
  for (long j = N; j >= 1; --j) suffix_min[j] = std::min(limits[j], suffix_min[j + 1]);
  auto down = [](double v) { return v > 0 ? std::nextafter(v, 0.0) : v; };
  const long base = N + 1;
  std::vector<double> cur(2 * N + 3, 0.0), nxt(2 * N + 3, 0.0);
  cur[base] = 1.0;
  long lo = 0, hi = 0;
  double safe = 0.0;
  for (long j = 1; j <= N && lo <= hi; ++j) {
    long nlo = lo - 1, nhi = hi + 1;
    for (long h = nlo; h <= nhi; h += 2) {
      double a = (h - 1 >= lo && h - 1 <= hi) ? cur[h - 1 + base] : 0.0;
      double b = (h + 1 >= lo && h + 1 <= hi) ? cur[h + 1 + base] : 0.0;
      double s = down(a + b);
      double half = s * 0.5;
      if (half * 2.0 != s) half = down(half);
      nxt[h + base] = half;
    }
    while (nlo <= nhi && nhi > limits[j]) nhi -= 2;
    if (j < N) {
      const long safe_limit = suffix_min[j + 1] - (N - j);
      while (nlo <= nhi && nlo <= safe_limit) {
        safe = down(safe + nxt[nlo + base]);
        nlo += 2;
      }
    }
    std::swap(cur, nxt);
    lo = nlo;
    hi = nhi;
  }
  double survive = safe;
  for (long h = lo; h <= hi; h += 2) survive = down(survive + cur[h + base]);
  double upper = 1.0 - survive;
  return std::nextafter(upper, 2.0);
}

// ---------------------------------------------------------------------------
// Seeded Monte Carlo estimate. Trials are split over a fixed number of
// workers; worker w draws from mt19937_64 seeded with seed_seq{seed, w}, so
// the estimate depends only on (N, C, offset, trials, seed).

struct McEstimate {
  long trials = 0;
  long crossings = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double radius = 0.0;  // 4 standard errors
};

inline constexpr unsigned kMcWorkers = 8;

inline McEstimate crossing_probability_mc(long N, const ExactRational& C, long offset, long trials,
                                          std::uint64_t seed) {
  if (trials < 1) throw input_error("Monte Carlo needs trials >= 1");
  if (N < 1) throw input_error("crossing probability needs N >= 1");
  const auto limits = lemma_limits(N, C, offset);
  std::vector<long> crossings(kMcWorkers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < kMcWorkers; ++w) {
    const long share = trials / kMcWorkers + (static_cast<long>(w) < trials % kMcWorkers ? 1 : 0);
    pool.emplace_back([&, w, share]() {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), w};
      std::mt19937_64 rng(seq);
      long hits = 0;
      for (long t = 0; t < share; ++t) {
        long s = 0;
        std::uint64_t bits = 0;
        int left = 0;
        for (long j = 1; j <= N; ++j) {
          if (left == 0) {
            bits = rng();
            left = 64;
          }
          s += (bits & 1u) ? 1 : -1;
          bits >>= 1;
          --left;
          if (s > limits[j]) {
            ++hits;
            break;
          }
        }
      }
      crossings[w] = hits;
    });
  }
  for (auto& th : pool) th.join();
  McEstimate e;
  e.trials = trials;
  for (long c : crossings) e.crossings += c;
  e.estimate = static_cast<double>(e.crossings) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  e.radius = 4.0 * e.standard_error;
  return e;
}

// ---------------------------------------------------------------------------
// Chernoff step: P(S_n > (2/3) C sqrt(n ln ln n)) <= exp(-(2/9) C^2 ln ln n).

struct ChernoffTail {
  long n = 0;
  long first_index = 0;          // smallest u (number of +1s) with 2u - n > threshold
  BigCount upper_direct;         // Σ_{u >= first_index} C(n, u)
  BigCount upper_complement;     // 2^n - Σ_{u < first_index} C(n, u)
  double tail_log2_direct = 0.0;
  double tail_log2_complement = 0.0;
  double bound_log2 = 0.0;
  bool routes_agree = false;     // relative difference <= 1e-12
};

inline ChernoffTail chernoff_tail(long n, const ExactRational& C) {
  if (n < 3) throw input_error("chernoff_check needs n >= 3");
  if (sgn(C) < 0) throw input_error("chernoff_check needs C >= 0");
  ChernoffTail t;
  t.n = n;
  Interval a = Interval(ExactRational(ExactRational(2, 3) * C)) * sqrt_x_loglog(ExactRational(n), ExactRational(0));
  Interval half_point = (Interval(n) + a) * Interval(ExactRational(1, 2));
  t.first_index = to_long(half_point.floor()) + 1;

  BigCount c = 1, low = 0, high = 0;
  for (long u = 0; u <= n; ++u) {
    (u < t.first_index ? low : high) += c;
    mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n - u));
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(u + 1));
  }
  t.upper_direct = high;
  t.upper_complement = pow2(n) - low;
  t.tail_log2_direct = log2_of(t.upper_direct) - n;
  t.tail_log2_complement = log2_of(t.upper_complement) - n;
  const double lnln = std::log(std::log(static_cast<double>(n)));
  t.bound_log2 = -(2.0 / 9.0) * to_double(C * C) * lnln / std::log(2.0);
  if (std::isinf(t.tail_log2_direct) || std::isinf(t.tail_log2_complement)) {
    t.routes_agree = t.tail_log2_direct == t.tail_log2_complement;
  } else {
    t.routes_agree = std::abs(std::expm1((t.tail_log2_direct - t.tail_log2_complement) * std::log(2.0))) <= 1e-12;
  }
  return t;
}

inline Verdict chernoff_check(long n, const ExactRational& C) {
  auto t = chernoff_tail(n, C);
  Verdict v;
  v.check = "chernoff";
  v.params = {{"n", n}, {"C", C.get_str()}};
  v.lhs_log2 = t.tail_log2_direct;
  v.rhs_log2 = t.bound_log2;
  // tail <= bound, i.e. bound >= tail
  v.pass = t.routes_agree && (std::isinf(v.lhs_log2) || log2_at_least(v.rhs_log2, v.lhs_log2, "chernoff"));
  return v;
}

// ---------------------------------------------------------------------------
// Dyadic summation: Σ_{i=1}^{k} (ln 100 + i ln 2)^{-α}, α = (2/9) C^2, plus
// the integral majorant of the remaining tail.

struct DyadicBound {
  double exponent = 0.0;
  double partial = 0.0;
  double tail = 0.0;
  double total = 0.0;
};

inline DyadicBound dyadic_sum(const ExactRational& C, long k) {
  if (k < 0) throw input_error("dyadic_sum needs k >= 0");
  const ExactRational alpha = ExactRational(2, 9) * C * C;
  if (alpha <= 1) throw input_error("dyadic_sum diverges unless (2/9) C^2 > 1");
  DyadicBound d;
  d.exponent = to_double(alpha);
  const long double l100 = std::log(100.0L), l2 = std::log(2.0L), a = d.exponent;
  long double sum = 0.0L, comp = 0.0L;
  for (long i = 1; i <= k; ++i) {
    long double term = std::pow(l100 + i * l2, -a) - comp;
    long double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  d.partial = static_cast<double>(sum);
  d.tail = static_cast<double>(std::pow(l100 + k * l2, 1.0L - a) / ((a - 1.0L) * l2));
  d.total = d.partial + d.tail;
  return d;
}

// ---------------------------------------------------------------------------
// Sandwich 2 f(n/2) >= A >= 3 sqrt(n ln ln(n+3)) + 100.

struct Sandwich {
  long n = 0;
  long two_f_half = 0;
  double A = 0.0;
  double lemma_boundary = 0.0;
  bool holds = false;
};

inline Sandwich sandwich_check(long n, const GrowthFunction& gf) {
  Sandwich s;
  s.n = n;
  s.two_f_half = 2 * gf(ExactRational(n, 2));
  Interval a = bandwidth_interval(n);
  Interval lemma = Interval(ExactRational(3)) * sqrt_x_loglog(ExactRational(n)) + Interval(ExactRational(100));
  s.A = a.mid();
  s.lemma_boundary = lemma.mid();
  auto upper = certainly_ge(Interval(s.two_f_half), a);
  auto lower = certainly_ge(a, lemma);
  if (!upper || !lower) throw guard_band_error("sandwich comparison is not decidable at n=" + std::to_string(n));
  s.holds = *upper && *lower;
  return s;
}

// ---------------------------------------------------------------------------
// Σ_{|k| <= floor(A), n+k even} |P(k)| >= 2^{n-1}, exact.

struct PkClaim {
  Bandwidth band;
  BigCount mass_in_band;
  BigCount total_mass;    // Σ over all k
  BigCount central_mass;  // the sum with A replaced by 0
  BigCount half;          // 2^{n-1}
  bool holds() const { return mass_in_band >= half; }
};

inline PkClaim claim_Pk(long n, const GrowthFunction& gf) {
  PkClaim c;
  c.band = bandwidth(n);
  auto table = paths::count_Pk(n, gf);
  c.mass_in_band = 0;
  c.total_mass = 0;
  for (const auto& [k, v] : table.entries) {
    c.total_mass += v;
    if (std::abs(k) <= c.band.floor_A) c.mass_in_band += v;
  }
  c.central_mass = table.at(0);
  c.half = pow2(n - 1);
  return c;
}

inline Verdict claim_Pk_check(long n, const GrowthFunction& gf) {
  auto c = claim_Pk(n, gf);
  Verdict v;
  v.check = "claim-pk";
  v.params = {{"n", n}, {"gf", gf.to_json()}, {"floor_A", c.band.floor_A}};
  v.lhs_log2 = log2_of(c.mass_in_band);
  v.rhs_log2 = static_cast<double>(n - 1);
  v.pass = c.holds();
  return v;
}

// ---------------------------------------------------------------------------
// min_{k in band} |Q(k)| >= 2^n / (n (ln n)^46), exact left side.

inline double claim_Qk_rhs_log2(long n) {
  const double dn = static_cast<double>(n);
  return dn - std::log2(dn) - 46.0 * std::log2(std::log(dn));
}

struct QkClaim {
  Bandwidth band;
  long argmin_k = 0;
  BigCount min_count;
  double lhs_log2 = 0.0;
  double rhs_log2 = 0.0;
};

inline QkClaim claim_Qk(long n, const GrowthFunction& gf) {
  QkClaim c;
  c.band = bandwidth(n);
  auto table = paths::count_Qk(n, gf);
  bool first = true;
  for (long k : c.band.k_range()) {
    BigCount v = table.at(k);
    if (first || v < c.min_count) {
      c.min_count = v;
      c.argmin_k = k;
      first = false;
    }
  }
  c.lhs_log2 = log2_of(c.min_count);
  c.rhs_log2 = claim_Qk_rhs_log2(n);
  return c;
}

inline Verdict claim_Qk_check(long n, const GrowthFunction& gf) {
  auto c = claim_Qk(n, gf);
  Verdict v;
  v.check = "claim-qk";
  v.params = {{"n", n}, {"gf", gf.to_json()}, {"floor_A", c.band.floor_A}, {"argmin_k", c.argmin_k}};
  v.lhs_log2 = c.lhs_log2;
  v.rhs_log2 = c.rhs_log2;
  v.pass = log2_at_least(c.lhs_log2, c.rhs_log2, "claim-qk");
  return v;
}

// (sqrt(n ln ln n) / (4n)) C(n, n/2 + f(n) + ceil(A/2)) >= 2^n / (n (ln n)^46).
inline Verdict qk_binomial_chain_check(long n, const GrowthFunction& gf) {
  if (n < 4 || n % 2 != 0) throw input_error("binomial chain needs even n >= 4");
  const long fn = gf(n);
  const long half_a = (bandwidth(n).floor_A + 1) / 2;  // ceil(A/2) for non-integer A
  const long index = n / 2 + fn + half_a;
  const double dn = static_cast<double>(n);
  Verdict v;
  v.check = "qk-binomial-chain";
  v.params = {{"n", n}, {"gf", gf.to_json()}, {"index", index}};
  v.lhs_log2 = 0.5 * std::log2(dn * std::log(std::log(dn))) - std::log2(4.0 * dn) +
               log2_of(index <= n ? binomial(n, index) : BigCount(0));
  v.rhs_log2 = claim_Qk_rhs_log2(n);
  v.pass = log2_at_least(v.lhs_log2, v.rhs_log2, "qk-binomial-chain");
  return v;
}

// ---------------------------------------------------------------------------
// C(n, n/2 + d) >= (2^n / sqrt n) e^{-2 d^2 / n}.

inline Verdict binomial_estimate_check(long n, long d) {
  if (n < 2 || n % 2 != 0) throw input_error("binomial_estimate_check needs even n >= 2");
  if (d < 0 || d > n / 2) throw input_error("binomial_estimate_check needs 0 <= d <= n/2");
  const double dn = static_cast<double>(n), dd = static_cast<double>(d);
  Verdict v;
  v.check = "binomial-estimate";
  v.params = {{"n", n}, {"d", d}};
  v.lhs_log2 = log2_of(binomial(n, n / 2 + d));
  v.rhs_log2 = dn - 0.5 * std::log2(dn) - 2.0 * dd * dd / dn / std::log(2.0);
  v.pass = log2_at_least(v.lhs_log2, v.rhs_log2, "binomial-estimate");
  return v;
}

// ---------------------------------------------------------------------------
// |F_n| >= 2^{2n} / (2n (ln n)^46) by default for c = 3, b = 100.

inline double theorem2_rhs_log2(long n) {
  const double dn = static_cast<double>(n);
  return 2.0 * dn - std::log2(2.0 * dn) - 46.0 * std::log2(std::log(dn));
}

inline Verdict theorem2_check(long n, const GrowthFunction& gf = GrowthFunction::paper_default()) {
  if (n < 3) throw input_error("theorem2_check needs n >= 3");
  Verdict v;
  v.check = "theorem2";
  v.params = {{"n", n}, {"gf", gf.to_json()}};
  v.lhs_log2 = log2_of(paths::count_Gn(n, gf));
  v.rhs_log2 = theorem2_rhs_log2(n);
  v.pass = log2_at_least(v.lhs_log2, v.rhs_log2, "theorem2");
  return v;
}

// ---------------------------------------------------------------------------
// Cycle-lemma consequence at the construction's parameters: for every k in
// the band, p = (n + 2f(n) - k)/2, q = (n - 2f(n) + k)/2 and
// μ = (2f(n) - 2f(n/2))/n satisfy the lemma hypotheses and
// head_bound(p, q, μ) >= (1/4) sqrt(n ln ln n).

inline Verdict head_count_check(long n, const GrowthFunction& gf) {
  const auto band = bandwidth(n);
  const long fn = gf(n);
  const ExactRational mu = paths::slope_mu(n, gf);
  const double dn = static_cast<double>(n);
  const double target = 0.25 * std::sqrt(dn * std::log(std::log(dn)));
  long worst = LONG_MAX, worst_k = 0;
  bool hypotheses = true;
  for (long k : band.k_range()) {
    const long p = (n + 2 * fn - k) / 2, q = (n - 2 * fn + k) / 2;
    long bound = LONG_MIN;
    if (p >= 0 && q >= 0 && cycle::lemma_hypotheses_hold(p, q, mu)) {
      bound = cycle::head_bound(p, q, mu);
    } else {
      hypotheses = false;
    }
    if (bound < worst) {
      worst = bound;
      worst_k = k;
    }
  }
  Verdict v;
  v.check = "head-count";
  v.params = {{"n", n}, {"gf", gf.to_json()}, {"mu", mu.get_str()}, {"worst_k", worst_k}, {"hypotheses", hypotheses}};
  v.lhs_log2 = worst > 0 ? std::log2(static_cast<double>(worst)) : -std::numeric_limits<double>::infinity();
  v.rhs_log2 = std::log2(target);
  v.pass = hypotheses && log2_at_least(v.lhs_log2, v.rhs_log2, "head-count");
  return v;
}

// |F_n| n^{3/2} / 2^{2n} for the warm-up family.
inline double warmup_density(long n) {
  return std::exp2(log2_of(paths::count_Gn(n, GrowthFunction::zero())) + 1.5 * std::log2(static_cast<double>(n)) -
                   2.0 * static_cast<double>(n));
}

}  // namespace antichain::walk

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "antichain/cycle_lemma.hpp"
#include "antichain/growth_function.hpp"
#include "antichain/height_column.hpp"
#include "antichain/numeric.hpp"

namespace antichain::paths {

using antichain::ExactBackend;
using antichain::HeightColumn;
using antichain::Log2Backend;

// Counts by height; missing keys are zero.
template <class Backend = ExactBackend>
struct CountTable {
  long n = 0;
  std::map<long, typename Backend::value_type> entries;

  typename Backend::value_type at(long k) const {
    auto it = entries.find(k);
    return it == entries.end() ? Backend::zero() : it->second;
  }
};

// |G_n|: paths (0,0) -> (2n, 2f(n)) strictly below y = 2f(x/2) at even x in (0, 2n).
template <class Backend = ExactBackend>
typename Backend::value_type count_Gn(long n, BoundaryCurve& curve) {
  if (n < 1) throw input_error("count_Gn needs n >= 1");
  const long target = 2 * curve.f(n);
  if (target > 2 * n) return Backend::zero();
  HeightColumn<Backend> col(0);
  for (long x = 1; x <= 2 * n; ++x) {
    col.spread();
    if (x % 2 == 0 && x < 2 * n) col.keep_below(curve.at_even(x));
    col.keep_at_least(target - (2 * n - x));
    if (col.empty()) return Backend::zero();
  }
  return col.at(target);
}

template <class Backend = ExactBackend>
typename Backend::value_type count_Gn(long n, const GrowthFunction& gf) {
  BoundaryCurve curve(gf);
  return count_Gn<Backend>(n, curve);
}

// |P(k)|: paths (0,0) -> (n,k) strictly below the curve at even x in (0, n].
template <class Backend = ExactBackend>
CountTable<Backend> count_Pk(long n, BoundaryCurve& curve) {
  if (n < 1) throw input_error("count_Pk needs n >= 1");
  HeightColumn<Backend> col(0);
  for (long x = 1; x <= n; ++x) {
    col.spread();
    if (x % 2 == 0) col.keep_below(curve.at_even(x));
  }
  CountTable<Backend> t;
  t.n = n;
  col.for_each([&](long h, const auto& v) { t.entries.emplace(h, v); });
  return t;
}

template <class Backend = ExactBackend>
CountTable<Backend> count_Pk(long n, const GrowthFunction& gf) {
  BoundaryCurve curve(gf);
  return count_Pk<Backend>(n, curve);
}

// |Q(k)|: paths (n,k) -> (2n, 2f(n)) strictly below the curve at even x < 2n
// (the start column x = n included). Computed backward from the endpoint.
template <class Backend = ExactBackend>
CountTable<Backend> count_Qk(long n, BoundaryCurve& curve) {
  if (n < 1) throw input_error("count_Qk needs n >= 1");
  HeightColumn<Backend> col(2 * curve.f(n));
  for (long x = 2 * n - 1; x >= n; --x) {
    col.spread();
    if (x % 2 == 0) col.keep_below(curve.at_even(x));
  }
  CountTable<Backend> t;
  t.n = n;
  col.for_each([&](long h, const auto& v) { t.entries.emplace(h, v); });
  return t;
}

template <class Backend = ExactBackend>
CountTable<Backend> count_Qk(long n, const GrowthFunction& gf) {
  BoundaryCurve curve(gf);
  return count_Qk<Backend>(n, curve);
}

struct Convolution {
  BigCount direct;     // count_Gn
  BigCount convolved;  // Σ_k |P(k)| |Q(k)|
  bool ok() const { return direct == convolved; }
};

inline Convolution convolution(long n, const GrowthFunction& gf) {
  BoundaryCurve curve(gf);
  Convolution c;
  c.direct = count_Gn(n, curve);
  auto p = count_Pk(n, curve);
  auto q = count_Qk(n, curve);
  c.convolved = 0;
  for (const auto& [k, v] : p.entries) c.convolved += v * q.at(k);
  return c;
}

inline bool convolution_check(long n, const GrowthFunction& gf) { return convolution(n, gf).ok(); }

// |F ∩ 2^[N]| for every N in 0..N_max (index N). Full slices F_m with 2m <= N
// are read off the forward column at x = 2m; members of F_m with
// m + f(m) <= N < 2m and max(A) <= N are the paths at column N that finish
// with an all-down suffix to (2m, 2f(m)). With f nondecreasing the suffix only
// has to clear the boundary at its first even abscissa.
inline std::vector<BigCount> cumulative_counts(long N_max, const GrowthFunction& gf) {
  if (N_max < 0) throw input_error("cumulative_counts needs N >= 0");
  std::vector<BigCount> out(N_max + 1, 0);
  if (N_max == 0) return out;
  if (!is_monotone_on(gf, 1, N_max)) throw input_error("cumulative_count requires f nondecreasing on [1, N]");
  BoundaryCurve curve(gf);
  BigCount full_total = 0;
  HeightColumn<ExactBackend> col(0);
  for (long x = 1; x <= N_max; ++x) {
    col.spread();
    if (x % 2 == 0) {
      const long m = x / 2;
      if (curve.f(m) <= m) full_total += col.at(2 * curve.f(m));
      col.keep_below(curve.at_even(x));
    }
    BigCount partial = 0;
    for (long m = x / 2 + 1; m <= x; ++m) {
      const long fm = curve.f(m);
      if (m + fm > x || fm > m) continue;
      const long h = 2 * fm + 2 * m - x;
      const long y = x + 1 + (x % 2 == 0 ? 1 : 0);  // first even abscissa after x
      if (y < 2 * m && h - (y - x) >= curve.at_even(y)) continue;
      partial += col.at(h);
    }
    out[x] = full_total + partial;
  }
  return out;
}

inline BigCount cumulative_count(long N, const GrowthFunction& gf) { return cumulative_counts(N, gf).back(); }

// μ = (2f(n) - 2f(n/2)) / n.
inline ExactRational slope_mu(long n, const GrowthFunction& gf) {
  ExactRational mu(2 * gf(n) - 2 * gf(ExactRational(n, 2)), n);
  mu.canonicalize();
  return mu;
}

// Good paths: (0,0) -> (n, 2f(n)-k), strictly below the line through
// (0, 2f(n/2)-k) and (n, 2f(n)-k) everywhere except the final point.
inline BigCount count_good_below_line(long n, long k, const GrowthFunction& gf) {
  if (n < 1) throw input_error("count_good_paths needs n >= 1");
  if ((n + k) % 2 != 0) throw input_error("count_good_paths: n + k must be even");
  const long fn = gf(n);
  const long fh = gf(ExactRational(n, 2));
  const long rise = 2 * fn - 2 * fh;  // μ n
  const long c = 2 * fh - k;
  const long target = 2 * fn - k;
  // x in [0, n): h n < rise x + c n, i.e. h < ceil((rise x + c n) / n).
  auto limit = [&](long x) {
    long num = rise * x + c * n;
    long q = num / n;
    if (num % n != 0 && num > 0) ++q;
    return q;
  };
  if (0 >= limit(0)) return 0;
  HeightColumn<ExactBackend> col(0);
  for (long x = 1; x <= n; ++x) {
    col.spread();
    if (x < n) col.keep_below(limit(x));
    if (col.empty()) return 0;
  }
  return col.at(target);
}

// The reversed formulation: (0,0) -> (n, 2f(n)-k) strictly above y = μ x
// except at the origin, i.e. good ±1 sequences with p = (n + 2f(n) - k)/2.
inline BigCount count_good_above_origin_line(long n, long k, const GrowthFunction& gf) {
  if (n < 1) throw input_error("count_good_paths needs n >= 1");
  if ((n + k) % 2 != 0) throw input_error("count_good_paths: n + k must be even");
  const long target = 2 * gf(n) - k;
  const long p = (n + target) / 2;
  const long q = (n - target) / 2;
  if (p < 0 || q < 0) return 0;
  return cycle::count_good_sequences(p, q, slope_mu(n, gf));
}

// Both formulations; they count the same set via path reversal.
inline BigCount count_good_paths(long n, long k, const GrowthFunction& gf) {
  BigCount below = count_good_below_line(n, k, gf);
  BigCount above = count_good_above_origin_line(n, k, gf);
  if (below != above)
    throw std::logic_error("good-path formulations disagree at n=" + std::to_string(n) + " k=" + std::to_string(k));
  return below;
}

}  // namespace antichain::paths

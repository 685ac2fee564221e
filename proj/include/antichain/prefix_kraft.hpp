#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "antichain/numeric.hpp"
#include "antichain/subset_mask.hpp"

namespace antichain::kraft {

// A nonempty finite {0,1} word.
class CodeWord {
 public:
  explicit CodeWord(std::string bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw input_error("code words must be nonempty");
    for (char c : bits_)
      if (c != '0' && c != '1') throw input_error("code word '" + bits_ + "' has a non-binary symbol");
  }

  const std::string& bits() const { return bits_; }
  std::size_t length() const { return bits_.size(); }

  friend bool operator==(const CodeWord&, const CodeWord&) = default;
  friend auto operator<=>(const CodeWord&, const CodeWord&) = default;

 private:
  std::string bits_;
};

// Thrown by the partial-sum routines; carries the offending pair.
struct not_antichain_error : input_error {
  not_antichain_error(SubsetMask a, SubsetMask b)
      : input_error("family is not an antichain: " + a.to_string() + " ⊆ " + b.to_string()),
        smaller(std::move(a)),
        larger(std::move(b)) {}
  SubsetMask smaller;
  SubsetMask larger;
};

// s_A: bit i is 1 iff i ∈ A, length max(A).
inline CodeWord set_to_word(const SubsetMask& a) {
  std::size_t len = a.max_element();
  if (len == 0) throw input_error("the empty set has no code word");
  std::string bits(len, '0');
  for (std::size_t e : a.elements()) bits[e - 1] = '1';
  return CodeWord(std::move(bits));
}

// No word is a prefix of (or equal to) another word. After sorting, any
// prefix relation shows up between lexicographic neighbours.
inline bool is_prefix_free(std::span<const CodeWord> words) {
  std::vector<const std::string*> sorted;
  sorted.reserve(words.size());
  for (const auto& w : words) sorted.push_back(&w.bits());
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const std::string& u = *sorted[i - 1];
    const std::string& w = *sorted[i];
    if (w.compare(0, u.size(), u) == 0) return false;
  }
  return true;
}

// Σ 2^{-|s|}, exact.
inline ExactRational kraft_sum(std::span<const CodeWord> words) {
  if (words.empty()) return ExactRational(0);
  std::size_t longest = 0;
  for (const auto& w : words) longest = std::max(longest, w.length());
  BigCount num = 0;
  for (const auto& w : words) num += pow2(longest - w.length());
  ExactRational r(num, pow2(longest));
  r.canonicalize();
  return r;
}

// First pair (i, j) with family[i] ⊆ family[j], i != j; duplicates count.
// Candidates are visited in order of cardinality, so only pairs with
// |A| <= |B| are tested.
inline std::optional<std::pair<std::size_t, std::size_t>> find_antichain_violation(std::span<const SubsetMask> family) {
  std::vector<std::size_t> order(family.size());
  std::vector<std::size_t> card(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    order[i] = i;
    card[i] = family[i].size();
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return card[a] < card[b]; });
  for (std::size_t x = 0; x < order.size(); ++x) {
    const auto& a = family[order[x]];
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      if (a.is_subset_of(family[order[y]])) return std::make_pair(order[x], order[y]);
    }
  }
  return std::nullopt;
}

inline bool is_antichain(std::span<const SubsetMask> family) { return !find_antichain_violation(family).has_value(); }

// |F ∩ 2^[n]| for n = 0..N (index n). Members not inside [N] are rejected.
inline std::vector<BigCount> slice_counts(std::span<const SubsetMask> family, long N) {
  if (N < 0) throw input_error("N must be nonnegative");
  std::vector<BigCount> by_max(N + 1, 0);
  for (const auto& a : family) {
    std::size_t m = a.max_element();
    if (m > static_cast<std::size_t>(N))
      throw input_error("member " + a.to_string() + " is not contained in [" + std::to_string(N) + "]");
    by_max[m] += 1;
  }
  std::vector<BigCount> slices(N + 1, 0);
  BigCount running = 0;
  for (long n = 0; n <= N; ++n) {
    running += by_max[n];
    slices[n] = running;
  }
  return slices;
}

namespace detail {
inline void require_antichain(std::span<const SubsetMask> family) {
  if (auto bad = find_antichain_violation(family)) throw not_antichain_error(family[bad->first], family[bad->second]);
}

// Σ_{n=from}^{N} slices[n] / 2^n over a common denominator 2^N.
inline ExactRational dyadic_partial(const std::vector<BigCount>& slices, long from, long N) {
  BigCount num = 0;
  for (long n = std::max(from, 0L); n <= N; ++n) num += slices[n] * pow2(N - n);
  ExactRational r(num, pow2(N));
  r.canonicalize();
  return r;
}
}  // namespace detail

// Σ_{n=1}^{N} |F ∩ 2^[n]| / 2^n, exact. At most 2 for every antichain.
inline ExactRational antichain_partial_sum(std::span<const SubsetMask> family, long N) {
  detail::require_antichain(family);
  if (N < 1) return ExactRational(0);
  return detail::dyadic_partial(slice_counts(family, N), 1, N);
}

// |F ∩ 2^[N]| / 2^N + Σ_{n<N} |F ∩ 2^[n]| / 2^{n+1}; at most 1 for an antichain
// (the telescoped form of the Kraft sum over {s_A}).
inline ExactRational telescoped_kraft_form(std::span<const SubsetMask> family, long N) {
  detail::require_antichain(family);
  if (N < 1) return ExactRational(0);
  auto slices = slice_counts(family, N);
  BigCount num = slices[N] * 2;
  for (long n = 1; n < N; ++n) num += slices[n] * pow2(N - n);
  ExactRational r(num, pow2(N + 1));
  r.canonicalize();
  return r;
}

struct DensityTable {
  // (n, f_n) with f_n = |F ∩ 2^[n]| * n ln n / 2^n, for 2 <= n <= N.
  std::vector<std::pair<long, double>> ratios;
  // Σ_{n=2}^{N} f_n / (n ln n) = Σ |F ∩ 2^[n]| / 2^n, exact.
  ExactRational weighted_sum;
  bool bound_holds = true;  // weighted_sum <= 2
};

inline DensityTable density_ratios(std::span<const SubsetMask> family, long N) {
  detail::require_antichain(family);
  DensityTable t;
  if (N < 2) return t;
  auto slices = slice_counts(family, N);
  for (long n = 2; n <= N; ++n) {
    double ratio = 0.0;
    if (sgn(slices[n]) > 0) {
      double l2 = log2_of(slices[n]) + std::log2(static_cast<double>(n) * std::log(static_cast<double>(n))) - n;
      ratio = std::exp2(l2);
    }
    t.ratios.emplace_back(n, ratio);
  }
  t.weighted_sum = detail::dyadic_partial(slices, 2, N);
  t.bound_holds = t.weighted_sum <= 2;
  return t;
}

// Family file: one set per line, comma-separated positive integers, '#'
// starts a comment, blank lines are ignored. Ground of each set = its max.
inline std::vector<SubsetMask> read_family(std::istream& in) {
  std::vector<SubsetMask> family;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::size_t> elems;
    std::string token;
    bool any = false;
    auto flush = [&]() {
      auto b = token.find_first_not_of(" \t\r");
      auto e = token.find_last_not_of(" \t\r");
      std::string t = b == std::string::npos ? "" : token.substr(b, e - b + 1);
      token.clear();
      if (t.empty()) {
        if (any) throw input_error("family file line " + std::to_string(lineno) + ": empty element");
        return;
      }
      if (t.find_first_not_of("0123456789") != std::string::npos || t == "0")
        throw input_error("family file line " + std::to_string(lineno) + ": bad element '" + t + "'");
      elems.push_back(std::stoul(t));
    };
    for (char c : line) {
      if (c == ',') {
        any = true;
        flush();
      } else {
        token += c;
      }
    }
    flush();
    if (elems.empty()) continue;
    std::size_t ground = *std::max_element(elems.begin(), elems.end());
    family.push_back(SubsetMask::from_elements(ground, elems));
  }
  return family;
}

inline void write_family(std::ostream& out, std::span<const SubsetMask> family) {
  for (const auto& a : family) out << a.to_csv() << '\n';
}

// Codebook file: one {0,1} word per line; '#' comments and blank lines skipped.
inline std::vector<CodeWord> read_codebook(std::istream& in) {
  std::vector<CodeWord> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    words.emplace_back(line.substr(b, e - b + 1));
  }
  return words;
}

inline void write_codebook(std::ostream& out, std::span<const CodeWord> words) {
  for (const auto& w : words) out << w.bits() << '\n';
}

}  // namespace antichain::kraft

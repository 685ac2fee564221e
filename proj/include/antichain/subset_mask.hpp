#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "antichain/errors.hpp"

namespace antichain {

// A finite subset of [ground] = {1, ..., ground}, stored as a bitset where
// element i lives in bit i-1.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t ground) : ground_(ground), words_((ground + 63) / 64, 0) {}

  static SubsetMask from_elements(std::size_t ground, std::span<const std::size_t> elements) {
    SubsetMask s(ground);
    for (std::size_t e : elements) s.insert(e);
    return s;
  }
  static SubsetMask from_elements(std::size_t ground, std::initializer_list<std::size_t> elements) {
    return from_elements(ground, std::span<const std::size_t>(elements.begin(), elements.size()));
  }

  // Low `ground` bits of `bits`; requires ground <= 64.
  static SubsetMask from_bits(std::size_t ground, std::uint64_t bits) {
    if (ground > 64) throw input_error("from_bits supports ground <= 64");
    if (ground < 64 && (bits >> ground) != 0) throw input_error("bit pattern exceeds ground set");
    SubsetMask s(ground);
    if (!s.words_.empty()) s.words_[0] = bits;
    return s;
  }

  std::size_t ground() const { return ground_; }

  void insert(std::size_t e) {
    if (e == 0 || e > ground_)
      throw input_error("element " + std::to_string(e) + " outside [1, " + std::to_string(ground_) + "]");
    words_[(e - 1) / 64] |= std::uint64_t{1} << ((e - 1) % 64);
  }

  bool contains(std::size_t e) const {
    if (e == 0 || e > ground_) return false;
    return (words_[(e - 1) / 64] >> ((e - 1) % 64)) & 1u;
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const { return size() == 0; }

  // Largest element, 0 for the empty set.
  std::size_t max_element() const {
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i]) return i * 64 + (64 - std::countl_zero(words_[i]));
    return 0;
  }

  // |A ∩ [m]|
  std::size_t count_upto(std::size_t m) const {
    m = std::min(m, ground_);
    std::size_t full = m / 64, c = 0;
    for (std::size_t i = 0; i < full; ++i) c += std::popcount(words_[i]);
    if (m % 64) c += std::popcount(words_[full] & ((std::uint64_t{1} << (m % 64)) - 1));
    return c;
  }

  // Set inclusion on elements; independent of the declared ground sets.
  bool is_subset_of(const SubsetMask& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
      if (words_[i] & ~theirs) return false;
    }
    return true;
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        out.push_back(i * 64 + std::countr_zero(w) + 1);
        w &= w - 1;
      }
    }
    return out;
  }

  // Same elements, ground enlarged (or shrunk down to max_element()).
  SubsetMask with_ground(std::size_t ground) const {
    auto el = elements();
    return from_elements(ground, el);
  }

  // "1,3,4" (empty string for the empty set).
  std::string to_csv() const {
    std::string out;
    for (std::size_t e : elements()) {
      if (!out.empty()) out += ',';
      out += std::to_string(e);
    }
    return out;
  }
  std::string to_string() const { return "{" + to_csv() + "}"; }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.is_subset_of(b) && b.is_subset_of(a);
  }

 private:
  std::size_t ground_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace antichain

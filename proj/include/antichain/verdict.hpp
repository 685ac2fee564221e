#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "antichain/errors.hpp"

namespace antichain {

// Outcome of one numeric check: {check, params, lhs_log2, rhs_log2, pass}.
// Non-finite log2 values serialize as null.
struct Verdict {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  double lhs_log2 = 0.0;
  double rhs_log2 = 0.0;
  bool pass = false;

  nlohmann::json to_json() const {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"check", check}, {"params", params}, {"lhs_log2", num(lhs_log2)}, {"rhs_log2", num(rhs_log2)}, {"pass", pass}};
  }
};

inline constexpr double kGuardBand = 1e-9;

// lhs >= rhs for an exact left side against a floating right side. Values
// closer than the relative guard band are neither pass nor fail.
inline bool log2_at_least(double lhs, double rhs, const std::string& what) {
  if (std::isinf(lhs) && lhs < 0) return false;
  if (std::abs(lhs - rhs) <= kGuardBand * std::max(1.0, std::abs(rhs)))
    throw guard_band_error(what + ": comparison inside the 1e-9 guard band");
  return lhs > rhs;
}

}  // namespace antichain

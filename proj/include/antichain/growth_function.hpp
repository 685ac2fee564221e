#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "antichain/interval.hpp"
#include "antichain/numeric.hpp"

namespace antichain {

// Boundary shift f(x) = floor(c * sqrt(x * ln ln(x + 3))) + b, or a lookup
// table f(x) = table[floor(x)]. The default instance is c = 3, b = 100.
// All logarithms are natural.
class GrowthFunction {
 public:
  enum class Mode { paper, zero, custom };

  static GrowthFunction paper_default() { return GrowthFunction(Mode::paper, ExactRational(3), 100, {}); }
  static GrowthFunction zero() { return GrowthFunction(Mode::zero, ExactRational(0), 0, {}); }

  static GrowthFunction formula(ExactRational c, long b) {
    c.canonicalize();
    if (sgn(c) < 0) throw input_error("growth coefficient must be nonnegative");
    if (b < 0) throw input_error("growth offset must be nonnegative");
    return GrowthFunction(Mode::custom, std::move(c), b, {});
  }

  static GrowthFunction table(std::vector<long> values) {
    if (values.empty()) throw input_error("custom growth table is empty");
    for (long v : values)
      if (v < 0) throw input_error("custom growth table values must be nonnegative");
    return GrowthFunction(Mode::custom, ExactRational(0), 0, std::move(values));
  }

  Mode mode() const { return mode_; }
  bool is_table() const { return !table_.empty(); }
  const ExactRational& coefficient() const { return c_; }
  long offset() const { return b_; }
  const std::vector<long>& table_values() const { return table_; }

  long operator()(const ExactRational& x) const {
    if (sgn(x) < 0) throw input_error("growth function evaluated at negative x");
    if (is_table()) {
      BigCount idx = floor_of(x);
      if (idx >= static_cast<long>(table_.size()))
        throw input_error("custom growth table has no entry for x = " + x.get_str());
      return table_[idx.get_ui()];
    }
    if (sgn(c_) == 0 || sgn(x) == 0) return b_;
    Interval value = Interval(c_) * sqrt_x_loglog(x);
    return to_long(value.floor()) + b_;
  }
  long operator()(long x) const { return (*this)(ExactRational(x)); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    switch (mode_) {
      case Mode::paper: j["mode"] = "paper"; break;
      case Mode::zero: j["mode"] = "zero"; break;
      case Mode::custom:
        j["mode"] = "custom";
        if (is_table()) {
          j["table"] = table_;
        } else {
          j["c"] = c_.get_str();
          j["b"] = b_;
        }
        break;
    }
    return j;
  }

  // {"mode": "paper"|"zero"|"custom", "c": "num/den", "b": int, "table": [ints]}
  static GrowthFunction from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("growth function JSON must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "mode" && it.key() != "c" && it.key() != "b" && it.key() != "table")
        throw input_error("unknown growth function key '" + it.key() + "'");
    if (!j.contains("mode") || !j["mode"].is_string()) throw input_error("growth function needs a string 'mode'");
    std::string mode = j["mode"].get<std::string>();
    bool has_formula = j.contains("c") || j.contains("b");
    if (mode == "paper" || mode == "zero") {
      if (has_formula || j.contains("table")) throw input_error("mode '" + mode + "' takes no parameters");
      return mode == "paper" ? paper_default() : zero();
    }
    if (mode != "custom") throw input_error("unknown growth function mode '" + mode + "'");
    if (j.contains("table")) {
      if (has_formula) throw input_error("custom growth function: give either 'table' or 'c'/'b', not both");
      if (!j["table"].is_array()) throw input_error("'table' must be an array of integers");
      std::vector<long> values;
      for (const auto& v : j["table"]) {
        if (!v.is_number_integer()) throw input_error("'table' must be an array of integers");
        values.push_back(v.get<long>());
      }
      return table(std::move(values));
    }
    if (!j.contains("c") || !j.contains("b")) throw input_error("custom growth function needs 'c' and 'b' (or 'table')");
    ExactRational c;
    if (j["c"].is_string()) {
      c = parse_rational(j["c"].get<std::string>());
    } else if (j["c"].is_number_integer()) {
      c = ExactRational(j["c"].get<long>());
    } else {
      throw input_error("'c' must be a \"num/den\" string or an integer");
    }
    if (!j["b"].is_number_integer()) throw input_error("'b' must be an integer");
    return formula(c, j["b"].get<long>());
  }

  // Accepts "paper", "zero", inline JSON, or a path to a JSON file.
  static GrowthFunction parse(std::string_view text) {
    if (text == "paper") return paper_default();
    if (text == "zero") return zero();
    std::string body(text);
    if (body.empty() || body.front() != '{') {
      std::ifstream in(body);
      if (!in) throw input_error("growth function is neither JSON nor a readable file: '" + body + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      body = ss.str();
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw input_error(std::string("malformed growth function JSON: ") + e.what());
    }
    return from_json(j);
  }

  std::string label() const { return to_json().dump(); }

  friend bool operator==(const GrowthFunction& a, const GrowthFunction& b) {
    return a.mode_ == b.mode_ && a.c_ == b.c_ && a.b_ == b.b_ && a.table_ == b.table_;
  }

 private:
  GrowthFunction(Mode mode, ExactRational c, long b, std::vector<long> table)
      : mode_(mode), c_(std::move(c)), b_(b), table_(std::move(table)) {}

  Mode mode_;
  ExactRational c_;
  long b_;
  std::vector<long> table_;
};

inline long eval_f(const GrowthFunction& gf, const ExactRational& x) { return gf(x); }
inline long eval_f(const GrowthFunction& gf, long x) { return gf(x); }
inline long eval_f(const GrowthFunction& gf, double x) {
  if (!(x >= 0.0)) throw input_error("growth function evaluated at negative or NaN x");
  return gf(ExactRational(x));
}

// f(lo) <= f(lo+1) <= ... <= f(hi).
inline bool is_monotone_on(const GrowthFunction& gf, long lo, long hi) {
  if (gf.mode() == GrowthFunction::Mode::zero) return true;
  long prev = gf(lo);
  for (long x = lo + 1; x <= hi; ++x) {
    long cur = gf(x);
    if (cur < prev) return false;
    prev = cur;
  }
  return true;
}

// Memoized f(m) at integers and the curve y = 2 f(x/2) at even x.
class BoundaryCurve {
 public:
  explicit BoundaryCurve(GrowthFunction gf) : gf_(std::move(gf)) {}

  const GrowthFunction& growth() const { return gf_; }

  long f(long m) {
    if (m < 0) throw input_error("boundary queried at negative abscissa");
    if (static_cast<std::size_t>(m) >= cache_.size()) cache_.resize(m + 1, kUnset);
    long& slot = cache_[m];
    if (slot == kUnset) slot = gf_(m);
    return slot;
  }

  // Exclusive height limit at even x: paths must satisfy y < 2 f(x/2).
  long at_even(long x) { return 2 * f(x / 2); }

 private:
  static constexpr long kUnset = -1;
  GrowthFunction gf_;
  std::vector<long> cache_;
};

}  // namespace antichain

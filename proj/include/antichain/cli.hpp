#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "antichain/cycle_lemma.hpp"
#include "antichain/errors.hpp"
#include "antichain/family_builder.hpp"
#include "antichain/growth_function.hpp"
#include "antichain/lattice_path.hpp"
#include "antichain/path_counter.hpp"
#include "antichain/prefix_kraft.hpp"
#include "antichain/subset_mask.hpp"
#include "antichain/verdict.hpp"
#include "antichain/walk_bounds.hpp"

namespace antichain::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kResourceGuard = 3 };

// "7", "1..12", "3,5,9..11". A descending range is empty.
inline std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string part;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      throw input_error("malformed range '" + text + "'");
    }
    if (used != s.size()) throw input_error("malformed range '" + text + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw input_error("malformed range '" + text + "'");
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
      continue;
    }
    long a = number(part.substr(0, dots)), b = number(part.substr(dots + 2));
    for (long v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

// Runs fn over items on a small thread pool; results keep the input order.
template <class T, class Fn>
auto ordered_map(const std::vector<T>& items, Fn fn) -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, items.size()); ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct RunConfig {
  std::string gf = "paper";
  std::string backend = "exact";
  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string out;

  GrowthFunction growth() const { return GrowthFunction::parse(gf); }
  bool log_backend() const { return backend == "logfloat"; }
  bool json() const { return format == "json"; }
};

inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------

struct CountOptions {
  std::string n;
  std::string table = "none";
};

inline void cmd_count(const RunConfig& cfg, const CountOptions& o, std::ostream& out) {
  const auto gf = cfg.growth();
  const auto ns = parse_range(o.n);
  for (long n : ns)
    if (n < 1) throw input_error("count needs n >= 1");
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;

  if (o.table == "none") {
    auto counts = ordered_map(ns, [&](long n) -> std::string {
      if (cfg.log_backend()) return fmt_double(paths::count_Gn<Log2Backend>(n, gf));
      return paths::count_Gn(n, gf).get_str();
    });
    const char* col = cfg.log_backend() ? "log2_count" : "count";
    if (!ns.empty()) csv << "n," << col << "\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      csv << ns[i] << "," << counts[i] << "\n";
      rows.push_back({{"n", ns[i]}, {col, counts[i]}});
    }
  } else if (o.table == "P" || o.table == "Q") {
    const bool p = o.table == "P";
    auto tables = ordered_map(ns, [&](long n) {
      std::vector<std::pair<long, std::string>> t;
      if (cfg.log_backend()) {
        auto c = p ? paths::count_Pk<Log2Backend>(n, gf) : paths::count_Qk<Log2Backend>(n, gf);
        for (const auto& [k, v] : c.entries) t.emplace_back(k, fmt_double(v));
      } else {
        auto c = p ? paths::count_Pk(n, gf) : paths::count_Qk(n, gf);
        for (const auto& [k, v] : c.entries) t.emplace_back(k, v.get_str());
      }
      return t;
    });
    const char* col = cfg.log_backend() ? "log2_count" : "count";
    bool header = false;
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (const auto& [k, v] : tables[i]) {
        if (!header) csv << "n,k," << col << "\n";
        header = true;
        csv << ns[i] << "," << k << "," << v << "\n";
        rows.push_back({{"n", ns[i]}, {"k", k}, {col, v}});
      }
  } else {
    throw input_error("--table must be none, P or Q");
  }
  if (cfg.json()) out << rows.dump(2) << "\n";
  else out << csv.str();
}

// ---------------------------------------------------------------------------

inline void cmd_profile(const RunConfig& cfg, long N, std::ostream& out) {
  if (N < 0) throw input_error("--N must be >= 0");
  const auto gf = cfg.growth();
  auto slices = paths::cumulative_counts(N, gf);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  const char* col = cfg.log_backend() ? "slice_log2" : "slice_count";
  if (N >= 1) csv << "n," << col << ",kraft_partial,ratio_logn,ratio_log46\n";
  ExactRational kraft = 0;
  for (long n = 1; n <= N; ++n) {
    kraft += ExactRational(slices[n], pow2(n));
    kraft.canonicalize();
    double ratio_logn = 0.0, ratio_log46 = 0.0;
    if (n >= 2 && sgn(slices[n]) > 0) {
      const double dn = static_cast<double>(n), l2 = log2_of(slices[n]) - dn + std::log2(dn);
      ratio_logn = std::exp2(l2 + std::log2(std::log(dn)));
      ratio_log46 = std::exp2(l2 + 46.0 * std::log2(std::log(dn)));
    }
    const std::string count = cfg.log_backend() ? fmt_double(log2_of(slices[n])) : slices[n].get_str();
    csv << n << "," << count << "," << kraft.get_str() << "," << fmt_double(ratio_logn) << ","
        << fmt_double(ratio_log46) << "\n";
    rows.push_back({{"n", n},
                    {col, count},
                    {"kraft_partial", kraft.get_str()},
                    {"ratio_logn", ratio_logn},
                    {"ratio_log46", ratio_log46}});
  }
  if (cfg.json()) out << rows.dump(2) << "\n";
  else out << csv.str();
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::vector<std::string> suites;
  std::string n;
  std::string C = "3";
  long offset = 100;
  long N = 20000;
  long k = 1000000;
  long d = 0;
};

inline Verdict equality_verdict(std::string name, nlohmann::json params, const BigCount& a, const BigCount& b) {
  Verdict v;
  v.check = std::move(name);
  v.params = std::move(params);
  v.lhs_log2 = log2_of(a);
  v.rhs_log2 = log2_of(b);
  v.pass = a == b;
  if (!v.pass) {
    v.params["lhs"] = a.get_str();
    v.params["rhs"] = b.get_str();
  }
  return v;
}

inline Verdict run_check(const std::string& suite, long n, const GrowthFunction& gf, const VerifyOptions& o) {
  const auto gj = gf.to_json();
  if (suite == "convolution") {
    auto c = paths::convolution(n, gf);
    return equality_verdict("convolution", {{"n", n}, {"gf", gj}}, c.direct, c.convolved);
  }
  if (suite == "catalan") {
    auto dp = paths::count_Gn(n, GrowthFunction::zero());
    auto v = equality_verdict("catalan", {{"n", n}}, dp, family::warmup_closed_form(n));
    if (v.pass && 2 * n <= family::kMaxBruteForceGround) {
      BigCount brute = static_cast<unsigned long>(family::enumerate_warmup(n).size());
      v = equality_verdict("catalan", {{"n", n}, {"brute_force", true}}, brute, dp);
    }
    return v;
  }
  if (suite == "oracle") {
    BigCount brute = static_cast<unsigned long>(family::enumerate_Fn(family::FamilySpec(gf, n)).size());
    return equality_verdict("oracle", {{"n", n}, {"gf", gj}}, brute, paths::count_Gn(n, gf));
  }
  if (suite == "union-antichain") {
    auto u = family::verify_union_antichain(gf, n);
    Verdict v;
    v.check = "union-antichain";
    v.params = {{"M", n}, {"gf", gj}, {"members", u.members}};
    if (u.violation) v.params["violation"] = {u.violation->first.to_string(), u.violation->second.to_string()};
    v.lhs_log2 = v.rhs_log2 = std::nan("");
    v.pass = u.ok();
    return v;
  }
  if (suite == "claim-pk") return walk::claim_Pk_check(n, gf);
  if (suite == "claim-qk") return walk::claim_Qk_check(n, gf);
  if (suite == "qk-binomial-chain") return walk::qk_binomial_chain_check(n, gf);
  if (suite == "theorem2") return walk::theorem2_check(n, gf);
  if (suite == "head-count") return walk::head_count_check(n, gf);
  if (suite == "chernoff") return walk::chernoff_check(n, parse_rational(o.C));
  if (suite == "binomial-estimate") return walk::binomial_estimate_check(n, o.d);
  if (suite == "sandwich") {
    auto s = walk::sandwich_check(n, gf);
    Verdict v;
    v.check = "sandwich";
    v.params = {{"n", n}, {"gf", gj}, {"two_f_half", s.two_f_half}, {"A", s.A}, {"lemma_boundary", s.lemma_boundary}};
    v.lhs_log2 = std::log2(static_cast<double>(s.two_f_half));
    v.rhs_log2 = std::log2(s.lemma_boundary);
    v.pass = s.holds;
    return v;
  }
  throw input_error("unknown suite '" + suite + "'");
}

inline Verdict run_global_check(const std::string& suite, const VerifyOptions& o) {
  Verdict v;
  if (suite.rfind("cycle-exhaustive-", 0) == 0) {
    long len = 0;
    try {
      len = std::stol(suite.substr(17));
    } catch (const std::exception&) {
      throw input_error("malformed suite '" + suite + "'");
    }
    if (len < 1) throw input_error("malformed suite '" + suite + "'");
    auto r = cycle::exhaustive_suite(len, len);
    v.check = suite;
    v.params = {{"max_length", len}, {"max_den", len}, {"cases", r.cases}, {"compositions", r.compositions},
                {"failures", r.failures}};
    if (r.first_failure) v.params["first_failure"] = *r.first_failure;
    v.lhs_log2 = v.rhs_log2 = std::nan("");
    v.pass = r.ok();
    return v;
  }
  if (suite == "dyadic") {
    auto d = walk::dyadic_sum(parse_rational(o.C), o.k);
    v.check = "dyadic";
    v.params = {{"C", o.C}, {"k", o.k}, {"partial", d.partial}, {"tail", d.tail}};
    v.lhs_log2 = -1.0;
    v.rhs_log2 = std::log2(d.total);
    v.pass = log2_at_least(v.lhs_log2, v.rhs_log2, "dyadic");
    return v;
  }
  if (suite == "crossing") {
    v.check = "crossing";
    v.params = {{"N", o.N}, {"C", o.C}, {"offset", o.offset}};
    double p = 0.0;
    if (o.N <= 20000) {
      auto r = walk::crossing_probability_exact(o.N, parse_rational(o.C), o.offset);
      v.params["probability"] = r.probability.get_str().size() <= 64 ? r.probability.get_str() : fmt_double(r.value);
      v.params["mode"] = "exact";
      p = r.value;
      v.pass = r.probability <= ExactRational(1, 2);
    } else {
      p = walk::crossing_probability_upper(o.N, parse_rational(o.C), o.offset);
      v.params["mode"] = "float-upper";
      v.pass = p <= 0.5;
    }
    v.lhs_log2 = -1.0;
    v.rhs_log2 = std::log2(p);
    return v;
  }
  throw input_error("unknown suite '" + suite + "'");
}

inline bool is_global_suite(const std::string& s) {
  return s.rfind("cycle-exhaustive-", 0) == 0 || s == "dyadic" || s == "crossing";
}

inline bool cmd_verify(const RunConfig& cfg, const VerifyOptions& o, std::ostream& out) {
  if (o.suites.empty()) throw input_error("verify needs at least one --suite");
  const auto gf = cfg.growth();
  const auto ns = o.n.empty() ? std::vector<long>{} : parse_range(o.n);
  struct Task {
    std::string suite;
    long n;
  };
  std::vector<Task> tasks;
  for (const auto& s : o.suites) {
    if (is_global_suite(s)) {
      tasks.push_back({s, 0});
      continue;
    }
    if (o.n.empty()) throw input_error("suite '" + s + "' needs --n");
    for (long n : ns) tasks.push_back({s, n});
  }
  // reject unknown names before spending time
  static const std::vector<std::string> known = {"convolution", "catalan",  "oracle",     "union-antichain",
                                                 "claim-pk",    "claim-qk", "theorem2",   "qk-binomial-chain",
                                                 "head-count",  "chernoff", "sandwich",   "binomial-estimate"};
  for (const auto& t : tasks)
    if (!is_global_suite(t.suite) && std::find(known.begin(), known.end(), t.suite) == known.end())
      throw input_error("unknown suite '" + t.suite + "'");

  auto verdicts = ordered_map(tasks, [&](const Task& t) {
    try {
      return is_global_suite(t.suite) ? run_global_check(t.suite, o) : run_check(t.suite, t.n, gf, o);
    } catch (const guard_band_error& e) {
      Verdict v;
      v.check = t.suite;
      v.params = {{"n", t.n}, {"error", e.what()}};
      v.lhs_log2 = v.rhs_log2 = std::nan("");
      v.pass = false;
      return v;
    }
  });
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : verdicts) {
    all = all && v.pass;
    arr.push_back(v.to_json());
  }
  // verdicts are JSON in either format
  for (const auto& j : arr) out << j.dump() << "\n";
  return all;
}

// ---------------------------------------------------------------------------

inline void cmd_heads(const RunConfig& cfg, const std::string& seq, const std::string& mu_text, std::ostream& out) {
  const auto x = cycle::CircularSequence::parse(seq);
  const auto mu = parse_rational(mu_text);
  const auto h = cycle::heads(x, mu);
  const bool hyp = cycle::lemma_hypotheses_hold(x.p(), x.q(), mu);
  std::vector<std::size_t> gamma;
  if (hyp) gamma = cycle::gamma_heads(x, mu);
  if (cfg.json()) {
    nlohmann::json j = {{"sequence", x.to_string()}, {"mu", mu.get_str()}, {"p", x.p()},
                        {"q", x.q()},                {"hypotheses", hyp},    {"bound", h.bound},
                        {"heads", h.positions}};
    if (hyp) j["gamma_heads"] = gamma;
    out << j.dump() << "\n";
    return;
  }
  out << "position,head,gamma_head\n";
  for (std::size_t r = 1; r <= x.size(); ++r) {
    bool head = std::binary_search(h.positions.begin(), h.positions.end(), r);
    bool g = std::find(gamma.begin(), gamma.end(), r) != gamma.end();
    out << r << "," << (head ? 1 : 0) << "," << (g ? 1 : 0) << "\n";
  }
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
  long N = 100;
  std::string C = "0";
  long offset = 2;
  long trials = 1000000;
  bool exact = false;
};

inline void cmd_simulate(const RunConfig& cfg, const SimulateOptions& o, std::ostream& out) {
  const auto C = parse_rational(o.C);
  auto e = walk::crossing_probability_mc(o.N, C, o.offset, o.trials, cfg.seed);
  std::optional<walk::CrossingProbability> ex;
  if (o.exact) ex = walk::crossing_probability_exact(o.N, C, o.offset);
  if (cfg.json()) {
    nlohmann::json j = {{"N", o.N},
                        {"C", C.get_str()},
                        {"offset", o.offset},
                        {"trials", o.trials},
                        {"seed", cfg.seed},
                        {"crossings", e.crossings},
                        {"estimate", e.estimate},
                        {"standard_error", e.standard_error},
                        {"radius", e.radius}};
    if (ex) j["exact"] = ex->value;
    out << j.dump() << "\n";
    return;
  }
  out << "N,C,offset,trials,seed,crossings,estimate,standard_error,radius" << (ex ? ",exact" : "") << "\n";
  out << o.N << "," << C.get_str() << "," << o.offset << "," << o.trials << "," << cfg.seed << "," << e.crossings << ","
      << fmt_double(e.estimate) << "," << fmt_double(e.standard_error) << "," << fmt_double(e.radius);
  if (ex) out << "," << fmt_double(ex->value);
  out << "\n";
}

// ---------------------------------------------------------------------------
// Path 'o', boundary y = 2f(x/2) at even x in (0, 2n) '#', both '*'.

inline std::string render_path(const LatticePath& path, long n, const GrowthFunction& gf) {
  if (static_cast<long>(path.length()) != 2 * n)
    throw input_error("render: path length " + std::to_string(path.length()) + " is not 2n = " + std::to_string(2 * n));
  const auto h = path.heights();
  BoundaryCurve curve(gf);
  std::map<long, long> boundary;
  for (long x = 2; x < 2 * n; x += 2) boundary[x] = curve.at_even(x);
  long top = *std::max_element(h.begin(), h.end()), bottom = *std::min_element(h.begin(), h.end());
  for (const auto& [x, y] : boundary) {
    top = std::max(top, y);
    bottom = std::min(bottom, y);
  }
  std::ostringstream os;
  for (long y = top; y >= bottom; --y) {
    char label[32];
    std::snprintf(label, sizeof label, "%5ld |", y);
    std::string row(static_cast<std::size_t>(2 * n + 1), ' ');
    for (long x = 0; x <= 2 * n; ++x) {
      const bool on_path = h[x] == y;
      auto b = boundary.find(x);
      const bool on_bound = b != boundary.end() && b->second == y;
      if (on_path && on_bound) row[x] = '*';
      else if (on_path) row[x] = 'o';
      else if (on_bound) row[x] = '#';
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    os << label << row << "\n";
  }
  os << "      +" << std::string(static_cast<std::size_t>(2 * n + 1), '-') << "\n";
  os << "member: " << (is_in_Gn(path, n, curve) ? "yes" : "no") << "\n";
  return os.str();
}

inline void cmd_render(const RunConfig& cfg, const std::string& set_text, const std::string& path_text, long n,
                       std::ostream& out) {
  if (n < 1) throw input_error("render needs --n >= 1");
  if (set_text.empty() == path_text.empty()) throw input_error("render needs exactly one of --set, --path");
  const auto gf = cfg.growth();
  std::optional<LatticePath> path;
  if (!path_text.empty()) {
    path = LatticePath::parse(path_text);
  } else {
    SubsetMask a(static_cast<std::size_t>(2 * n));
    std::stringstream ss(set_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      long e = 0;
      try {
        std::size_t used = 0;
        e = std::stol(tok, &used);
        if (used != tok.size()) throw input_error("");
      } catch (const std::exception&) {
        throw input_error("malformed set '" + set_text + "'");
      }
      if (e < 1 || e > 2 * n) throw input_error("render: element " + tok + " is outside [" + std::to_string(2 * n) + "]");
      a.insert(static_cast<std::size_t>(e));
    }
    path = set_to_path(a, n);
  }
  out << render_path(*path, n, gf);
}

// ---------------------------------------------------------------------------

inline void apply_config_file(const std::string& file, RunConfig& cfg, const CLI::App& app,
                              std::map<std::string, nlohmann::json>& extra) {
  std::ifstream in(file);
  if (!in) throw input_error("cannot open config '" + file + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw input_error("config must be a JSON object");
  static const std::vector<std::string> keys = {"gf", "backend", "seed", "format", "out", "n", "N", "trials"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw input_error("unknown config key '" + k + "'");
  }
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  try {
    if (j.contains("gf") && unset("--gf")) cfg.gf = j["gf"].is_string() ? j["gf"].get<std::string>() : j["gf"].dump();
    if (j.contains("backend") && unset("--backend")) cfg.backend = j["backend"].get<std::string>();
    if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format") && unset("--format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("config value has the wrong type: ") + e.what());
  }
  for (const char* k : {"n", "N", "trials"})
    if (j.contains(k)) extra[k] = j[k];
}

inline void validate(const RunConfig& cfg) {
  if (cfg.backend != "exact" && cfg.backend != "logfloat") throw input_error("--backend must be exact or logfloat");
  if (cfg.format != "csv" && cfg.format != "json") throw input_error("--format must be csv or json");
  (void)cfg.growth();
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Antichain construction: exact counts and numeric checks", "antichain"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_file;
  app.add_option("--gf", cfg.gf, "growth function: paper, zero, inline JSON or a JSON file")->capture_default_str();
  app.add_option("--backend", cfg.backend, "exact or logfloat")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");
  app.add_option("--config", config_file, "JSON run configuration");
  app.fallthrough();

  CountOptions count_opts;
  auto* count = app.add_subcommand("count", "|F_n| via the lattice-path DP");
  count->add_option("--n", count_opts.n, "n, a..b or a comma list")->required();
  count->add_option("--table", count_opts.table, "none, P or Q: per-k tables")->capture_default_str();

  long profile_N = -1;
  auto* profile = app.add_subcommand("profile", "density records for n = 1..N");
  profile->add_option("--N", profile_N, "largest ground size");

  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "run named check suites, one JSON verdict per line");
  verify->add_option("--suite", vopts.suites, "suite name (repeatable)")->required();
  verify->add_option("--n", vopts.n, "n values for per-n suites");
  verify->add_option("--C", vopts.C, "boundary constant for chernoff/dyadic/crossing")->capture_default_str();
  verify->add_option("--offset", vopts.offset, "boundary offset for crossing")->capture_default_str();
  verify->add_option("--N", vopts.N, "horizon for crossing")->capture_default_str();
  verify->add_option("--k", vopts.k, "partial-sum length for dyadic")->capture_default_str();
  verify->add_option("--d", vopts.d, "offset d for binomial-estimate")->capture_default_str();

  std::string seq, mu;
  auto* heads = app.add_subcommand("heads", "heads and gamma heads of a circular ±1 sequence");
  heads->add_option("--seq", seq, "sequence over {+,-}")->required();
  heads->add_option("--mu", mu, "slope as num/den")->required();

  SimulateOptions sopts;
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo boundary-crossing estimate");
  simulate->add_option("--N", sopts.N, "horizon")->capture_default_str();
  simulate->add_option("--C", sopts.C, "boundary constant")->capture_default_str();
  simulate->add_option("--offset", sopts.offset, "boundary offset")->capture_default_str();
  simulate->add_option("--trials", sopts.trials, "number of walks")->capture_default_str();
  simulate->add_flag("--exact", sopts.exact, "also report the exact probability");

  std::string set_text, path_text;
  long render_n = 0;
  auto* render = app.add_subcommand("render", "ASCII picture of a path against its boundary");
  render->add_option("--set", set_text, "subset of [2n], comma separated");
  render->add_option("--path", path_text, "path over {+,-}");
  render->add_option("--n", render_n, "family index")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  std::ostringstream buffer;
  try {
    std::map<std::string, nlohmann::json> extra;
    if (!config_file.empty()) apply_config_file(config_file, cfg, app, extra);
    validate(cfg);
    auto take_long = [&](const char* key, const CLI::App* sub, const char* flag, long& dst) {
      if (extra.count(key) && sub->get_option(flag)->count() == 0) {
        if (!extra[key].is_number_integer()) throw input_error(std::string("config key '") + key + "' must be an integer");
        dst = extra[key].get<long>();
      }
    };
    auto take_range = [&](const char* key, const CLI::App* sub, std::string& dst) {
      if (extra.count(key) && sub->get_option("--n")->count() == 0) {
        const auto& v = extra[key];
        dst = v.is_string() ? v.get<std::string>() : v.dump();
      }
    };

    int code = kOk;
    if (count->parsed()) {
      cmd_count(cfg, count_opts, buffer);
    } else if (profile->parsed()) {
      take_long("N", profile, "--N", profile_N);
      if (profile_N < 0) throw input_error("profile needs --N");
      cmd_profile(cfg, profile_N, buffer);
    } else if (verify->parsed()) {
      take_range("n", verify, vopts.n);
      take_long("N", verify, "--N", vopts.N);
      if (!cmd_verify(cfg, vopts, buffer)) code = kCheckFailed;
    } else if (heads->parsed()) {
      cmd_heads(cfg, seq, mu, buffer);
    } else if (simulate->parsed()) {
      take_long("N", simulate, "--N", sopts.N);
      take_long("trials", simulate, "--trials", sopts.trials);
      cmd_simulate(cfg, sopts, buffer);
    } else if (render->parsed()) {
      cmd_render(cfg, set_text, path_text, render_n, buffer);
    }

    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw input_error("cannot write '" + cfg.out + "'");
      f << buffer.str();
    }
    return code;
  } catch (const resource_guard_error& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const floor_ambiguity_error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const guard_band_error& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace antichain::cli

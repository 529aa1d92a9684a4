// Batch verification engine: sweeps parameter grids over (q, k, n, rho),
// runs the inequality and identity suites pointwise, and emits
// machine-readable reports (JSON / CSV) with a deterministic record order
// that does not depend on the worker count.
//
// Outcomes are three-valued: pass, fail, and inadmissible. A grid point that
// violates a precondition (rho outside its window) is recorded as
// inadmissible rather than silently skipped or counted as a failure.

#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "opn/arith.hpp"
#include "opn/bounds.hpp"
#include "opn/ratfunc.hpp"

namespace opn::harness {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Records and reports
// ---------------------------------------------------------------------------

enum class Outcome { pass, fail, inadmissible };

inline std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::inadmissible: return "inadmissible";
  }
  throw std::invalid_argument("outcome_name");
}

inline Outcome outcome_from_name(const std::string& s) {
  if (s == "pass") return Outcome::pass;
  if (s == "fail") return Outcome::fail;
  if (s == "inadmissible") return Outcome::inadmissible;
  throw std::invalid_argument("unknown outcome: " + s);
}

// Coordinates a record applies to; only the dimensions the suite actually
// uses are set.
struct GridPoint {
  std::optional<Int> q;
  std::optional<long> k;
  std::optional<Int> n;
  std::optional<Ratio> rho;

  friend bool operator==(const GridPoint& a, const GridPoint& b) {
    return a.q == b.q && a.k == b.k && a.n == b.n && a.rho == b.rho;
  }
};

struct CheckRecord {
  GridPoint point;
  std::string suite;
  std::string check;
  Outcome outcome = Outcome::fail;
  std::string lhs, rhs;  // exact fraction strings, "" when not applicable

  friend bool operator==(const CheckRecord& a, const CheckRecord& b) {
    return a.point == b.point && a.suite == b.suite && a.check == b.check &&
           a.outcome == b.outcome && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct Summary {
  std::size_t total = 0, passed = 0, failed = 0, inadmissible = 0;
};

struct ScanReport {
  std::vector<CheckRecord> records;

  Summary summary() const {
    Summary s;
    s.total = records.size();
    for (const auto& r : records) {
      switch (r.outcome) {
        case Outcome::pass: ++s.passed; break;
        case Outcome::fail: ++s.failed; break;
        case Outcome::inadmissible: ++s.inadmissible; break;
      }
    }
    return s;
  }

  std::string to_json() const {
    json arr = json::array();
    for (const auto& r : records) {
      json point = json::object();
      if (r.point.q) point["q"] = r.point.q->get_str();
      if (r.point.k) point["k"] = *r.point.k;
      if (r.point.n) point["n"] = r.point.n->get_str();
      if (r.point.rho) point["rho"] = fraction_string(*r.point.rho);
      json rec = json::object();
      rec["point"] = std::move(point);
      rec["suite"] = r.suite;
      rec["check"] = r.check;
      rec["outcome"] = std::string(outcome_name(r.outcome));
      rec["lhs"] = r.lhs;
      rec["rhs"] = r.rhs;
      arr.push_back(std::move(rec));
    }
    Summary s = summary();
    arr.push_back(json{{"summary",
                        {{"total", s.total},
                         {"passed", s.passed},
                         {"failed", s.failed},
                         {"inadmissible", s.inadmissible}}}});
    return arr.dump(2) + "\n";
  }

  std::string to_csv() const {
    std::string out = "point_q,point_k,point_n,point_rho,suite,check,outcome,lhs,rhs\n";
    for (const auto& r : records) {
      out += r.point.q ? r.point.q->get_str() : "";
      out += ',';
      out += r.point.k ? std::to_string(*r.point.k) : "";
      out += ',';
      out += r.point.n ? r.point.n->get_str() : "";
      out += ',';
      out += r.point.rho ? fraction_string(*r.point.rho) : "";
      out += ',';
      out += r.suite + ',' + r.check + ',';
      out += outcome_name(r.outcome);
      out += ',' + r.lhs + ',' + r.rhs + '\n';
    }
    return out;
  }

  static ScanReport from_json(const std::string& text) {
    json arr = json::parse(text);
    if (!arr.is_array() || arr.empty() || !arr.back().contains("summary"))
      throw std::invalid_argument("report: expected array with trailing summary");
    ScanReport rep;
    for (std::size_t i = 0; i + 1 < arr.size(); ++i) {
      const json& rec = arr[i];
      CheckRecord r;
      const json& point = rec.at("point");
      if (point.contains("q")) r.point.q = Int(point["q"].get<std::string>());
      if (point.contains("k")) r.point.k = point["k"].get<long>();
      if (point.contains("n")) r.point.n = Int(point["n"].get<std::string>());
      if (point.contains("rho")) {
        Ratio rho(point["rho"].get<std::string>());
        rho.canonicalize();
        r.point.rho = rho;
      }
      r.suite = rec.at("suite").get<std::string>();
      r.check = rec.at("check").get<std::string>();
      r.outcome = outcome_from_name(rec.at("outcome").get<std::string>());
      r.lhs = rec.at("lhs").get<std::string>();
      r.rhs = rec.at("rhs").get<std::string>();
      rep.records.push_back(std::move(r));
    }
    const json& s = arr.back()["summary"];
    Summary got = rep.summary();
    if (s.at("total").get<std::size_t>() != got.total ||
        s.at("passed").get<std::size_t>() != got.passed ||
        s.at("failed").get<std::size_t>() != got.failed ||
        s.at("inadmissible").get<std::size_t>() != got.inadmissible)
      throw std::invalid_argument("report: summary does not match records");
    return rep;
  }
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScanConfig {
  std::vector<Int> q_set;
  std::vector<long> k_set;
  std::vector<Int> n_set;
  std::vector<Ratio> rho_set;
  std::vector<std::string> suites;
  std::string output_path = "scan_report.json";
  std::string format = "json";

  static const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names = {
        "sandwich",          "failed-sandwich", "improved-lower", "monotonicity",
        "fprime-positivity", "k-bound",         "chain-identities"};
    return names;
  }

  static ScanConfig defaults() {
    ScanConfig c;
    c.q_set = {5, 13, 17, 29, 37, 41, 53};
    c.k_set = {1, 5, 9, 13};
    c.n_set = {3, 9, 15, 21, 3003};
    c.rho_set = {Ratio(1), Ratio(2), Ratio(3375)};
    c.suites = all_suites();
    return c;
  }

  void validate() const {
    if (q_set.empty()) throw ConfigError("config: q_set must be nonempty");
    if (k_set.empty()) throw ConfigError("config: k_set must be nonempty");
    if (n_set.empty()) throw ConfigError("config: n_set must be nonempty");
    if (rho_set.empty()) throw ConfigError("config: rho_set must be nonempty");
    if (suites.empty()) throw ConfigError("config: suites must be nonempty");
    for (const Int& q : q_set) {
      if (!arith::is_prime(q) || q % 4 != 1)
        throw ConfigError("config: q = " + q.get_str() + " is not a prime = 1 (mod 4)");
    }
    for (long k : k_set)
      if (k < 1) throw ConfigError("config: k values must be >= 1");
    for (const Int& n : n_set)
      if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw ConfigError("config: n = " + n.get_str() + " is not an odd positive integer");
    for (const Ratio& rho : rho_set)
      if (rho < 1) throw ConfigError("config: rho values must be >= 1");
    const auto& known = all_suites();
    for (const auto& s : suites)
      if (std::find(known.begin(), known.end(), s) == known.end())
        throw ConfigError("config: unknown suite '" + s + "'");
    if (format != "json" && format != "csv")
      throw ConfigError("config: format must be json or csv");
  }

  static ScanConfig from_json_text(const std::string& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ScanConfig c = defaults();
    auto read_int = [](const json& v) -> Int {
      if (v.is_number_integer()) return Int(v.get<long>());
      if (v.is_string()) return Int(v.get<std::string>());
      throw ConfigError("config: expected integer or string, got " + v.dump());
    };
    auto read_ratio = [](const json& v) -> Ratio {
      if (v.is_number_integer()) return Ratio(v.get<long>());
      if (v.is_string()) {
        Ratio r(v.get<std::string>());
        r.canonicalize();
        return r;
      }
      throw ConfigError("config: expected integer or fraction string, got " + v.dump());
    };
    try {
      if (doc.contains("q_set")) {
        c.q_set.clear();
        for (const auto& v : doc["q_set"]) c.q_set.push_back(read_int(v));
      }
      if (doc.contains("k_set")) {
        c.k_set.clear();
        for (const auto& v : doc["k_set"]) c.k_set.push_back(v.get<long>());
      }
      if (doc.contains("n_set")) {
        c.n_set.clear();
        for (const auto& v : doc["n_set"]) c.n_set.push_back(read_int(v));
      }
      if (doc.contains("rho_set")) {
        c.rho_set.clear();
        for (const auto& v : doc["rho_set"]) c.rho_set.push_back(read_ratio(v));
      }
      if (doc.contains("suites")) {
        c.suites.clear();
        for (const auto& v : doc["suites"]) c.suites.push_back(v.get<std::string>());
      }
      if (doc.contains("output")) {
        const auto& out = doc["output"];
        if (out.contains("path")) c.output_path = out["path"].get<std::string>();
        if (out.contains("format")) c.format = out["format"].get<std::string>();
      }
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
  }
};

// ---------------------------------------------------------------------------
// Suite evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline CheckRecord make(GridPoint point, std::string suite, std::string check, bool held,
                        std::string lhs, std::string rhs) {
  return CheckRecord{std::move(point), std::move(suite), std::move(check),
                     held ? Outcome::pass : Outcome::fail, std::move(lhs), std::move(rhs)};
}

inline std::vector<CheckRecord> sandwich_checks(const Int& q, long k) {
  Ratio L = bounds::L_bound(q), U = bounds::U_bound(q), g = bounds::g_of_k(q, k);
  GridPoint p{q, k, std::nullopt, std::nullopt};
  return {
      make(p, "sandwich", "L<g", L < g, fraction_string(L), fraction_string(g)),
      make(p, "sandwich", "g<=U", g <= U, fraction_string(g), fraction_string(U)),
      make(p, "sandwich", "g==U-iff-k==1", (g == U) == (k == 1), fraction_string(g),
           fraction_string(U)),
  };
}

inline std::vector<CheckRecord> failed_sandwich_containment(const Int& q) {
  Ratio L = bounds::L_bound(q), U = bounds::U_bound(q);
  Ratio weak_low = Ratio(3) - ratio(q - 1, q * q);
  Ratio weak_high = Ratio(3) - ratio(q - 2, (q - 1) * (q + 1));
  GridPoint p{q, std::nullopt, std::nullopt, std::nullopt};
  return {
      make(p, "failed-sandwich", "weak-lower<L", weak_low < L, fraction_string(weak_low),
           fraction_string(L)),
      make(p, "failed-sandwich", "U<weak-upper", U < weak_high, fraction_string(U),
           fraction_string(weak_high)),
  };
}

inline std::vector<CheckRecord> failed_sandwich_checks(const Int& q, long k) {
  Ratio g = bounds::g_of_k(q, k);
  Ratio weak_low = Ratio(3) - ratio(q - 1, q * q);
  Ratio weak_high = Ratio(3) - ratio(q - 2, (q - 1) * (q + 1));
  GridPoint p{q, k, std::nullopt, std::nullopt};
  return {
      make(p, "failed-sandwich", "weak-lower<g", weak_low < g, fraction_string(weak_low),
           fraction_string(g)),
      make(p, "failed-sandwich", "g<weak-upper", g < weak_high, fraction_string(g),
           fraction_string(weak_high)),
  };
}

inline CheckRecord inadmissible_record(const Int& q, const Int& n, const Ratio& rho,
                                       const std::string& suite) {
  GridPoint p{q, std::nullopt, n, rho};
  CheckRecord r;
  r.point = p;
  r.suite = suite;
  r.check = "rho-admissible";
  r.outcome = Outcome::inadmissible;
  r.lhs = fraction_string(rho);
  r.rhs = fraction_string(ratio(2 * n * n, q + 1));  // window is [1, rhs)
  return r;
}

inline std::vector<CheckRecord> improved_lower_checks(const Int& q, const Int& n,
                                                      const std::vector<Ratio>& rho_set) {
  std::vector<CheckRecord> out;
  Ratio L = bounds::L_bound(q), U = bounds::U_bound(q);
  std::vector<Ratio> admissible;
  for (const Ratio& rho : rho_set) {
    if (!bounds::rho_admissible(q, n, rho)) {
      out.push_back(inadmissible_record(q, n, rho, "improved-lower"));
      continue;
    }
    admissible.push_back(rho);
    Ratio l = bounds::l_rho(q, n, rho);
    Ratio factored = bounds::g1_minus_lrho_factored(q, n, rho);
    GridPoint p{q, std::nullopt, n, rho};
    out.push_back(make(p, "improved-lower", "L<l_rho", L < l, fraction_string(L),
                       fraction_string(l)));
    out.push_back(make(p, "improved-lower", "l_rho<U", l < U, fraction_string(l),
                       fraction_string(U)));
    out.push_back(make(p, "improved-lower", "U-l_rho==factored", U - l == factored,
                       fraction_string(U - l), fraction_string(factored)));
  }
  std::sort(admissible.begin(), admissible.end());
  for (std::size_t i = 0; i + 1 < admissible.size(); ++i) {
    Ratio a = bounds::l_rho(q, n, admissible[i]);
    Ratio b = bounds::l_rho(q, n, admissible[i + 1]);
    GridPoint p{q, std::nullopt, n, admissible[i]};
    out.push_back(make(p, "improved-lower", "l_rho-monotone-next", a <= b, fraction_string(a),
                       fraction_string(b)));
  }
  return out;
}

inline std::vector<CheckRecord> monotonicity_checks(const Int& q, long k) {
  Ratio g1 = bounds::g_of_k(q, k + 4), g0 = bounds::g_of_k(q, k);
  GridPoint p{q, k, std::nullopt, std::nullopt};
  return {make(p, "monotonicity", "g(k+4)<g(k)", g1 < g0, fraction_string(g1),
               fraction_string(g0))};
}

inline std::vector<CheckRecord> fprime_checks(const Int& q, long k) {
  Int num = bounds::fprime_numerator(q, k);
  GridPoint p{q, k, std::nullopt, std::nullopt};
  return {make(p, "fprime-positivity", "numerator>0", num > 0, fraction_string(num), "0/1")};
}

inline std::vector<CheckRecord> k_bound_checks(const Int& q, const Int& n,
                                               const std::vector<Ratio>& rho_set) {
  std::vector<CheckRecord> out;
  for (const Ratio& rho : rho_set) {
    if (!bounds::rho_admissible(q, n, rho)) {
      out.push_back(inadmissible_record(q, n, rho, "k-bound"));
      continue;
    }
    bounds::KSolve s = bounds::solve_K(q, n, rho);
    GridPoint p{q, std::nullopt, n, rho};
    Ratio low{pow_int(q, static_cast<unsigned long>(s.k_max + 1))};
    Ratio high{pow_int(q, static_cast<unsigned long>(s.k_max + 2))};
    out.push_back(make(p, "k-bound", "power-bracket-low", low <= s.target, fraction_string(low),
                       fraction_string(s.target)));
    out.push_back(make(p, "k-bound", "power-bracket-high", s.target < high,
                       fraction_string(s.target), fraction_string(high)));
    // K < log_q(2) + 2 log_q(n) - log_q(rho), decided as target*rho < 2qn^2
    Ratio lhs = s.target * rho;
    Ratio rhs{Int(2 * q * n * n)};
    out.push_back(
        make(p, "k-bound", "K<bound-exact", lhs < rhs, fraction_string(lhs), fraction_string(rhs)));
  }
  return out;
}

inline std::vector<CheckRecord> chain_identity_checks(const Int& q, long k, const Int& n,
                                                      const Ratio& rho) {
  using ratfunc::Var;
  Int n2 = n * n;
  std::map<Var, Ratio> at{{Var::Q, Ratio(q)},
                          {Var::X, Ratio(pow_int(q, static_cast<unsigned long>(k)))},
                          {Var::N, Ratio(n2)},
                          {Var::R, rho},
                          {Var::S, Ratio(arith::sigma(n2))}};
  std::vector<CheckRecord> out;
  GridPoint p{q, k, n, rho};
  for (ratfunc::IdentityTag tag : ratfunc::all_identity_tags) {
    auto sides = ratfunc::identity_sides(tag);
    Ratio first = sides[0].eval(at);
    bool held = true;
    for (std::size_t i = 1; i < sides.size(); ++i) held = held && sides[i].eval(at) == first;
    out.push_back(make(p, "chain-identities", std::string(ratfunc::identity_name(tag)), held,
                       fraction_string(first), fraction_string(sides[1].eval(at))));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scan driver
// ---------------------------------------------------------------------------

// Evaluates all configured suites over the grid. Tasks are independent; with
// workers > 1 they run on a thread pool, and results are merged in task
// order, so the report is identical for any worker count.
inline ScanReport run_scan(const ScanConfig& cfg, unsigned workers = 0) {
  cfg.validate();
  std::vector<std::function<std::vector<CheckRecord>()>> tasks;

  auto enabled = [&cfg](std::string_view name) {
    return std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
  };

  if (enabled("sandwich"))
    for (const Int& q : cfg.q_set)
      for (long k : cfg.k_set)
        tasks.push_back([q, k] { return detail::sandwich_checks(q, k); });

  if (enabled("failed-sandwich"))
    for (const Int& q : cfg.q_set) {
      tasks.push_back([q] { return detail::failed_sandwich_containment(q); });
      for (long k : cfg.k_set)
        tasks.push_back([q, k] { return detail::failed_sandwich_checks(q, k); });
    }

  if (enabled("improved-lower"))
    for (const Int& q : cfg.q_set)
      for (const Int& n : cfg.n_set)
        tasks.push_back(
            [q, n, rhos = cfg.rho_set] { return detail::improved_lower_checks(q, n, rhos); });

  if (enabled("monotonicity"))
    for (const Int& q : cfg.q_set)
      for (long k : cfg.k_set)
        tasks.push_back([q, k] { return detail::monotonicity_checks(q, k); });

  if (enabled("fprime-positivity"))
    for (const Int& q : cfg.q_set)
      for (long k : cfg.k_set)
        tasks.push_back([q, k] { return detail::fprime_checks(q, k); });

  if (enabled("k-bound"))
    for (const Int& q : cfg.q_set)
      for (const Int& n : cfg.n_set)
        tasks.push_back(
            [q, n, rhos = cfg.rho_set] { return detail::k_bound_checks(q, n, rhos); });

  if (enabled("chain-identities"))
    for (const Int& q : cfg.q_set)
      for (long k : cfg.k_set)
        for (const Int& n : cfg.n_set)
          for (const Ratio& rho : cfg.rho_set)
            tasks.push_back(
                [q, k, n, rho] { return detail::chain_identity_checks(q, k, n, rho); });

  std::vector<std::vector<CheckRecord>> results(tasks.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
        results[i] = tasks[i]();
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ScanReport report;
  for (auto& chunk : results)
    for (auto& rec : chunk) report.records.push_back(std::move(rec));
  return report;
}

// Runs symbolic identities as zero-polynomial checks; a failing record names
// its tag. lhs/rhs are left empty: these records certify polynomial
// identities, not pointwise values. The sides provider is a parameter so
// tests can feed perturbed fixtures through the same reporting path.
inline ScanReport verify_identities_report(
    const std::function<std::vector<ratfunc::RatFunc>(ratfunc::IdentityTag)>& sides_for) {
  ScanReport report;
  for (ratfunc::IdentityTag tag : ratfunc::all_identity_tags) {
    const auto sides = sides_for(tag);
    bool held = true;
    for (std::size_t i = 0; i + 1 < sides.size(); ++i)
      for (std::size_t j = i + 1; j < sides.size(); ++j) held = held && sides[i] == sides[j];
    CheckRecord r;
    r.suite = "symbolic";
    r.check = std::string(ratfunc::identity_name(tag));
    r.outcome = held ? Outcome::pass : Outcome::fail;
    report.records.push_back(std::move(r));
  }
  return report;
}

// The fourteen built-in identities.
inline ScanReport verify_all_identities() {
  return verify_identities_report(ratfunc::identity_sides);
}

inline void write_report(const ScanReport& report, const std::string& path,
                         const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << (format == "csv" ? report.to_csv() : report.to_json());
  if (!out) throw std::runtime_error("failed writing report file: " + path);
}

}  // namespace opn::harness

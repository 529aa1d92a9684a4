// opn — exact bounds and identity checks around hypothetical odd perfect
// numbers q^k n^2.
//
// Subcommands: bounds, verify, solve-k, scan, spoof-check.
// Exit codes: 0 success, 1 mathematical check failure, 2 usage/input error.
// All numeric output is exact fractions unless --decimal is requested.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "opn/arith.hpp"
#include "opn/bounds.hpp"
#include "opn/harness.hpp"
#include "opn/highprec.hpp"
#include "opn/ratfunc.hpp"

namespace {

using namespace opn;
using harness::json;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& text, const std::string& flag) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": '" + text + "' is not an integer");
  }
}

Ratio parse_ratio(const std::string& text, const std::string& flag) {
  try {
    Ratio r(text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": '" + text + "' is not a rational (use N or N/D)");
  }
}

// The special prime of the Euler form: prime, >= 5, and 1 mod 4.
Int parse_special_prime(const std::string& text) {
  Int q = parse_int(text, "--q");
  if (q < 5) throw UsageError("--q: the special prime must be >= 5");
  if (!arith::is_prime(q)) throw UsageError("--q: " + q.get_str() + " is composite");
  if (q % 4 != 1) throw UsageError("--q: " + q.get_str() + " is not 1 (mod 4)");
  return q;
}

std::string show(const Ratio& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int cmd_bounds(const std::string& q_text, std::optional<long> k,
               const std::optional<std::string>& n_text,
               const std::optional<std::string>& rho_text, std::optional<int> decimal,
               bool as_json) {
  Int q = parse_special_prime(q_text);
  if (k && *k < 1) throw UsageError("--k must be >= 1");
  std::optional<Int> n;
  if (n_text) {
    n = parse_int(*n_text, "--n");
    if (*n < 1) throw UsageError("--n must be >= 1");
  }
  std::optional<Ratio> rho;
  if (rho_text) {
    if (!n) throw UsageError("--rho requires --n");
    rho = parse_ratio(*rho_text, "--rho");
    if (*rho < 1) throw UsageError("--rho must be >= 1");
  }
  if (decimal && (*decimal < 1 || *decimal > 1000)) throw UsageError("--decimal out of range");

  bounds::BoundReport r = bounds::bound_report(q, k, n, rho);

  if (as_json) {
    json doc;
    doc["q"] = q.get_str();
    doc["L"] = fraction_string(r.L);
    doc["U"] = fraction_string(r.U);
    if (r.g_k) doc["g"] = fraction_string(*r.g_k);
    if (r.f_k) doc["f"] = fraction_string(*r.f_k);
    if (r.l_1) doc["l1"] = fraction_string(*r.l_1);
    if (r.l_r) doc["l_rho"] = fraction_string(*r.l_r);
    if (decimal) {
      json dec;
      dec["L"] = decimal_string(r.L, *decimal);
      dec["U"] = decimal_string(r.U, *decimal);
      if (r.g_k) dec["g"] = decimal_string(*r.g_k, *decimal);
      if (r.f_k) dec["f"] = decimal_string(*r.f_k, *decimal);
      if (r.l_1) dec["l1"] = decimal_string(*r.l_1, *decimal);
      if (r.l_r) dec["l_rho"] = decimal_string(*r.l_r, *decimal);
      doc["decimal"] = dec;
    }
    json ineq;
    for (const auto& [name, held] : r.inequalities) ineq[name] = held;
    doc["inequalities"] = ineq;
    std::cout << doc.dump(2) << "\n";
  } else {
    auto line = [&](const std::string& name, const Ratio& v) {
      std::cout << name << " = " << show(v);
      if (decimal) std::cout << " = " << decimal_string(v, *decimal);
      std::cout << "\n";
    };
    line("L(" + q.get_str() + ")", r.L);
    line("U(" + q.get_str() + ")", r.U);
    if (r.g_k) line("g(" + q.get_str() + ", k=" + std::to_string(*k) + ")", *r.g_k);
    if (r.f_k) line("f(" + q.get_str() + ", k=" + std::to_string(*k) + ")", *r.f_k);
    if (r.l_1) line("l_1(" + q.get_str() + ", n=" + n->get_str() + ")", *r.l_1);
    if (r.l_r)
      line("l_rho(" + q.get_str() + ", n=" + n->get_str() + ", rho=" + show(*rho) + ")", *r.l_r);
    for (const auto& [name, held] : r.inequalities)
      std::cout << "check " << name << ": " << (held ? "PASS" : "FAIL") << "\n";
  }

  for (const auto& [name, held] : r.inequalities)
    if (!held) return exit_check_failed;
  return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(bool as_json) {
  harness::ScanReport report = harness::verify_all_identities();
  bool all_pass = report.summary().failed == 0;
  if (as_json) {
    std::cout << report.to_json();
  } else {
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      const auto& rec = report.records[i];
      std::printf("(%c) %-24s %s\n", ratfunc::identity_letter(ratfunc::all_identity_tags[i]),
                  rec.check.c_str(), rec.outcome == harness::Outcome::pass ? "PASS" : "FAIL");
    }
    auto s = report.summary();
    std::printf("symbolic identities: %zu/%zu passed\n", s.passed, s.total);
  }
  return all_pass ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------
// solve-k
// ---------------------------------------------------------------------------

int cmd_solve_k(const std::string& q_text, const std::string& n_text, const std::string& rho_text,
                bool as_json) {
  Int q = parse_special_prime(q_text);
  Int n = parse_int(n_text, "--n");
  if (n < 1) throw UsageError("--n must be >= 1");
  Ratio rho = parse_ratio(rho_text, "--rho");
  if (rho < 1) throw UsageError("--rho must be >= 1");

  bounds::KSolve s = bounds::solve_K(q, n, rho);
  Ratio exact_lhs = s.target * rho;
  Ratio exact_rhs{Int(2 * q * n * n)};

  if (as_json) {
    json doc;
    doc["q"] = q.get_str();
    doc["n"] = n.get_str();
    doc["rho"] = fraction_string(rho);
    doc["target"] = fraction_string(s.target);
    doc["K"] = s.K.str(50);
    doc["k_max"] = s.k_max;
    doc["bound_rhs"] = s.bound_rhs.str(50);
    doc["admissible"] = s.admissible;
    doc["bound_holds"] = s.bound_holds;
    doc["exact_comparison"] = fraction_string(exact_lhs) + " < " + fraction_string(exact_rhs);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "q = " << q.get_str() << ", n = " << n.get_str() << ", rho = " << show(rho)
              << "\n";
    std::cout << "target = 2n^2(q-1)/rho + 1 = " << show(s.target) << "\n";
    std::cout << "K = log_q(target) - 1 = " << s.K.str(50) << "\n";
    std::cout << "k_max = " << s.k_max;
    if (s.k_max >= 0)
      std::cout << "  (exact bracket: q^" << s.k_max + 1 << " <= target < q^" << s.k_max + 2
                << ")";
    std::cout << "\n";
    std::cout << "bound = log_q(2) + 2log_q(n) - log_q(rho) = " << s.bound_rhs.str(50) << "\n";
    if (!s.admissible)
      std::cout << "admissible: no  (window is 1 <= rho < 2n^2/(q+1) = "
                << show(ratio(2 * n * n, q + 1)) << ")\n";
    else
      std::cout << "admissible: yes\n";
    std::cout << "K < bound: " << (s.bound_holds ? "PASS" : "FAIL") << "  (exact: "
              << show(exact_lhs) << (s.bound_holds ? " < " : " >= ") << show(exact_rhs) << ")\n";
  }
  if (s.admissible && !s.bound_holds) return exit_check_failed;
  return exit_ok;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

int cmd_scan(const std::optional<std::string>& config_path,
             const std::optional<std::string>& output_override,
             const std::optional<std::string>& format_override, unsigned jobs) {
  harness::ScanConfig cfg;
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw UsageError("cannot read config file: " + *config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = harness::ScanConfig::from_json_text(buf.str());
  } else {
    cfg = harness::ScanConfig::defaults();
  }
  if (output_override) cfg.output_path = *output_override;
  if (format_override) cfg.format = *format_override;
  cfg.validate();

  harness::ScanReport report = harness::run_scan(cfg, jobs);
  harness::write_report(report, cfg.output_path, cfg.format);
  auto s = report.summary();
  std::printf("scan: total=%zu passed=%zu failed=%zu inadmissible=%zu -> %s\n", s.total, s.passed,
              s.failed, s.inadmissible, cfg.output_path.c_str());
  return s.failed == 0 ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------
// spoof-check
// ---------------------------------------------------------------------------

int cmd_spoof_check(bool descartes, const std::optional<std::string>& m_text,
                    const std::optional<std::string>& pseudo_text) {
  arith::Factorization factors;
  Int pseudo;
  if (descartes) {
    factors = bounds::descartes_factors();
    pseudo = bounds::descartes_pseudo_prime;
  } else {
    if (!m_text || !pseudo_text) throw UsageError("need --descartes, or both --m and --pseudo");
    Int m = parse_int(*m_text, "--m");
    pseudo = parse_int(*pseudo_text, "--pseudo");
    if (m < 2 || pseudo < 2) throw UsageError("--m and --pseudo must be >= 2");
    if (m % pseudo != 0) throw UsageError("--pseudo must divide --m");
    // peel off the designated pseudo-prime power, factor the rest genuinely
    Int rest = m;
    unsigned k = 0;
    while (rest % pseudo == 0) {
      rest /= pseudo;
      ++k;
    }
    factors = arith::factorize(rest);
    factors.factors.push_back({pseudo, k});
  }

  bounds::ChainReport r;
  try {
    r = bounds::spoof_check(factors, pseudo);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  std::cout << "m = ";
  bool first = true;
  for (const auto& pp : factors.factors) {
    if (!first) std::cout << " * ";
    std::cout << pp.prime.get_str() << "^" << pp.exponent;
    first = false;
  }
  std::cout << "   (pseudo-prime q = " << r.q.get_str() << ", k = " << r.k
            << ", n = " << r.n.get_str() << ")\n";
  std::cout << "sigma(n^2) = " << r.sigma_n_sq.get_str() << "   sigma~(q^k) = "
            << r.pseudo_sigma.get_str() << "\n";
  std::cout << "chain members:\n";
  for (std::size_t i = 0; i < r.members.size(); ++i)
    std::printf("  %-22s = %s\n", std::string(bounds::chain_member_names[i]).c_str(),
                r.members[i].get_str().c_str());
  std::cout << "adjacent equalities:";
  for (bool eq : r.adjacent_equal) std::cout << " " << (eq ? "=" : "!=");
  std::cout << "   chain holds: " << (r.chain_holds ? "YES" : "NO") << "\n";
  std::cout << "q*sigma(n^2) - 2(q-1)*n^2 = " << r.gcd_linear_form.get_str()
            << "   matches gcd(n^2,sigma(n^2)): " << (r.linear_form_matches ? "YES" : "NO") << "\n";
  return r.chain_holds && r.linear_form_matches ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  CLI::App app{"exact bounds and identity checks for odd-perfect-number candidates q^k n^2"};
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "evaluate L(q), U(q) and, optionally, g, f, l_1, l_rho exactly");
  std::string b_q;
  std::optional<long> b_k;
  std::optional<std::string> b_n, b_rho;
  std::optional<int> b_decimal;
  bool b_json = false;
  bounds_cmd->add_option("--q", b_q, "special prime q (>= 5, prime, 1 mod 4)")->required();
  bounds_cmd->add_option("--k", b_k, "exponent k >= 1: also print g(q,k), f(q,k)");
  bounds_cmd->add_option("--n", b_n, "cofactor root n >= 1: also print l_1(q,n)");
  bounds_cmd->add_option("--rho", b_rho,
                         "rational lower bound rho >= 1 (best known: 3375); needs --n");
  bounds_cmd->add_option("--decimal", b_decimal,
                         "also print N-significant-digit decimals (round half even)");
  bounds_cmd->add_flag("--json", b_json, "JSON output");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "verify the fourteen built-in symbolic identities");
  bool v_json = false;
  verify_cmd->add_flag("--json", v_json, "JSON output");

  // solve-k
  auto* solve_cmd = app.add_subcommand(
      "solve-k", "solve g(K) = l_rho(q,n) for the crossover exponent K and bound it");
  std::string s_q, s_n, s_rho = "1";
  bool s_json = false;
  solve_cmd->add_option("--q", s_q, "special prime q (>= 5, prime, 1 mod 4)")->required();
  solve_cmd->add_option("--n", s_n, "cofactor root n >= 1")->required();
  solve_cmd->add_option("--rho", s_rho,
                        "rational lower bound rho >= 1 (default 1; best known: 3375)");
  solve_cmd->add_flag("--json", s_json, "JSON output");

  // scan
  auto* scan_cmd =
      app.add_subcommand("scan", "run the verification suites over a parameter grid");
  std::optional<std::string> c_config, c_output, c_format;
  unsigned c_jobs = 0;
  scan_cmd->add_option("--config", c_config, "JSON config file (default: built-in grid)");
  scan_cmd->add_option("--output", c_output, "report path (overrides config)");
  scan_cmd->add_option("--format", c_format, "json or csv (overrides config)");
  scan_cmd->add_option("--jobs", c_jobs, "worker threads (default: hardware)");

  // spoof-check
  auto* spoof_cmd = app.add_subcommand(
      "spoof-check", "evaluate the five-member divisor chain on m with a designated pseudo-prime");
  bool p_descartes = false;
  std::optional<std::string> p_m, p_pseudo;
  auto* p_flag = spoof_cmd->add_flag("--descartes", p_descartes,
                                     "use the Descartes number 3^2 7^2 11^2 13^2 22021");
  spoof_cmd->add_option("--m", p_m, "the candidate m")->excludes(p_flag);
  spoof_cmd->add_option("--pseudo", p_pseudo, "the designated pseudo-prime factor of m")
      ->excludes(p_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(b_q, b_k, b_n, b_rho, b_decimal, b_json);
    if (verify_cmd->parsed()) return cmd_verify(v_json);
    if (solve_cmd->parsed()) return cmd_solve_k(s_q, s_n, s_rho, s_json);
    if (scan_cmd->parsed()) return cmd_scan(c_config, c_output, c_format, c_jobs);
    if (spoof_cmd->parsed()) return cmd_spoof_check(p_descartes, p_m, p_pseudo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const opn::harness::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

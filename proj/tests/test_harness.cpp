#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "opn/harness.hpp"

using namespace opn;
using namespace opn::harness;

namespace {

ScanConfig small_config() {
  ScanConfig c;
  c.q_set = {5, 13};
  c.k_set = {1, 5};
  c.n_set = {3, 9};
  c.rho_set = {Ratio(1), Ratio(2), Ratio(3375)};
  c.suites = ScanConfig::all_suites();
  return c;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("verify_all_identities: fourteen tags, fourteen passes") {
  ScanReport r = verify_all_identities();
  CHECK(r.records.size() == 14);
  for (const auto& rec : r.records) {
    CAPTURE(rec.check);
    CHECK(rec.outcome == Outcome::pass);
    CHECK(rec.suite == "symbolic");
  }
  Summary s = r.summary();
  CHECK(s.total == 14);
  CHECK(s.passed == 14);
  CHECK(s.failed == 0);
}

TEST_CASE("a perturbed identity produces a failure that names the tag") {
  using ratfunc::IdentityTag;
  auto perturbed = [](IdentityTag tag) {
    auto sides = ratfunc::identity_sides(tag);
    if (tag == IdentityTag::GPartialFractions)
      sides[0] = sides[0] + ratfunc::RatFunc(1) / ratfunc::RatFunc::variable(ratfunc::Var::Q);
    return sides;
  };
  ScanReport r = verify_identities_report(perturbed);
  Summary s = r.summary();
  CHECK(s.failed == 1);
  CHECK(s.passed == 13);
  bool named = false;
  for (const auto& rec : r.records)
    if (rec.outcome == Outcome::fail) {
      CHECK(rec.check == "g-partial-fractions");
      named = true;
    }
  CHECK(named);
  CHECK(r.to_json().find("\"g-partial-fractions\"") != std::string::npos);
}

TEST_CASE("report JSON round-trips") {
  ScanReport r = verify_all_identities();
  std::string text = r.to_json();
  ScanReport back = ScanReport::from_json(text);
  CHECK(back.records == r.records);
  CHECK(back.to_json() == text);

  // tampered summary is rejected
  std::string bad = text;
  auto pos = bad.find("\"passed\": 14");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 12, "\"passed\": 13");
  CHECK_THROWS_AS(ScanReport::from_json(bad), std::invalid_argument);
}

TEST_CASE("scan over a small grid: no failures") {
  ScanReport r = run_scan(small_config(), 1);
  Summary s = r.summary();
  CHECK(s.failed == 0);
  CHECK(s.passed > 0);
  CHECK(s.inadmissible > 0);  // rho = 3375 is outside the window at these n
  CHECK(s.total == s.passed + s.failed + s.inadmissible);
}

TEST_CASE("inadmissible is a third outcome, not a failure") {
  ScanConfig c = small_config();
  c.n_set = {1};  // 2n^2 = 2 < q+1: the whole rho window is empty
  c.suites = {"improved-lower", "k-bound"};
  ScanReport r = run_scan(c, 1);
  Summary s = r.summary();
  CHECK(s.failed == 0);
  CHECK(s.passed == 0);
  CHECK(s.inadmissible == r.records.size());
  for (const auto& rec : r.records) CHECK(rec.check == "rho-admissible");
}

TEST_CASE("determinism across runs and worker counts") {
  ScanConfig c = small_config();
  std::string first = run_scan(c, 1).to_json();
  std::string second = run_scan(c, 1).to_json();
  std::string parallel = run_scan(c, 4).to_json();
  std::string more = run_scan(c, 7).to_json();
  CHECK(first == second);
  CHECK(first == parallel);
  CHECK(first == more);
  CHECK(run_scan(c, 1).to_csv() == run_scan(c, 5).to_csv());
}

TEST_CASE("JSON and CSV agree row for row") {
  ScanReport r = run_scan(small_config(), 2);
  auto csv_lines = split_lines(r.to_csv());
  REQUIRE(csv_lines.size() == r.records.size() + 1);  // header
  CHECK(csv_lines[0] == "point_q,point_k,point_n,point_rho,suite,check,outcome,lhs,rhs");
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const CheckRecord& rec = r.records[i];
    std::string expected;
    expected += rec.point.q ? rec.point.q->get_str() : "";
    expected += ',';
    expected += rec.point.k ? std::to_string(*rec.point.k) : "";
    expected += ',';
    expected += rec.point.n ? rec.point.n->get_str() : "";
    expected += ',';
    expected += rec.point.rho ? fraction_string(*rec.point.rho) : "";
    expected += ',';
    expected += rec.suite + ',' + rec.check + ',';
    expected += outcome_name(rec.outcome);
    expected += ',' + rec.lhs + ',' + rec.rhs;
    CHECK(csv_lines[i + 1] == expected);
  }
}

TEST_CASE("config validation") {
  ScanConfig c = small_config();
  c.q_set.clear();
  CHECK_THROWS_AS(run_scan(c, 1), ConfigError);

  c = small_config();
  c.q_set = {6};  // composite
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = small_config();
  c.q_set = {7};  // prime but 3 mod 4
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = small_config();
  c.n_set = {4};  // even
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = small_config();
  c.rho_set = {ratio(1, 2)};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = small_config();
  c.suites = {"no-such-suite"};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = small_config();
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config JSON parsing") {
  ScanConfig c = ScanConfig::from_json_text(R"({
    "q_set": [5, "13"],
    "k_set": [1],
    "n_set": [3],
    "rho_set": [1, "7/2", "3375"],
    "suites": ["sandwich", "k-bound"],
    "output": {"path": "out.csv", "format": "csv"}
  })");
  CHECK(c.q_set == std::vector<Int>{5, 13});
  CHECK(c.k_set == std::vector<long>{1});
  CHECK(c.rho_set[1] == ratio(7, 2));
  CHECK(c.rho_set[2] == Ratio(3375));
  CHECK(c.suites.size() == 2);
  CHECK(c.output_path == "out.csv");
  CHECK(c.format == "csv");

  CHECK_THROWS_AS(ScanConfig::from_json_text("{"), ConfigError);
  CHECK_THROWS_AS(ScanConfig::from_json_text(R"({"q_set": []})"), ConfigError);
  CHECK_THROWS_AS(ScanConfig::from_json_text(R"({"q_set": [5.5]})"), ConfigError);
  CHECK_THROWS_AS(ScanConfig::from_json_text(R"({"n_set": [2]})"), ConfigError);
}

TEST_CASE("defaults are a valid config") {
  ScanConfig c = ScanConfig::defaults();
  c.validate();
  CHECK(c.q_set.size() == 7);
  CHECK(c.k_set.size() == 4);
  CHECK(c.n_set.size() == 5);
  CHECK(c.rho_set.size() == 3);
  CHECK(c.suites == ScanConfig::all_suites());
}

TEST_CASE("chain identity records carry exact values") {
  ScanConfig c;
  c.q_set = {5};
  c.k_set = {1};
  c.n_set = {3};
  c.rho_set = {Ratio(1)};
  c.suites = {"chain-identities"};
  ScanReport r = run_scan(c, 1);
  CHECK(r.records.size() == 14);
  for (const auto& rec : r.records) {
    CAPTURE(rec.check);
    CHECK(rec.outcome == Outcome::pass);
    CHECK(!rec.lhs.empty());
    CHECK(rec.lhs == rec.rhs);
  }
  // the L-closed-form record evaluates to L(5) = 57/20 at any point
  CHECK(r.records[0].check == "L-closed-form");
  CHECK(r.records[0].lhs == "57/20");
}

TEST_CASE("report file writing") {
  ScanReport r = verify_all_identities();
  std::string path = "test_report_tmp.json";
  write_report(r, path, "json");
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == r.to_json());
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_report(r, "/no/such/dir/report.json", "json"), std::runtime_error);
}

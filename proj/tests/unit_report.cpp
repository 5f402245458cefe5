#include "support.hpp"

#include <json.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace partcheck;
using namespace partcheck::testing;
using nlohmann::json;

TEST_CASE("text report") {
  CHECK(emit(scan(fixture("shared_size_read"), {true, false, false}), Format::Text) ==
        "BP-R3 ta.c:2:1 variable assigned from shared memory (param 3) [suppressed F3]\n"
        "BP-R3 ta.c:4:1 shallow copy of shared memory buffer (param 3)\n"
        "1 finding (BP-R1 0, BP-R2 0, BP-R3 1), 1 suppressed\n");
  CHECK(emit(scan(fixture("clean")), Format::Text) == "0 findings\n");
}

TEST_CASE("format names") {
  CHECK(parse_format("text") == Format::Text);
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("sarif") == Format::Sarif);
  CHECK_FALSE(parse_format("xml"));
}

TEST_CASE("JSON report carries config, summary and findings") {
  auto r = scan(fixture("shared_direct"), {true, false, false});
  auto doc = json::parse(emit(r, Format::Json));
  CHECK(doc["tool"] == kToolName);
  CHECK(doc["version"] == kToolVersion);
  CHECK(doc["config"]["refined"] == true);
  CHECK(doc["config"]["extended_r2"] == false);
  CHECK(doc["summary"]["findings"] == 2);
  CHECK(doc["summary"]["suppressed"] == 1);
  CHECK(doc["findings"].size() == 3);
  CHECK(doc["findings"][1]["suppressed_by"] == "F3");
  CHECK(doc["findings"][0]["param"]["role"] == "shared");
  CHECK_FALSE(doc.contains("timing"));
}

TEST_CASE("JSON round-trips") {
  for (const auto &dir : all_case_dirs()) {
    INFO(dir);
    auto r = scan(dir, {true, true, true});
    CHECK(parse_report_json(emit(r, Format::Json)) == r);
  }
  ScanReport timed = scan(fixture("unchecked_copy"));
  timed.timing = Timing{1.5, 2.25, 0.125};
  timed.config.catalog = "cat.json";
  CHECK(parse_report_json(emit(timed, Format::Json)) == timed);
}

TEST_CASE("malformed report JSON is rejected") {
  CHECK_THROWS_AS(parse_report_json("{"), ConfigError);
  CHECK_THROWS_AS(parse_report_json("{\"findings\": 3}"), ConfigError);
}

TEST_CASE("emission does not depend on finding order") {
  std::mt19937 rng(3);
  ScanReport r;
  for (const auto &dir : all_case_dirs()) {
    auto one = scan(dir, {true, true, false});
    r.findings.insert(r.findings.end(), one.findings.begin(), one.findings.end());
    r.warnings.insert(r.warnings.end(), one.warnings.begin(), one.warnings.end());
  }
  REQUIRE(r.findings.size() > 50);
  std::sort(r.findings.begin(), r.findings.end(), finding_less);
  const std::string text = emit(r, Format::Text);
  const std::string js = emit(r, Format::Json);
  const std::string sarif = emit(r, Format::Sarif);
  for (int i = 0; i < 5; ++i) {
    auto shuffled = r;
    std::shuffle(shuffled.findings.begin(), shuffled.findings.end(), rng);
    std::shuffle(shuffled.warnings.begin(), shuffled.warnings.end(), rng);
    CHECK(emit(shuffled, Format::Text) == text);
    CHECK(emit(shuffled, Format::Json) == js);
    CHECK(emit(shuffled, Format::Sarif) == sarif);
  }
}

TEST_CASE("finding order") {
  Finding a;
  a.location = {"a.c", 3, 1};
  a.rule = RuleId::BP_R2;
  Finding b = a;
  b.rule = RuleId::BP_R1;
  b.location.column = 5;
  Finding c = a;
  c.location.file = "b.c";
  c.location.line = 1;
  CHECK(finding_less(a, b));
  CHECK(finding_less(b, c));
  b.location.column = 1;
  CHECK(finding_less(b, a));
}

TEST_CASE("SARIF output validates") {
  for (const auto &dir : all_case_dirs()) {
    INFO(dir);
    auto r = scan(dir, {true, false, false});
    CHECK(validate_sarif(emit(r, Format::Sarif)).empty());
  }
}

TEST_CASE("SARIF suppressions and rules") {
  auto doc = json::parse(emit(scan(fixture("shared_size_read"), {true, false, false}), Format::Sarif));
  const auto &run = doc["runs"][0];
  CHECK(run["tool"]["driver"]["rules"].size() == 3);
  REQUIRE(run["results"].size() == 2);
  CHECK(run["results"][0]["suppressions"].size() == 1);
  CHECK_FALSE(run["results"][1].contains("suppressions"));
  CHECK(run["results"][1]["locations"][0]["physicalLocation"]["region"]["startLine"] == 4);
}

TEST_CASE("the SARIF validator rejects broken logs") {
  const std::string good = emit(scan(fixture("unchecked_copy")), Format::Sarif);
  REQUIRE(validate_sarif(good).empty());
  auto broken = [&](const std::function<void(json &)> &edit) {
    json doc = json::parse(good);
    edit(doc);
    return validate_sarif(doc.dump());
  };
  CHECK_FALSE(validate_sarif("not json").empty());
  CHECK_FALSE(validate_sarif("[]").empty());
  CHECK_FALSE(broken([](json &d) { d["version"] = "2.0.0"; }).empty());
  CHECK_FALSE(broken([](json &d) { d.erase("runs"); }).empty());
  CHECK_FALSE(broken([](json &d) { d["runs"] = json::array(); }).empty());
  CHECK_FALSE(broken([](json &d) { d["runs"][0]["results"][0]["ruleId"] = "BP-R9"; }).empty());
  CHECK_FALSE(broken([](json &d) { d["runs"][0]["results"][0]["ruleIndex"] = 7; }).empty());
  CHECK_FALSE(broken([](json &d) { d["runs"][0]["results"][0].erase("message"); }).empty());
  CHECK_FALSE(broken([](json &d) {
                d["runs"][0]["results"][0]["locations"][0]["physicalLocation"]["region"]
                 ["startLine"] = 0;
              }).empty());
  CHECK_FALSE(broken([](json &d) {
                d["runs"][0]["tool"]["driver"]["rules"].push_back(
                    d["runs"][0]["tool"]["driver"]["rules"][0]);
              }).empty());
  CHECK_FALSE(broken([](json &d) { d["runs"][0]["tool"]["driver"].erase("name"); }).empty());
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(scan(fixture("unchecked_copy"))) == 1);
  CHECK(exit_code_for(scan(fixture("guarded_copy"))) == 0);
  // Only suppressed findings.
  CHECK(exit_code_for(scan(fixture("own_size_index"), {true, false, false})) == 0);
}

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace partcheck;
using namespace partcheck::testing;

namespace fs = std::filesystem;

namespace {

ScanOptions options_for(std::vector<std::string> paths, int jobs) {
  ScanOptions o;
  o.paths = std::move(paths);
  o.jobs = jobs;
  o.rules = {true, true, true};
  return o;
}

fs::path scratch(const std::string &name) {
  fs::path p = fs::path(PARTCHECK_BINARY_DIR) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("job counts") {
  CHECK(resolve_jobs(1) == 1);
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("serial and parallel scans give the same bytes") {
  std::vector<std::string> dirs;
  for (const auto &d : all_case_dirs())
    dirs.push_back(d);
  for (int jobs : {2, 4}) {
    auto serial = run_scan(options_for(dirs, 1));
    auto parallel = run_scan(options_for(dirs, jobs));
    CHECK(emit(serial.report, Format::Json) == emit(parallel.report, Format::Json));
    CHECK(serial.loc == parallel.loc);
  }
  // Per case as well, with graph dumps.
  for (const char *name : {"variadic_leak", "shared_direct", "pointer_helper"}) {
    auto a = options_for({fixture(name)}, 1);
    a.dump_flows = true;
    auto b = a;
    b.jobs = 4;
    auto ra = run_scan(a);
    auto rb = run_scan(b);
    CHECK(ra.flow_dump == rb.flow_dump);
    CHECK_FALSE(ra.flow_dump.empty());
    CHECK(ra.report == rb.report);
  }
}

TEST_CASE("each path is its own program") {
  auto both = run_scan(options_for({fixture("variadic_leak"), fixture("unchecked_copy")}, 1)).report;
  auto variadic_leak = scan(fixture("variadic_leak"), {true, true, true});
  auto unchecked_copy = scan(fixture("unchecked_copy"), {true, true, true});
  CHECK(both.findings.size() == variadic_leak.findings.size() + unchecked_copy.findings.size());
}

TEST_CASE("a single file is named by its file name") {
  auto r = scan(corpus_dir() + "/r1_02_basic/ta.c");
  CHECK(active_lines(r) == expected_lines(corpus_dir() + "/r1_02_basic"));
  CHECK(r.findings.at(0).location.file == "ta.c");
}

TEST_CASE("missing paths") {
  CHECK_THROWS_AS(run_scan(options_for({fixture("variadic_leak"), "/no/such/dir"}, 1)), IoError);
}

TEST_CASE("bad files become warnings") {
  auto dir = scratch("scan_unit");
  fs::copy_file(fixture("unchecked_copy") + "/ta.c", dir / "ta.c");
  fs::copy_file(fixture("unchecked_copy") + "/ca.c", dir / "ca.c");
  std::ofstream(dir / "bad.c", std::ios::binary) << "int x = 1;\n\xff\xfe\n";
  auto r = scan(dir.string());
  CHECK(active_lines(r) == std::vector<std::string>{"ta.c:3 BP-R2"});
  bool warned = false;
  for (const auto &w : r.warnings)
    warned = warned || (w.loc.file == "bad.c" &&
                        w.message.find("UTF-8") != std::string::npos);
  CHECK(warned);
  fs::remove_all(dir);
}

TEST_CASE("timing is reported only on request") {
  auto o = options_for({fixture("shared_direct")}, 1);
  CHECK_FALSE(run_scan(o).report.timing);
  o.timing = true;
  auto r = run_scan(o);
  REQUIRE(r.report.timing);
  CHECK(r.report.timing->flow_ms >= 0);
  CHECK(r.loc > 0);
}

TEST_CASE("the config is echoed") {
  auto o = options_for({fixture("shared_direct")}, 1);
  o.catalog_path = "custom.json";
  auto r = run_scan(o).report;
  CHECK(r.config.paths == o.paths);
  CHECK(r.config.rules.refined);
  CHECK(r.config.catalog == std::optional<std::string>("custom.json"));
  CHECK_FALSE(r.config.annotations);
}

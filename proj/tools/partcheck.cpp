// partcheck command line: scan, bench, explain.

#include "partcheck/bench.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace partcheck;
namespace fs = std::filesystem;

namespace {

constexpr const char *kConfigEnv = "PARTCHECK_CONFIG";
constexpr const char *kDefaultConfig = ".partcheck.json";

// Settings that may come from the config file; command-line flags win.
struct FileConfig {
  std::optional<bool> refined, extended_r2, deep_pointers;
  std::optional<std::string> format, catalog, annotations;
  std::optional<int> jobs;
};

FileConfig load_config(const std::string &explicit_path) {
  std::string path = explicit_path;
  if (path.empty())
    if (const char *env = std::getenv(kConfigEnv); env && *env)
      path = env;
  bool required = !path.empty();
  if (path.empty())
    path = kDefaultConfig;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    if (required)
      throw ConfigError("config file not found: " + path);
    return {};
  }
  FileConfig c;
  try {
    auto j = nlohmann::json::parse(read_file(path));
    if (!j.is_object())
      throw ConfigError(path + ": expected a JSON object");
    for (const auto &[key, value] : j.items()) {
      if (key == "refined")
        c.refined = value.get<bool>();
      else if (key == "extended_r2")
        c.extended_r2 = value.get<bool>();
      else if (key == "deep_pointers")
        c.deep_pointers = value.get<bool>();
      else if (key == "format")
        c.format = value.get<std::string>();
      else if (key == "catalog")
        c.catalog = value.get<std::string>();
      else if (key == "annotations")
        c.annotations = value.get<std::string>();
      else if (key == "jobs")
        c.jobs = value.get<int>();
      else
        throw ConfigError(path + ": unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
  return c;
}

template <typename T> void fill(T &dst, const std::optional<T> &src, bool flag_given) {
  if (!flag_given && src)
    dst = *src;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Detects bad partitioning of TEE application code"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "config file (also $PARTCHECK_CONFIG)");

  // scan
  auto *scan = app.add_subcommand("scan", "analyse files or directories");
  std::vector<std::string> paths;
  bool refined = false, extended = false, deep = false, dump = false, timing = false;
  std::string format = "text", catalog_path, annotations_path, output = "-";
  int jobs = 0;
  scan->add_option("paths", paths, "files or directories")->required();
  auto *o_refined = scan->add_flag("--refined", refined, "apply false-positive filters");
  auto *o_ext = scan->add_flag("--extended-r2", extended, "flag loop-bounded buffer writes");
  auto *o_deep =
      scan->add_flag("--deep-pointers", deep, "follow parameter buffers into raw pointers");
  auto *o_format = scan->add_option("--format", format, "text, json or sarif")
                       ->check(CLI::IsMember({"text", "json", "sarif"}));
  auto *o_catalog = scan->add_option("--catalog", catalog_path, "API catalog JSON");
  auto *o_ann = scan->add_option("--annotations", annotations_path, "parameter role table");
  scan->add_flag("--dump-flows", dump, "print data-flow graphs to stderr");
  scan->add_flag("--timing", timing, "include timing in the report");
  auto *o_jobs = scan->add_option("-j,--jobs", jobs, "worker threads (0 = all cores)")
                     ->check(CLI::NonNegativeNumber);
  scan->add_option("-o,--output", output, "output file");

  // bench
  auto *bench = app.add_subcommand("bench", "score the benchmark corpus");
  std::string corpus, csv_dir;
  bool b_refined = false, b_ext = false, b_deep = false;
  int b_jobs = 0;
  bench->add_option("corpus", corpus, "corpus directory")->required();
  auto *ob_refined = bench->add_flag("--refined", b_refined, "apply false-positive filters");
  bench->add_flag("--extended-r2", b_ext, "flag loop-bounded buffer writes");
  bench->add_flag("--deep-pointers", b_deep, "follow parameter buffers into raw pointers");
  bench->add_option("--csv", csv_dir, "write metrics.csv and timing.csv here");
  bench->add_option("-j,--jobs", b_jobs, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  // explain
  auto *expl = app.add_subcommand("explain", "describe a rule");
  std::string rule_name;
  expl->add_option("rule", rule_name, "BP-R1, BP-R2 or BP-R3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*expl) {
      auto r = parse_rule(rule_name);
      if (!r)
        throw UsageError("unknown rule: " + rule_name);
      std::cout << explain(*r);
      return 0;
    }

    FileConfig fc = load_config(config_path);

    if (*bench) {
      fill(b_refined, fc.refined, ob_refined->count() > 0);
      RuleConfig rc{b_refined, b_ext, b_deep};
      BenchRun run = run_bench(corpus, rc, b_jobs ? b_jobs : fc.jobs.value_or(0));
      std::cout << run.cases.size() << " cases\n" << metrics_table(run.metrics, rc.refined);
      if (!csv_dir.empty()) {
        fs::create_directories(csv_dir);
        write_output((fs::path(csv_dir) / "metrics.csv").string(), metrics_csv(run.metrics));
        write_output((fs::path(csv_dir) / "timing.csv").string(), timing_csv(run.timing));
      }
      return 0;
    }

    fill(refined, fc.refined, o_refined->count() > 0);
    fill(extended, fc.extended_r2, o_ext->count() > 0);
    fill(deep, fc.deep_pointers, o_deep->count() > 0);
    fill(format, fc.format, o_format->count() > 0);
    fill(jobs, fc.jobs, o_jobs->count() > 0);
    if (o_catalog->count() == 0 && fc.catalog)
      catalog_path = *fc.catalog;
    if (o_ann->count() == 0 && fc.annotations)
      annotations_path = *fc.annotations;
    auto fmt = parse_format(format);
    if (!fmt)
      throw UsageError("unknown format: " + format);

    ScanOptions so;
    so.paths = paths;
    so.rules = RuleConfig{refined, extended, deep};
    so.jobs = jobs;
    so.timing = timing;
    so.dump_flows = dump;
    if (!catalog_path.empty()) {
      so.catalog_path = catalog_path;
      so.catalog = load_catalog(read_file(catalog_path));
      so.custom_catalog = true;
    }
    if (!annotations_path.empty()) {
      so.annotations_path = annotations_path;
      so.annotations = parse_annotations(read_file(annotations_path));
    }
    ScanResult result = run_scan(so);
    if (dump)
      std::cerr << result.flow_dump;
    write_output(output, emit(result.report, *fmt));
    return exit_code_for(result.report);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

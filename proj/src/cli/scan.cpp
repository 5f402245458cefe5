#include "partcheck/scan.hpp"

#include "partcheck/parser.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partcheck {

namespace fs = std::filesystem;

int resolve_jobs(int jobs) {
  if (jobs > 0)
    return jobs;
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return std::max(1u, std::thread::hardware_concurrency());
#endif
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn(i) for i in [0, n). jobs == 1 is the plain serial loop.
void for_each_index(size_t n, int jobs, const std::function<void(size_t)> &fn) {
  if (jobs == 1 || n < 2) {
    for (size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
#ifdef _OPENMP
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long long i = 0; i < count; ++i)
    fn(static_cast<size_t>(i));
#else
  for (size_t i = 0; i < n; ++i)
    fn(i);
#endif
}

struct InputFile {
  size_t group;
  std::string path;
  std::string display;
};

bool is_source(const fs::path &p) {
  auto ext = p.extension().string();
  return ext == ".c" || ext == ".h";
}

std::vector<InputFile> collect(const std::vector<std::string> &paths) {
  std::vector<InputFile> files;
  for (size_t g = 0; g < paths.size(); ++g) {
    fs::path root(paths[g]);
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
      std::vector<std::pair<std::string, std::string>> found;
      for (auto it = fs::recursive_directory_iterator(root, ec);
           !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (it->is_regular_file(ec) && is_source(it->path()))
          found.emplace_back(fs::relative(it->path(), root, ec).generic_string(),
                             it->path().string());
      }
      if (ec)
        throw IoError("cannot list " + paths[g] + ": " + ec.message());
      std::sort(found.begin(), found.end());
      for (auto &[display, full] : found)
        files.push_back({g, full, display});
    } else if (fs::is_regular_file(root, ec)) {
      files.push_back({g, root.string(), root.filename().string()});
    } else {
      throw IoError("no such file or directory: " + paths[g]);
    }
  }
  return files;
}

struct RootTask {
  size_t group;
  ParamRoot root;
  std::vector<ParamBinding> bindings;
};

struct TaskOutput {
  std::vector<Finding> findings;
  std::string dump;
  double flow_ms = 0;
  double rules_ms = 0;
  std::string error;
};

} // namespace

ScanResult run_scan(const ScanOptions &options) {
  const int jobs = resolve_jobs(options.jobs);
  ScanResult result;
  ScanReport &report = result.report;
  report.config.paths = options.paths;
  report.config.rules = options.rules;
  report.config.catalog = options.catalog_path;
  report.config.annotations = options.annotations_path;

  // Step 0: parse every file.
  auto t0 = Clock::now();
  const auto files = collect(options.paths);
  std::vector<std::optional<Ast>> asts(files.size());
  std::vector<std::string> parse_errors(files.size());
  for_each_index(files.size(), jobs, [&](size_t i) {
    try {
      asts[i] = parse_unit(files[i].path, FrontendOptions{}, files[i].display);
    } catch (const EncodingError &) {
      parse_errors[i] = "not valid UTF-8; file skipped";
    } catch (const std::exception &e) {
      parse_errors[i] = std::string("cannot parse: ") + e.what();
    }
  });
  double parse_ms = ms_since(t0);

  std::vector<std::vector<const Ast *>> groups(options.paths.size());
  for (size_t i = 0; i < files.size(); ++i) {
    if (asts[i]) {
      groups[files[i].group].push_back(&*asts[i]);
      result.loc += asts[i]->line_count;
      for (const auto &d : asts[i]->diagnostics)
        report.warnings.push_back(d);
    } else {
      report.warnings.push_back({SourceLocation{files[i].display, 0, 0}, parse_errors[i]});
    }
  }

  // Step 1: parameter roles, then one task per root.
  std::vector<RootTask> tasks;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty())
      continue;
    if (options.custom_catalog)
      options.catalog.check_arity(groups[g]);
    Classification cls = classify_params(groups[g], options.annotations);
    report.warnings.insert(report.warnings.end(), cls.warnings.begin(), cls.warnings.end());
    for (auto &root : find_roots(groups[g])) {
      RootTask t{g, root, {}};
      for (const auto &b : cls.bindings)
        if (b.entry_function == root.fn->name && b.command_id == root.command &&
            b.file == root.ast->path)
          t.bindings.push_back(b);
      tasks.push_back(std::move(t));
    }
  }

  // Steps 2 to 4 per root.
  std::vector<TaskOutput> outputs(tasks.size());
  const FlowOptions flow_options{options.rules.deep_pointers};
  for_each_index(tasks.size(), jobs, [&](size_t i) {
    const RootTask &t = tasks[i];
    TaskOutput &out = outputs[i];
    try {
      auto f0 = Clock::now();
      auto graphs =
          build_root_flows(t.root, t.bindings, groups[t.group], options.catalog, flow_options);
      out.flow_ms = ms_since(f0);
      auto r0 = Clock::now();
      for (const auto &g : graphs) {
        auto found = check_graph(g, options.catalog, options.rules);
        out.findings.insert(out.findings.end(), found.begin(), found.end());
      }
      out.rules_ms = ms_since(r0);
      if (options.dump_flows)
        for (const auto &g : graphs)
          out.dump += dump_flow(g);
    } catch (const std::exception &e) {
      out.error = e.what();
    }
  });

  // Step 5: merge in a fixed order.
  double flow_ms = 0;
  double rules_ms = 0;
  for (size_t i = 0; i < tasks.size(); ++i) {
    auto &out = outputs[i];
    report.findings.insert(report.findings.end(), out.findings.begin(), out.findings.end());
    result.flow_dump += out.dump;
    flow_ms += out.flow_ms;
    rules_ms += out.rules_ms;
    if (!out.error.empty())
      report.warnings.push_back({tasks[i].root.fn->loc, "analysis of " +
                                                            tasks[i].root.fn->name +
                                                            " failed: " + out.error});
  }
  std::sort(report.findings.begin(), report.findings.end(), finding_less);
  std::sort(report.warnings.begin(), report.warnings.end());
  report.warnings.erase(std::unique(report.warnings.begin(), report.warnings.end()),
                        report.warnings.end());
  if (options.timing)
    report.timing = Timing{parse_ms, flow_ms, rules_ms};
  return result;
}

} // namespace partcheck

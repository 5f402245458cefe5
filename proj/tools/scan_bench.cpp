// Times the serial reference scan (jobs=1) against the parallel scan over the
// same inputs and checks that both produce the same report.

#include "partcheck/bench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace partcheck;
namespace fs = std::filesystem;

namespace {

struct Sample {
  double best_ms = 0;
  std::string json;
};

Sample time_scan(ScanOptions opts, int jobs, int repeats) {
  opts.jobs = jobs;
  Sample s;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_scan(opts);
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    s.best_ms = i == 0 ? ms : std::min(s.best_ms, ms);
    if (i == 0)
      s.json = emit(r.report, Format::Json);
  }
  return s;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Serial vs parallel scan timing"};
  std::vector<std::string> paths;
  int jobs = 0;
  int repeats = 5;
  bool as_corpus = false;
  app.add_option("paths", paths, "files, directories, or a corpus with --corpus")->required();
  app.add_flag("--corpus", as_corpus, "treat each case directory of the corpus as one path");
  app.add_option("-j,--jobs", jobs, "parallel worker threads (0 = all cores)");
  app.add_option("-r,--repeats", repeats, "runs per mode; the best is reported")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    ScanOptions opts;
    opts.rules = {true, true, true};
    if (as_corpus) {
      for (const auto &p : paths)
        for (const auto &c : load_corpus(p))
          opts.paths.push_back(c.dir);
    } else {
      opts.paths = paths;
    }
    const int threads = resolve_jobs(jobs);
    auto serial = time_scan(opts, 1, repeats);
    auto parallel = time_scan(opts, threads, repeats);
    std::printf("inputs    %zu\n", opts.paths.size());
    std::printf("serial    %10.2f ms  (jobs 1)\n", serial.best_ms);
    std::printf("parallel  %10.2f ms  (jobs %d)\n", parallel.best_ms, threads);
    std::printf("speedup   %10.2fx\n", serial.best_ms / std::max(parallel.best_ms, 1e-9));
    if (serial.json != parallel.json) {
      std::fprintf(stderr, "error: serial and parallel reports differ\n");
      return 1;
    }
    std::printf("reports   identical\n");
  } catch (const Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

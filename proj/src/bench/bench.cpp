#include "partcheck/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

namespace partcheck {

namespace fs = std::filesystem;

const char *to_string(Category c) {
  switch (c) {
  case Category::Basic:
    return "Basic";
  case Category::InProcedure:
    return "InProcedure";
  case Category::Variadic:
    return "Variadic";
  case Category::ControlFlow:
    return "ControlFlow";
  case Category::Combined:
    return "Combined";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (Category c : {Category::Basic, Category::InProcedure, Category::Variadic,
                     Category::ControlFlow, Category::Combined})
    if (s == to_string(c))
      return c;
  return std::nullopt;
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int count_lines(const std::string &text) {
  if (text.empty())
    return 0;
  int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

} // namespace

GroundTruth parse_expect(const std::string &case_name, const std::string &text,
                         const std::function<int(const std::string &)> &lines_of) {
  GroundTruth t;
  t.name = case_name;
  bool clean = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw CorpusError("case " + case_name + ": expect.txt line " + std::to_string(lineno) +
                      ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty())
      continue;
    if (line[0] == '#') {
      std::string body = trim(line.substr(1));
      auto colon = body.find(':');
      std::string key = trim(body.substr(0, colon));
      std::string value = colon == std::string::npos ? "" : trim(body.substr(colon + 1));
      if (key == "category") {
        auto c = parse_category(value);
        if (!c)
          fail("unknown category '" + value + "'");
        t.category = *c;
      } else if (key == "class") {
        t.issue_class = value;
      } else if (key == "known_fn") {
        t.known_fn = true;
      }
      continue;
    }
    if (line == "CLEAN") {
      clean = true;
      continue;
    }
    auto space = line.find_first_of(" \t");
    if (space == std::string::npos)
      fail("expected '<file>:<line> <RULE>'");
    std::string where = line.substr(0, space);
    auto rule = parse_rule(trim(line.substr(space)));
    auto colon = where.rfind(':');
    if (!rule || colon == std::string::npos)
      fail("expected '<file>:<line> <RULE>'");
    Expected e;
    e.file = where.substr(0, colon);
    e.rule = *rule;
    try {
      size_t used = 0;
      e.line = std::stoi(where.substr(colon + 1), &used);
      if (used != where.size() - colon - 1)
        fail("bad line number");
    } catch (const std::logic_error &) {
      fail("bad line number");
    }
    int lines = lines_of(e.file);
    if (lines < 0)
      fail("no such file " + e.file);
    if (e.line < 1 || e.line > lines)
      fail(e.file + " has no line " + std::to_string(e.line));
    t.expected.push_back(e);
  }
  if (clean && !t.expected.empty())
    throw CorpusError("case " + case_name + ": CLEAN together with expected findings");
  if (!clean && t.expected.empty())
    throw CorpusError("case " + case_name + ": expect.txt lists nothing");
  t.expected_empty = clean;
  if (t.issue_class.empty())
    t.issue_class = clean ? "no-issue" : "unclassified";
  std::sort(t.expected.begin(), t.expected.end());
  return t;
}

std::vector<BenchCase> load_corpus(const std::string &dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw CorpusError("corpus directory not found: " + dir);
  std::vector<std::string> names;
  for (const auto &entry : fs::directory_iterator(dir, ec))
    if (entry.is_directory())
      names.push_back(entry.path().filename().string());
  if (ec)
    throw CorpusError("cannot list " + dir + ": " + ec.message());
  std::sort(names.begin(), names.end());
  std::vector<BenchCase> cases;
  for (const auto &name : names) {
    fs::path cdir = fs::path(dir) / name;
    fs::path expect = cdir / "expect.txt";
    if (!fs::is_regular_file(expect, ec))
      throw CorpusError("case " + name + ": missing expect.txt");
    BenchCase c;
    c.dir = cdir.string();
    for (const auto &entry : fs::recursive_directory_iterator(cdir, ec)) {
      auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".c" || ext == ".h"))
        c.files.push_back(fs::relative(entry.path(), cdir).generic_string());
    }
    std::sort(c.files.begin(), c.files.end());
    auto lines_of = [&](const std::string &file) {
      if (std::find(c.files.begin(), c.files.end(), file) == c.files.end())
        return -1;
      return count_lines(read_file((cdir / file).string()));
    };
    c.truth = parse_expect(name, read_file(expect.string()), lines_of);
    cases.push_back(std::move(c));
  }
  return cases;
}

std::optional<double> RuleMetrics::precision() const {
  if (n == 0)
    return std::nullopt;
  return static_cast<double>(tp) / n;
}

double RuleMetrics::recall() const { return ni == 0 ? 0.0 : static_cast<double>(tp) / ni; }

double RuleMetrics::f1() const {
  auto p = precision();
  double r = recall();
  if (!p || *p + r == 0)
    return 0.0;
  return 2 * *p * r / (*p + r);
}

Metrics score(const std::vector<std::vector<Finding>> &results,
              const std::vector<GroundTruth> &truth) {
  Metrics m;
  for (size_t i = 0; i < truth.size(); ++i) {
    std::multiset<Expected> open(truth[i].expected.begin(), truth[i].expected.end());
    for (const auto &e : truth[i].expected)
      ++m.rules[static_cast<int>(e.rule)].ni;
    if (i >= results.size())
      continue;
    for (const auto &f : results[i]) {
      if (f.suppressed_by)
        continue;
      RuleMetrics &rm = m.rules[static_cast<int>(f.rule)];
      ++rm.n;
      auto it = open.find(Expected{f.location.file, f.location.line, f.rule});
      if (it != open.end()) {
        ++rm.tp;
        open.erase(it);
      }
    }
  }
  for (const auto &r : m.rules) {
    m.total.ni += r.ni;
    m.total.n += r.n;
    m.total.tp += r.tp;
  }
  return m;
}

BenchRun run_bench(const std::string &corpus_dir, const RuleConfig &rules, int jobs) {
  BenchRun run;
  run.cases = load_corpus(corpus_dir);
  const size_t n = run.cases.size();
  run.results.resize(n);
  run.timing.resize(n);
  std::vector<std::string> errors(n);
  const int threads = resolve_jobs(jobs);
  auto one = [&](size_t i) {
    try {
      ScanOptions o;
      o.paths = {run.cases[i].dir};
      o.rules = rules;
      o.jobs = 1;
      o.timing = true;
      ScanResult r = run_scan(o);
      run.results[i] = r.report.findings;
      run.timing[i] = {run.cases[i].truth.name, r.loc, r.report.timing->flow_ms,
                       r.report.timing->rules_ms};
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  };
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i)
      one(i);
  } else {
#ifdef _OPENMP
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < count; ++i)
      one(static_cast<size_t>(i));
#else
    for (size_t i = 0; i < n; ++i)
      one(i);
#endif
  }
  for (size_t i = 0; i < n; ++i)
    if (!errors[i].empty())
      throw CorpusError("case " + run.cases[i].truth.name + ": " + errors[i]);
  std::vector<GroundTruth> truth;
  for (const auto &c : run.cases)
    truth.push_back(c.truth);
  run.metrics = score(run.results, truth);
  return run;
}

namespace {

std::string pct(std::optional<double> v) {
  if (!v)
    return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v * 100);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

} // namespace

std::string metrics_table(const Metrics &m, bool refined) {
  // Reference counts (ground truth, reported, true positives) per rule.
  static const int target[4][3] = {{35, 34, 33}, {29, 27, 23}, {26, 30, 25}, {90, 91, 81}};
  const char *names[4] = {"BP-R1", "BP-R2", "BP-R3", "Total"};
  std::ostringstream os;
  os << "mode: " << (refined ? "refined" : "baseline") << "\n";
  os << "rule     NI    N   TP   P(%)     R(%)     F1    | target NI   N  TP   R(%)\n";
  for (int i = 0; i < 4; ++i) {
    const RuleMetrics &r = i < 3 ? m.rules[i] : m.total;
    char line[200];
    std::snprintf(line, sizeof line, "%-6s %4d %4d %4d  %-7s  %-7s  %-5s | %9d %3d %3d  %s\n",
                  names[i], r.ni, r.n, r.tp, pct(r.precision()).c_str(),
                  pct(r.recall()).c_str(), fixed(r.f1(), 3).c_str(), target[i][0],
                  target[i][1], target[i][2],
                  fixed(100.0 * target[i][2] / target[i][0], 2).c_str());
    os << line;
  }
  os << "note: the corpus is a reconstruction; target columns are reference\n"
        "numbers for comparison, not exact oracles.\n";
  return os.str();
}

std::string metrics_csv(const Metrics &m) {
  std::ostringstream os;
  os << "rule,NI,N,TP,precision,recall,F1\n";
  const char *names[4] = {"BP-R1", "BP-R2", "BP-R3", "total"};
  for (int i = 0; i < 4; ++i) {
    const RuleMetrics &r = i < 3 ? m.rules[i] : m.total;
    auto p = r.precision();
    os << names[i] << ',' << r.ni << ',' << r.n << ',' << r.tp << ','
       << (p ? fixed(*p, 4) : "NA") << ',' << fixed(r.recall(), 4) << ','
       << fixed(r.f1(), 4) << '\n';
  }
  return os.str();
}

std::string timing_csv(const std::vector<TimingRow> &rows) {
  std::ostringstream os;
  os << "case,loc,flow_ms,rules_ms\n";
  for (const auto &r : rows)
    os << r.name << ',' << r.loc << ',' << fixed(r.flow_ms, 3) << ','
       << fixed(r.rules_ms, 3) << '\n';
  return os.str();
}

} // namespace partcheck

#include "partcheck/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace partcheck {

using nlohmann::json;

size_t ScanReport::active_count() const {
  size_t n = 0;
  for (const auto &f : findings)
    if (!f.suppressed_by)
      ++n;
  return n;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "text")
    return Format::Text;
  if (s == "json")
    return Format::Json;
  if (s == "sarif")
    return Format::Sarif;
  return std::nullopt;
}

int exit_code_for(const ScanReport &report) { return report.active_count() ? 1 : 0; }

namespace {

json loc_json(const SourceLocation &l) {
  return json{{"file", l.file}, {"line", l.line}, {"column", l.column}};
}

SourceLocation loc_from(const json &j) {
  return SourceLocation{j.at("file").get<std::string>(), j.at("line").get<int>(),
                        j.at("column").get<int>()};
}

json opt_json(const std::optional<std::string> &s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> opt_from(const json &j) {
  if (j.is_null())
    return std::nullopt;
  return j.get<std::string>();
}

Evidence parse_evidence(const std::string &s) {
  for (Evidence e : {Evidence::None, Evidence::CaSide, Evidence::TaSide, Evidence::Annotation})
    if (s == to_string(e))
      return e;
  throw ConfigError("unknown evidence: " + s);
}

json binding_json(const ParamBinding &b) {
  return json{{"entry_function", b.entry_function},
              {"command", opt_json(b.command_id)},
              {"index", b.index},
              {"role", to_string(b.role)},
              {"kind", to_string(b.kind)},
              {"evidence", to_string(b.evidence)},
              {"location", loc_json(b.location)},
              {"file", b.file}};
}

ParamBinding binding_from(const json &j) {
  ParamBinding b;
  b.entry_function = j.at("entry_function").get<std::string>();
  b.command_id = opt_from(j.at("command"));
  b.index = j.at("index").get<int>();
  auto role = parse_role(j.at("role").get<std::string>());
  auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!role || !kind)
    throw ConfigError("bad parameter binding in report");
  b.role = *role;
  b.kind = *kind;
  b.evidence = parse_evidence(j.at("evidence").get<std::string>());
  b.location = loc_from(j.at("location"));
  b.file = j.at("file").get<std::string>();
  return b;
}

json report_json(const ScanReport &r) {
  json findings = json::array();
  for (const auto &f : r.findings) {
    json trace = json::array();
    for (const auto &t : f.trace)
      trace.push_back(loc_json(t));
    findings.push_back(json{{"rule", to_string(f.rule)},
                            {"location", loc_json(f.location)},
                            {"entry_function", f.entry_function},
                            {"param", binding_json(f.param)},
                            {"message", f.message},
                            {"trace", trace},
                            {"suppressed_by", opt_json(f.suppressed_by)},
                            {"node", f.node}});
  }
  json warnings = json::array();
  for (const auto &w : r.warnings)
    warnings.push_back(json{{"location", loc_json(w.loc)}, {"message", w.message}});
  json config{{"paths", r.config.paths},
              {"refined", r.config.rules.refined},
              {"extended_r2", r.config.rules.extended_r2},
              {"deep_pointers", r.config.rules.deep_pointers},
              {"catalog", opt_json(r.config.catalog)},
              {"annotations", opt_json(r.config.annotations)}};
  json doc{{"tool", kToolName},
           {"version", r.tool_version},
           {"config", config},
           {"findings", findings},
           {"warnings", warnings},
           {"summary",
            {{"findings", r.active_count()},
             {"suppressed", r.findings.size() - r.active_count()}}}};
  if (r.timing)
    doc["timing"] = json{{"parse_ms", r.timing->parse_ms},
                         {"flow_ms", r.timing->flow_ms},
                         {"rules_ms", r.timing->rules_ms}};
  return doc;
}

std::string text_report(const ScanReport &r) {
  std::ostringstream os;
  size_t counts[3] = {0, 0, 0};
  size_t suppressed = 0;
  for (const auto &f : r.findings) {
    os << to_string(f.rule) << ' ' << to_string(f.location) << ' ' << f.message;
    if (f.suppressed_by) {
      os << " [suppressed " << *f.suppressed_by << ']';
      ++suppressed;
    } else {
      ++counts[static_cast<int>(f.rule)];
    }
    os << '\n';
  }
  for (const auto &w : r.warnings)
    os << "warning: " << to_string(w.loc) << ' ' << w.message << '\n';
  size_t active = counts[0] + counts[1] + counts[2];
  os << active << (active == 1 ? " finding" : " findings");
  if (active)
    os << " (BP-R1 " << counts[0] << ", BP-R2 " << counts[1] << ", BP-R3 " << counts[2]
       << ')';
  if (suppressed)
    os << ", " << suppressed << " suppressed";
  os << '\n';
  if (r.timing) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "timing: parse %.3f ms, flow %.3f ms, rules %.3f ms\n",
                  r.timing->parse_ms, r.timing->flow_ms, r.timing->rules_ms);
    os << buf;
  }
  return os.str();
}

json sarif_location(const SourceLocation &l) {
  json region{{"startLine", std::max(1, l.line)}};
  if (l.column > 0)
    region["startColumn"] = l.column;
  return json{{"physicalLocation",
               {{"artifactLocation", {{"uri", l.file}}}, {"region", region}}}};
}

std::string sarif_report(const ScanReport &r) {
  json rules = json::array();
  const RuleId ids[] = {RuleId::BP_R1, RuleId::BP_R2, RuleId::BP_R3};
  for (RuleId id : ids) {
    std::string doc = explain(id);
    std::string first = doc.substr(0, doc.find('\n'));
    std::string name = first.substr(first.find_first_not_of(' ', 5));
    rules.push_back(json{{"id", to_string(id)},
                         {"name", name},
                         {"shortDescription", {{"text", name}}},
                         {"fullDescription", {{"text", doc}}},
                         {"defaultConfiguration", {{"level", "error"}}}});
  }
  json results = json::array();
  for (const auto &f : r.findings) {
    json thread = json::array();
    for (const auto &t : f.trace)
      thread.push_back(json{{"location", sarif_location(t)}});
    json res{{"ruleId", to_string(f.rule)},
             {"ruleIndex", static_cast<int>(f.rule)},
             {"level", "error"},
             {"message", {{"text", f.message}}},
             {"locations", json::array({sarif_location(f.location)})},
             {"codeFlows",
              json::array({{{"threadFlows", json::array({{{"locations", thread}}})}}})},
             {"properties",
              {{"entryFunction", f.entry_function},
               {"command", opt_json(f.param.command_id)},
               {"paramIndex", f.param.index},
               {"paramRole", to_string(f.param.role)}}}};
    if (f.suppressed_by)
      res["suppressions"] =
          json::array({{{"kind", "external"}, {"justification", *f.suppressed_by}}});
    results.push_back(std::move(res));
  }
  json notes = json::array();
  for (const auto &w : r.warnings)
    notes.push_back(json{{"level", "warning"},
                         {"message", {{"text", w.message}}},
                         {"locations", json::array({sarif_location(w.loc)})}});
  json run{{"tool",
            {{"driver",
              {{"name", kToolName}, {"version", r.tool_version}, {"rules", rules}}}}},
           {"results", results},
           {"invocations",
            json::array({{{"executionSuccessful", true},
                          {"toolExecutionNotifications", notes}}})}};
  json doc{{"$schema", "https://json.schemastore.org/sarif-2.1.0.json"},
           {"version", "2.1.0"},
           {"runs", json::array({run})}};
  return doc.dump(2) + "\n";
}

} // namespace

std::string emit(const ScanReport &unsorted, Format format) {
  ScanReport report = unsorted;
  std::sort(report.findings.begin(), report.findings.end(), finding_less);
  std::sort(report.warnings.begin(), report.warnings.end());
  switch (format) {
  case Format::Text:
    return text_report(report);
  case Format::Json:
    return report_json(report).dump(2) + "\n";
  case Format::Sarif:
    return sarif_report(report);
  }
  return {};
}

ScanReport parse_report_json(const std::string &text) {
  try {
    json doc = json::parse(text);
    ScanReport r;
    r.tool_version = doc.at("version").get<std::string>();
    const json &c = doc.at("config");
    r.config.paths = c.at("paths").get<std::vector<std::string>>();
    r.config.rules.refined = c.at("refined").get<bool>();
    r.config.rules.extended_r2 = c.at("extended_r2").get<bool>();
    r.config.rules.deep_pointers = c.at("deep_pointers").get<bool>();
    r.config.catalog = opt_from(c.at("catalog"));
    r.config.annotations = opt_from(c.at("annotations"));
    for (const auto &jf : doc.at("findings")) {
      Finding f;
      auto rule = parse_rule(jf.at("rule").get<std::string>());
      if (!rule)
        throw ConfigError("unknown rule in report");
      f.rule = *rule;
      f.location = loc_from(jf.at("location"));
      f.entry_function = jf.at("entry_function").get<std::string>();
      f.param = binding_from(jf.at("param"));
      f.message = jf.at("message").get<std::string>();
      for (const auto &t : jf.at("trace"))
        f.trace.push_back(loc_from(t));
      f.suppressed_by = opt_from(jf.at("suppressed_by"));
      f.node = jf.at("node").get<int>();
      r.findings.push_back(std::move(f));
    }
    for (const auto &jw : doc.at("warnings"))
      r.warnings.push_back({loc_from(jw.at("location")), jw.at("message").get<std::string>()});
    if (doc.contains("timing")) {
      const json &t = doc["timing"];
      r.timing = Timing{t.at("parse_ms").get<double>(), t.at("flow_ms").get<double>(),
                        t.at("rules_ms").get<double>()};
    }
    return r;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::vector<std::string> validate_sarif(const std::string &text) {
  std::vector<std::string> errs;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    return {std::string("not JSON: ") + e.what()};
  }
  auto need = [&](const json &j, const char *key, const std::string &where,
                  json::value_t type) -> const json * {
    if (!j.is_object() || !j.contains(key)) {
      errs.push_back(where + ": missing '" + key + "'");
      return nullptr;
    }
    const json &v = j.at(key);
    bool ok = v.type() == type ||
              (type == json::value_t::number_integer && v.is_number_integer());
    if (!ok) {
      errs.push_back(where + ": '" + key + "' has the wrong type");
      return nullptr;
    }
    return &v;
  };
  if (!doc.is_object())
    return {"top level is not an object"};
  if (const json *v = need(doc, "version", "log", json::value_t::string); v && *v != "2.1.0")
    errs.push_back("log: version is not 2.1.0");
  const json *runs = need(doc, "runs", "log", json::value_t::array);
  if (!runs)
    return errs;
  if (runs->empty())
    errs.push_back("log: runs is empty");
  for (size_t ri = 0; ri < runs->size(); ++ri) {
    const json &run = (*runs)[ri];
    std::string where = "runs[" + std::to_string(ri) + "]";
    std::set<std::string> rule_ids;
    size_t rule_count = 0;
    if (const json *tool = need(run, "tool", where, json::value_t::object)) {
      if (const json *driver = need(*tool, "driver", where + ".tool", json::value_t::object)) {
        need(*driver, "name", where + ".tool.driver", json::value_t::string);
        if (const json *rules = need(*driver, "rules", where + ".tool.driver",
                                     json::value_t::array)) {
          rule_count = rules->size();
          for (size_t i = 0; i < rules->size(); ++i) {
            std::string rw = where + ".tool.driver.rules[" + std::to_string(i) + "]";
            if (const json *id = need((*rules)[i], "id", rw, json::value_t::string))
              if (!rule_ids.insert(id->get<std::string>()).second)
                errs.push_back(rw + ": duplicate rule id");
          }
        }
      }
    }
    const json *results = need(run, "results", where, json::value_t::array);
    if (!results)
      continue;
    for (size_t i = 0; i < results->size(); ++i) {
      const json &res = (*results)[i];
      std::string rw = where + ".results[" + std::to_string(i) + "]";
      if (const json *id = need(res, "ruleId", rw, json::value_t::string))
        if (!rule_ids.count(id->get<std::string>()))
          errs.push_back(rw + ": ruleId not declared in tool.driver.rules");
      if (res.contains("ruleIndex")) {
        const json &ix = res["ruleIndex"];
        if (!ix.is_number_integer() || ix.get<long long>() < 0 ||
            static_cast<size_t>(ix.get<long long>()) >= rule_count)
          errs.push_back(rw + ": ruleIndex out of range");
      }
      if (const json *msg = need(res, "message", rw, json::value_t::object))
        need(*msg, "text", rw + ".message", json::value_t::string);
      auto check_location = [&](const json &l, const std::string &lw) {
        const json *pl = need(l, "physicalLocation", lw, json::value_t::object);
        if (!pl)
          return;
        if (const json *al = need(*pl, "artifactLocation", lw + ".physicalLocation",
                                  json::value_t::object))
          need(*al, "uri", lw + ".physicalLocation.artifactLocation", json::value_t::string);
        if (pl->contains("region")) {
          const json *sl = need((*pl)["region"], "startLine",
                                lw + ".physicalLocation.region",
                                json::value_t::number_integer);
          if (sl && sl->get<long long>() < 1)
            errs.push_back(lw + ": startLine must be at least 1");
        }
      };
      if (const json *locs = need(res, "locations", rw, json::value_t::array)) {
        if (locs->empty())
          errs.push_back(rw + ": locations is empty");
        for (size_t k = 0; k < locs->size(); ++k)
          check_location((*locs)[k], rw + ".locations[" + std::to_string(k) + "]");
      }
      if (res.contains("codeFlows")) {
        const json &cfs = res["codeFlows"];
        if (!cfs.is_array()) {
          errs.push_back(rw + ": codeFlows is not an array");
          continue;
        }
        for (size_t c = 0; c < cfs.size(); ++c) {
          std::string cw = rw + ".codeFlows[" + std::to_string(c) + "]";
          const json *tfs = need(cfs[c], "threadFlows", cw, json::value_t::array);
          if (!tfs)
            continue;
          for (size_t t = 0; t < tfs->size(); ++t) {
            std::string tw = cw + ".threadFlows[" + std::to_string(t) + "]";
            const json *tl = need((*tfs)[t], "locations", tw, json::value_t::array);
            if (!tl)
              continue;
            if (tl->empty())
              errs.push_back(tw + ": locations is empty");
            for (size_t k = 0; k < tl->size(); ++k) {
              std::string kw = tw + ".locations[" + std::to_string(k) + "]";
              if (const json *l = need((*tl)[k], "location", kw, json::value_t::object))
                check_location(*l, kw + ".location");
            }
          }
        }
      }
    }
  }
  return errs;
}

void write_output(const std::string &path, const std::string &data) {
  if (path == "-" || path.empty()) {
    std::cout << data;
    std::cout.flush();
    if (!std::cout)
      throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open " + path + " for writing");
  out << data;
  if (!out)
    throw IoError("write failed: " + path);
}

} // namespace partcheck

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vsidslab/harness.hpp"

namespace vsidslab {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->get<T>();
  }
}

// Column order shared by JSON keys and CSV headers.
#define VSIDSLAB_RECORD_OPTIONALS(X) \
  X(mean_spearman_tdc)               \
  X(mean_spearman_tec)               \
  X(mean_top1_tdc)                   \
  X(mean_top10_tdc)                  \
  X(mean_top1_tec)                   \
  X(mean_top10_tec)                  \
  X(mean_pearson_tdc)                \
  X(min_spearman_tdc)                \
  X(initial_pearson_tdc)             \
  X(spatial_score)                   \
  X(temporal_score)                  \
  X(pct_bridge_vars)                 \
  X(pct_bridge_picked)               \
  X(pct_bridge_bumped)               \
  X(pct_bridge_learnt)               \
  X(modularity)

#define VSIDSLAB_AGGREGATE_OPTIONALS(X) \
  X(mean_runtime)                       \
  X(mean_spearman_tdc)                  \
  X(mean_spearman_tec)                  \
  X(mean_top1_tdc)                      \
  X(mean_top10_tdc)                     \
  X(mean_top1_tec)                      \
  X(mean_top10_tec)                     \
  X(mean_pearson_tdc)                   \
  X(spatial_score)                      \
  X(temporal_score)                     \
  X(pct_bridge_vars)                    \
  X(pct_bridge_picked)                  \
  X(pct_bridge_bumped)                  \
  X(pct_bridge_learnt)                  \
  X(modularity)

json record_json(const InstanceRecord& r) {
  json j;
  j["instance"] = r.instance;
  j["category"] = r.category;
  j["heuristic"] = r.heuristic;
  j["status"] = r.status;
  j["runtime"] = r.runtime;
  j["decisions"] = r.decisions;
  j["conflicts"] = r.conflicts;
  j["propagations"] = r.propagations;
  j["restarts"] = r.restarts;
  j["reductions"] = r.reductions;
  j["samples"] = r.samples;
#define X(name) j[#name] = opt(r.name);
  VSIDSLAB_RECORD_OPTIONALS(X)
#undef X
  j["num_communities"] = opt(r.num_communities);
  j["excluded"] = r.excluded;
  j["note"] = r.note;
  return j;
}

InstanceRecord record_from(const json& j) {
  InstanceRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.category = j.at("category").get<std::string>();
  r.heuristic = j.at("heuristic").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.runtime = j.at("runtime").get<double>();
  r.decisions = j.at("decisions").get<std::uint64_t>();
  r.conflicts = j.at("conflicts").get<std::uint64_t>();
  r.propagations = j.at("propagations").get<std::uint64_t>();
  r.restarts = j.at("restarts").get<std::uint64_t>();
  r.reductions = j.at("reductions").get<std::uint64_t>();
  r.samples = j.at("samples").get<std::uint64_t>();
#define X(name) read_opt(j, #name, r.name);
  VSIDSLAB_RECORD_OPTIONALS(X)
#undef X
  read_opt(j, "num_communities", r.num_communities);
  r.excluded = j.at("excluded").get<bool>();
  r.note = j.at("note").get<std::string>();
  return r;
}

json aggregate_json(const AggregateRecord& a) {
  json j;
  j["category"] = a.category;
  j["heuristic"] = a.heuristic;
  j["instances"] = a.instances;
  j["solved"] = a.solved;
#define X(name) j[#name] = opt(a.name);
  VSIDSLAB_AGGREGATE_OPTIONALS(X)
#undef X
  return j;
}

AggregateRecord aggregate_from(const json& j) {
  AggregateRecord a;
  a.category = j.at("category").get<std::string>();
  a.heuristic = j.at("heuristic").get<std::string>();
  a.instances = j.at("instances").get<std::uint64_t>();
  a.solved = j.at("solved").get<std::uint64_t>();
#define X(name) read_opt(j, #name, a.name);
  VSIDSLAB_AGGREGATE_OPTIONALS(X)
#undef X
  return a;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["experiment"] = report.experiment;
  j["records"] = json::array();
  for (const auto& r : report.records) j["records"].push_back(record_json(r));
  j["aggregates"] = json::array();
  for (const auto& a : report.aggregates) j["aggregates"].push_back(aggregate_json(a));
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    ExperimentReport report;
    report.experiment = j.at("experiment").get<std::string>();
    for (const auto& r : j.at("records")) report.records.push_back(record_from(r));
    for (const auto& a : j.at("aggregates")) report.aggregates.push_back(aggregate_from(a));
    return report;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "instance,category,heuristic,status,runtime,decisions,conflicts,propagations,restarts,reductions,samples";
#define X(name) out << "," #name;
  VSIDSLAB_RECORD_OPTIONALS(X)
#undef X
  out << ",num_communities,excluded,note\n";
  for (const auto& r : report.records) {
    out << quote(r.instance) << ',' << quote(r.category) << ',' << r.heuristic << ',' << r.status << ','
        << num(r.runtime) << ',' << r.decisions << ',' << r.conflicts << ',' << r.propagations << ',' << r.restarts
        << ',' << r.reductions << ',' << r.samples;
#define X(name) out << ',' << cell(r.name);
    VSIDSLAB_RECORD_OPTIONALS(X)
#undef X
    out << ',' << cell(r.num_communities) << ',' << (r.excluded ? 1 : 0) << ',' << quote(r.note) << '\n';
  }
  return out.str();
}

std::string cactus_csv(const ExperimentReport& report) {
  std::map<std::string, std::vector<double>> times;
  std::vector<std::string> order;
  for (const auto& r : report.records) {
    if (!times.count(r.heuristic)) order.push_back(r.heuristic);
    auto& t = times[r.heuristic];
    if (!r.excluded && (r.status == "sat" || r.status == "unsat")) t.push_back(r.runtime);
  }
  std::ostringstream out;
  out << "heuristic,solved_count,seconds\n";
  for (const auto& h : order) {
    auto t = times[h];
    std::sort(t.begin(), t.end());
    for (std::size_t i = 0; i < t.size(); ++i) out << h << ',' << i + 1 << ',' << num(t[i]) << '\n';
  }
  return out.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace vsidslab

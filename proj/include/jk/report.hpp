#pragma once
// Verification reports: named checks with pass/fail/skipped status, a metric
// ("exact" or a max error) and a witness on failure. JSON via nlohmann.

#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jk/algebra.hpp"

namespace jk {

using json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "skipped") return Status::Skipped;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::optional<double> metric;  // empty means exact
  json witness;                  // null unless the check failed

  bool passed() const { return status != Status::Fail; }

  static Check exact(std::string name, bool ok, json witness = nullptr) {
    return {std::move(name), ok ? Status::Pass : Status::Fail, std::nullopt, ok ? json(nullptr) : std::move(witness)};
  }
  static Check numeric(std::string name, double err, double tol, json witness = nullptr) {
    bool ok = err <= tol;  // NaN fails
    return {std::move(name), ok ? Status::Pass : Status::Fail, err, ok ? json(nullptr) : std::move(witness)};
  }
  static Check skipped(std::string name, std::string why) {
    return {std::move(name), Status::Skipped, std::nullopt, json{{"reason", std::move(why)}}};
  }

  friend bool operator==(const Check& a, const Check& b) {
    return a.name == b.name && a.status == b.status && a.metric == b.metric && a.witness == b.witness;
  }
};

struct Report {
  std::string suite;
  std::string algebra;
  json params = json::object();
  std::vector<Check> checks;
  long long wall_time_ms = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const std::vector<Check>& cs, const std::string& prefix = "") {
    for (auto c : cs) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }
  /// Deterministic order for merged reports.
  void sort_checks() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.suite == b.suite && a.algebra == b.algebra && a.params == b.params && a.checks == b.checks &&
           a.wall_time_ms == b.wall_time_ms;
  }
};

/// Witness helper: coordinates as exact strings.
template <class S>
json coords_json(const Element<S>& x) {
  json a = json::array();
  for (const auto& c : x.coords) {
    if constexpr (std::is_same_v<S, double>) a.push_back(c);
    else a.push_back(to_string(c));
  }
  return a;
}

inline json to_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["status"] = status_name(c.status);
  if (c.metric) j["metric"] = *c.metric;
  else j["metric"] = "exact";
  j["witness"] = c.witness;
  return j;
}

inline json to_json(const Report& r) {
  json j;
  j["suite"] = r.suite;
  j["algebra"] = r.algebra;
  j["params"] = r.params;
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

inline Report report_from_json(const json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.algebra = j.at("algebra").get<std::string>();
  r.params = j.at("params");
  for (const auto& c : j.at("checks")) {
    Check k;
    k.name = c.at("name").get<std::string>();
    k.status = parse_status(c.at("status").get<std::string>());
    const auto& m = c.at("metric");
    if (m.is_string()) {
      if (m.get<std::string>() != "exact") throw std::invalid_argument("metric must be a number or \"exact\"");
    } else if (m.is_null()) {
      k.metric = std::numeric_limits<double>::quiet_NaN();  // NaN serializes as null
    } else {
      k.metric = m.get<double>();
    }
    k.witness = c.at("witness");
    r.checks.push_back(std::move(k));
  }
  r.wall_time_ms = j.at("wall_time_ms").get<long long>();
  return r;
}

enum class Format { Text, Json };

inline void emit(const Report& r, Format f, std::ostream& os) {
  if (f == Format::Json) {
    os << to_json(r).dump(2) << "\n";
    return;
  }
  std::size_t w = 5;
  for (const auto& c : r.checks) w = std::max(w, c.name.size());
  os << "suite: " << r.suite << "   algebra: " << r.algebra << "\n";
  if (!r.params.empty()) os << "params: " << r.params.dump() << "\n";
  os << std::left << std::setw(static_cast<int>(w)) << "check"
     << "  status   metric\n";
  os << std::string(w, '-') << "  -------  ----------\n";
  for (const auto& c : r.checks) {
    std::ostringstream m;
    if (c.metric) m << std::scientific << std::setprecision(3) << *c.metric;
    else m << "exact";
    os << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << std::setw(7) << status_name(c.status) << "  "
       << m.str() << "\n";
    if (!c.witness.is_null() && c.status == Status::Fail) os << "    witness: " << c.witness.dump() << "\n";
  }
  std::size_t fails = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.passed(); });
  os << (fails ? "FAILED " : "OK ") << (r.checks.size() - fails) << "/" << r.checks.size() << " checks passed"
     << "   (" << r.wall_time_ms << " ms)\n";
}

inline std::string emit(const Report& r, Format f) {
  std::ostringstream os;
  emit(r, f, os);
  return os.str();
}

}  // namespace jk

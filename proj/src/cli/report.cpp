#include "ymh/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ymh::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string num(const json& j) { return j.is_number() ? num(j.get<double>()) : j.dump(); }

std::string vec(const json& j) {
  std::string out = "(";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + num(j[i]);
  return out + ")";
}

void spectrum_table(std::ostringstream& os, const std::string& title, const json& spectrum) {
  os << "## " << title << "\n\n| value | multiplicity |\n|---:|---:|\n";
  for (const auto& g : spectrum) os << "| " << num(g["value"]) << " | " << g["multiplicity"].get<int>() << " |\n";
  os << "\n";
}

}  // namespace

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_markdown(const json& r) {
  std::ostringstream os;
  const std::string name = r["model"].value("name", std::string("model"));
  os << "# Vacuum analysis: " << name << "\n\n";
  os << "- tool: ymh " << r["tool"]["version"].get<std::string>() << " (schema " << r["schema_version"].get<int>()
     << ")\n";
  os << "- seed: " << r["seed"].get<std::uint64_t>() << ", trials: " << r["trials"].get<int>() << "\n";
  os << "- overall: **" << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "**\n\n";

  if (r.contains("minimum")) {
    const auto& m = r["minimum"];
    os << "## Minimum\n\n- z0 = " << vec(m["z0"]) << "\n- V(z0) = " << num(m["value"])
       << "\n- |grad V| = " << num(m["grad_norm"]) << "\n\n";
  }
  if (r.contains("stabilizer")) {
    os << "## Stabilizer\n\n- dim Lie(H) = " << r["stabilizer"]["dim"].get<int>() << "\n";
    for (const auto& b : r["stabilizer"]["basis"]) os << "- generator " << vec(b) << "\n";
    os << "\n";
  }
  if (r.contains("spaces")) {
    const auto& s = r["spaces"];
    os << "## Spaces\n\n| space | dim |\n|---|---:|\n"
       << "| algebra | " << s["algebra_dim"] << " |\n| stabilizer complement | " << s["complement_dim"]
       << " |\n| Goldstone | " << s["goldstone_dim"] << " |\n| physical Higgs | " << s["physical_dim"] << " |\n\n";
  }
  if (r.contains("higgs_spectrum")) spectrum_table(os, "Higgs mass spectrum", r["higgs_spectrum"]);
  if (r.contains("ym_spectrum")) spectrum_table(os, "Gauge boson mass spectrum", r["ym_spectrum"]);
  if (r.contains("holonomy") && !r["holonomy"].is_null()) {
    const auto& h = r["holonomy"];
    os << "## Holonomy\n\n- " << h["kind"].get<std::string>() << " of length " << h["length"] << ", group "
       << h["group"].get<std::string>() << "\n- connections: " << h["connections"] << ", classes: " << h["classes"]
       << "\n- labels: " << h["labels"].dump() << "\n\n";
  }

  os << "## Checks\n\n| section | check | value | threshold | status |\n|---|---|---:|---:|---|\n";
  for (const auto& c : r["checks"])
    os << "| " << c["section"].get<std::string>() << " | " << c["name"].get<std::string>() << " | " << num(c["value"])
       << " | " << num(c["threshold"]) << " | " << (c["pass"].get<bool>() ? "pass" : "FAIL") << " |\n";
  return os.str();
}

std::string render_check_table(const std::vector<CheckRow>& rows) {
  std::size_t wm = 5, ws = 7, wn = 5;
  for (const auto& r : rows) {
    wm = std::max(wm, r.model.size());
    ws = std::max(ws, r.section.size());
    wn = std::max(wn, r.name.size());
  }
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %-*s  %12s  %12s  %s\n", static_cast<int>(wm), "model",
                static_cast<int>(ws), "section", static_cast<int>(wn), "check", "value", "threshold", "status");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %-*s  %12.4g  %12.4g  %s\n", static_cast<int>(wm), r.model.c_str(),
                  static_cast<int>(ws), r.section.c_str(), static_cast<int>(wn), r.name.c_str(), r.value, r.threshold,
                  r.pass ? "pass" : "FAIL");
    os << buf;
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; });
  os << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " checks passed\n";
  return os.str();
}

}  // namespace ymh::cli

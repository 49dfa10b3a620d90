#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace hkm::cli {

/// Where an expected value comes from.
enum class Provenance { identity, definition, oracle };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::identity: return "identity";
    case Provenance::definition: return "definition";
    case Provenance::oracle: return "oracle";
  }
  return "?";
}

struct CheckRecord {
  std::string name;
  std::string anchor;
  Provenance provenance = Provenance::oracle;
  std::string inputs;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// FNV-1a, hex.
inline std::string digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

struct Report {
  std::string suite;
  std::map<std::string, std::string> params;
  std::vector<CheckRecord> checks;
  /// window-stability flags by name
  std::map<std::string, bool> stability;
  /// wall-clock per phase in ms; only written when requested
  std::map<std::string, double> timings;
  bool with_timings = false;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool stable() const {
    for (const auto& [k, v] : stability)
      if (!v) return false;
    return true;
  }

  void sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["params"] = params;
    j["passed"] = passed();
    j["stable"] = stable();
    j["stability"] = stability;
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json r;
      r["name"] = c.name;
      r["anchor"] = c.anchor;
      r["provenance"] = provenance_name(c.provenance);
      r["inputs"] = c.inputs;
      r["inputs_digest"] = digest(c.inputs);
      r["expected"] = c.expected;
      r["actual"] = c.actual;
      r["pass"] = c.pass;
      arr.push_back(std::move(r));
    }
    if (with_timings) j["timings_ms"] = timings;
    return j;
  }

  std::string csv() const {
    auto q = [](const std::string& s) {
      std::string o = "\"";
      for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
      return o + "\"";
    };
    std::ostringstream o;
    o << "suite,name,anchor,provenance,inputs,inputs_digest,expected,actual,pass\n";
    for (const auto& c : checks)
      o << q(suite) << ',' << q(c.name) << ',' << q(c.anchor) << ',' << provenance_name(c.provenance) << ','
        << q(c.inputs) << ',' << digest(c.inputs) << ',' << q(c.expected) << ',' << q(c.actual) << ','
        << (c.pass ? "pass" : "FAIL") << '\n';
    return o.str();
  }

  std::string text() const {
    std::ostringstream o;
    o << "suite " << suite << '\n';
    for (const auto& [k, v] : params) o << "  " << k << " = " << v << '\n';
    for (const auto& c : checks)
      o << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  expected " << c.expected << "  actual " << c.actual
        << '\n';
    for (const auto& [k, v] : stability)
      if (!v) o << "  unstable  " << k << '\n';
    if (with_timings)
      for (const auto& [k, v] : timings) o << "  time  " << k << "  " << v << " ms\n";
    o << (passed() ? "PASS" : "FAIL") << "  " << checks.size() << " checks\n";
    return o.str();
  }

  std::string render(const std::string& format) const {
    if (format == "json") return json().dump(2) + "\n";
    if (format == "csv") return csv();
    return text();
  }
};

}  // namespace hkm::cli

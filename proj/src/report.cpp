#include "report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qh {

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void SuiteReport::add(RelationReport r) { checks.push_back(std::move(r)); }

void SuiteReport::add(const std::string& id, const std::string& description,
                      bool ok, const std::string& witness,
                      std::map<std::string, std::string> ranges) {
  checks.push_back({id, description, std::move(ranges), ok, witness});
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["suite"] = suite;
  j["config"] = config;
  j["pass"] = pass();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["description"] = c.description;
    cj["ranges"] = c.ranges;
    cj["pass"] = c.pass;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

std::string SuiteReport::summary_table() const {
  std::ostringstream os;
  size_t wid = 8;
  for (const auto& c : checks) wid = std::max(wid, c.id.size());
  for (const auto& c : checks) {
    os << (c.pass ? "pass  " : "FAIL  ") << c.id;
    for (size_t i = c.id.size(); i < wid + 2; ++i) os << ' ';
    os << c.description;
    if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

} // namespace qh

#ifndef QH_REPORT_HPP
#define QH_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace qh {

// One verified identity: an id naming what was checked, the tested ranges,
// and a witness when the residual was nonzero.
struct RelationReport {
  std::string id;
  std::string description;
  std::map<std::string, std::string> ranges;
  bool pass = true;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<RelationReport> checks;

  bool pass() const;
  void add(RelationReport r);
  void add(const std::string& id, const std::string& description, bool ok,
           const std::string& witness = "",
           std::map<std::string, std::string> ranges = {});
  std::string to_json() const;
  std::string summary_table() const;
};

// atomic write: temp file + rename
void write_file_atomic(const std::string& path, const std::string& content);

std::string csv_escape(const std::string& s);

} // namespace qh

#endif

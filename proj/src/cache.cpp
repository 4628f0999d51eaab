#include "cache.hpp"
#include "report.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qh {

namespace fs = std::filesystem;

std::string default_cache_dir() {
  if (const char* env = std::getenv("QHECKE_CACHE_DIR")) return env;
  return ".qhecke-cache";
}

static nlohmann::ordered_json svec_json(const SVec& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [i, c] : v) arr.push_back({i, to_string(c)});
  return arr;
}

static SVec svec_parse(const nlohmann::json& j) {
  SVec v;
  for (const auto& e : j) v[e[0].get<int>()] = rat(e[1].get<std::string>());
  return v;
}

static nlohmann::ordered_json mono_json(const NormalMono& m) {
  nlohmann::ordered_json j;
  j["w"] = m.w.one_line();
  j["a"] = m.a;
  j["nu"] = m.nu;
  return j;
}

static NormalMono mono_parse(const nlohmann::json& j) {
  return {Perm(j["w"].get<std::vector<int>>()), j["a"].get<std::vector<int>>(),
          j["nu"].get<Idem>()};
}

std::string fga_to_json(const FGA& A) {
  nlohmann::ordered_json j;
  j["format_version"] = kCacheFormatVersion;
  j["provenance"] = A.key;
  j["labels"] = A.labels;
  j["degrees"] = A.degrees;
  auto sec = nlohmann::ordered_json::array();
  for (const auto& m : A.section) sec.push_back(mono_json(m));
  j["section"] = sec;
  j["unit"] = svec_json(A.unit);
  auto gens = nlohmann::ordered_json::array();
  for (const auto& [name, v] : A.gens) gens.push_back({name, svec_json(v)});
  j["gens"] = gens;
  auto table = nlohmann::ordered_json::array();
  for (int i = 0; i < A.dim(); ++i)
    for (int k = 0; k < A.dim(); ++k) {
      if (A.table[i][k].empty()) continue;
      table.push_back({i, k, svec_json(A.table[i][k])});
    }
  j["table"] = table;
  return j.dump() + "\n";
}

FGA fga_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != kCacheFormatVersion)
    throw std::runtime_error("cache: format version mismatch");
  FGA A;
  A.key = j.at("provenance").get<std::string>();
  A.labels = j.at("labels").get<std::vector<std::string>>();
  A.degrees = j.at("degrees").get<std::vector<int>>();
  for (const auto& m : j.at("section")) A.section.push_back(mono_parse(m));
  A.unit = svec_parse(j.at("unit"));
  for (const auto& g : j.at("gens"))
    A.gens.emplace_back(g[0].get<std::string>(), svec_parse(g[1]));
  A.table.assign(A.dim(), std::vector<SVec>(A.dim()));
  for (const auto& e : j.at("table"))
    A.table[e[0].get<int>()][e[1].get<int>()] = svec_parse(e[2]);
  return A;
}

static std::string key_path(const std::string& dir, const std::string& key) {
  std::string safe;
  for (char c : key) safe += (isalnum(uint8_t(c)) || c == '-' || c == '_') ? c : '_';
  return (fs::path(dir) / (safe + ".json")).string();
}

bool cache_load(const std::string& dir, const std::string& key, FGA& out) {
  if (dir.empty()) return false;
  std::ifstream in(key_path(dir, key), std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    FGA A = fga_from_json(ss.str());
    if (A.key != key) return false;
    out = std::move(A);
    return true;
  } catch (const std::exception&) {
    return false; // corrupt entry: caller rebuilds
  }
}

void cache_store(const std::string& dir, const std::string& key, const FGA& A) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  write_file_atomic(key_path(dir, key), fga_to_json(A));
}

void cache_clear(const std::string& dir) {
  if (dir.empty() || !fs::exists(dir)) return;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") fs::remove(e.path());
}

std::vector<std::string> cache_list(const std::string& dir) {
  std::vector<std::string> out;
  if (dir.empty() || !fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace qh

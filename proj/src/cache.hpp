#ifndef QH_CACHE_HPP
#define QH_CACHE_HPP

#include "fga.hpp"

#include <optional>
#include <string>

namespace qh {

// Disk cache for structure-constant tables.  Self-describing JSON with a
// format version and the provenance key; identical inputs serialize to
// byte-identical files.
inline constexpr int kCacheFormatVersion = 1;

std::string default_cache_dir();
std::string fga_to_json(const FGA& A);
FGA fga_from_json(const std::string& text);
// returns false if absent or incompatible (caller rebuilds)
bool cache_load(const std::string& dir, const std::string& key, FGA& out);
void cache_store(const std::string& dir, const std::string& key, const FGA& A);
void cache_clear(const std::string& dir);
std::vector<std::string> cache_list(const std::string& dir);

} // namespace qh

#endif

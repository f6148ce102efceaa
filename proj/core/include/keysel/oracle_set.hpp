#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>

namespace keysel {

/// Ground-truth topic keywords. Tweet and user oracle sets are derived per
/// evaluation window (see metrics.hpp) and never cached here.
struct OracleSet {
  std::string topic_name;
  std::set<std::string> keywords;

  bool contains(const std::string& hashtag) const { return keywords.count(hashtag) > 0; }
  bool operator==(const OracleSet&) const = default;
};

/// Plain-text oracle file: one hashtag per line, leading '#' optional,
/// lines starting with "//" are comments. Throws Error(kData) if no keyword
/// survives.
OracleSet read_oracle(std::istream& in, std::string topic_name);
OracleSet read_oracle_file(const std::filesystem::path& path);
void write_oracle(const OracleSet& oracle, std::ostream& out);
void write_oracle_file(const OracleSet& oracle, const std::filesystem::path& path);

}  // namespace keysel

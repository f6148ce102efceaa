#include "keysel/oracle_set.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "keysel/corpus.hpp"
#include "keysel/error.hpp"

namespace keysel {

OracleSet read_oracle(std::istream& in, std::string topic_name) {
  OracleSet oracle;
  oracle.topic_name = std::move(topic_name);
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string_view entry(line.data() + begin, end - begin + 1);
    if (entry.substr(0, 2) == "//") continue;
    std::string tag = normalize_hashtag(entry);
    if (!tag.empty()) oracle.keywords.insert(std::move(tag));
  }
  if (oracle.keywords.empty()) {
    throw Error(ErrorCode::kData, "oracle '" + oracle.topic_name + "' has no keywords");
  }
  return oracle;
}

OracleSet read_oracle_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open oracle file " + path.string());
  return read_oracle(in, path.stem().string());
}

void write_oracle(const OracleSet& oracle, std::ostream& out) {
  out << "// " << oracle.topic_name << '\n';
  for (const auto& k : oracle.keywords) out << k << '\n';
}

void write_oracle_file(const OracleSet& oracle, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write oracle file " + path.string());
  write_oracle(oracle, out);
}

}  // namespace keysel

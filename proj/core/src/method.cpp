#include "keysel/method.hpp"

#include <string>

#include "keysel/error.hpp"

namespace keysel {

const char* to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::kKeySelect: return "keyselect";
    case MethodKind::kRandomWalk: return "random_walk";
    case MethodKind::kDegreeCentrality: return "degree_centrality";
    case MethodKind::kTfidf: return "tfidf";
    case MethodKind::kWord2Vec: return "word2vec";
  }
  return "unknown";
}

MethodKind parse_method(std::string_view name) {
  for (auto kind : {MethodKind::kKeySelect, MethodKind::kRandomWalk,
                    MethodKind::kDegreeCentrality, MethodKind::kTfidf, MethodKind::kWord2Vec}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

}  // namespace keysel

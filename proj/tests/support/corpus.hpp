// Helpers for locating and loading the bundled corpus from tests.
#pragma once

#include <string>

#include "tipforge/tipspec_parser.hpp"

namespace tipforge::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(TIPFORGE_CORPUS_DIR) + "/" + name;
}

inline ProtocolSpec load_corpus_spec(const std::string& name) {
  return load_tipspec(corpus_path(name));
}

}  // namespace tipforge::testing

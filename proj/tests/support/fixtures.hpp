#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tea/corpus_io.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return TEA_FIXTURE_DIR; }

inline std::string read(const std::filesystem::path& relative) {
  std::ifstream in(dir() / relative, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// A fixture document with its parse attached.
inline tea::Document parsed(const std::string& name) {
  tea::TimeMLOptions options;
  options.fallback_doc_id = name;
  tea::Document doc = tea::parse_timeml(read("corpus/" + name + ".tml"), options);
  tea::attach_parse(doc, tea::parse_conllu(read("corpus/" + name + ".conllu")));
  return doc;
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tea_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixtures

#include "tea/neural/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "tea/error.hpp"

namespace tea::neural {

EmbeddingTable::EmbeddingTable(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension == 0) throw UsageError("embedding dimension must be positive");
}

void EmbeddingTable::add(std::string word, Vec vector) {
  if (static_cast<std::size_t>(vector.size()) != dimension_) {
    throw ShapeError("embedding for '" + word + "' has dimension " + std::to_string(vector.size()) +
                     ", table expects " + std::to_string(dimension_));
  }
  vectors_.insert_or_assign(std::move(word), std::move(vector));
}

Vec EmbeddingTable::oov_vector(std::string_view word) const {
  Rng rng(fnv1a(word) ^ (seed_ * 0x9E3779B97F4A7C15ULL));
  Vec v(static_cast<Eigen::Index>(dimension_));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = rng.uniform(-0.05, 0.05);
  return v;
}

Vec EmbeddingTable::lookup(std::string_view word) const {
  if (auto it = vectors_.find(std::string(word)); it != vectors_.end()) return it->second;
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (auto it = vectors_.find(lower); it != vectors_.end()) return it->second;
  return oov_vector(word);
}

EmbeddingTable EmbeddingTable::load(std::istream& in, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<double> values;
    for (std::string tok; fields >> tok;) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("non-numeric embedding component '" + tok + "'", line_no);
      }
    }
    // "count dimension" header
    if (line_no == 1 && values.size() == 1 &&
        std::all_of(word.begin(), word.end(), [](unsigned char c) { return std::isdigit(c); })) {
      continue;
    }
    if (values.empty()) throw ParseError("embedding row without components", line_no);
    if (dim == 0) dim = values.size();
    if (values.size() != dim) {
      throw ParseError("embedding row has " + std::to_string(values.size()) +
                           " components, expected " + std::to_string(dim),
                       line_no);
    }
    rows.emplace_back(std::move(word), std::move(values));
  }
  if (dim == 0) throw ParseError("embedding file contains no vectors", line_no);
  EmbeddingTable table(dim, seed);
  for (auto& [word, values] : rows) {
    table.add(std::move(word), Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(dim)));
  }
  return table;
}

EmbeddingTable EmbeddingTable::load_file(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file " + path.string());
  return load(in, seed);
}

}  // namespace tea::neural

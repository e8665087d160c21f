#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tea/neural/layers.hpp"

namespace tea::neural {

/// Word vectors with a deterministic out-of-vocabulary fallback: unknown words
/// get a vector drawn uniformly from (-0.05, 0.05) by an RNG seeded from the
/// word's hash and the table seed.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 300, std::uint64_t seed = 0);

  /// Text format: `word v1 v2 ...` per line; an optional leading
  /// `count dimension` header is skipped. Throws ParseError on ragged rows.
  static EmbeddingTable load(std::istream& in, std::uint64_t seed = 0);
  static EmbeddingTable load_file(const std::filesystem::path& path, std::uint64_t seed = 0);

  std::size_t dimension() const { return dimension_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t vocabulary_size() const { return vectors_.size(); }
  bool contains(std::string_view word) const { return vectors_.contains(std::string(word)); }

  void add(std::string word, Vec vector);

  /// Exact match, then lowercase match, then the OOV vector of the exact word.
  Vec lookup(std::string_view word) const;
  Vec oov_vector(std::string_view word) const;
  Vec zero() const { return Vec::Zero(static_cast<Eigen::Index>(dimension_)); }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
  std::unordered_map<std::string, Vec> vectors_;
};

}  // namespace tea::neural

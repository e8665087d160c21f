#pragma once

// Token-index paths over a dependency tree. Paths run bottom-up (from an
// entity toward the root), not in word order.

#include <optional>
#include <vector>

#include "tea/document.hpp"

namespace tea {

struct PathPair {
  std::vector<int> left;   // source .. LCA
  std::vector<int> right;  // target .. LCA
  int lca() const { return left.back(); }
  bool operator==(const PathPair&) const = default;
};

/// Shortest dependency path between two tokens, split at their least common
/// ancestor. Throws UsageError when src == tgt or an index is out of range and
/// StructuralError for a malformed tree.
PathPair shortest_path_branches(const Sentence& sentence, int src, int tgt);

/// Tokens from `entity` up to and including the sentence root.
std::vector<int> root_path(const Sentence& sentence, int entity);

/// Word-order window of `width` tokens centred on `entity`, clipped at the
/// sentence edges and cut short before reaching `other_entity`. Width must be
/// odd.
std::vector<int> flat_window(const Sentence& sentence, int entity, int width = 11,
                             std::optional<int> other_entity = std::nullopt);

}  // namespace tea

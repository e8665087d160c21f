#include "tea/deppath.hpp"

#include <algorithm>
#include <string>

#include "tea/error.hpp"

namespace tea {

namespace {

void check_index(const Sentence& sentence, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= sentence.size()) {
    throw UsageError("token index " + std::to_string(i) + " outside sentence of length " +
                     std::to_string(sentence.size()));
  }
}

}  // namespace

std::vector<int> root_path(const Sentence& sentence, int entity) {
  check_index(sentence, entity);
  std::vector<int> path;
  for (int cur = entity; cur != -1; cur = sentence[static_cast<std::size_t>(cur)].head) {
    if (path.size() > sentence.size()) {
      throw StructuralError("dependency heads form a cycle through token " + std::to_string(entity));
    }
    if (cur < -1 || cur >= static_cast<int>(sentence.size())) {
      throw StructuralError("dependency head " + std::to_string(cur) + " out of range");
    }
    path.push_back(cur);
  }
  return path;
}

PathPair shortest_path_branches(const Sentence& sentence, int src, int tgt) {
  check_index(sentence, src);
  check_index(sentence, tgt);
  if (src == tgt) throw UsageError("shortest path needs two distinct tokens");

  const auto up_src = root_path(sentence, src);
  const auto up_tgt = root_path(sentence, tgt);
  // Strip the shared suffix (common ancestors above the LCA).
  std::size_t i = up_src.size();
  std::size_t j = up_tgt.size();
  while (i > 0 && j > 0 && up_src[i - 1] == up_tgt[j - 1]) {
    --i;
    --j;
  }
  if (i == up_src.size()) throw StructuralError("tokens do not share a root");
  PathPair out;
  out.left.assign(up_src.begin(), up_src.begin() + static_cast<std::ptrdiff_t>(i + 1));
  out.right.assign(up_tgt.begin(), up_tgt.begin() + static_cast<std::ptrdiff_t>(j + 1));
  return out;
}

std::vector<int> flat_window(const Sentence& sentence, int entity, int width,
                             std::optional<int> other_entity) {
  check_index(sentence, entity);
  if (width <= 0 || width % 2 == 0) throw UsageError("window width must be odd and positive");
  const int half = width / 2;
  int lo = std::max(0, entity - half);
  int hi = std::min(static_cast<int>(sentence.size()) - 1, entity + half);
  if (other_entity && *other_entity != entity) {
    if (*other_entity < entity) lo = std::max(lo, *other_entity + 1);
    if (*other_entity > entity) hi = std::min(hi, *other_entity - 1);
  }
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

}  // namespace tea

#pragma once

// Independent reference implementations used to check the library.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tea/conflict.hpp"
#include "tea/corpus_io.hpp"
#include "tea/document.hpp"
#include "tea/relation.hpp"

namespace oracle {

// ---- calendar ------------------------------------------------------------

/// Days since 0001-01-01 counted with real leap years.
long day_ordinal(int year, int month, int day);

/// Inclusive first/last day ordinals of a DATE value (YYYY, YYYY-MM,
/// YYYY-MM-DD, YYYY-SP/SU/FA/WI). Seasons end on the first day of the month
/// after them.
std::optional<std::pair<long, long>> date_days(const std::string& value);

/// The five-way TIMEX rule on integer day intervals.
tea::RelationLabel classify_days(std::pair<long, long> a, std::pair<long, long> b);

/// Random valid DATE value of any supported granularity.
std::string random_date_value(std::mt19937_64& gen);

// ---- dependency trees ----------------------------------------------------

/// Shortest path between two tokens by BFS over the undirected tree, split at
/// the shallowest token on it.
std::pair<std::vector<int>, std::vector<int>> bfs_branches(const tea::Sentence& s, int a, int b);

/// Random single-rooted tree of n tokens named w0..w{n-1}.
tea::Sentence random_tree(std::mt19937_64& gen, int n);

// ---- graphs ----------------------------------------------------------------

struct Edge {
  std::string s;
  std::string t;
  double w = 1.0;
};

bool acyclic(const std::vector<Edge>& edges);

/// Minimum total weight of a subset of `candidates` whose removal leaves
/// `base` + the rest acyclic (exhaustive over subsets).
double min_removal_weight(const std::vector<Edge>& base, const std::vector<Edge>& candidates);

// ---- double-check merge -----------------------------------------------------

/// Reference reconciliation of the (e1, e2) and (e2, e1) predictions, written
/// case by case: agreeing pair, two positives, one NO_LINK (vetoed or scored),
/// two NO_LINKs.
tea::ScoredLabel merge_reference(tea::ScoredLabel fwd, tea::ScoredLabel bwd, bool veto);

// ---- point algebra --------------------------------------------------------

/// Subsets of {<, =, >} as bit masks.
enum : unsigned { kLt = 1, kEq = 2, kGt = 4, kAll = 7 };

/// Path-consistency over the point algebra for the start/end points of
/// `entities`, seeded with start <= end and each link's endpoint constraints
/// (written out here independently of the library).
class PointNetwork {
 public:
  PointNetwork(const std::vector<std::string>& entities, const std::vector<tea::TLink>& links);
  /// yes / no / unknown verdict for `a relation b`.
  tea::Answer verdict(const std::string& a, const std::string& b, tea::RelationLabel relation) const;
  bool consistent() const { return consistent_; }

 private:
  unsigned& at(int i, int j) { return rel_[static_cast<std::size_t>(i * n_ + j)]; }
  unsigned at(int i, int j) const { return rel_[static_cast<std::size_t>(i * n_ + j)]; }
  int point(const std::string& id, bool end) const;

  std::vector<std::string> entities_;
  int n_ = 0;
  std::vector<unsigned> rel_;
  bool consistent_ = true;
};

/// Relation between two concrete intervals if it is one of the TimeML
/// relations (nullopt for partial overlaps).
std::optional<tea::RelationLabel> interval_relation(int s1, int e1, int s2, int e2);

// ---- evaluation ------------------------------------------------------------

struct Counts {
  std::size_t tp = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

/// Confusion-matrix count of (prediction, gold) label pairs after projecting
/// both through a label set; `inverted[i]` marks predictions given in the
/// reverse order of their gold pair.
Counts confusion_counts(const std::vector<tea::RelationLabel>& predicted, const std::vector<bool>& inverted,
                        const std::vector<tea::RelationLabel>& gold, const tea::LabelSet& labels);

}  // namespace oracle

#pragma once

// Reconciling bidirectional predictions and pruning cycles from the
// BEFORE and INCLUDES relation graphs.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tea/document.hpp"
#include "tea/relation.hpp"

namespace tea {

struct ScoredLabel {
  RelationLabel label = RelationLabel::kNoLink;
  double score = 0.0;
  bool operator==(const ScoredLabel&) const = default;
};

/// Combines the prediction for (e1, e2) with the prediction for (e2, e1) into
/// a label for (e1, e2).
///   - consistent pair: that label, max score
///   - conflicting positives: higher score wins (bwd inverted); an exact tie
///     gives NO_LINK
///   - one NO_LINK, with veto: the positive one wins
///   - without veto, NO_LINK competes on score like any label; ties go to the
///     positive label
ScoredLabel double_check_merge(ScoredLabel fwd, ScoredLabel bwd, bool veto = true);

/// Collapses both-order raw links to one link per unordered pair, oriented as
/// the first occurrence in `raw`. Pairs seen in one order only pass through.
std::vector<TLink> merge_bidirectional(const std::vector<TLink>& raw, bool veto = true);

struct WeightedEdge {
  std::string id;
  std::string source;
  std::string target;
  double weight = 1.0;
  bool operator==(const WeightedEdge&) const = default;
};

/// One vertex insertion: the candidate edges it added and those removed
/// again to break cycles.
struct PruneStep {
  std::string vertex;
  std::vector<WeightedEdge> inserted;
  std::vector<WeightedEdge> removed;
  double removed_weight = 0.0;
};

struct PruneResult {
  std::vector<WeightedEdge> retained;  // TIMEX edges, then kept candidates in input order
  std::vector<WeightedEdge> removed;   // in removal order
  double removed_weight = 0.0;
  std::vector<PruneStep> steps;        // in insertion order
};

/// Number of removal orders tried for a candidate set of size n:
/// max(1, min(n!, n(n-1))).
std::size_t removal_order_budget(std::size_t n);

/// Incremental pruning. The graph starts with `timex_edges` over
/// `timex_vertices`; the remaining vertices are inserted in a seeded random
/// order with their candidate edges to vertices already present. When an
/// insertion closes a cycle, removal orders over the inserted edges are tried
/// (greedy ascending weight, then seeded permutations; all permutations when
/// there are at most 3 edges), each popped until the graph is acyclic, and the
/// order removing the least weight is applied. TIMEX edges are never removed.
///
/// Throws UsageError when the TIMEX edges contain a cycle or a candidate joins
/// two TIMEX vertices.
PruneResult prune_graph(const std::set<std::string>& timex_vertices,
                        const std::vector<WeightedEdge>& timex_edges,
                        const std::vector<WeightedEdge>& candidates, std::uint64_t seed);

enum class RelationFamily { kBefore, kIncludes };
std::string_view to_string(RelationFamily f);

struct RemovedLink {
  RelationFamily family = RelationFamily::kBefore;
  TLink link;
};

struct ResolveResult {
  std::vector<TLink> links;  // surviving positive links, input order
  std::vector<RemovedLink> removed;
  std::uint64_t seed = 0;
};

/// Drops NO_LINK, then prunes the BEFORE/AFTER and INCLUDES/IS_INCLUDED
/// families independently. Links of origin rule-timex form the fixed TIMEX
/// edges; every other relation passes through. Expects merged links (one per
/// unordered pair).
ResolveResult resolve_document(const Document& doc, const std::vector<TLink>& links, std::uint64_t seed);

/// resolve_document with an explicit set of TIMEX vertex ids.
ResolveResult resolve_links(const std::set<std::string>& timex_vertices, const std::vector<TLink>& links,
                            std::uint64_t seed);

/// Line-oriented dump of removed links: family, source, target, relation,
/// score.
std::string format_removed(const ResolveResult& result);

}  // namespace tea

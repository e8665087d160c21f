#include "tea/conflict.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "tea/error.hpp"
#include "tea/neural/rng.hpp"

namespace tea {

ScoredLabel double_check_merge(ScoredLabel fwd, ScoredLabel bwd, bool veto) {
  const RelationLabel flipped = invert(bwd.label);
  if (fwd.label == flipped) return {fwd.label, std::max(fwd.score, bwd.score)};
  const bool fwd_pos = is_positive(fwd.label);
  const bool bwd_pos = is_positive(bwd.label);
  if (veto && fwd_pos != bwd_pos) {
    return fwd_pos ? fwd : ScoredLabel{flipped, bwd.score};
  }
  if (fwd.score > bwd.score) return fwd;
  if (bwd.score > fwd.score) return {flipped, bwd.score};
  // Exact tie. A positive label beats NO_LINK; two different positives cancel.
  if (fwd_pos && !bwd_pos) return fwd;
  if (bwd_pos && !fwd_pos) return {flipped, bwd.score};
  return {RelationLabel::kNoLink, fwd.score};
}

std::vector<TLink> merge_bidirectional(const std::vector<TLink>& raw, bool veto) {
  std::vector<TLink> out;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;  // unordered pair -> out index
  for (const TLink& link : raw) {
    auto key = std::minmax(link.source, link.target);
    auto [it, fresh] = slot.emplace(std::make_pair(key.first, key.second), out.size());
    if (fresh) {
      out.push_back(link);
      continue;
    }
    TLink& first = out[it->second];
    ScoredLabel merged;
    if (first.source == link.source) {
      // Same orientation twice: keep the higher-scored prediction.
      if (link.score > first.score) first = link;
      continue;
    }
    merged = double_check_merge({first.relation, first.score}, {link.relation, link.score}, veto);
    first.relation = merged.label;
    first.score = merged.score;
  }
  return out;
}

std::size_t removal_order_budget(std::size_t n) {
  if (n <= 1) return 1;
  const std::size_t pairs = n * (n - 1);
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    fact *= k;
    if (fact >= pairs) return pairs;
  }
  return std::max<std::size_t>(1, std::min(fact, pairs));
}

namespace {

class Graph {
 public:
  int vertex(const std::string& id) {
    auto [it, fresh] = index_.emplace(id, static_cast<int>(names_.size()));
    if (fresh) {
      names_.push_back(id);
      out_.emplace_back();
    }
    return it->second;
  }
  int add_edge(int s, int t) {
    edges_.push_back({s, t, false});
    out_[static_cast<std::size_t>(s)].push_back(static_cast<int>(edges_.size()) - 1);
    return static_cast<int>(edges_.size()) - 1;
  }
  void set_active(int e, bool on) { edges_[static_cast<std::size_t>(e)].active = on; }

  /// True when `v` lies on a cycle of active edges.
  bool on_cycle(int v) const {
    std::vector<char> seen(names_.size(), 0);
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e : out_[static_cast<std::size_t>(u)]) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (!edge.active) continue;
        if (edge.t == v) return true;
        if (!seen[static_cast<std::size_t>(edge.t)]) {
          seen[static_cast<std::size_t>(edge.t)] = 1;
          stack.push_back(edge.t);
        }
      }
    }
    return false;
  }

  bool acyclic() const {
    std::vector<int> indegree(names_.size(), 0);
    for (const auto& e : edges_) {
      if (e.active) ++indegree[static_cast<std::size_t>(e.t)];
    }
    std::vector<int> ready;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (indegree[v] == 0) ready.push_back(static_cast<int>(v));
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
      const int u = ready.back();
      ready.pop_back();
      ++visited;
      for (int e : out_[static_cast<std::size_t>(u)]) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.active && --indegree[static_cast<std::size_t>(edge.t)] == 0) ready.push_back(edge.t);
      }
    }
    return visited == names_.size();
  }

 private:
  struct Edge {
    int s;
    int t;
    bool active;
  };
  std::map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> out_;
  std::vector<Edge> edges_;
};

}  // namespace

PruneResult prune_graph(const std::set<std::string>& timex_vertices,
                        const std::vector<WeightedEdge>& timex_edges,
                        const std::vector<WeightedEdge>& candidates, std::uint64_t seed) {
  Graph graph;
  std::set<std::string> fixed = timex_vertices;
  for (const auto& e : timex_edges) {
    fixed.insert(e.source);
    fixed.insert(e.target);
  }
  for (const auto& v : fixed) graph.vertex(v);
  for (const auto& e : timex_edges) graph.set_active(graph.add_edge(graph.vertex(e.source), graph.vertex(e.target)), true);
  if (!graph.acyclic()) throw UsageError("TIMEX edges contain a cycle");

  std::set<std::string> events;
  for (const auto& c : candidates) {
    const bool s_fixed = fixed.contains(c.source);
    const bool t_fixed = fixed.contains(c.target);
    if (s_fixed && t_fixed) {
      throw UsageError("candidate edge " + c.source + " -> " + c.target + " joins two TIMEX vertices");
    }
    if (!s_fixed) events.insert(c.source);
    if (!t_fixed) events.insert(c.target);
  }
  std::vector<std::string> order(events.begin(), events.end());
  neural::Rng insertion_rng(neural::derive_seed(seed, "insertion"));
  neural::Rng removal_rng(neural::derive_seed(seed, "removal"));
  insertion_rng.shuffle(order);

  std::vector<int> edge_of(candidates.size(), -1);
  std::vector<bool> removed_flag(candidates.size(), false);
  std::set<std::string> present = fixed;
  PruneResult result;

  for (const std::string& v : order) {
    present.insert(v);
    std::vector<std::size_t> inserted;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      if (edge_of[i] >= 0) continue;
      if ((c.source == v || c.target == v) && present.contains(c.source) && present.contains(c.target)) {
        edge_of[i] = graph.add_edge(graph.vertex(c.source), graph.vertex(c.target));
        graph.set_active(edge_of[i], true);
        inserted.push_back(i);
      }
    }
    const int vid = graph.vertex(v);
    PruneStep& step = result.steps.emplace_back();
    step.vertex = v;
    for (std::size_t i : inserted) step.inserted.push_back(candidates[i]);
    if (!graph.on_cycle(vid)) continue;

    std::vector<std::size_t> greedy = inserted;
    std::stable_sort(greedy.begin(), greedy.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].weight < candidates[b].weight;
    });

    // Pops edges from `perm` until the graph is acyclic; returns the count.
    auto pops = [&](const std::vector<std::size_t>& perm, double& weight) {
      std::size_t k = 0;
      weight = 0.0;
      while (k < perm.size() && graph.on_cycle(vid)) {
        graph.set_active(edge_of[perm[k]], false);
        weight += candidates[perm[k]].weight;
        ++k;
      }
      for (std::size_t j = 0; j < k; ++j) graph.set_active(edge_of[perm[j]], true);
      return k;
    };

    std::vector<std::size_t> best_order = greedy;
    double best_weight = 0.0;
    std::size_t best_count = pops(greedy, best_weight);
    auto consider = [&](const std::vector<std::size_t>& perm) {
      double w = 0.0;
      const std::size_t k = pops(perm, w);
      if (w < best_weight) {
        best_weight = w;
        best_count = k;
        best_order = perm;
      }
    };
    const std::size_t n = greedy.size();
    if (n <= 3) {
      std::vector<std::size_t> positions(n);
      std::iota(positions.begin(), positions.end(), 0);
      while (std::next_permutation(positions.begin(), positions.end())) {
        std::vector<std::size_t> perm;
        for (std::size_t p : positions) perm.push_back(greedy[p]);
        consider(perm);
      }
    } else {
      const std::size_t budget = removal_order_budget(n);
      for (std::size_t t = 1; t < budget; ++t) {
        std::vector<std::size_t> perm = greedy;
        removal_rng.shuffle(perm);
        consider(perm);
      }
    }
    for (std::size_t j = 0; j < best_count; ++j) {
      graph.set_active(edge_of[best_order[j]], false);
      removed_flag[best_order[j]] = true;
      result.removed.push_back(candidates[best_order[j]]);
      step.removed.push_back(candidates[best_order[j]]);
    }
    step.removed_weight = best_weight;
    result.removed_weight += best_weight;
  }

  result.retained = timex_edges;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!removed_flag[i]) result.retained.push_back(candidates[i]);
  }
  return result;
}

std::string_view to_string(RelationFamily f) {
  return f == RelationFamily::kBefore ? "BEFORE" : "INCLUDES";
}

ResolveResult resolve_document(const Document& doc, const std::vector<TLink>& links, std::uint64_t seed) {
  std::set<std::string> timex_vertices{doc.dct.id};
  for (const auto& t : doc.timexes) timex_vertices.insert(t.id);
  return resolve_links(timex_vertices, links, seed);
}

ResolveResult resolve_links(const std::set<std::string>& timex_vertices, const std::vector<TLink>& links,
                            std::uint64_t seed) {
  ResolveResult result;
  result.seed = seed;

  std::vector<TLink> positive;
  for (const auto& l : links) {
    if (is_positive(l.relation)) positive.push_back(l);
  }
  std::vector<bool> dropped(positive.size(), false);

  auto prune_family = [&](RelationFamily family, RelationLabel forward, RelationLabel backward) {
    std::vector<WeightedEdge> fixed_edges;
    std::vector<WeightedEdge> candidates;
    for (std::size_t i = 0; i < positive.size(); ++i) {
      const TLink& l = positive[i];
      if (l.relation != forward && l.relation != backward) continue;
      WeightedEdge e{std::to_string(i), l.source, l.target, l.score};
      if (l.relation == backward) std::swap(e.source, e.target);
      const bool between_timexes = timex_vertices.contains(l.source) && timex_vertices.contains(l.target);
      (l.origin == LinkOrigin::kRuleTimex || between_timexes ? fixed_edges : candidates).push_back(e);
    }
    const auto pruned = prune_graph(timex_vertices, fixed_edges, candidates,
                                    neural::derive_seed(seed, to_string(family)));
    for (const auto& e : pruned.removed) {
      const std::size_t i = std::stoul(e.id);
      dropped[i] = true;
      result.removed.push_back({family, positive[i]});
    }
  };
  prune_family(RelationFamily::kBefore, RelationLabel::kBefore, RelationLabel::kAfter);
  prune_family(RelationFamily::kIncludes, RelationLabel::kIncludes, RelationLabel::kIsIncluded);

  for (std::size_t i = 0; i < positive.size(); ++i) {
    if (!dropped[i]) result.links.push_back(positive[i]);
  }
  return result;
}

std::string format_removed(const ResolveResult& result) {
  std::ostringstream out;
  out << "# seed " << result.seed << "\n";
  for (const auto& r : result.removed) {
    out << to_string(r.family) << '\t' << r.link.source << '\t' << r.link.target << '\t'
        << to_string(r.link.relation) << '\t' << r.link.score << '\n';
  }
  return out.str();
}

}  // namespace tea

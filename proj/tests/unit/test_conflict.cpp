#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "tea/conflict.hpp"
#include "tea/error.hpp"

using tea::RelationLabel;
using tea::ScoredLabel;
using tea::WeightedEdge;

namespace {

constexpr auto B = RelationLabel::kBefore;
constexpr auto A = RelationLabel::kAfter;
constexpr auto N = RelationLabel::kNoLink;
constexpr auto I = RelationLabel::kIncludes;

std::vector<oracle::Edge> to_oracle(const std::vector<WeightedEdge>& edges) {
  std::vector<oracle::Edge> out;
  for (const auto& e : edges) out.push_back({e.source, e.target, e.weight});
  return out;
}

tea::TLink link(const std::string& s, const std::string& t, RelationLabel r, double score,
                tea::LinkOrigin origin = tea::LinkOrigin::kClassifierIntra) {
  return {s + "-" + t, s, t, r, score, origin};
}

}  // namespace

TEST(DoubleCheck, ReferenceCases) {
  EXPECT_EQ(tea::double_check_merge({B, 0.6}, {B, 0.9}), (ScoredLabel{A, 0.9}));
  EXPECT_EQ(tea::double_check_merge({N, 0.99}, {B, 0.55}), (ScoredLabel{A, 0.55}));
  EXPECT_EQ(tea::double_check_merge({A, 0.7}, {N, 0.8}), (ScoredLabel{A, 0.7}));
}

TEST(DoubleCheck, TruthTable) {
  // Consistent pair: shared label, larger score.
  EXPECT_EQ(tea::double_check_merge({B, 0.6}, {A, 0.7}), (ScoredLabel{B, 0.7}));
  EXPECT_EQ(tea::double_check_merge({RelationLabel::kSimultaneous, 0.4}, {RelationLabel::kSimultaneous, 0.3}),
            (ScoredLabel{RelationLabel::kSimultaneous, 0.4}));
  // Conflicting positives: higher score, backward inverted.
  EXPECT_EQ(tea::double_check_merge({I, 0.8}, {B, 0.5}), (ScoredLabel{I, 0.8}));
  EXPECT_EQ(tea::double_check_merge({I, 0.5}, {B, 0.8}), (ScoredLabel{A, 0.8}));
  EXPECT_EQ(tea::double_check_merge({I, 0.5}, {B, 0.5}), (ScoredLabel{N, 0.5}));
  // Veto.
  EXPECT_EQ(tea::double_check_merge({B, 0.3}, {N, 0.9}), (ScoredLabel{B, 0.3}));
  EXPECT_EQ(tea::double_check_merge({N, 0.9}, {I, 0.2}), (ScoredLabel{RelationLabel::kIsIncluded, 0.2}));
  // Double NO_LINK.
  EXPECT_EQ(tea::double_check_merge({N, 0.6}, {N, 0.7}), (ScoredLabel{N, 0.7}));
  // Without veto NO_LINK competes on score.
  EXPECT_EQ(tea::double_check_merge({N, 0.99}, {B, 0.55}, false), (ScoredLabel{N, 0.99}));
  EXPECT_EQ(tea::double_check_merge({N, 0.4}, {B, 0.55}, false), (ScoredLabel{A, 0.55}));
  EXPECT_EQ(tea::double_check_merge({N, 0.5}, {B, 0.5}, false), (ScoredLabel{A, 0.5}));
}

TEST(DoubleCheck, MatchesReferenceOnEveryLabelPair) {
  for (bool veto : {true, false}) {
    for (auto f : tea::kAllRelations) {
      for (auto b : tea::kAllRelations) {
        for (double sf : {0.3, 0.6}) {
          for (double sb : {0.3, 0.6}) {
            ASSERT_EQ(tea::double_check_merge({f, sf}, {b, sb}, veto), oracle::merge_reference({f, sf}, {b, sb}, veto))
                << tea::to_string(f) << " " << tea::to_string(b) << " veto " << veto;
          }
        }
      }
    }
  }
}

TEST(DoubleCheck, SymmetricUnderSwap) {
  std::mt19937_64 gen(3);
  const double scores[] = {0.2, 0.5, 0.5, 0.8};
  for (bool veto : {true, false}) {
    for (auto f : tea::kAllRelations) {
      for (auto b : tea::kAllRelations) {
        for (double sf : scores) {
          for (double sb : scores) {
            const auto ab = tea::double_check_merge({f, sf}, {b, sb}, veto);
            const auto ba = tea::double_check_merge({b, sb}, {f, sf}, veto);
            ASSERT_EQ(ab.label, tea::invert(ba.label));
            ASSERT_EQ(ab.score, ba.score);
          }
        }
      }
    }
  }
}

TEST(MergeBidirectional, OneLinkPerPair) {
  const std::vector<tea::TLink> raw{link("e1", "e2", B, 0.6), link("e2", "e3", N, 0.9), link("e2", "e1", B, 0.9),
                                    link("e3", "e2", I, 0.4), link("e4", "t0", A, 0.7)};
  const auto merged = tea::merge_bidirectional(raw);
  ASSERT_EQ(merged.size(), 3u);
  EXPECT_EQ(merged[0].source, "e1");
  EXPECT_EQ(merged[0].relation, A);
  EXPECT_DOUBLE_EQ(merged[0].score, 0.9);
  EXPECT_EQ(merged[1].source, "e2");
  EXPECT_EQ(merged[1].relation, RelationLabel::kIsIncluded);
  EXPECT_EQ(merged[2].relation, A);
  const auto dense = tea::merge_bidirectional(raw, false);
  EXPECT_EQ(dense[1].relation, N);
}

TEST(PruneGraph, BudgetFormula) {
  EXPECT_EQ(tea::removal_order_budget(0), 1u);
  EXPECT_EQ(tea::removal_order_budget(1), 1u);
  EXPECT_EQ(tea::removal_order_budget(2), 2u);
  EXPECT_EQ(tea::removal_order_budget(3), 6u);
  EXPECT_EQ(tea::removal_order_budget(4), 12u);
  EXPECT_EQ(tea::removal_order_budget(10), 90u);
}

TEST(PruneGraph, TwoCandidateExample) {
  const std::vector<WeightedEdge> fixed{{"r", "t1", "t2", 1.0}};
  const std::vector<WeightedEdge> cand{{"a", "e", "t1", 0.6}, {"b", "t2", "e", 0.9}};
  const auto r = tea::prune_graph({"t1", "t2"}, fixed, cand, 1);
  ASSERT_EQ(r.removed.size(), 1u);
  EXPECT_EQ(r.removed[0].id, "a");
  EXPECT_DOUBLE_EQ(r.removed_weight, oracle::min_removal_weight(to_oracle(fixed), to_oracle(cand)));
  EXPECT_EQ(r.retained, (std::vector<WeightedEdge>{fixed[0], cand[1]}));
}

TEST(PruneGraph, ThreeCandidateExample) {
  const std::vector<WeightedEdge> fixed{{"r", "t1", "t2", 1.0}};
  const std::vector<WeightedEdge> cand{{"a", "e", "t1", 0.9}, {"b", "t2", "e", 0.8}, {"c", "e", "t2", 0.7}};
  const auto r = tea::prune_graph({"t1", "t2"}, fixed, cand, 2);
  EXPECT_DOUBLE_EQ(r.removed_weight, oracle::min_removal_weight(to_oracle(fixed), to_oracle(cand)));
  EXPECT_DOUBLE_EQ(r.removed_weight, 0.8);
  EXPECT_TRUE(oracle::acyclic(to_oracle(r.retained)));
}

TEST(PruneGraph, EventCycleForEveryInsertionOrder) {
  const std::vector<WeightedEdge> cand{{"a", "e1", "e2", 0.9}, {"b", "e2", "e3", 0.8}, {"c", "e3", "e1", 0.3}};
  std::set<std::vector<std::string>> orders;
  for (std::uint64_t seed = 0; seed < 200 && orders.size() < 6; ++seed) {
    const auto r = tea::prune_graph({}, {}, cand, seed);
    std::vector<std::string> order;
    for (const auto& s : r.steps) order.push_back(s.vertex);
    orders.insert(order);
    ASSERT_EQ(r.removed.size(), 1u);
    const std::string last = order.back();
    EXPECT_EQ(r.removed[0].id, last == "e2" ? "b" : "c") << "last inserted " << last;
    // The removal is the cheapest among the last vertex's edges.
    std::vector<oracle::Edge> base;
    std::vector<oracle::Edge> inserted;
    for (const auto& e : cand) (e.source == last || e.target == last ? inserted : base).push_back({e.source, e.target, e.weight});
    EXPECT_DOUBLE_EQ(r.removed_weight, oracle::min_removal_weight(base, inserted));
  }
  EXPECT_EQ(orders.size(), 6u);
}

TEST(PruneGraph, RandomInstancesStayAcyclic) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int timexes = 1 + static_cast<int>(gen() % 4);
    const int events = 1 + static_cast<int>(gen() % 5);
    std::set<std::string> tv;
    std::vector<WeightedEdge> fixed;
    for (int i = 0; i < timexes; ++i) tv.insert("t" + std::to_string(i));
    for (int i = 0; i + 1 < timexes; ++i) fixed.push_back({"r" + std::to_string(i), "t" + std::to_string(i), "t" + std::to_string(i + 1), 1.0});
    std::vector<std::string> all(tv.begin(), tv.end());
    for (int i = 0; i < events; ++i) all.push_back("e" + std::to_string(i));
    std::vector<WeightedEdge> cand;
    std::uniform_real_distribution<double> w(0.05, 1.0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j || (tv.contains(all[i]) && tv.contains(all[j])) || gen() % 3 != 0) continue;
        cand.push_back({"c" + std::to_string(cand.size()), all[i], all[j], w(gen)});
      }
    }
    const auto r = tea::prune_graph(tv, fixed, cand, gen());
    ASSERT_TRUE(oracle::acyclic(to_oracle(r.retained))) << "trial " << trial;
    for (const auto& f : fixed) EXPECT_NE(std::find(r.retained.begin(), r.retained.end(), f), r.retained.end());
    EXPECT_EQ(r.retained.size() + r.removed.size(), fixed.size() + cand.size());
  }
}

TEST(PruneGraph, RejectsBadInput) {
  EXPECT_THROW(tea::prune_graph({"t1", "t2"}, {{"a", "t1", "t2", 1}, {"b", "t2", "t1", 1}}, {}, 0), tea::UsageError);
  EXPECT_THROW(tea::prune_graph({"t1", "t2"}, {}, {{"a", "t1", "t2", 0.5}}, 0), tea::UsageError);
}

TEST(Resolve, FamiliesPrunedIndependently) {
  const std::vector<tea::TLink> links{
      link("e1", "e2", B, 0.9),  link("e2", "e3", B, 0.8),          link("e1", "e3", A, 0.3),
      link("e1", "e3", RelationLabel::kIBefore, 0.2), link("e4", "e5", N, 0.9), link("e4", "e5", I, 0.7),
      link("e5", "e4", I, 0.6),
  };
  const auto r = tea::resolve_links({}, links, 5);
  ASSERT_EQ(r.removed.size(), 2u);
  std::set<std::string> removed_families;
  for (const auto& rm : r.removed) removed_families.insert(std::string(tea::to_string(rm.family)));
  EXPECT_EQ(removed_families, (std::set<std::string>{"BEFORE", "INCLUDES"}));
  // NO_LINK dropped; IBEFORE passes through.
  for (const auto& l : r.links) EXPECT_NE(l.relation, N);
  EXPECT_EQ(std::count_if(r.links.begin(), r.links.end(), [](const auto& l) { return l.relation == RelationLabel::kIBefore; }), 1);
  EXPECT_EQ(r.links.size(), 4u);
  EXPECT_EQ(tea::resolve_links({}, links, 5).removed.size(), r.removed.size());
}

TEST(Resolve, RuleLinksAreNeverRemoved) {
  const std::vector<tea::TLink> links{
      link("t1", "t2", B, 1.0, tea::LinkOrigin::kRuleTimex),
      link("e1", "t1", B, 0.95),
      link("e1", "t2", A, 0.1),
  };
  const auto r = tea::resolve_links({"t1", "t2"}, links, 1);
  ASSERT_EQ(r.removed.size(), 1u);
  EXPECT_EQ(r.removed[0].link.target, "t2");
  EXPECT_EQ(r.links[0].origin, tea::LinkOrigin::kRuleTimex);
  const std::string dump = tea::format_removed(r);
  EXPECT_EQ(dump.substr(0, 8), "# seed 1");
  EXPECT_NE(dump.find("BEFORE\te1\tt2\tAFTER\t0.1"), std::string::npos);
}

#include "tea/timegraph.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "tea/error.hpp"

namespace tea {

std::vector<PointConstraint> point_constraints(RelationLabel relation) {
  constexpr bool S = false;
  constexpr bool E = true;
  using R = RelationLabel;
  switch (relation) {
    case R::kBefore: return {{0, E, 1, S, true}};
    case R::kAfter: return {{1, E, 0, S, true}};
    case R::kIBefore: return {{0, E, 1, S, false}};
    case R::kIAfter: return {{1, E, 0, S, false}};
    case R::kIncludes: return {{0, S, 1, S, true}, {1, E, 0, E, true}};
    case R::kIsIncluded: return {{1, S, 0, S, true}, {0, E, 1, E, true}};
    case R::kBegins: return {{0, S, 1, S, false}, {0, E, 1, E, true}};
    case R::kBegunBy: return {{0, S, 1, S, false}, {1, E, 0, E, true}};
    case R::kEnds: return {{0, E, 1, E, false}, {1, S, 0, S, true}};
    case R::kEndedBy: return {{0, E, 1, E, false}, {0, S, 1, S, true}};
    case R::kDuring:
    case R::kDuringInv:
    case R::kSimultaneous: return {{0, S, 1, S, false}, {0, E, 1, E, false}};
    case R::kNoLink: return {};
  }
  return {};
}

PointGraph build_timegraph(const std::vector<TLink>& links) {
  using Order = PointGraph::Order;
  PointGraph g;
  for (const auto& l : links) {
    if (!is_positive(l.relation) || l.source == l.target) continue;
    for (const auto* id : {&l.source, &l.target}) {
      g.index_.emplace(*id, static_cast<int>(g.index_.size()));
    }
  }
  const std::size_t n = 2 * g.index_.size();
  g.points_ = n;
  g.rel_.assign(n * n, Order::kNone);
  auto raise = [&](int a, int b, Order o) {
    auto& cell = g.rel_[g.idx(a, b)];
    if (o > cell) cell = o;
  };
  for (std::size_t p = 0; p < n; ++p) raise(static_cast<int>(p), static_cast<int>(p), Order::kLessEqual);
  for (const auto& [id, k] : g.index_) raise(2 * k, 2 * k + 1, Order::kLessEqual);

  for (const auto& l : links) {
    if (!is_positive(l.relation) || l.source == l.target) continue;
    const int ent[2] = {g.index_.at(l.source), g.index_.at(l.target)};
    for (const auto& c : point_constraints(l.relation)) {
      const int a = 2 * ent[c.a_entity] + (c.a_end ? 1 : 0);
      const int b = 2 * ent[c.b_entity] + (c.b_end ? 1 : 0);
      if (c.strict) {
        raise(a, b, Order::kLess);
      } else {
        raise(a, b, Order::kLessEqual);
        raise(b, a, Order::kLessEqual);
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Order ik = g.rel_[i * n + k];
      if (ik == Order::kNone) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Order kj = g.rel_[k * n + j];
        if (kj == Order::kNone) continue;
        const Order via = ik > kj ? ik : kj;
        if (via > g.rel_[i * n + j]) g.rel_[i * n + j] = via;
      }
    }
  }

  std::set<std::string> bad;
  for (const auto& [id, k] : g.index_) {
    if (g.rel_[g.idx(2 * k, 2 * k)] == Order::kLess || g.rel_[g.idx(2 * k + 1, 2 * k + 1)] == Order::kLess) {
      bad.insert(id);
    }
  }
  g.inconsistent_.assign(bad.begin(), bad.end());
  return g;
}

Answer answer_question(const PointGraph& graph, const std::string& source, const std::string& target,
                       RelationLabel relation) {
  if (!graph.has_entity(source) || !graph.has_entity(target) || !is_positive(relation)) {
    return Answer::kUnknown;
  }
  const int base[2] = {graph.start_of(source), graph.start_of(target)};
  bool all_entailed = true;
  bool contradicted = false;
  for (const auto& c : point_constraints(relation)) {
    const int a = base[c.a_entity] + (c.a_end ? 1 : 0);
    const int b = base[c.b_entity] + (c.b_end ? 1 : 0);
    if (c.strict) {
      all_entailed = all_entailed && graph.entails_less(a, b);
      contradicted = contradicted || graph.order(b, a) != PointGraph::Order::kNone;
    } else {
      all_entailed = all_entailed && graph.entails_equal(a, b);
      contradicted = contradicted || graph.entails_less(a, b) || graph.entails_less(b, a);
    }
  }
  if (all_entailed) return Answer::kYes;
  if (contradicted) return Answer::kNo;
  return Answer::kUnknown;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kIncorrect: return "incorrect";
    case Outcome::kUnanswered: return "unanswered";
  }
  return "?";
}

QAReport qa_metrics(std::size_t questions, std::size_t answered, std::size_t correct) {
  if (questions == 0) throw UsageError("QA evaluation needs at least one question");
  if (answered > questions || correct > answered) {
    throw UsageError("inconsistent QA counts: need correct <= answered <= questions");
  }
  QAReport r;
  r.questions = questions;
  r.answered = answered;
  r.correct = correct;
  r.coverage = static_cast<double>(answered) / static_cast<double>(questions);
  r.recall = static_cast<double>(correct) / static_cast<double>(questions);
  if (answered == 0) {
    r.precision_undefined = true;
  } else {
    r.precision = static_cast<double>(correct) / static_cast<double>(answered);
  }
  if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

QAReport evaluate_qa(const std::vector<Question>& questions,
                     const std::map<std::string, std::vector<TLink>>& links_by_doc) {
  std::map<std::string, PointGraph> graphs;
  for (const auto& [doc, links] : links_by_doc) graphs.emplace(doc, build_timegraph(links));

  std::vector<Outcome> outcomes;
  std::vector<Answer> answers;
  std::size_t answered = 0;
  std::size_t correct = 0;
  for (const auto& q : questions) {
    Answer a = Answer::kUnknown;
    if (auto it = graphs.find(q.doc_id); it != graphs.end()) {
      a = answer_question(it->second, q.source, q.target, q.relation);
    }
    answers.push_back(a);
    if (a == Answer::kUnknown) {
      outcomes.push_back(Outcome::kUnanswered);
      continue;
    }
    ++answered;
    if (a == q.gold) {
      ++correct;
      outcomes.push_back(Outcome::kCorrect);
    } else {
      outcomes.push_back(Outcome::kIncorrect);
    }
  }
  QAReport r = qa_metrics(questions.size(), answered, correct);
  r.outcomes = std::move(outcomes);
  r.answers = std::move(answers);
  return r;
}

std::string format_qa_report(const QAReport& report, const std::vector<Question>& questions) {
  std::ostringstream out;
  for (std::size_t i = 0; i < questions.size() && i < report.outcomes.size(); ++i) {
    const auto& q = questions[i];
    out << q.doc_id << ' ' << q.source << ' ' << q.target << ' ' << to_string(q.relation) << " gold="
        << to_string(q.gold) << " system=" << to_string(report.answers[i]) << ' '
        << to_string(report.outcomes[i]) << '\n';
  }
  char line[160];
  std::snprintf(line, sizeof line, "questions %zu answered %zu correct %zu\n", report.questions,
                report.answered, report.correct);
  out << line;
  std::snprintf(line, sizeof line, "coverage %.3f precision %.3f recall %.3f f1 %.3f%s\n", report.coverage,
                report.precision, report.recall, report.f1,
                report.precision_undefined ? " (precision undefined: nothing answered)" : "");
  out << line;
  return out.str();
}

DenseReport evaluate_dense(const std::vector<PairLabel>& predicted, const std::vector<PairLabel>& gold,
                           const LabelSet& labels) {
  std::map<std::pair<std::string, std::string>, RelationLabel> gold_map;
  for (const auto& g : gold) {
    if (gold_map.contains({g.target, g.source}) ||
        !gold_map.emplace(std::make_pair(g.source, g.target), labels.canonical(g.label)).second) {
      throw UsageError("duplicate gold pair " + g.source + " " + g.target);
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  DenseReport r;
  r.gold = gold.size();
  for (const auto& p : predicted) {
    RelationLabel label = labels.canonical(p.label);
    std::pair<std::string, std::string> key{p.source, p.target};
    auto it = gold_map.find(key);
    if (it == gold_map.end()) {
      key = {p.target, p.source};
      it = gold_map.find(key);
      label = labels.invert_in_set(p.label);
    }
    if (it == gold_map.end()) throw ScopeError("predicted pair " + p.source + " " + p.target + " is not in the gold scope");
    if (!seen.insert(key).second) throw UsageError("duplicate prediction for " + key.first + " " + key.second);
    ++r.predicted;
    if (label == it->second) ++r.correct;
  }
  if (r.predicted > 0) r.precision = static_cast<double>(r.correct) / static_cast<double>(r.predicted);
  if (r.gold > 0) r.recall = static_cast<double>(r.correct) / static_cast<double>(r.gold);
  if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

}  // namespace tea

#pragma once

// Point-algebra closure over TLINKs and QA / dense-pair evaluation.

#include <map>
#include <string>
#include <vector>

#include "tea/corpus_io.hpp"
#include "tea/document.hpp"
#include "tea/relation.hpp"

namespace tea {

/// Start and end point of every linked entity with the closure of the
/// entailed <= / < relations between them. Every entity has start <= end.
class PointGraph {
 public:
  enum class Order : unsigned char { kNone = 0, kLessEqual = 1, kLess = 2 };

  bool has_entity(const std::string& id) const { return index_.contains(id); }
  std::size_t entity_count() const { return index_.size(); }
  int start_of(const std::string& id) const { return 2 * index_.at(id); }
  int end_of(const std::string& id) const { return 2 * index_.at(id) + 1; }

  /// Entailed order of point a relative to point b.
  Order order(int a, int b) const { return rel_[idx(a, b)]; }
  bool entails_less(int a, int b) const { return order(a, b) == Order::kLess; }
  bool entails_equal(int a, int b) const {
    return order(a, b) != Order::kNone && order(b, a) != Order::kNone;
  }

  /// Entity pairs whose closure derived p < p for one of their points.
  const std::vector<std::string>& inconsistent_entities() const { return inconsistent_; }
  bool consistent() const { return inconsistent_.empty(); }

 private:
  friend PointGraph build_timegraph(const std::vector<TLink>& links);
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * points_ + static_cast<std::size_t>(b);
  }

  std::map<std::string, int> index_;
  std::size_t points_ = 0;
  std::vector<Order> rel_;
  std::vector<std::string> inconsistent_;
};

/// Endpoint constraint `a < b` (strict) or `a = b`, with a and b naming the
/// start (false) or end (true) of the source (0) or target (1) entity.
struct PointConstraint {
  int a_entity;
  bool a_end;
  int b_entity;
  bool b_end;
  bool strict;
};

/// Point constraints of `source relation target`. DURING variants are
/// treated as SIMULTANEOUS. Empty for NO_LINK.
std::vector<PointConstraint> point_constraints(RelationLabel relation);

/// NO_LINK links are ignored.
PointGraph build_timegraph(const std::vector<TLink>& links);

/// kYes when every constraint of the relation is entailed, kNo when one is
/// contradicted, kUnknown (unanswered) otherwise or when an entity is absent.
Answer answer_question(const PointGraph& graph, const std::string& source, const std::string& target,
                       RelationLabel relation);

enum class Outcome { kCorrect, kIncorrect, kUnanswered };
std::string_view to_string(Outcome o);

struct QAReport {
  std::vector<Outcome> outcomes;  // per question, when computed from questions
  std::vector<Answer> answers;
  std::size_t questions = 0;
  std::size_t answered = 0;
  std::size_t correct = 0;
  double coverage = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Set when nothing was answered: precision (and f1) are reported as 0.
  bool precision_undefined = false;
};

/// coverage = answered / questions, precision = correct / answered,
/// recall = correct / questions, f1 their harmonic mean. Throws UsageError
/// for zero questions or inconsistent counts.
QAReport qa_metrics(std::size_t questions, std::size_t answered, std::size_t correct);

/// Answers each question against the links of its document (micro average
/// over all questions). Documents missing from `links_by_doc` leave their
/// questions unanswered.
QAReport evaluate_qa(const std::vector<Question>& questions,
                     const std::map<std::string, std::vector<TLink>>& links_by_doc);

/// Line-oriented report: one line per question, then the summary.
std::string format_qa_report(const QAReport& report, const std::vector<Question>& questions);

struct PairLabel {
  std::string source;
  std::string target;
  RelationLabel label = RelationLabel::kNoLink;
};

struct DenseReport {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Micro precision / recall / F1 over gold pairs, labels projected through
/// `labels` (VAGUE and NO_LINK are the same class). A prediction for (b, a)
/// is inverted onto gold pair (a, b). Throws ScopeError for a predicted pair
/// outside the gold pairs and UsageError for duplicate gold pairs.
DenseReport evaluate_dense(const std::vector<PairLabel>& predicted, const std::vector<PairLabel>& gold,
                           const LabelSet& labels = LabelSet::dense());

}  // namespace tea

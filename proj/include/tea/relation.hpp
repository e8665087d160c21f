#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tea {

/// TimeML temporal relation types plus the NO_LINK class.
enum class RelationLabel {
  kBefore,
  kAfter,
  kIBefore,
  kIAfter,
  kIncludes,
  kIsIncluded,
  kBegins,
  kBegunBy,
  kEnds,
  kEndedBy,
  kDuring,
  kDuringInv,
  kSimultaneous,
  kNoLink,
};

inline constexpr std::array<RelationLabel, 14> kAllRelations = {
    RelationLabel::kBefore,     RelationLabel::kAfter,      RelationLabel::kIBefore,
    RelationLabel::kIAfter,     RelationLabel::kIncludes,   RelationLabel::kIsIncluded,
    RelationLabel::kBegins,     RelationLabel::kBegunBy,    RelationLabel::kEnds,
    RelationLabel::kEndedBy,    RelationLabel::kDuring,     RelationLabel::kDuringInv,
    RelationLabel::kSimultaneous, RelationLabel::kNoLink,
};

/// The 13 positive relations (everything except NO_LINK).
inline constexpr std::array<RelationLabel, 13> kPositiveRelations = {
    RelationLabel::kBefore,     RelationLabel::kAfter,      RelationLabel::kIBefore,
    RelationLabel::kIAfter,     RelationLabel::kIncludes,   RelationLabel::kIsIncluded,
    RelationLabel::kBegins,     RelationLabel::kBegunBy,    RelationLabel::kEnds,
    RelationLabel::kEndedBy,    RelationLabel::kDuring,     RelationLabel::kDuringInv,
    RelationLabel::kSimultaneous,
};

/// Relation of (b, a) given the relation of (a, b).
RelationLabel invert(RelationLabel r);

std::string_view to_string(RelationLabel r);

/// Parses a TimeML relType. VAGUE maps to NO_LINK. IDENTITY maps to
/// SIMULTANEOUS only when `merge_identity` is set, otherwise nullopt.
std::optional<RelationLabel> parse_relation(std::string_view text, bool merge_identity = true);

inline bool is_positive(RelationLabel r) { return r != RelationLabel::kNoLink; }

/// Classifier output space: an ordered set of classes (NO_LINK always last)
/// and a projection of every TimeML relation onto one of them.
class LabelSet {
 public:
  enum class Preset { kMerged, kFull, kDense };

  static LabelSet merged();  // DURING/DURING_INV folded into SIMULTANEOUS
  static LabelSet full();    // all 13 positive relations kept apart
  static LabelSet dense();   // BEFORE, AFTER, INCLUDES, IS_INCLUDED, SIMULTANEOUS, VAGUE
  static LabelSet from_preset(Preset preset);
  static LabelSet from_name(std::string_view name);

  std::string_view name() const { return name_; }
  const std::vector<RelationLabel>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }

  RelationLabel canonical(RelationLabel r) const;
  /// Index into classes() of canonical(r).
  std::size_t index_of(RelationLabel r) const;
  RelationLabel at(std::size_t index) const { return classes_.at(index); }
  /// canonical(invert(r)); the set is closed under this operation.
  RelationLabel invert_in_set(RelationLabel r) const { return canonical(invert(canonical(r))); }

  bool operator==(const LabelSet& other) const = default;

 private:
  LabelSet(std::string name, std::vector<RelationLabel> classes,
           std::array<RelationLabel, kAllRelations.size()> projection);

  std::string name_;
  std::vector<RelationLabel> classes_;
  std::array<RelationLabel, kAllRelations.size()> projection_;
};

}  // namespace tea

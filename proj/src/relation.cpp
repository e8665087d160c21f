#include "tea/relation.hpp"

#include <algorithm>

#include "tea/error.hpp"

namespace tea {

namespace {

constexpr std::size_t idx(RelationLabel r) { return static_cast<std::size_t>(r); }

using Projection = std::array<RelationLabel, kAllRelations.size()>;

Projection identity_projection() {
  Projection p{};
  for (RelationLabel r : kAllRelations) p[idx(r)] = r;
  return p;
}

}  // namespace

RelationLabel invert(RelationLabel r) {
  switch (r) {
    case RelationLabel::kBefore: return RelationLabel::kAfter;
    case RelationLabel::kAfter: return RelationLabel::kBefore;
    case RelationLabel::kIBefore: return RelationLabel::kIAfter;
    case RelationLabel::kIAfter: return RelationLabel::kIBefore;
    case RelationLabel::kIncludes: return RelationLabel::kIsIncluded;
    case RelationLabel::kIsIncluded: return RelationLabel::kIncludes;
    case RelationLabel::kBegins: return RelationLabel::kBegunBy;
    case RelationLabel::kBegunBy: return RelationLabel::kBegins;
    case RelationLabel::kEnds: return RelationLabel::kEndedBy;
    case RelationLabel::kEndedBy: return RelationLabel::kEnds;
    case RelationLabel::kDuring: return RelationLabel::kDuringInv;
    case RelationLabel::kDuringInv: return RelationLabel::kDuring;
    case RelationLabel::kSimultaneous: return RelationLabel::kSimultaneous;
    case RelationLabel::kNoLink: return RelationLabel::kNoLink;
  }
  return r;
}

std::string_view to_string(RelationLabel r) {
  switch (r) {
    case RelationLabel::kBefore: return "BEFORE";
    case RelationLabel::kAfter: return "AFTER";
    case RelationLabel::kIBefore: return "IBEFORE";
    case RelationLabel::kIAfter: return "IAFTER";
    case RelationLabel::kIncludes: return "INCLUDES";
    case RelationLabel::kIsIncluded: return "IS_INCLUDED";
    case RelationLabel::kBegins: return "BEGINS";
    case RelationLabel::kBegunBy: return "BEGUN_BY";
    case RelationLabel::kEnds: return "ENDS";
    case RelationLabel::kEndedBy: return "ENDED_BY";
    case RelationLabel::kDuring: return "DURING";
    case RelationLabel::kDuringInv: return "DURING_INV";
    case RelationLabel::kSimultaneous: return "SIMULTANEOUS";
    case RelationLabel::kNoLink: return "NO_LINK";
  }
  return "NO_LINK";
}

std::optional<RelationLabel> parse_relation(std::string_view text, bool merge_identity) {
  for (RelationLabel r : kAllRelations) {
    if (to_string(r) == text) return r;
  }
  if (text == "VAGUE" || text == "NONE") return RelationLabel::kNoLink;
  if (text == "IDENTITY") {
    if (merge_identity) return RelationLabel::kSimultaneous;
    return std::nullopt;
  }
  return std::nullopt;
}

LabelSet::LabelSet(std::string name, std::vector<RelationLabel> classes, Projection projection)
    : name_(std::move(name)), classes_(std::move(classes)), projection_(projection) {}

LabelSet LabelSet::merged() {
  Projection p = identity_projection();
  p[idx(RelationLabel::kDuring)] = RelationLabel::kSimultaneous;
  p[idx(RelationLabel::kDuringInv)] = RelationLabel::kSimultaneous;
  std::vector<RelationLabel> classes = {
      RelationLabel::kBefore,   RelationLabel::kAfter,      RelationLabel::kIBefore,
      RelationLabel::kIAfter,   RelationLabel::kIncludes,   RelationLabel::kIsIncluded,
      RelationLabel::kBegins,   RelationLabel::kBegunBy,    RelationLabel::kEnds,
      RelationLabel::kEndedBy,  RelationLabel::kSimultaneous, RelationLabel::kNoLink,
  };
  return LabelSet("merged", std::move(classes), p);
}

LabelSet LabelSet::full() {
  return LabelSet("full", std::vector<RelationLabel>(kAllRelations.begin(), kAllRelations.end()),
                  identity_projection());
}

LabelSet LabelSet::dense() {
  Projection p = identity_projection();
  p[idx(RelationLabel::kIBefore)] = RelationLabel::kBefore;
  p[idx(RelationLabel::kIAfter)] = RelationLabel::kAfter;
  p[idx(RelationLabel::kBegins)] = RelationLabel::kIsIncluded;
  p[idx(RelationLabel::kEnds)] = RelationLabel::kIsIncluded;
  p[idx(RelationLabel::kBegunBy)] = RelationLabel::kIncludes;
  p[idx(RelationLabel::kEndedBy)] = RelationLabel::kIncludes;
  p[idx(RelationLabel::kDuring)] = RelationLabel::kSimultaneous;
  p[idx(RelationLabel::kDuringInv)] = RelationLabel::kSimultaneous;
  std::vector<RelationLabel> classes = {
      RelationLabel::kBefore,     RelationLabel::kAfter,        RelationLabel::kIncludes,
      RelationLabel::kIsIncluded, RelationLabel::kSimultaneous, RelationLabel::kNoLink,
  };
  return LabelSet("dense", std::move(classes), p);
}

LabelSet LabelSet::from_preset(Preset preset) {
  switch (preset) {
    case Preset::kMerged: return merged();
    case Preset::kFull: return full();
    case Preset::kDense: return dense();
  }
  return merged();
}

LabelSet LabelSet::from_name(std::string_view name) {
  if (name == "merged") return merged();
  if (name == "full") return full();
  if (name == "dense") return dense();
  throw UsageError("unknown label set '" + std::string(name) + "'");
}

RelationLabel LabelSet::canonical(RelationLabel r) const { return projection_[idx(r)]; }

std::size_t LabelSet::index_of(RelationLabel r) const {
  auto it = std::find(classes_.begin(), classes_.end(), canonical(r));
  return static_cast<std::size_t>(it - classes_.begin());
}

}  // namespace tea

#include <gtest/gtest.h>

#include "tea/error.hpp"
#include "tea/relation.hpp"

using tea::RelationLabel;

TEST(Relation, InvertIsAnInvolution) {
  for (auto r : tea::kAllRelations) EXPECT_EQ(tea::invert(tea::invert(r)), r) << tea::to_string(r);
  EXPECT_EQ(tea::invert(RelationLabel::kBefore), RelationLabel::kAfter);
  EXPECT_EQ(tea::invert(RelationLabel::kBegins), RelationLabel::kBegunBy);
  EXPECT_EQ(tea::invert(RelationLabel::kSimultaneous), RelationLabel::kSimultaneous);
  EXPECT_EQ(tea::invert(RelationLabel::kNoLink), RelationLabel::kNoLink);
}

TEST(Relation, ParseNamesRoundTrip) {
  for (auto r : tea::kAllRelations) {
    if (r == RelationLabel::kNoLink) continue;
    EXPECT_EQ(tea::parse_relation(tea::to_string(r)), r);
  }
  EXPECT_EQ(tea::parse_relation("VAGUE"), RelationLabel::kNoLink);
  EXPECT_EQ(tea::parse_relation("IDENTITY"), RelationLabel::kSimultaneous);
  EXPECT_FALSE(tea::parse_relation("IDENTITY", false).has_value());
  EXPECT_FALSE(tea::parse_relation("OVERLAP").has_value());
}

TEST(LabelSet, MergedFoldsDuringIntoSimultaneous) {
  const auto s = tea::LabelSet::merged();
  EXPECT_EQ(s.size(), 12u);
  EXPECT_EQ(s.classes().back(), RelationLabel::kNoLink);
  EXPECT_EQ(s.canonical(RelationLabel::kDuring), RelationLabel::kSimultaneous);
  EXPECT_EQ(s.canonical(RelationLabel::kDuringInv), RelationLabel::kSimultaneous);
  EXPECT_EQ(s.canonical(RelationLabel::kIBefore), RelationLabel::kIBefore);
}

TEST(LabelSet, DenseProjection) {
  const auto s = tea::LabelSet::dense();
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s.canonical(RelationLabel::kIBefore), RelationLabel::kBefore);
  EXPECT_EQ(s.canonical(RelationLabel::kBegins), RelationLabel::kIsIncluded);
  EXPECT_EQ(s.canonical(RelationLabel::kEndedBy), RelationLabel::kIncludes);
  EXPECT_EQ(s.index_of(RelationLabel::kNoLink), 5u);
}

TEST(LabelSet, ClosedUnderInversion) {
  for (const auto& s : {tea::LabelSet::merged(), tea::LabelSet::full(), tea::LabelSet::dense()}) {
    for (auto r : tea::kAllRelations) {
      const auto c = s.canonical(r);
      EXPECT_EQ(s.canonical(c), c);
      EXPECT_EQ(s.invert_in_set(s.invert_in_set(r)), c) << s.name() << " " << tea::to_string(r);
      // Projection commutes with inversion.
      EXPECT_EQ(s.canonical(tea::invert(r)), s.invert_in_set(r)) << s.name() << " " << tea::to_string(r);
    }
  }
}

TEST(LabelSet, FromName) {
  EXPECT_EQ(tea::LabelSet::from_name("dense"), tea::LabelSet::dense());
  EXPECT_THROW(tea::LabelSet::from_name("nope"), tea::UsageError);
}

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tea/relation.hpp"

namespace tea {

/// Half-open character range [begin, end) into Document::text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const { return begin == end; }
  bool overlaps(const CharSpan& o) const { return begin < o.end && o.begin < end; }
  bool operator==(const CharSpan&) const = default;
};

struct Token {
  int index = 0;
  std::string text;
  std::string lemma;
  std::string pos;  // coarse (universal) part of speech
  int head = -1;    // -1 for the root
  std::string deprel;
  CharSpan span;
  bool has_span = false;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct TokenRef {
  int sentence = 0;
  int token = 0;
  bool operator==(const TokenRef&) const = default;
  auto operator<=>(const TokenRef&) const = default;
};

/// Inclusive token range inside one sentence.
struct TokenRange {
  int sentence = 0;
  int first = 0;
  int last = 0;
  bool operator==(const TokenRange&) const = default;
};

using AttributeList = std::vector<std::pair<std::string, std::string>>;

/// MAKEINSTANCE data. Carried through, never consumed.
struct EventInstance {
  std::string eiid;
  AttributeList attributes;
  bool operator==(const EventInstance&) const = default;
};

/// Instance id used for events that have no MAKEINSTANCE: e12 -> ei12.
std::string default_instance_id(std::string_view eid);

struct EventMention {
  std::string id;
  std::string text;
  CharSpan span;
  std::optional<TokenRef> token;  // set once a parse is attached
  std::optional<std::string> class_attr;
  EventInstance instance;

  bool operator==(const EventMention&) const = default;
};

enum class TimexType { kDate, kTime, kDuration, kSet };

std::string_view to_string(TimexType t);
std::optional<TimexType> parse_timex_type(std::string_view text);

struct TimexMention {
  std::string id;
  std::string text;
  CharSpan span;
  std::optional<TokenRange> tokens;  // never set for the DCT
  TimexType type = TimexType::kDate;
  std::string value;
  bool is_dct = false;
  AttributeList attributes;  // remaining TIMEX3 attributes, in source order

  bool operator==(const TimexMention&) const = default;
};

enum class LinkOrigin { kGold, kClassifierIntra, kClassifierCross, kClassifierDct, kRuleTimex };

std::string_view to_string(LinkOrigin o);
std::optional<LinkOrigin> parse_link_origin(std::string_view text);

struct TLink {
  std::string id;
  std::string source;
  std::string target;
  RelationLabel relation = RelationLabel::kNoLink;
  double score = 1.0;
  LinkOrigin origin = LinkOrigin::kGold;

  bool operator==(const TLink&) const = default;
};

enum class EntityKind { kEvent, kTimex, kDct };

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<Sentence> sentences;
  TimexMention dct;
  std::vector<EventMention> events;
  std::vector<TimexMention> timexes;  // excludes the DCT
  std::vector<TLink> tlinks;

  const EventMention* find_event(std::string_view id) const;
  const TimexMention* find_timex(std::string_view id) const;  // also finds the DCT
  std::optional<EntityKind> kind_of(std::string_view id) const;
  bool has_entity(std::string_view id) const { return kind_of(id).has_value(); }

  /// Sentence index of an entity, nullopt for the DCT or unaligned mentions.
  std::optional<int> sentence_of(std::string_view id) const;
  /// Representative token of an entity: the event token or the head token of a
  /// TIMEX span.
  std::optional<TokenRef> anchor_of(std::string_view id) const;

  /// Throws AlignmentError or StructuralError when an invariant is violated.
  void validate() const;

  bool operator==(const Document&) const = default;
};

/// Index of the token in [first, last] whose head lies outside the range (the
/// syntactic head of the span). Falls back to `last`.
int span_head(const Sentence& sentence, int first, int last);

}  // namespace tea

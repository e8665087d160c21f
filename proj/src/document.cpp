#include "tea/document.hpp"

#include <set>

#include "tea/error.hpp"

namespace tea {

std::string_view to_string(TimexType t) {
  switch (t) {
    case TimexType::kDate: return "DATE";
    case TimexType::kTime: return "TIME";
    case TimexType::kDuration: return "DURATION";
    case TimexType::kSet: return "SET";
  }
  return "DATE";
}

std::optional<TimexType> parse_timex_type(std::string_view text) {
  if (text == "DATE") return TimexType::kDate;
  if (text == "TIME") return TimexType::kTime;
  if (text == "DURATION") return TimexType::kDuration;
  if (text == "SET") return TimexType::kSet;
  return std::nullopt;
}

std::string_view to_string(LinkOrigin o) {
  switch (o) {
    case LinkOrigin::kGold: return "gold";
    case LinkOrigin::kClassifierIntra: return "classifier-intra";
    case LinkOrigin::kClassifierCross: return "classifier-cross";
    case LinkOrigin::kClassifierDct: return "classifier-dct";
    case LinkOrigin::kRuleTimex: return "rule-timex";
  }
  return "gold";
}

std::optional<LinkOrigin> parse_link_origin(std::string_view text) {
  for (LinkOrigin o : {LinkOrigin::kGold, LinkOrigin::kClassifierIntra, LinkOrigin::kClassifierCross,
                       LinkOrigin::kClassifierDct, LinkOrigin::kRuleTimex}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

std::string default_instance_id(std::string_view eid) {
  if (eid.size() > 1 && eid[0] == 'e') return "ei" + std::string(eid.substr(1));
  return "ei_" + std::string(eid);
}

const EventMention* Document::find_event(std::string_view id) const {
  for (const auto& e : events) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const TimexMention* Document::find_timex(std::string_view id) const {
  if (dct.id == id) return &dct;
  for (const auto& t : timexes) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::optional<EntityKind> Document::kind_of(std::string_view id) const {
  if (find_event(id)) return EntityKind::kEvent;
  if (dct.id == id) return EntityKind::kDct;
  if (find_timex(id)) return EntityKind::kTimex;
  return std::nullopt;
}

std::optional<int> Document::sentence_of(std::string_view id) const {
  auto anchor = anchor_of(id);
  if (!anchor) return std::nullopt;
  return anchor->sentence;
}

std::optional<TokenRef> Document::anchor_of(std::string_view id) const {
  if (const auto* e = find_event(id)) return e->token;
  const auto* t = find_timex(id);
  if (!t || t->is_dct || !t->tokens) return std::nullopt;
  const auto& range = *t->tokens;
  return TokenRef{range.sentence,
                  span_head(sentences.at(static_cast<std::size_t>(range.sentence)), range.first,
                            range.last)};
}

int span_head(const Sentence& sentence, int first, int last) {
  for (int i = first; i <= last; ++i) {
    int head = sentence.at(static_cast<std::size_t>(i)).head;
    if (head < first || head > last) return i;
  }
  return last;
}

void Document::validate() const {
  if (!dct.is_dct || dct.id.empty()) throw StructuralError(doc_id + ": document has no DCT");
  if (dct.tokens) throw StructuralError(doc_id + ": DCT must not carry a token span");

  std::set<std::string_view> ids;
  auto declare = [&](const std::string& id) {
    if (id.empty()) throw StructuralError(doc_id + ": entity with empty id");
    if (!ids.insert(id).second) throw StructuralError(doc_id + ": duplicate entity id " + id);
  };
  declare(dct.id);

  auto check_token = [&](int s, int t, const std::string& id) {
    if (s < 0 || static_cast<std::size_t>(s) >= sentences.size() || t < 0 ||
        static_cast<std::size_t>(t) >= sentences[static_cast<std::size_t>(s)].size()) {
      throw AlignmentError(doc_id + ": mention " + id + " refers to a token out of range");
    }
  };
  for (const auto& e : events) {
    declare(e.id);
    if (e.token) check_token(e.token->sentence, e.token->token, e.id);
  }
  for (const auto& t : timexes) {
    declare(t.id);
    if (t.is_dct) throw StructuralError(doc_id + ": more than one DCT (" + t.id + ")");
    if (t.tokens) {
      if (t.tokens->first > t.tokens->last) {
        throw AlignmentError(doc_id + ": empty token range for " + t.id);
      }
      check_token(t.tokens->sentence, t.tokens->first, t.id);
      check_token(t.tokens->sentence, t.tokens->last, t.id);
    }
  }
  for (const auto& link : tlinks) {
    if (!ids.contains(link.source)) {
      throw AlignmentError(doc_id + ": TLINK " + link.id + " references unknown entity " + link.source);
    }
    if (!ids.contains(link.target)) {
      throw AlignmentError(doc_id + ": TLINK " + link.id + " references unknown entity " + link.target);
    }
    if (link.source == link.target) {
      throw StructuralError(doc_id + ": TLINK " + link.id + " links " + link.source + " to itself");
    }
    if (!(link.score >= 0.0 && link.score <= 1.0)) {
      throw StructuralError(doc_id + ": TLINK " + link.id + " score outside [0,1]");
    }
    if ((link.origin == LinkOrigin::kGold || link.origin == LinkOrigin::kRuleTimex) &&
        link.score != 1.0) {
      throw StructuralError(doc_id + ": TLINK " + link.id + " of origin " +
                            std::string(to_string(link.origin)) + " must have score 1");
    }
  }
}

}  // namespace tea

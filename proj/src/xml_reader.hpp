#pragma once

// Minimal pull reader for the XML subset TimeML files use: elements,
// attributes, character data, comments, processing instructions, DOCTYPE and
// CDATA. Character data keeps its order relative to tags, which is what
// offset-based mention extraction needs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tea/document.hpp"

namespace tea::xml {

enum class EventKind { kStart, kEnd, kText };

struct Event {
  EventKind kind = EventKind::kText;
  std::string name;        // element name for kStart/kEnd
  AttributeList attributes;  // kStart only, source order
  bool self_closing = false;
  std::string text;        // decoded character data for kText
  std::size_t line = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view input) : input_(input) {}

  /// Next event, or nullopt at end of input. Throws ParseError on malformed
  /// markup, including mismatched or unclosed elements.
  std::optional<Event> next();

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return input_.substr(pos_).starts_with(s); }
  void advance(std::size_t n);
  void skip_until(std::string_view terminator, std::string_view what);
  void skip_space();
  std::string read_name();
  Event read_tag();

  std::string_view input_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<std::string> open_;
  std::optional<Event> pending_end_;
};

/// Decodes the five predefined entities and numeric character references.
std::string decode_entities(std::string_view raw, std::size_t line);
std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

}  // namespace tea::xml

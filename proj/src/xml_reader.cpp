#include "xml_reader.hpp"

#include <cctype>

#include "tea/error.hpp"

namespace tea::xml {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == ':';
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

std::string decode_entities(std::string_view raw, std::size_t line) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '&') {
      out += raw[i];
      continue;
    }
    auto semi = raw.find(';', i);
    if (semi == std::string_view::npos) throw ParseError("unterminated entity reference", line);
    std::string_view ent = raw.substr(i + 1, semi - i - 1);
    if (ent == "lt") {
      out += '<';
    } else if (ent == "gt") {
      out += '>';
    } else if (ent == "amp") {
      out += '&';
    } else if (ent == "quot") {
      out += '"';
    } else if (ent == "apos") {
      out += '\'';
    } else if (ent.size() > 1 && ent[0] == '#') {
      try {
        unsigned long cp = ent[1] == 'x' || ent[1] == 'X'
                               ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                               : std::stoul(std::string(ent.substr(1)), nullptr, 10);
        append_utf8(out, cp);
      } catch (const std::exception&) {
        throw ParseError("bad character reference &" + std::string(ent) + ";", line);
      }
    } else {
      throw ParseError("unknown entity &" + std::string(ent) + ";", line);
    }
    i = semi;
  }
  return out;
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out = escape_text(text);
  std::string quoted;
  for (char c : out) {
    if (c == '"') {
      quoted += "&quot;";
    } else {
      quoted += c;
    }
  }
  return quoted;
}

void Reader::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < input_.size(); ++i, ++pos_) {
    if (input_[pos_] == '\n') ++line_;
  }
}

void Reader::skip_until(std::string_view terminator, std::string_view what) {
  auto end = input_.find(terminator, pos_);
  if (end == std::string_view::npos) {
    throw ParseError("unterminated " + std::string(what), line_);
  }
  advance(end + terminator.size() - pos_);
}

void Reader::skip_space() {
  while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance(1);
}

std::string Reader::read_name() {
  std::size_t start = pos_;
  while (pos_ < input_.size() && is_name_char(peek())) advance(1);
  if (start == pos_) throw ParseError("expected a name", line_);
  return std::string(input_.substr(start, pos_ - start));
}

Event Reader::read_tag() {
  Event ev;
  ev.line = line_;
  advance(1);  // '<'
  if (peek() == '/') {
    advance(1);
    ev.kind = EventKind::kEnd;
    ev.name = read_name();
    skip_space();
    if (peek() != '>') throw ParseError("malformed end tag </" + ev.name, line_);
    advance(1);
    if (open_.empty()) throw ParseError("unexpected end tag </" + ev.name + ">", ev.line);
    if (open_.back() != ev.name) {
      throw ParseError("end tag </" + ev.name + "> does not match <" + open_.back() + ">", ev.line);
    }
    open_.pop_back();
    return ev;
  }
  ev.kind = EventKind::kStart;
  ev.name = read_name();
  for (;;) {
    skip_space();
    char c = peek();
    if (c == '\0') throw ParseError("unterminated start tag <" + ev.name, ev.line);
    if (c == '/') {
      advance(1);
      if (peek() != '>') throw ParseError("malformed empty-element tag <" + ev.name, line_);
      advance(1);
      ev.self_closing = true;
      break;
    }
    if (c == '>') {
      advance(1);
      break;
    }
    std::string key = read_name();
    skip_space();
    if (peek() != '=') throw ParseError("attribute " + key + " has no value", line_);
    advance(1);
    skip_space();
    char quote = peek();
    if (quote != '"' && quote != '\'') {
      throw ParseError("attribute " + key + " value is not quoted", line_);
    }
    advance(1);
    auto end = input_.find(quote, pos_);
    if (end == std::string_view::npos) throw ParseError("unterminated attribute " + key, line_);
    std::size_t value_line = line_;
    std::string_view raw = input_.substr(pos_, end - pos_);
    advance(end + 1 - pos_);
    for (const auto& [k, _] : ev.attributes) {
      if (k == key) throw ParseError("duplicate attribute " + key, value_line);
    }
    ev.attributes.emplace_back(std::move(key), decode_entities(raw, value_line));
  }
  if (!ev.self_closing) open_.push_back(ev.name);
  return ev;
}

std::optional<Event> Reader::next() {
  if (pending_end_) {
    Event ev = std::move(*pending_end_);
    pending_end_.reset();
    return ev;
  }
  for (;;) {
    if (pos_ >= input_.size()) {
      if (!open_.empty()) throw ParseError("unclosed element <" + open_.back() + ">", line_);
      return std::nullopt;
    }
    if (peek() != '<') {
      Event ev;
      ev.kind = EventKind::kText;
      ev.line = line_;
      std::size_t end = input_.find('<', pos_);
      if (end == std::string_view::npos) end = input_.size();
      std::string_view raw = input_.substr(pos_, end - pos_);
      advance(end - pos_);
      ev.text = decode_entities(raw, ev.line);
      return ev;
    }
    if (starts_with("<!--")) {
      skip_until("-->", "comment");
      continue;
    }
    if (starts_with("<![CDATA[")) {
      Event ev;
      ev.kind = EventKind::kText;
      ev.line = line_;
      advance(9);
      auto end = input_.find("]]>", pos_);
      if (end == std::string_view::npos) throw ParseError("unterminated CDATA section", ev.line);
      ev.text = std::string(input_.substr(pos_, end - pos_));
      advance(end + 3 - pos_);
      return ev;
    }
    if (starts_with("<?")) {
      skip_until("?>", "processing instruction");
      continue;
    }
    if (starts_with("<!")) {
      skip_until(">", "declaration");
      continue;
    }
    Event ev = read_tag();
    if (ev.kind == EventKind::kStart && ev.self_closing) {
      Event end;
      end.kind = EventKind::kEnd;
      end.name = ev.name;
      end.line = ev.line;
      pending_end_ = std::move(end);
    }
    return ev;
  }
}

}  // namespace tea::xml

#include <charconv>
#include <string>

#include "tea/corpus_io.hpp"
#include "tea/error.hpp"

namespace tea {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<long> to_int(std::string_view s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// UDPipe-style TokenRange=begin:end in the MISC column.
std::optional<CharSpan> token_range(std::string_view misc) {
  for (auto item : split(misc, '|')) {
    if (!item.starts_with("TokenRange=")) continue;
    auto value = item.substr(11);
    auto colon = value.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto b = to_int(value.substr(0, colon));
    auto e = to_int(value.substr(colon + 1));
    if (!b || !e || *b < 0 || *e < *b) return std::nullopt;
    return CharSpan{static_cast<std::size_t>(*b), static_cast<std::size_t>(*e)};
  }
  return std::nullopt;
}

}  // namespace

void validate_tree(const Sentence& sentence, std::size_t sentence_number) {
  const std::string where = "sentence " + std::to_string(sentence_number);
  const int n = static_cast<int>(sentence.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = sentence[static_cast<std::size_t>(i)];
    if (t.head == -1) {
      ++roots;
    } else if (t.head < 0 || t.head >= n) {
      throw StructuralError(where + ": head of token " + std::to_string(i + 1) + " out of range");
    } else if (t.head == i) {
      throw StructuralError(where + ": token " + std::to_string(i + 1) + " is its own head");
    }
  }
  if (roots != 1) {
    throw StructuralError(where + ": expected exactly one root, found " + std::to_string(roots));
  }
  for (int i = 0; i < n; ++i) {
    int cur = i;
    for (int steps = 0; cur != -1; ++steps) {
      if (steps > n) throw StructuralError(where + ": head cycle through token " + std::to_string(i + 1));
      cur = sentence[static_cast<std::size_t>(cur)].head;
    }
  }
}

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::size_t line_no = 0;

  auto finish = [&]() {
    if (current.empty()) return;
    validate_tree(current, sentences.size() + 1);
    sentences.push_back(std::move(current));
    current.clear();
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      finish();
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') continue;

    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " + std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;

    auto id = to_int(cols[0]);
    if (!id || *id != static_cast<long>(current.size()) + 1) {
      throw ParseError("token id " + std::string(cols[0]) + " out of sequence", line_no);
    }
    auto head = to_int(cols[6]);
    if (!head) throw ParseError("non-numeric head " + std::string(cols[6]), line_no);

    Token tok;
    tok.index = static_cast<int>(*id) - 1;
    tok.text = std::string(cols[1]);
    tok.lemma = std::string(cols[2]);
    tok.pos = std::string(cols[3]);
    tok.head = static_cast<int>(*head) - 1;
    tok.deprel = std::string(cols[7]);
    if (auto span = token_range(cols[9])) {
      tok.span = *span;
      tok.has_span = true;
    }
    current.push_back(std::move(tok));
    if (end == text.size()) break;
  }
  finish();
  return sentences;
}

std::vector<std::string> attach_parse(Document& doc, std::vector<Sentence> sentences) {
  std::vector<std::string> warnings;

  std::size_t cursor = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (auto& tok : sentences[s]) {
      if (tok.has_span) {
        cursor = tok.span.end;
        continue;
      }
      auto pos = doc.text.find(tok.text, cursor);
      if (pos == std::string::npos || tok.text.empty()) {
        throw AlignmentError(doc.doc_id + ": token '" + tok.text + "' of sentence " +
                             std::to_string(s + 1) + " not found in document text");
      }
      tok.span = CharSpan{pos, pos + tok.text.size()};
      tok.has_span = true;
      cursor = tok.span.end;
    }
  }

  struct Hit {
    int sentence;
    int token;
  };
  auto covering = [&](const CharSpan& span) {
    std::vector<Hit> hits;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      for (const auto& tok : sentences[s]) {
        if (tok.span.overlaps(span)) hits.push_back({static_cast<int>(s), tok.index});
      }
    }
    return hits;
  };
  auto exact = [&](const std::vector<Hit>& hits, const CharSpan& span) {
    const auto& first = sentences[static_cast<std::size_t>(hits.front().sentence)]
                                 [static_cast<std::size_t>(hits.front().token)];
    const auto& last = sentences[static_cast<std::size_t>(hits.back().sentence)]
                                [static_cast<std::size_t>(hits.back().token)];
    return first.span.begin == span.begin && last.span.end == span.end;
  };
  // A mention crossing sentences keeps only its tokens in the first one.
  auto same_sentence = [](std::vector<Hit>& hits) {
    int s = hits.front().sentence;
    std::erase_if(hits, [s](const Hit& h) { return h.sentence != s; });
  };

  for (auto& e : doc.events) {
    auto hits = covering(e.span);
    if (hits.empty()) {
      throw AlignmentError(doc.doc_id + ": event " + e.id + " does not cover any token");
    }
    bool crosses = hits.front().sentence != hits.back().sentence;
    if (crosses) warnings.push_back(doc.doc_id + ": event " + e.id + " spans a sentence boundary");
    same_sentence(hits);
    const Sentence& sent = sentences[static_cast<std::size_t>(hits.front().sentence)];
    int token = hits.size() == 1 ? hits.front().token
                                 : span_head(sent, hits.front().token, hits.back().token);
    if (hits.size() > 1) {
      warnings.push_back(doc.doc_id + ": event " + e.id + " spans " + std::to_string(hits.size()) +
                         " tokens, using head '" + sent[static_cast<std::size_t>(token)].text + "'");
    } else if (!crosses && !exact(hits, e.span)) {
      warnings.push_back(doc.doc_id + ": event " + e.id + " snapped to token boundaries");
    }
    e.token = TokenRef{hits.front().sentence, token};
  }
  for (auto& t : doc.timexes) {
    auto hits = covering(t.span);
    if (hits.empty()) {
      throw AlignmentError(doc.doc_id + ": time expression " + t.id + " does not cover any token");
    }
    bool crosses = hits.front().sentence != hits.back().sentence;
    if (crosses) {
      warnings.push_back(doc.doc_id + ": time expression " + t.id + " spans a sentence boundary");
    }
    same_sentence(hits);
    if (!crosses && !exact(hits, t.span)) {
      warnings.push_back(doc.doc_id + ": time expression " + t.id + " snapped to token boundaries");
    }
    t.tokens = TokenRange{hits.front().sentence, hits.front().token, hits.back().token};
  }

  doc.sentences = std::move(sentences);
  doc.validate();
  return warnings;
}

}  // namespace tea

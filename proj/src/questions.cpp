#include <sstream>

#include "tea/corpus_io.hpp"
#include "tea/error.hpp"

namespace tea {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::kYes: return "yes";
    case Answer::kNo: return "no";
    case Answer::kUnknown: return "unknown";
  }
  return "unknown";
}

std::vector<Question> load_questions(std::string_view text) {
  std::vector<Question> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string w; fields >> w;) f.push_back(w);
    if (f.size() != 5) {
      throw ParseError("expected 5 fields, found " + std::to_string(f.size()), line_no);
    }

    Question q;
    q.doc_id = f[0];
    q.source = f[1];
    q.target = f[2];
    auto rel = parse_relation(f[3]);
    if (!rel || *rel == RelationLabel::kNoLink) {
      throw ParseError("unknown relation " + f[3], line_no);
    }
    q.relation = *rel;
    if (f[4] == "yes") {
      q.gold = Answer::kYes;
    } else if (f[4] == "no") {
      q.gold = Answer::kNo;
    } else if (f[4] == "unknown") {
      q.gold = Answer::kUnknown;
    } else {
      throw ParseError("unknown answer " + f[4], line_no);
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace tea

#pragma once

// Reading and writing of the on-disk formats: TimeML documents, CoNLL-U
// dependency parses and QA question files.

#include <string>
#include <string_view>
#include <vector>

#include "tea/document.hpp"
#include "tea/relation.hpp"

namespace tea {

struct TimeMLOptions {
  /// Store IDENTITY links as SIMULTANEOUS. When off, IDENTITY links are dropped.
  bool merge_identity = true;
  /// Used when the file has no DOCID element.
  std::string fallback_doc_id;
};

/// Parses the consumed TimeML subset (DOCID, DCT, TEXT with EVENT/TIMEX3,
/// MAKEINSTANCE, TLINK). TLINK instance ids are resolved to event ids.
///
/// Throws ParseError (with line) on malformed XML or unknown relation types,
/// AlignmentError when a TLINK names an unknown entity or instance, and
/// StructuralError when no DCT is declared.
Document parse_timeml(std::string_view xml_text, const TimeMLOptions& options = {});

/// Writes a document back as TimeML. Every event gets a MAKEINSTANCE; links
/// not of gold origin carry `origin` and `score` attributes.
std::string serialize_timeml(const Document& doc);

/// Parses 10-column CoNLL-U text. Multiword-token and empty-node lines are
/// skipped; a `TokenRange=begin:end` MISC entry sets the token's char span.
/// Throws ParseError for malformed lines and StructuralError for heads out of
/// range, root count other than one, or head cycles.
std::vector<Sentence> parse_conllu(std::string_view text);

/// Throws StructuralError unless `sentence` is a single-rooted tree.
void validate_tree(const Sentence& sentence, std::size_t sentence_number);

/// Attaches dependency parses to a document: computes token char offsets
/// against the document text (unless the parse supplied them) and snaps each
/// mention to tokens. Multi-token events snap to their syntactic head.
/// Returns warnings for mentions that did not match token boundaries exactly.
std::vector<std::string> attach_parse(Document& doc, std::vector<Sentence> sentences);

enum class Answer { kYes, kNo, kUnknown };

std::string_view to_string(Answer a);

struct Question {
  std::string doc_id;
  std::string source;
  std::string target;
  RelationLabel relation = RelationLabel::kBefore;
  Answer gold = Answer::kYes;

  bool operator==(const Question&) const = default;
};

/// One question per line: `doc_id source target RELATION yes|no|unknown`.
/// Blank lines and `#` comments are skipped.
std::vector<Question> load_questions(std::string_view text);

}  // namespace tea

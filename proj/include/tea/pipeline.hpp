#pragma once

// End-to-end orchestration: configuration, training, annotation and
// evaluation over corpus directories.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tea/conflict.hpp"
#include "tea/event_extractor.hpp"
#include "tea/neural/checkpoint.hpp"
#include "tea/neural/embedding.hpp"
#include "tea/timegraph.hpp"
#include "tea/tlink_models.hpp"

namespace tea {

enum class Mode { kQaTempEval, kTimeBankDense };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);  // throws UsageError

struct PipelineConfig {
  Mode mode = Mode::kQaTempEval;

  // Paths. A corpus directory holds `<name>.tml` with a `<name>.conllu` parse.
  std::string train_corpus;
  std::string input;        // documents to annotate
  std::string output;       // annotated TimeML
  std::string checkpoints;
  std::string embeddings;   // empty: hash-seeded vectors only
  std::string annotations;  // system output to evaluate
  std::string questions;
  std::string gold;         // gold TimeML directory (dense evaluation)
  std::string report;

  std::string label_set = "merged";
  double intra_ratio = 0.1;
  double cross_ratio = 1.0;
  double dct_ratio = 4.0;
  bool inverse_frequency_weights = false;
  bool veto = true;
  bool gold_events = false;  // keep input events instead of detecting them
  bool flat_context = false;

  double event_threshold = 0.5;
  double event_positive_weight = 3.0;

  int embedding_dim = 300;
  int event_units = 128;
  int event_hidden = 30;
  int event_feature_hidden = 3;
  double event_input_dropout = 0.5;
  double event_hidden_dropout = 0.5;
  int pair_units = 256;
  int pair_hidden = 100;
  double pair_input_dropout = 0.6;
  double pair_hidden_dropout = 0.5;

  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t epochs = 30;
  std::size_t patience = 5;

  std::uint64_t training_seed = 42;
  std::uint64_t pruning_seed = 7;
  std::uint64_t embedding_seed = 0;

  /// Where each tunable's value came from: "paper", "artifact-default",
  /// "config" or "flag".
  std::map<std::string, std::string> provenance;
};

/// Defaults for a mode: dense mode turns off the veto and downsampling,
/// switches to inverse-frequency weights, the dense label set, gold events
/// and batch size 16.
PipelineConfig default_config(Mode mode);

/// Reads a config document. `mode` is applied first; every other key present
/// overrides the mode default. Unknown keys raise UsageError.
PipelineConfig config_from_json(const neural::Json& j);
neural::Json to_json(const PipelineConfig& config);

/// Sets one tunable from its text form and marks its provenance as "flag".
void set_option(PipelineConfig& config, const std::string& key, const std::string& value);

struct CorpusEntry {
  std::string name;
  std::filesystem::path timeml;
  std::filesystem::path conllu;
};

/// Sorted `.tml` files of a directory with their parses. Throws PathError for
/// a missing directory or parse file.
std::vector<CorpusEntry> list_corpus(const std::filesystem::path& dir);

/// Parses a TimeML file and attaches its dependency parse.
Document load_document(const CorpusEntry& entry, std::vector<std::string>* warnings = nullptr);

neural::EmbeddingTable load_embeddings(const PipelineConfig& config);

struct TrainedModels {
  EventModel events;
  ClassifierBundle bundle;
};

/// Trains the event model and the three pair classifiers on the train corpus
/// and writes event.json, intra.json, cross.json, dct.json and manifest.json
/// to the checkpoint directory. Returns the manifest.
neural::Json run_train(const PipelineConfig& config);

/// Reads the four checkpoints. Throws PathError when one is missing.
TrainedModels load_models(const std::filesystem::path& dir);

struct AnnotatedDocument {
  Document doc;
  ResolveResult resolution;
  std::size_t raw_links = 0;
};

/// Runs the full pipeline on one parsed document: event detection (unless
/// gold events are kept), TIMEX rules, pair classification in both orders,
/// double-check merge and pruning.
AnnotatedDocument annotate_document(const TrainedModels& models, Document doc,
                                    const neural::EmbeddingTable& embeddings, const PipelineConfig& config);

struct CorpusRunSummary {
  std::vector<std::string> written;
  std::vector<std::string> failures;  // "<name>: <error>"
  bool ok() const { return failures.empty(); }
};

/// Annotates every document of `config.input` into `config.output`. A failing
/// document is reported and skipped.
CorpusRunSummary run_annotate(const PipelineConfig& config);

struct EvaluationResult {
  std::string text;      // human-readable report
  neural::Json summary;  // machine-readable record
};

/// QA mode: answers `config.questions` against `config.annotations`.
/// Dense mode: compares `config.annotations` with `config.gold` over the gold
/// pairs; gold pairs absent from the system output count as NO_LINK
/// predictions and system links outside the gold pairs are ignored.
EvaluationResult run_evaluate(const PipelineConfig& config);

/// Reads a link dump (`source target RELATION score [origin]` per line) and
/// prunes it; rule-timex links are the fixed TIMEX edges.
std::vector<TLink> read_link_dump(std::string_view text);
std::string write_link_dump(const std::vector<TLink>& links);

}  // namespace tea

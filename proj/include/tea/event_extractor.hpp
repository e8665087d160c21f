#pragma once

// Token-level event detection over a 9-token window.

#include <array>
#include <span>
#include <vector>

#include "tea/document.hpp"
#include "tea/neural/embedding.hpp"
#include "tea/neural/event_network.hpp"
#include "tea/neural/training.hpp"

namespace tea {

inline constexpr int kEventWindowRadius = 4;

struct TokenFeatures {
  bool is_main_verb = false;
  bool is_predicate = false;
  bool is_verb = false;
  bool is_noun = false;

  std::array<double, neural::kTokenFeatureCount> as_array() const;
  bool operator==(const TokenFeatures&) const = default;
};

/// is_verb: UPOS VERB. is_noun: NOUN or PROPN. is_main_verb: a verb that is
/// the sentence root. is_predicate: has a subject or clausal-subject
/// dependent, or is a root verb.
TokenFeatures token_features(const Sentence& sentence, int index);

struct EventWindow {
  std::vector<neural::Vec> window;  // 2 * kEventWindowRadius + 1 vectors
  TokenFeatures features;
};

/// Embeddings of tokens index-4 .. index+4, zero vectors outside the sentence,
/// and the features of the centre token.
EventWindow build_window(const Sentence& sentence, int index, const neural::EmbeddingTable& embeddings);

struct EventModel {
  neural::EventNetwork network;
  double threshold = 0.5;

  double score(const Sentence& sentence, int index, const neural::EmbeddingTable& embeddings) const;
};

/// One single-token mention per token scoring at least the threshold, in
/// document order. Ids are e1, e2, ... skipping ids already used by TIMEXes.
std::vector<EventMention> predict_events(const EventModel& model, const Document& doc,
                                         const neural::EmbeddingTable& embeddings);

struct EventTrainingOptions {
  neural::EventNetworkShape shape;
  neural::TrainingConfig training;
  double positive_weight = 3.0;
  double threshold = 0.5;
};

/// One example per token of every parsed sentence; gold event tokens are
/// positive.
std::vector<neural::WindowExample> event_examples(std::span<const Document> docs,
                                                  const neural::EmbeddingTable& embeddings);

struct EventTrainingResult {
  EventModel model;
  neural::TrainHistory history;
};

/// Throws UsageError when the corpus has no tokens or the embedding dimension
/// differs from the shape.
EventTrainingResult train_event_model(std::span<const Document> docs,
                                      const neural::EmbeddingTable& embeddings,
                                      const EventTrainingOptions& options);

}  // namespace tea

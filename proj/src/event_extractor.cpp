#include "tea/event_extractor.hpp"

#include <set>
#include <string>

#include "tea/error.hpp"

namespace tea {

std::array<double, neural::kTokenFeatureCount> TokenFeatures::as_array() const {
  return {is_main_verb ? 1.0 : 0.0, is_predicate ? 1.0 : 0.0, is_verb ? 1.0 : 0.0,
          is_noun ? 1.0 : 0.0};
}

namespace {

bool is_subject_relation(const std::string& deprel) {
  const std::string base = deprel.substr(0, deprel.find(':'));
  return base == "nsubj" || base == "csubj" || base == "nsubjpass" || base == "csubjpass";
}

}  // namespace

TokenFeatures token_features(const Sentence& sentence, int index) {
  if (index < 0 || index >= static_cast<int>(sentence.size())) {
    throw UsageError("token index " + std::to_string(index) + " out of range");
  }
  const Token& tok = sentence[static_cast<std::size_t>(index)];
  TokenFeatures f;
  f.is_verb = tok.pos == "VERB";
  f.is_noun = tok.pos == "NOUN" || tok.pos == "PROPN";
  f.is_main_verb = f.is_verb && tok.head < 0;
  f.is_predicate = f.is_main_verb;
  for (const Token& other : sentence) {
    if (other.head == index && is_subject_relation(other.deprel)) f.is_predicate = true;
  }
  return f;
}

EventWindow build_window(const Sentence& sentence, int index,
                         const neural::EmbeddingTable& embeddings) {
  EventWindow w;
  w.features = token_features(sentence, index);
  const int n = static_cast<int>(sentence.size());
  for (int k = index - kEventWindowRadius; k <= index + kEventWindowRadius; ++k) {
    w.window.push_back(k < 0 || k >= n ? embeddings.zero()
                                       : embeddings.lookup(sentence[static_cast<std::size_t>(k)].text));
  }
  return w;
}

double EventModel::score(const Sentence& sentence, int index,
                         const neural::EmbeddingTable& embeddings) const {
  const EventWindow w = build_window(sentence, index, embeddings);
  return network.predict(w.window, w.features.as_array());
}

std::vector<EventMention> predict_events(const EventModel& model, const Document& doc,
                                         const neural::EmbeddingTable& embeddings) {
  std::set<std::string> taken;
  for (const auto& t : doc.timexes) taken.insert(t.id);
  taken.insert(doc.dct.id);

  std::vector<EventMention> out;
  int next = 1;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence& sentence = doc.sentences[s];
    for (std::size_t k = 0; k < sentence.size(); ++k) {
      if (model.score(sentence, static_cast<int>(k), embeddings) < model.threshold) continue;
      EventMention m;
      do {
        m.id = "e" + std::to_string(next++);
      } while (taken.contains(m.id));
      m.text = sentence[k].text;
      m.span = sentence[k].span;
      m.token = TokenRef{static_cast<int>(s), static_cast<int>(k)};
      m.instance.eiid = default_instance_id(m.id);
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<neural::WindowExample> event_examples(std::span<const Document> docs,
                                                  const neural::EmbeddingTable& embeddings) {
  std::vector<neural::WindowExample> out;
  for (const Document& doc : docs) {
    std::set<TokenRef> positives;
    for (const auto& e : doc.events) {
      if (e.token) positives.insert(*e.token);
    }
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (std::size_t k = 0; k < doc.sentences[s].size(); ++k) {
        EventWindow w = build_window(doc.sentences[s], static_cast<int>(k), embeddings);
        neural::WindowExample ex;
        ex.window = std::move(w.window);
        ex.features = w.features.as_array();
        ex.label = positives.contains(TokenRef{static_cast<int>(s), static_cast<int>(k)}) ? 1 : 0;
        out.push_back(std::move(ex));
      }
    }
  }
  return out;
}

EventTrainingResult train_event_model(std::span<const Document> docs,
                                      const neural::EmbeddingTable& embeddings,
                                      const EventTrainingOptions& options) {
  if (static_cast<int>(embeddings.dimension()) != options.shape.input_dim) {
    throw UsageError("embedding dimension " + std::to_string(embeddings.dimension()) +
                     " does not match the event model input dimension " +
                     std::to_string(options.shape.input_dim));
  }
  if (!(options.positive_weight > 0.0)) throw UsageError("positive class weight must be positive");
  const auto examples = event_examples(docs, embeddings);
  if (examples.empty()) throw UsageError("event training corpus has no parsed tokens");

  neural::TrainingConfig config = options.training;
  config.class_weights = {1.0, options.positive_weight};

  EventTrainingResult result;
  result.model.network = neural::EventNetwork(options.shape, neural::derive_seed(config.seed, "event-init"));
  result.model.threshold = options.threshold;
  result.history = neural::train(result.model.network, std::span<const neural::WindowExample>(examples),
                                 std::span<const neural::WindowExample>(), config);
  return result;
}

}  // namespace tea

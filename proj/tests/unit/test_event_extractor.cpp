#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tea/error.hpp"
#include "tea/event_extractor.hpp"

namespace {

// Sentences mixing a fixed set of event verbs with filler words; every verb
// is an event.
std::vector<tea::Document> synthetic_corpus(int sentences, std::uint64_t seed) {
  const std::vector<std::string> verbs{"jumped", "sang", "collapsed", "grew"};
  const std::vector<std::string> filler{"the", "a", "cat", "dog", "quickly", "on", "river", "old"};
  std::mt19937_64 gen(seed);
  tea::Document doc;
  doc.doc_id = "synthetic";
  doc.dct.id = "t0";
  doc.dct.is_dct = true;
  int next = 1;
  for (int s = 0; s < sentences; ++s) {
    const int n = 4 + static_cast<int>(gen() % 5);
    const int verb_at = static_cast<int>(gen() % static_cast<unsigned>(n));
    tea::Sentence sent;
    for (int k = 0; k < n; ++k) {
      tea::Token t;
      t.index = k;
      const bool verb = k == verb_at;
      t.text = verb ? verbs[gen() % verbs.size()] : filler[gen() % filler.size()];
      t.pos = verb ? "VERB" : "NOUN";
      t.head = verb ? -1 : verb_at;
      t.deprel = verb ? "root" : (k == 0 ? "nsubj" : "dep");
      sent.push_back(t);
    }
    tea::EventMention e;
    e.id = "e" + std::to_string(next++);
    e.text = sent[static_cast<std::size_t>(verb_at)].text;
    e.token = tea::TokenRef{s, verb_at};
    doc.events.push_back(e);
    doc.sentences.push_back(sent);
  }
  return {doc};
}

double training_recall(const tea::EventModel& model, const std::vector<tea::Document>& docs,
                       const tea::neural::EmbeddingTable& emb) {
  std::size_t hit = 0;
  std::size_t total = 0;
  for (const auto& doc : docs) {
    for (const auto& e : doc.events) {
      ++total;
      const auto& sent = doc.sentences[static_cast<std::size_t>(e.token->sentence)];
      if (model.score(sent, e.token->token, emb) >= model.threshold) ++hit;
    }
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

tea::EventTrainingOptions small_options(std::size_t epochs) {
  tea::EventTrainingOptions o;
  o.shape = {8, 8, 6, 3, 0.1, 0.1};
  o.training.epochs = epochs;
  o.training.batch_size = 8;
  o.training.learning_rate = 0.01;
  o.training.seed = 3;
  return o;
}

}  // namespace

TEST(TokenFeatures, ExampleSentence) {
  const auto doc = fixtures::parsed("marriage");
  const auto& s = doc.sentences[0];
  EXPECT_EQ(tea::token_features(s, 2), (tea::TokenFeatures{true, true, true, false}));
  EXPECT_EQ(tea::token_features(s, 1), (tea::TokenFeatures{false, false, false, true}));
  // "failed" heads its own subject clause but is not the root.
  const auto failed = tea::token_features(doc.sentences[2], 8);
  EXPECT_FALSE(failed.is_main_verb);
  EXPECT_TRUE(failed.is_predicate);
  EXPECT_THROW(tea::token_features(s, 7), tea::UsageError);
}

TEST(TokenFeatures, MainVerbImpliesVerb) {
  std::mt19937_64 gen(17);
  const std::vector<std::string> pos{"VERB", "NOUN", "PROPN", "ADJ", "AUX"};
  const std::vector<std::string> rel{"nsubj", "obj", "csubj:pass", "dep", "nsubj:pass"};
  for (int trial = 0; trial < 200; ++trial) {
    auto s = oracle::random_tree(gen, 8);
    for (auto& t : s) {
      t.pos = pos[gen() % pos.size()];
      t.deprel = t.head < 0 ? "root" : rel[gen() % rel.size()];
    }
    for (int i = 0; i < 8; ++i) {
      const auto f = tea::token_features(s, i);
      if (f.is_main_verb) {
        EXPECT_TRUE(f.is_verb);
        EXPECT_TRUE(f.is_predicate);
      }
      EXPECT_EQ(f.is_main_verb, s[static_cast<std::size_t>(i)].pos == "VERB" && s[static_cast<std::size_t>(i)].head < 0);
    }
  }
}

TEST(EventWindow, PadsWithZeros) {
  const auto doc = fixtures::parsed("marriage");
  tea::neural::EmbeddingTable emb(6, 1);
  const auto w = tea::build_window(doc.sentences[0], 0, emb);
  ASSERT_EQ(w.window.size(), 9u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(w.window[static_cast<std::size_t>(k)].norm(), 0.0);
  EXPECT_EQ(w.window[4], emb.lookup("Their"));
  EXPECT_EQ(w.window[8], emb.lookup("the"));
}

TEST(PredictEvents, ThresholdMonotonic) {
  const auto doc = fixtures::parsed("marriage");
  tea::neural::EmbeddingTable emb(6, 1);
  tea::EventModel model{tea::neural::EventNetwork({6, 4, 3, 2, 0.5, 0.5}, 9), 0.0};
  std::size_t tokens = 0;
  for (const auto& s : doc.sentences) tokens += s.size();
  EXPECT_EQ(tea::predict_events(model, doc, emb).size(), tokens);

  std::size_t previous = tokens;
  for (double th : {0.2, 0.4, 0.5, 0.6, 0.8}) {
    model.threshold = th;
    const std::size_t n = tea::predict_events(model, doc, emb).size();
    EXPECT_LE(n, previous) << th;
    previous = n;
  }
  model.threshold = 1.5;
  EXPECT_TRUE(tea::predict_events(model, doc, emb).empty());
}

TEST(PredictEvents, IdsAndInstances) {
  auto doc = fixtures::parsed("marriage");
  doc.timexes[0].id = "e2";
  tea::neural::EmbeddingTable emb(6, 1);
  tea::EventModel model{tea::neural::EventNetwork({6, 4, 3, 2, 0.5, 0.5}, 9), 0.0};
  const auto events = tea::predict_events(model, doc, emb);
  EXPECT_EQ(events[0].id, "e1");
  EXPECT_EQ(events[1].id, "e3");
  EXPECT_EQ(events[1].instance.eiid, "ei3");
  EXPECT_EQ(*events[1].token, (tea::TokenRef{0, 1}));
  EXPECT_EQ(events[1].text, "marriage");
}

TEST(EventTraining, MemorizesSyntheticCorpus) {
  const auto docs = synthetic_corpus(40, 1);
  tea::neural::EmbeddingTable emb(8, 2);
  const auto result = tea::train_event_model(docs, emb, small_options(60));
  EXPECT_DOUBLE_EQ(training_recall(result.model, docs, emb), 1.0);
  EXPECT_LT(result.history.train_loss.back(), result.history.train_loss.front());
}

TEST(EventTraining, PositiveWeightDoesNotLowerRecall) {
  const auto docs = synthetic_corpus(40, 4);
  tea::neural::EmbeddingTable emb(8, 2);
  auto plain = small_options(4);
  plain.positive_weight = 1.0;
  auto weighted = small_options(4);
  weighted.positive_weight = 3.0;
  const double r1 = training_recall(tea::train_event_model(docs, emb, plain).model, docs, emb);
  const double r3 = training_recall(tea::train_event_model(docs, emb, weighted).model, docs, emb);
  EXPECT_GE(r3, r1);
}

TEST(EventTraining, RejectsBadInput) {
  const auto docs = synthetic_corpus(3, 1);
  tea::neural::EmbeddingTable wrong(5, 2);
  EXPECT_THROW(tea::train_event_model(docs, wrong, small_options(1)), tea::UsageError);
  tea::neural::EmbeddingTable emb(8, 2);
  EXPECT_THROW(tea::train_event_model(std::vector<tea::Document>{}, emb, small_options(1)), tea::UsageError);
}

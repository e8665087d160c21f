#include "synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "support/oracles.hpp"
#include "tea/tlink_models.hpp"

namespace synthetic {

tea::Document cued_pair_document(int sentences, std::uint64_t seed) {
  using R = tea::RelationLabel;
  const std::vector<std::pair<std::string, R>> cues{
      {"before", R::kBefore},   {"after", R::kAfter},          {"during", R::kIsIncluded},
      {"spanning", R::kIncludes}, {"while", R::kSimultaneous}, {"near", R::kNoLink}};
  const std::vector<std::string> nouns{"meeting", "storm", "trial", "merger", "vote", "strike",
                                       "launch",  "audit", "visit", "protest", "sale", "game"};
  std::mt19937_64 gen(seed);
  tea::Document doc;
  doc.doc_id = "cued";
  doc.dct.id = "t0";
  doc.dct.is_dct = true;
  doc.dct.value = "2000-01-01";
  for (int s = 0; s < sentences; ++s) {
    const auto& [cue, relation] = cues[static_cast<std::size_t>(s) % cues.size()];
    const std::string a = nouns[gen() % nouns.size()];
    const std::string b = nouns[gen() % nouns.size()];
    tea::Sentence sent(3);
    sent[0] = {0, a, a, "NOUN", -1, "root", {}, false};
    sent[1] = {1, cue, cue, "ADP", 0, "prep", {}, false};
    sent[2] = {2, b, b, "NOUN", 1, "pobj", {}, false};
    doc.sentences.push_back(sent);

    const std::string ea = "e" + std::to_string(2 * s + 1);
    const std::string eb = "e" + std::to_string(2 * s + 2);
    tea::EventMention ma;
    ma.id = ea;
    ma.text = a;
    ma.token = tea::TokenRef{s, 0};
    tea::EventMention mb;
    mb.id = eb;
    mb.text = b;
    mb.token = tea::TokenRef{s, 2};
    doc.events.push_back(ma);
    doc.events.push_back(mb);
    if (relation != R::kNoLink) {
      doc.tlinks.push_back({"l" + std::to_string(s + 1), ea, eb, relation, 1.0, tea::LinkOrigin::kGold});
    }
  }
  return doc;
}

double accuracy(const tea::neural::TwoBranchModel& model,
                const std::vector<tea::neural::SequencePairExample>& examples) {
  std::size_t right = 0;
  for (const auto& ex : examples) {
    Eigen::Index best = 0;
    model.predict(ex.left, ex.right).maxCoeff(&best);
    if (best == ex.label) ++right;
  }
  return static_cast<double>(right) / static_cast<double>(examples.size());
}

OverfitResult overfit_intra(int sentences, int units, std::size_t max_epochs, double target,
                            std::uint64_t seed) {
  const tea::Document doc = cued_pair_document(sentences, seed);
  const tea::LabelSet labels = tea::LabelSet::merged();
  const tea::neural::EmbeddingTable embeddings(16, seed);
  std::vector<tea::neural::SequencePairExample> examples;
  for (const auto& inst : tea::build_intra_instances(doc)) {
    examples.push_back(tea::to_example(inst, labels, embeddings));
  }

  tea::neural::TwoBranchShape shape;
  shape.input_dim = 16;
  shape.units = units;
  shape.hidden = 16;
  shape.classes = static_cast<int>(labels.size());
  shape.input_dropout = 0.0;
  shape.hidden_dropout = 0.0;
  tea::neural::TwoBranchModel model(shape, tea::neural::derive_seed(seed, "overfit-init"));

  tea::neural::TrainingConfig config;
  config.epochs = max_epochs;
  config.batch_size = 16;
  config.learning_rate = 0.01;
  config.seed = seed;

  OverfitResult result;
  result.instances = examples.size();
  tea::neural::train(model, std::span<const tea::neural::SequencePairExample>(examples), {}, config,
                     [&](std::size_t epoch, const tea::neural::TrainHistory&) {
                       result.epochs_run = epoch;
                       result.accuracy = accuracy(model, examples);
                       return result.accuracy >= target;
                     });
  return result;
}

IntervalGraph random_consistent_graph(std::mt19937_64& gen, int max_entities) {
  IntervalGraph g;
  const int n = 2 + static_cast<int>(gen() % static_cast<unsigned>(max_entities - 1));
  std::vector<std::pair<int, int>> iv;
  for (int i = 0; i < n; ++i) {
    const int s = static_cast<int>(gen() % 6);
    iv.push_back({s, s + 1 + static_cast<int>(gen() % 4)});
    g.entities.push_back("x" + std::to_string(i));
  }
  for (std::size_t i = 0; i < iv.size(); ++i) {
    for (std::size_t j = i + 1; j < iv.size(); ++j) {
      if (gen() % 2) continue;
      const auto rel = oracle::interval_relation(iv[i].first, iv[i].second, iv[j].first, iv[j].second);
      if (!rel) continue;
      const std::string id = "l" + std::to_string(g.links.size() + 1);
      if (gen() % 2) {
        g.links.push_back({id, g.entities[i], g.entities[j], *rel, 1.0, tea::LinkOrigin::kGold});
      } else {
        g.links.push_back({id, g.entities[j], g.entities[i], tea::invert(*rel), 1.0, tea::LinkOrigin::kGold});
      }
    }
  }
  return g;
}

PruneInstance random_prune_instance(std::mt19937_64& gen, int max_timexes, int max_events) {
  PruneInstance p;
  const int timexes = 1 + static_cast<int>(gen() % static_cast<unsigned>(max_timexes));
  const int events = 1 + static_cast<int>(gen() % static_cast<unsigned>(max_events));
  // Fixed edges follow a random total order of the TIMEXes, so they are acyclic.
  std::vector<std::string> order;
  for (int i = 0; i < timexes; ++i) order.push_back("t" + std::to_string(i));
  std::shuffle(order.begin(), order.end(), gen);
  p.timex_vertices.insert(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (gen() % 2 == 0) p.fixed.push_back({"r" + std::to_string(p.fixed.size()), order[i], order[j], 1.0});
    }
  }
  std::vector<std::string> all(p.timex_vertices.begin(), p.timex_vertices.end());
  for (int i = 0; i < events; ++i) all.push_back("e" + std::to_string(i));
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a == b || (p.timex_vertices.contains(a) && p.timex_vertices.contains(b)) || gen() % 3 != 0) continue;
      p.candidates.push_back({"c" + std::to_string(p.candidates.size()), a, b, weight(gen)});
    }
  }
  return p;
}

}  // namespace synthetic

#include "tea/tlink_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "tea/deppath.hpp"
#include "tea/error.hpp"

namespace tea {

std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::kIntra: return "intra";
    case PairKind::kCross: return "cross";
    case PairKind::kDct: return "dct";
  }
  return "?";
}

namespace {

struct Entity {
  std::string id;
  TokenRef anchor;
  bool is_timex = false;
};

/// Aligned events and TIMEXes grouped by sentence, each group in token order.
std::vector<std::vector<Entity>> entities_by_sentence(const Document& doc) {
  std::vector<std::vector<Entity>> out(doc.sentences.size());
  auto add = [&](const std::string& id, bool is_timex) {
    if (auto a = doc.anchor_of(id)) out.at(static_cast<std::size_t>(a->sentence)).push_back({id, *a, is_timex});
  };
  for (const auto& e : doc.events) add(e.id, false);
  for (const auto& t : doc.timexes) add(t.id, true);
  for (auto& group : out) {
    std::stable_sort(group.begin(), group.end(),
                     [](const Entity& a, const Entity& b) { return a.anchor.token < b.anchor.token; });
  }
  return out;
}

class GoldIndex {
 public:
  explicit GoldIndex(const Document& doc) {
    for (const auto& l : doc.tlinks) {
      labels_.emplace(std::make_pair(l.source, l.target), l.relation);
      labels_.emplace(std::make_pair(l.target, l.source), invert(l.relation));
    }
  }
  RelationLabel operator()(const std::string& a, const std::string& b) const {
    auto it = labels_.find({a, b});
    return it == labels_.end() ? RelationLabel::kNoLink : it->second;
  }

 private:
  std::map<std::pair<std::string, std::string>, RelationLabel> labels_;
};

std::vector<std::string> words(const Sentence& sentence, const std::vector<int>& indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(sentence.at(static_cast<std::size_t>(i)).text);
  return out;
}

const Sentence& sentence_at(const Document& doc, int s) {
  return doc.sentences.at(static_cast<std::size_t>(s));
}

}  // namespace

std::vector<PairInstance> build_intra_instances(const Document& doc, const InstanceOptions& options) {
  const GoldIndex gold(doc);
  std::vector<PairInstance> out;
  const auto groups = entities_by_sentence(doc);
  for (const auto& group : groups) {
    for (const Entity& a : group) {
      for (const Entity& b : group) {
        if (&a == &b || a.anchor == b.anchor) continue;
        if (a.is_timex && b.is_timex && !options.timex_pairs) continue;
        const Sentence& sentence = sentence_at(doc, a.anchor.sentence);
        PairInstance inst;
        inst.kind = PairKind::kIntra;
        inst.source = a.id;
        inst.target = b.id;
        inst.label = gold(a.id, b.id);
        if (options.flat_context) {
          inst.left = words(sentence, flat_window(sentence, a.anchor.token, 11, b.anchor.token));
          inst.right = words(sentence, flat_window(sentence, b.anchor.token, 11, a.anchor.token));
        } else {
          const PathPair path = shortest_path_branches(sentence, a.anchor.token, b.anchor.token);
          inst.left = words(sentence, path.left);
          inst.right = words(sentence, path.right);
        }
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

std::vector<PairInstance> build_cross_instances(const Document& doc, const InstanceOptions& options) {
  const GoldIndex gold(doc);
  const auto groups = entities_by_sentence(doc);
  auto branch = [&](const Entity& e) {
    const Sentence& sentence = sentence_at(doc, e.anchor.sentence);
    return words(sentence, options.flat_context ? flat_window(sentence, e.anchor.token, 11)
                                                : root_path(sentence, e.anchor.token));
  };
  std::vector<PairInstance> out;
  auto emit = [&](const Entity& a, const Entity& b) {
    if (a.is_timex && b.is_timex && !options.timex_pairs) return;
    PairInstance inst;
    inst.kind = PairKind::kCross;
    inst.source = a.id;
    inst.target = b.id;
    inst.label = gold(a.id, b.id);
    inst.left = branch(a);
    inst.right = branch(b);
    out.push_back(std::move(inst));
  };
  for (std::size_t s = 0; s + 1 < groups.size(); ++s) {
    for (const Entity& a : groups[s]) {
      for (const Entity& b : groups[s + 1]) {
        emit(a, b);
        emit(b, a);
      }
    }
  }
  return out;
}

std::vector<PairInstance> build_dct_instances(const Document& doc, const InstanceOptions& options) {
  const GoldIndex gold(doc);
  std::vector<PairInstance> out;
  for (const auto& e : doc.events) {
    if (!e.token) continue;
    const Sentence& sentence = sentence_at(doc, e.token->sentence);
    PairInstance inst;
    inst.kind = PairKind::kDct;
    inst.source = e.id;
    inst.target = doc.dct.id;
    inst.label = gold(e.id, doc.dct.id);
    inst.left = words(sentence, options.flat_context ? flat_window(sentence, e.token->token, 11)
                                                     : root_path(sentence, e.token->token));
    inst.right.assign(inst.left.rbegin(), inst.left.rend());
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<PairInstance> downsample_nolink(std::span<const PairInstance> instances, double ratio,
                                            std::uint64_t seed) {
  if (!(ratio >= 0.0)) throw UsageError("downsampling ratio must be non-negative");
  std::vector<std::size_t> negatives;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (is_positive(instances[i].label)) {
      ++positives;
    } else {
      negatives.push_back(i);
    }
  }
  std::vector<bool> keep(instances.size(), true);
  if (!std::isinf(ratio)) {
    const double target = std::floor(ratio * static_cast<double>(positives));
    if (target < static_cast<double>(negatives.size())) {
      neural::Rng rng(seed);
      rng.shuffle(negatives);
      for (std::size_t k = static_cast<std::size_t>(target); k < negatives.size(); ++k) {
        keep[negatives[k]] = false;
      }
    }
  }
  std::vector<PairInstance> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (keep[i]) out.push_back(instances[i]);
  }
  return out;
}

neural::SequencePairExample to_example(const PairInstance& instance, const LabelSet& labels,
                                       const neural::EmbeddingTable& embeddings) {
  neural::SequencePairExample ex;
  for (const auto& w : instance.left) ex.left.push_back(embeddings.lookup(w));
  for (const auto& w : instance.right) ex.right.push_back(embeddings.lookup(w));
  ex.label = static_cast<int>(labels.index_of(instance.label));
  return ex;
}

std::vector<TLink> classify_pairs(const ClassifierBundle& bundle, const Document& doc,
                                  const neural::EmbeddingTable& embeddings) {
  if (!bundle.trained) throw UsageError("classifier bundle has not been trained or loaded");
  InstanceOptions options;
  options.flat_context = bundle.flat_context;
  options.timex_pairs = false;

  std::vector<TLink> out;
  auto run = [&](const std::vector<PairInstance>& instances, const neural::TwoBranchModel& model,
                 LinkOrigin origin) {
    for (const auto& inst : instances) {
      const auto ex = to_example(inst, bundle.labels, embeddings);
      const neural::Vec p = model.predict(ex.left, ex.right);
      Eigen::Index best = 0;
      p.maxCoeff(&best);
      TLink link;
      link.id = "lc" + std::to_string(out.size() + 1);
      link.source = inst.source;
      link.target = inst.target;
      link.relation = bundle.labels.at(static_cast<std::size_t>(best));
      link.score = p(best);
      link.origin = origin;
      out.push_back(std::move(link));
    }
  };
  run(build_intra_instances(doc, options), bundle.intra, LinkOrigin::kClassifierIntra);
  run(build_cross_instances(doc, options), bundle.cross, LinkOrigin::kClassifierCross);
  run(build_dct_instances(doc, options), bundle.dct, LinkOrigin::kClassifierDct);
  return out;
}

TlinkTrainingOptions qa_mode_config() { return {}; }

TlinkTrainingOptions dense_mode_config() {
  TlinkTrainingOptions o;
  o.labels = LabelSet::dense();
  o.intra_ratio = kKeepAll;
  o.cross_ratio = kKeepAll;
  o.dct_ratio = kKeepAll;
  o.inverse_frequency_weights = true;
  o.training.batch_size = 16;
  o.veto = false;
  return o;
}

BundleTrainingResult train_bundle(std::span<const Document> docs, const neural::EmbeddingTable& embeddings,
                                  const TlinkTrainingOptions& options) {
  neural::TwoBranchShape shape = options.shape;
  shape.classes = static_cast<int>(options.labels.size());
  if (static_cast<int>(embeddings.dimension()) != shape.input_dim) {
    throw UsageError("embedding dimension " + std::to_string(embeddings.dimension()) +
                     " does not match the pair model input dimension " + std::to_string(shape.input_dim));
  }
  const std::uint64_t seed = options.training.seed;
  InstanceOptions inst_options;
  inst_options.flat_context = options.flat_context;

  BundleTrainingResult result;
  result.bundle.labels = options.labels;
  result.bundle.flat_context = options.flat_context;

  auto fit = [&](PairKind kind, double ratio, neural::TwoBranchModel& model, neural::TrainHistory& history,
                 std::size_t& count) {
    const std::string name(to_string(kind));
    std::vector<PairInstance> all;
    for (const Document& doc : docs) {
      auto part = kind == PairKind::kIntra   ? build_intra_instances(doc, inst_options)
                  : kind == PairKind::kCross ? build_cross_instances(doc, inst_options)
                                             : build_dct_instances(doc, inst_options);
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    const auto kept = downsample_nolink(all, ratio, neural::derive_seed(seed, name + "-sample"));
    count = kept.size();
    model = neural::TwoBranchModel(shape, neural::derive_seed(seed, name + "-init"));
    if (kept.empty()) return;

    std::vector<neural::SequencePairExample> examples;
    examples.reserve(kept.size());
    std::vector<std::size_t> counts(options.labels.size(), 0);
    for (const auto& inst : kept) {
      examples.push_back(to_example(inst, options.labels, embeddings));
      ++counts[static_cast<std::size_t>(examples.back().label)];
    }
    neural::TrainingConfig config = options.training;
    config.seed = neural::derive_seed(seed, name + "-train");
    if (options.inverse_frequency_weights) config.class_weights = neural::inverse_frequency_weights(counts);
    history = neural::train(model, std::span<const neural::SequencePairExample>(examples),
                            std::span<const neural::SequencePairExample>(), config);
  };
  fit(PairKind::kIntra, options.intra_ratio, result.bundle.intra, result.intra_history, result.intra_instances);
  fit(PairKind::kCross, options.cross_ratio, result.bundle.cross, result.cross_history, result.cross_instances);
  fit(PairKind::kDct, options.dct_ratio, result.bundle.dct, result.dct_history, result.dct_instances);
  result.bundle.trained = true;
  return result;
}

}  // namespace tea

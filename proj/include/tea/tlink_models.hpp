#pragma once

// Pair instances and the three TLINK classifiers (intra-sentence,
// cross-sentence, document creation time).

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tea/document.hpp"
#include "tea/neural/embedding.hpp"
#include "tea/neural/training.hpp"
#include "tea/neural/two_branch.hpp"
#include "tea/relation.hpp"

namespace tea {

enum class PairKind { kIntra, kCross, kDct };
std::string_view to_string(PairKind k);

struct PairInstance {
  PairKind kind = PairKind::kIntra;
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::string source;
  std::string target;
  RelationLabel label = RelationLabel::kNoLink;
  bool operator==(const PairInstance&) const = default;
};

struct InstanceOptions {
  /// Use 11-token word-order windows instead of dependency paths.
  bool flat_context = false;
  /// Include TIMEX-TIMEX pairs (training only; inference leaves them to the
  /// rule component).
  bool timex_pairs = true;
};

/// Every ordered pair of distinct-anchor entities in one sentence; branches
/// are the shortest dependency path split at the LCA.
std::vector<PairInstance> build_intra_instances(const Document& doc, const InstanceOptions& options = {});
/// Every ordered pair of entities from adjacent sentences; branches are each
/// entity's path to its sentence root.
std::vector<PairInstance> build_cross_instances(const Document& doc, const InstanceOptions& options = {});
/// One (event, DCT) instance per aligned event; the right branch is the left
/// one reversed.
std::vector<PairInstance> build_dct_instances(const Document& doc, const InstanceOptions& options = {});

/// Ratio meaning "keep every NO_LINK instance".
inline constexpr double kKeepAll = std::numeric_limits<double>::infinity();

/// Keeps every positive instance and a seeded uniform sample of
/// floor(ratio * positives) NO_LINK instances. Relative order is preserved.
std::vector<PairInstance> downsample_nolink(std::span<const PairInstance> instances, double ratio,
                                            std::uint64_t seed);

neural::SequencePairExample to_example(const PairInstance& instance, const LabelSet& labels,
                                       const neural::EmbeddingTable& embeddings);

struct ClassifierBundle {
  LabelSet labels = LabelSet::merged();
  neural::TwoBranchModel intra;
  neural::TwoBranchModel cross;
  neural::TwoBranchModel dct;
  bool flat_context = false;
  bool trained = false;
};

/// Runs the matching model on every candidate pair: same-sentence and
/// adjacent-sentence pairs in both orders (TIMEX-TIMEX pairs excluded) and
/// each event against the DCT. Every prediction is returned, NO_LINK
/// included, with the probability of the predicted class as its score.
/// Throws UsageError for an untrained bundle.
std::vector<TLink> classify_pairs(const ClassifierBundle& bundle, const Document& doc,
                                  const neural::EmbeddingTable& embeddings);

/// Training policy shared by the three classifiers.
struct TlinkTrainingOptions {
  LabelSet labels = LabelSet::merged();
  neural::TwoBranchShape shape;  // `classes` is taken from the label set
  neural::TrainingConfig training;
  double intra_ratio = 0.1;
  double cross_ratio = 1.0;
  double dct_ratio = 4.0;
  bool inverse_frequency_weights = false;
  bool flat_context = false;
  /// Merge-time veto of positive labels over NO_LINK (consumed by conflict
  /// resolution, echoed here).
  bool veto = true;
};

/// QA-TempEval defaults.
TlinkTrainingOptions qa_mode_config();
/// TimeBank-Dense: dense label set, no downsampling, inverse-frequency class
/// weights, batch size 16, no veto.
TlinkTrainingOptions dense_mode_config();

struct BundleTrainingResult {
  ClassifierBundle bundle;
  neural::TrainHistory intra_history;
  neural::TrainHistory cross_history;
  neural::TrainHistory dct_history;
  std::size_t intra_instances = 0;
  std::size_t cross_instances = 0;
  std::size_t dct_instances = 0;
};

/// Trains one model per pair kind. A kind with no instances keeps its
/// initial parameters.
BundleTrainingResult train_bundle(std::span<const Document> docs, const neural::EmbeddingTable& embeddings,
                                  const TlinkTrainingOptions& options);

}  // namespace tea

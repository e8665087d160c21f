#include "tea/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "tea/corpus_io.hpp"
#include "tea/error.hpp"
#include "tea/timex.hpp"

namespace tea {

namespace fs = std::filesystem;
using neural::Json;

std::string_view to_string(Mode m) {
  return m == Mode::kQaTempEval ? "qa-tempeval" : "timebank-dense";
}

Mode parse_mode(std::string_view text) {
  if (text == "qa-tempeval") return Mode::kQaTempEval;
  if (text == "timebank-dense") return Mode::kTimeBankDense;
  throw UsageError("unknown mode '" + std::string(text) + "' (expected qa-tempeval or timebank-dense)");
}

namespace {

template <class Config, class F>
void visit_tunables(Config& c, F&& f) {
  f("train_corpus", c.train_corpus);
  f("input", c.input);
  f("output", c.output);
  f("checkpoints", c.checkpoints);
  f("embeddings", c.embeddings);
  f("annotations", c.annotations);
  f("questions", c.questions);
  f("gold", c.gold);
  f("report", c.report);
  f("label_set", c.label_set);
  f("intra_ratio", c.intra_ratio);
  f("cross_ratio", c.cross_ratio);
  f("dct_ratio", c.dct_ratio);
  f("inverse_frequency_weights", c.inverse_frequency_weights);
  f("veto", c.veto);
  f("gold_events", c.gold_events);
  f("flat_context", c.flat_context);
  f("event_threshold", c.event_threshold);
  f("event_positive_weight", c.event_positive_weight);
  f("embedding_dim", c.embedding_dim);
  f("event_units", c.event_units);
  f("event_hidden", c.event_hidden);
  f("event_feature_hidden", c.event_feature_hidden);
  f("event_input_dropout", c.event_input_dropout);
  f("event_hidden_dropout", c.event_hidden_dropout);
  f("pair_units", c.pair_units);
  f("pair_hidden", c.pair_hidden);
  f("pair_input_dropout", c.pair_input_dropout);
  f("pair_hidden_dropout", c.pair_hidden_dropout);
  f("learning_rate", c.learning_rate);
  f("batch_size", c.batch_size);
  f("epochs", c.epochs);
  f("patience", c.patience);
  f("training_seed", c.training_seed);
  f("pruning_seed", c.pruning_seed);
  f("embedding_seed", c.embedding_seed);
}

const std::set<std::string>& paper_keys() {
  static const std::set<std::string> keys = {
      "intra_ratio",         "cross_ratio",          "dct_ratio",         "veto",
      "flat_context",        "embedding_dim",        "event_units",       "event_hidden",
      "event_feature_hidden", "event_input_dropout", "event_hidden_dropout", "pair_units",
      "pair_hidden",         "pair_input_dropout",   "pair_hidden_dropout"};
  return keys;
}

void read_value(const Json& j, std::string& v) { v = j.get<std::string>(); }
void read_value(const Json& j, bool& v) { v = j.get<bool>(); }
void read_value(const Json& j, int& v) { v = j.get<int>(); }
void read_value(const Json& j, std::size_t& v) { v = j.get<std::size_t>(); }
void read_value(const Json& j, double& v) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "inf")) {
    v = kKeepAll;
  } else {
    v = j.get<double>();
  }
}

Json write_value(const std::string& v) { return v; }
Json write_value(bool v) { return v; }
Json write_value(int v) { return v; }
Json write_value(std::size_t v) { return v; }
Json write_value(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

void parse_value(const std::string& text, std::string& v) { v = text; }
void parse_value(const std::string& text, bool& v) {
  if (text == "true" || text == "1") {
    v = true;
  } else if (text == "false" || text == "0") {
    v = false;
  } else {
    throw UsageError("expected true or false, got '" + text + "'");
  }
}
template <class Int>
  requires std::is_integral_v<Int>
void parse_value(const std::string& text, Int& v) {
  // stoull accepts a sign and wraps negative values.
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("expected a non-negative integer, got '" + text + "'");
  }
  std::size_t used = 0;
  const unsigned long long n = std::stoull(text, &used);
  if (used != text.size() || (std::is_same_v<Int, int> && n > 0x7fffffffULL)) {
    throw UsageError("expected a non-negative integer, got '" + text + "'");
  }
  v = static_cast<Int>(n);
}
void parse_value(const std::string& text, double& v) {
  if (text == "inf") {
    v = kKeepAll;
    return;
  }
  std::size_t used = 0;
  v = std::stod(text, &used);
  if (used != text.size()) throw UsageError("expected a number, got '" + text + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path.string());
  out << content;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const fs::path& require_dir(const fs::path& dir, const char* what) {
  if (dir.empty()) throw PathError(std::string(what) + " directory is not configured");
  if (!fs::is_directory(dir)) throw PathError(std::string(what) + " directory " + dir.string() + " does not exist");
  return dir;
}

std::vector<fs::path> list_timeml(const fs::path& dir, const char* what) {
  require_dir(dir, what);
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tml") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

neural::TrainingConfig training_config(const PipelineConfig& c, std::uint64_t seed) {
  neural::TrainingConfig t;
  t.learning_rate = c.learning_rate;
  t.batch_size = c.batch_size;
  t.epochs = c.epochs;
  t.patience = c.patience;
  t.seed = seed;
  return t;
}

Json history_json(const neural::TrainHistory& h, std::size_t instances) {
  return {{"instances", instances},
          {"epochs_run", h.train_loss.size()},
          {"final_train_loss", h.train_loss.empty() ? Json(nullptr) : Json(h.train_loss.back())}};
}

}  // namespace

PipelineConfig default_config(Mode mode) {
  PipelineConfig c;
  c.mode = mode;
  if (mode == Mode::kTimeBankDense) {
    const TlinkTrainingOptions dense = dense_mode_config();
    c.label_set = std::string(dense.labels.name());
    c.intra_ratio = dense.intra_ratio;
    c.cross_ratio = dense.cross_ratio;
    c.dct_ratio = dense.dct_ratio;
    c.inverse_frequency_weights = dense.inverse_frequency_weights;
    c.veto = dense.veto;
    c.batch_size = dense.training.batch_size;
    c.gold_events = true;
  }
  visit_tunables(c, [&](const char* key, auto&) {
    c.provenance[key] = paper_keys().contains(key) ? "paper" : "artifact-default";
  });
  if (mode == Mode::kTimeBankDense) {
    for (const char* key : {"inverse_frequency_weights", "gold_events"}) c.provenance[key] = "paper";
  }
  return c;
}

PipelineConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  PipelineConfig c = default_config(parse_mode(j.value("mode", std::string("qa-tempeval"))));
  std::set<std::string> known{"mode", "provenance"};
  visit_tunables(c, [&](const char* key, auto& field) {
    known.insert(key);
    if (!j.contains(key)) return;
    try {
      read_value(j.at(key), field);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
    c.provenance[key] = "config";
  });
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  return c;
}

Json to_json(const PipelineConfig& config) {
  Json j = Json::object();
  j["mode"] = std::string(to_string(config.mode));
  visit_tunables(config, [&](const char* key, const auto& field) { j[key] = write_value(field); });
  Json prov = Json::object();
  for (const auto& [key, source] : config.provenance) prov[key] = source;
  j["provenance"] = std::move(prov);
  return j;
}

void set_option(PipelineConfig& config, const std::string& key, const std::string& value) {
  bool found = false;
  visit_tunables(config, [&](const char* name, auto& field) {
    if (key != name) return;
    found = true;
    try {
      parse_value(value, field);
    } catch (const std::logic_error&) {
      throw UsageError("bad value '" + value + "' for " + key);
    }
  });
  if (!found) throw UsageError("unknown option '" + key + "'");
  config.provenance[key] = "flag";
}

std::vector<CorpusEntry> list_corpus(const fs::path& dir) {
  std::vector<CorpusEntry> out;
  for (const auto& tml : list_timeml(dir, "corpus")) {
    CorpusEntry e;
    e.name = tml.stem().string();
    e.timeml = tml;
    e.conllu = fs::path(tml).replace_extension(".conllu");
    if (!fs::is_regular_file(e.conllu)) throw PathError("missing parse " + e.conllu.string());
    out.push_back(std::move(e));
  }
  return out;
}

Document load_document(const CorpusEntry& entry, std::vector<std::string>* warnings) {
  TimeMLOptions options;
  options.fallback_doc_id = entry.name;
  Document doc = parse_timeml(read_file(entry.timeml), options);
  auto w = attach_parse(doc, parse_conllu(read_file(entry.conllu)));
  if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  return doc;
}

neural::EmbeddingTable load_embeddings(const PipelineConfig& config) {
  if (config.embedding_dim <= 0) throw UsageError("embedding_dim must be positive");
  if (config.embeddings.empty()) {
    return neural::EmbeddingTable(static_cast<std::size_t>(config.embedding_dim), config.embedding_seed);
  }
  if (!fs::is_regular_file(config.embeddings)) throw PathError("embedding file " + config.embeddings + " does not exist");
  auto table = neural::EmbeddingTable::load_file(config.embeddings, config.embedding_seed);
  if (table.dimension() != static_cast<std::size_t>(config.embedding_dim)) {
    throw UsageError("embedding file has dimension " + std::to_string(table.dimension()) +
                     " but embedding_dim is " + std::to_string(config.embedding_dim));
  }
  return table;
}

Json run_train(const PipelineConfig& config) {
  std::vector<Document> docs;
  for (const auto& entry : list_corpus(config.train_corpus)) {
    try {
      docs.push_back(load_document(entry));
    } catch (const Error& e) {
      throw Error(entry.name + ": " + e.what());
    }
  }
  if (docs.empty()) throw PathError("training corpus " + config.train_corpus + " contains no documents");
  if (config.checkpoints.empty()) throw PathError("checkpoint directory is not configured");
  const auto embeddings = load_embeddings(config);

  EventTrainingOptions ev;
  ev.shape = {config.embedding_dim,        config.event_units,         config.event_hidden,
              config.event_feature_hidden, config.event_input_dropout, config.event_hidden_dropout};
  ev.training = training_config(config, neural::derive_seed(config.training_seed, "event"));
  ev.positive_weight = config.event_positive_weight;
  ev.threshold = config.event_threshold;

  TlinkTrainingOptions tl;
  tl.labels = LabelSet::from_name(config.label_set);
  tl.shape = {config.embedding_dim, config.pair_units, config.pair_hidden, 0, config.pair_input_dropout,
              config.pair_hidden_dropout};
  tl.training = training_config(config, config.training_seed);
  tl.intra_ratio = config.intra_ratio;
  tl.cross_ratio = config.cross_ratio;
  tl.dct_ratio = config.dct_ratio;
  tl.inverse_frequency_weights = config.inverse_frequency_weights;
  tl.flat_context = config.flat_context;
  tl.veto = config.veto;

  EventTrainingResult events;
  try {
    events = train_event_model(docs, embeddings, ev);
  } catch (const DivergenceError& e) {
    throw Error(std::string("event model: ") + e.what());
  }
  BundleTrainingResult pairs;
  try {
    pairs = train_bundle(docs, embeddings, tl);
  } catch (const DivergenceError& e) {
    throw Error(std::string("pair classifiers: ") + e.what());
  }

  const fs::path dir = config.checkpoints;
  fs::create_directories(dir);
  Json files = Json::object();
  auto save = [&](const std::string& name, const Json& j) {
    const std::string text = j.dump(1);
    write_file(dir / name, text);
    files[name] = hex64(neural::fnv1a(text));
  };
  save("event.json", {{"kind", "event_model"},
                      {"threshold", events.model.threshold},
                      {"network", neural::to_json(events.model.network)}});
  auto save_pair = [&](PairKind kind, const neural::TwoBranchModel& model) {
    save(std::string(to_string(kind)) + ".json", {{"kind", "pair_model"},
                                                  {"pair_kind", std::string(to_string(kind))},
                                                  {"label_set", std::string(pairs.bundle.labels.name())},
                                                  {"flat_context", pairs.bundle.flat_context},
                                                  {"network", neural::to_json(model)}});
  };
  save_pair(PairKind::kIntra, pairs.bundle.intra);
  save_pair(PairKind::kCross, pairs.bundle.cross);
  save_pair(PairKind::kDct, pairs.bundle.dct);

  Json classes = Json::array();
  for (auto r : pairs.bundle.labels.classes()) classes.push_back(std::string(to_string(r)));
  std::size_t event_examples = 0;
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) event_examples += s.size();
  }
  Json manifest = {
      {"config", to_json(config)},
      {"label_set", {{"name", std::string(pairs.bundle.labels.name())}, {"classes", classes}}},
      {"seeds",
       {{"training", config.training_seed},
        {"event_training", ev.training.seed},
        {"pruning", config.pruning_seed},
        {"embedding", config.embedding_seed}}},
      {"training",
       {{"documents", docs.size()},
        {"event", history_json(events.history, event_examples)},
        {"intra", history_json(pairs.intra_history, pairs.intra_instances)},
        {"cross", history_json(pairs.cross_history, pairs.cross_instances)},
        {"dct", history_json(pairs.dct_history, pairs.dct_instances)}}},
      {"embeddings",
       {{"path", config.embeddings},
        {"vocabulary", embeddings.vocabulary_size()},
        {"fnv1a", config.embeddings.empty() ? Json(nullptr)
                                            : Json(hex64(neural::fnv1a(read_file(config.embeddings))))}}},
      {"checkpoints", files},
  };
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

TrainedModels load_models(const fs::path& dir) {
  auto read_json = [&](const char* name) {
    const fs::path p = dir / name;
    if (!fs::is_regular_file(p)) throw PathError("missing checkpoint " + p.string());
    try {
      return Json::parse(read_file(p));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(p.string() + ": " + e.what(), 0);
    }
  };
  TrainedModels m;
  const Json ev = read_json("event.json");
  m.events.network = neural::event_network_from_json(ev.at("network"));
  m.events.threshold = ev.at("threshold").get<double>();

  std::string label_set;
  bool flat = false;
  auto pair = [&](const char* name) {
    const Json j = read_json(name);
    const auto ls = j.at("label_set").get<std::string>();
    if (!label_set.empty() && ls != label_set) throw ShapeError("checkpoints disagree on the label set");
    label_set = ls;
    flat = j.at("flat_context").get<bool>();
    return neural::two_branch_from_json(j.at("network"));
  };
  m.bundle.intra = pair("intra.json");
  m.bundle.cross = pair("cross.json");
  m.bundle.dct = pair("dct.json");
  m.bundle.labels = LabelSet::from_name(label_set);
  m.bundle.flat_context = flat;
  for (const auto* model : {&m.bundle.intra, &m.bundle.cross, &m.bundle.dct}) {
    if (model->shape().classes != static_cast<int>(m.bundle.labels.size())) {
      throw ShapeError("pair model output size does not match label set " + label_set);
    }
  }
  m.bundle.trained = true;
  return m;
}

AnnotatedDocument annotate_document(const TrainedModels& models, Document doc,
                                    const neural::EmbeddingTable& embeddings, const PipelineConfig& config) {
  doc.tlinks.clear();
  if (!config.gold_events) {
    // Tokens inside a time expression are not event candidates. A detected
    // token that carries an input event keeps that event's id.
    std::set<TokenRef> in_timex;
    for (const auto& t : doc.timexes) {
      if (!t.tokens) continue;
      for (int k = t.tokens->first; k <= t.tokens->last; ++k) in_timex.insert({t.tokens->sentence, k});
    }
    std::map<TokenRef, const EventMention*> input_events;
    std::set<std::string> taken{doc.dct.id};
    for (const auto& e : doc.events) {
      taken.insert(e.id);
      if (e.token) input_events.emplace(*e.token, &e);
    }
    for (const auto& t : doc.timexes) taken.insert(t.id);

    std::vector<EventMention> detected;
    int next = 1;
    for (auto& m : predict_events(models.events, doc, embeddings)) {
      if (in_timex.contains(*m.token)) continue;
      if (auto it = input_events.find(*m.token); it != input_events.end()) {
        m.id = it->second->id;
        m.instance.eiid = it->second->instance.eiid;
      } else {
        do {
          m.id = "e" + std::to_string(next++);
        } while (taken.contains(m.id));
        taken.insert(m.id);
        m.instance.eiid = default_instance_id(m.id);
      }
      detected.push_back(std::move(m));
    }
    // Instance ids must stay unique.
    std::set<std::string> eiids;
    for (auto& m : detected) {
      if (!eiids.insert(m.instance.eiid).second) {
        m.instance.eiid = "ei_" + m.id;
        eiids.insert(m.instance.eiid);
      }
    }
    doc.events = std::move(detected);
  }

  AnnotatedDocument out;
  std::vector<TLink> raw = generate_timex_links(doc).links;
  auto classified = classify_pairs(models.bundle, doc, embeddings);
  raw.insert(raw.end(), classified.begin(), classified.end());
  out.raw_links = raw.size();

  const auto merged = merge_bidirectional(raw, config.veto);
  out.resolution = resolve_document(doc, merged, neural::derive_seed(config.pruning_seed, doc.doc_id));
  doc.tlinks = out.resolution.links;
  for (std::size_t i = 0; i < doc.tlinks.size(); ++i) doc.tlinks[i].id = "l" + std::to_string(i + 1);
  doc.validate();
  out.doc = std::move(doc);
  return out;
}

CorpusRunSummary run_annotate(const PipelineConfig& config) {
  const auto entries = list_corpus(config.input);
  if (config.output.empty()) throw PathError("output directory is not configured");
  if (config.checkpoints.empty()) throw PathError("checkpoint directory is not configured");
  TrainedModels models = load_models(config.checkpoints);
  models.events.threshold = config.event_threshold;
  const auto embeddings = load_embeddings(config);
  if (models.events.network.shape().input_dim != config.embedding_dim) {
    throw UsageError("checkpoints expect embedding_dim " + std::to_string(models.events.network.shape().input_dim));
  }
  fs::create_directories(config.output);

  CorpusRunSummary summary;
  for (const auto& entry : entries) {
    try {
      const auto annotated = annotate_document(models, load_document(entry), embeddings, config);
      const fs::path out = fs::path(config.output) / (entry.name + ".tml");
      write_file(out, serialize_timeml(annotated.doc));
      summary.written.push_back(out.string());
    } catch (const std::exception& e) {
      summary.failures.push_back(entry.name + ": " + e.what());
    }
  }
  return summary;
}

EvaluationResult run_evaluate(const PipelineConfig& config) {
  std::map<std::string, Document> system;
  for (const auto& path : list_timeml(config.annotations, "annotation")) {
    TimeMLOptions options;
    options.fallback_doc_id = path.stem().string();
    Document d = parse_timeml(read_file(path), options);
    system.emplace(d.doc_id, std::move(d));
  }

  EvaluationResult result;
  if (config.mode == Mode::kQaTempEval) {
    if (config.questions.empty() || !fs::is_regular_file(config.questions)) {
      throw PathError("question file '" + config.questions + "' does not exist");
    }
    const auto questions = load_questions(read_file(config.questions));
    std::map<std::string, std::vector<TLink>> links;
    for (const auto& [id, d] : system) links.emplace(id, d.tlinks);
    const QAReport report = evaluate_qa(questions, links);
    result.text = format_qa_report(report, questions);
    result.summary = {{"mode", "qa-tempeval"},   {"questions", report.questions},
                      {"answered", report.answered}, {"correct", report.correct},
                      {"coverage", report.coverage}, {"precision", report.precision},
                      {"recall", report.recall},     {"f1", report.f1},
                      {"precision_undefined", report.precision_undefined}};
  } else {
    std::vector<PairLabel> gold;
    std::vector<PairLabel> predicted;
    for (const auto& path : list_timeml(config.gold, "gold")) {
      TimeMLOptions options;
      options.fallback_doc_id = path.stem().string();
      const Document g = parse_timeml(read_file(path), options);
      const std::string prefix = g.doc_id + "/";
      std::map<std::pair<std::string, std::string>, bool> scope;  // pair -> predicted yet
      for (const auto& l : g.tlinks) {
        gold.push_back({prefix + l.source, prefix + l.target, l.relation});
        scope.emplace(std::make_pair(l.source, l.target), false);
      }
      if (auto it = system.find(g.doc_id); it != system.end()) {
        for (const auto& l : it->second.tlinks) {
          auto s = scope.find({l.source, l.target});
          if (s == scope.end()) s = scope.find({l.target, l.source});
          if (s == scope.end() || s->second) continue;
          s->second = true;
          predicted.push_back({prefix + l.source, prefix + l.target, l.relation});
        }
      }
      for (const auto& [pair, done] : scope) {
        if (!done) predicted.push_back({prefix + pair.first, prefix + pair.second, RelationLabel::kNoLink});
      }
    }
    const DenseReport report = evaluate_dense(predicted, gold, LabelSet::from_name(config.label_set));
    char line[200];
    std::snprintf(line, sizeof line, "gold %zu predicted %zu correct %zu\nprecision %.3f recall %.3f f1 %.3f\n",
                  report.gold, report.predicted, report.correct, report.precision, report.recall, report.f1);
    result.text = line;
    result.summary = {{"mode", "timebank-dense"},  {"gold", report.gold},
                      {"predicted", report.predicted}, {"correct", report.correct},
                      {"precision", report.precision}, {"recall", report.recall},
                      {"f1", report.f1}};
  }
  result.text += "summary " + result.summary.dump() + "\n";
  if (!config.report.empty()) write_file(config.report, result.text);
  return result;
}

std::vector<TLink> read_link_dump(std::string_view text) {
  std::vector<TLink> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    TLink l;
    std::string rel;
    std::string origin;
    if (!(fields >> l.source)) continue;
    if (!(fields >> l.target >> rel >> l.score)) throw ParseError("expected: source target RELATION score [origin]", line_no);
    const auto r = parse_relation(rel);
    if (!r) throw ParseError("unknown relation " + rel, line_no);
    l.relation = *r;
    if (fields >> origin) {
      const auto o = parse_link_origin(origin);
      if (!o) throw ParseError("unknown origin " + origin, line_no);
      l.origin = *o;
    }
    if (!(l.score > 0.0 && l.score <= 1.0)) throw ParseError("score must lie in (0, 1]", line_no);
    l.id = "l" + std::to_string(out.size() + 1);
    out.push_back(std::move(l));
  }
  return out;
}

std::string write_link_dump(const std::vector<TLink>& links) {
  std::ostringstream out;
  for (const auto& l : links) {
    out << l.source << '\t' << l.target << '\t' << to_string(l.relation) << '\t' << l.score << '\t'
        << to_string(l.origin) << '\n';
  }
  return out.str();
}

}  // namespace tea

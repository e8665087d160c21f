// tea: train, annotate, evaluate and prune from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "tea/error.hpp"
#include "tea/pipeline.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tea::PathError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Options {
  std::string config_path;
  std::vector<std::string> sets;  // key=value
  std::string mode;
  std::string corpus, input, output, checkpoints, embeddings, annotations, questions, gold, report;
  std::string threshold;
  std::string seed;
  bool flat_context = false;
};

tea::PipelineConfig build_config(const Options& o) {
  // A mode flag replaces the file's mode before mode defaults are derived.
  tea::neural::Json j = tea::neural::Json::object();
  if (!o.config_path.empty()) {
    try {
      j = tea::neural::Json::parse(slurp(o.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw tea::ParseError(o.config_path + ": " + e.what(), 0);
    }
  }
  if (!o.mode.empty()) j["mode"] = o.mode;
  tea::PipelineConfig config = tea::config_from_json(j);
  auto flag = [&](const char* key, const std::string& value) {
    if (!value.empty()) tea::set_option(config, key, value);
  };
  flag("train_corpus", o.corpus);
  flag("input", o.input);
  flag("output", o.output);
  flag("checkpoints", o.checkpoints);
  flag("embeddings", o.embeddings);
  flag("annotations", o.annotations);
  flag("questions", o.questions);
  flag("gold", o.gold);
  flag("report", o.report);
  flag("event_threshold", o.threshold);
  if (!o.seed.empty()) {
    tea::set_option(config, "training_seed", o.seed);
    tea::set_option(config, "pruning_seed", o.seed);
  }
  if (o.flat_context) tea::set_option(config, "flat_context", "true");
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw tea::UsageError("--set expects key=value, got '" + kv + "'");
    tea::set_option(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return config;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("-c,--config", o.config_path, "JSON pipeline configuration");
  cmd->add_option("--mode", o.mode, "qa-tempeval or timebank-dense");
  cmd->add_option("--set", o.sets, "Override any config key (key=value)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal information extraction: events, time expressions and TLINKs"};
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "Train the event model and the three pair classifiers");
  add_common(train, o);
  train->add_option("--corpus", o.corpus, "Training corpus directory (*.tml + *.conllu)");
  train->add_option("--checkpoints", o.checkpoints, "Output checkpoint directory");
  train->add_option("--embeddings", o.embeddings, "Word vector file");
  train->add_option("--seed", o.seed, "Training and pruning seed");
  train->add_flag("--flat-context", o.flat_context, "Use 11-word windows instead of dependency paths");

  auto* annotate = app.add_subcommand("annotate", "Annotate parsed documents with events and TLINKs");
  add_common(annotate, o);
  annotate->add_option("--input", o.input, "Input directory (*.tml + *.conllu)");
  annotate->add_option("--output", o.output, "Output directory for TimeML");
  annotate->add_option("--checkpoints", o.checkpoints, "Checkpoint directory");
  annotate->add_option("--embeddings", o.embeddings, "Word vector file");
  annotate->add_option("--threshold", o.threshold, "Event decision threshold");
  annotate->add_option("--seed", o.seed, "Pruning seed");

  auto* evaluate = app.add_subcommand("evaluate", "Score annotations (QA questions or dense pairs)");
  add_common(evaluate, o);
  evaluate->add_option("--annotations", o.annotations, "System TimeML directory");
  evaluate->add_option("--questions", o.questions, "Question file (qa-tempeval mode)");
  evaluate->add_option("--gold", o.gold, "Gold TimeML directory (timebank-dense mode)");
  evaluate->add_option("--report", o.report, "Also write the report to this file");

  auto* prune = app.add_subcommand("prune", "Prune cycles from a link dump");
  std::string links_path;
  std::string dump_path;
  std::uint64_t prune_seed = 7;
  prune->add_option("links", links_path, "Link dump: source target RELATION score [origin]")->required();
  prune->add_option("--seed", prune_seed, "Insertion-order seed");
  prune->add_option("--removed", dump_path, "Write removed links to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prune) {
      const auto links = tea::read_link_dump(slurp(links_path));
      std::set<std::string> timex_vertices;
      for (const auto& l : links) {
        if (l.origin == tea::LinkOrigin::kRuleTimex) {
          timex_vertices.insert(l.source);
          timex_vertices.insert(l.target);
        }
      }
      const auto result = tea::resolve_links(timex_vertices, links, prune_seed);
      std::cout << tea::write_link_dump(result.links);
      if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        out << tea::format_removed(result);
      } else {
        std::cerr << tea::format_removed(result);
      }
      return 0;
    }

    const tea::PipelineConfig config = build_config(o);
    if (*train) {
      const auto manifest = tea::run_train(config);
      std::cout << "wrote checkpoints to " << config.checkpoints << "\n"
                << manifest.at("training").dump(2) << "\n";
      return 0;
    }
    if (*annotate) {
      const auto summary = tea::run_annotate(config);
      for (const auto& w : summary.written) std::cout << "wrote " << w << "\n";
      for (const auto& f : summary.failures) std::cerr << "failed " << f << "\n";
      return summary.ok() ? 0 : 1;
    }
    if (*evaluate) {
      std::cout << tea::run_evaluate(config).text;
      return 0;
    }
  } catch (const tea::PathError& e) {
    std::cerr << "path error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

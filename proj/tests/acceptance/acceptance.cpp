// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tea/conflict.hpp"
#include "tea/corpus_io.hpp"
#include "tea/neural/gradient_check.hpp"
#include "tea/pipeline.hpp"
#include "tea/timegraph.hpp"
#include "tea/timex.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& detail) { return {false, detail}; }

Outcome timex_reference_values() {
  const std::pair<const char*, const char*> cases[] = {{"2017-08-04", "(2017.591, 2017.591)"},
                                                       {"2017-SU", "(2017.416, 2017.666)"}};
  for (const auto& [value, expected] : cases) {
    const auto t = tea::normalize_date_value(value);
    if (!t) return fail(std::string(value) + " not normalized");
    if (tea::format_tuple(*t) != expected) return fail(std::string(value) + " -> " + tea::format_tuple(*t));
  }
  return {true, "2 values"};
}

Outcome timex_classification() {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = oracle::random_date_value(gen);
    const std::string b = oracle::random_date_value(gen);
    const auto ta = tea::normalize_date_value(a);
    const auto tb = tea::normalize_date_value(b);
    if (!ta || !tb) return fail("unnormalized " + a + " / " + b);
    const auto got = tea::classify_timex_pair(*ta, *tb);
    const auto expected = oracle::classify_days(*oracle::date_days(a), *oracle::date_days(b));
    if (got != expected) {
      return fail(a + " vs " + b + ": " + std::string(tea::to_string(got)) + " != " +
                  std::string(tea::to_string(expected)));
    }
    if (got != tea::invert(tea::classify_timex_pair(*tb, *ta))) return fail("antisymmetry " + a + " / " + b);
  }
  return {true, "1000 pairs"};
}

std::vector<oracle::Edge> to_oracle(const std::vector<tea::WeightedEdge>& edges) {
  std::vector<oracle::Edge> out;
  for (const auto& e : edges) out.push_back({e.source, e.target, e.weight});
  return out;
}

Outcome pruning() {
  std::mt19937_64 gen(99);
  std::size_t exact_steps = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = synthetic::random_prune_instance(gen, 6, 5);
    const auto r = tea::prune_graph(inst.timex_vertices, inst.fixed, inst.candidates, gen());
    const std::string where = "instance " + std::to_string(trial);
    if (!oracle::acyclic(to_oracle(r.retained))) return fail(where + ": cycle left");
    for (const auto& f : inst.fixed) {
      if (std::find(r.retained.begin(), r.retained.end(), f) == r.retained.end()) return fail(where + ": rule edge removed");
    }
    // Replay the steps: each starts from the fixed edges plus what earlier
    // steps kept.
    std::vector<tea::WeightedEdge> graph = inst.fixed;
    for (const auto& step : r.steps) {
      if (!step.inserted.empty() && step.inserted.size() <= 3) {
        const double best = oracle::min_removal_weight(to_oracle(graph), to_oracle(step.inserted));
        if (std::fabs(step.removed_weight - best) > 1e-12) {
          return fail(where + ": vertex " + step.vertex + " removed " + std::to_string(step.removed_weight) +
                      ", minimum " + std::to_string(best));
        }
        ++exact_steps;
      }
      for (const auto& e : step.inserted) {
        if (std::find(step.removed.begin(), step.removed.end(), e) == step.removed.end()) graph.push_back(e);
      }
    }
  }
  return {true, "500 instances, " + std::to_string(exact_steps) + " insertions checked exactly"};
}

Outcome merge_truth_table() {
  using tea::RelationLabel;
  const double scores[] = {0.1, 0.4, 0.4, 0.55, 0.99};
  std::size_t cases = 0;
  for (bool veto : {true, false}) {
    for (auto f : tea::kAllRelations) {
      for (auto b : tea::kAllRelations) {
        for (double sf : scores) {
          for (double sb : scores) {
            const tea::ScoredLabel fwd{f, sf};
            const tea::ScoredLabel bwd{b, sb};
            const auto got = tea::double_check_merge(fwd, bwd, veto);
            const auto expected = oracle::merge_reference(fwd, bwd, veto);
            ++cases;
            if (!(got == expected)) {
              return fail(std::string(tea::to_string(f)) + "/" + std::string(tea::to_string(b)) + " veto " +
                          (veto ? "on" : "off") + ": got " + std::string(tea::to_string(got.label)));
            }
          }
        }
      }
    }
  }
  // The vetoed NO_LINK against AFTER in the backward direction.
  const auto veto_case = tea::double_check_merge({RelationLabel::kNoLink, 0.99}, {RelationLabel::kAfter, 0.55});
  if (!(veto_case == tea::ScoredLabel{RelationLabel::kBefore, 0.55})) return fail("(NO_LINK, AFTER) veto case");
  return {true, std::to_string(cases) + " cases"};
}

std::vector<tea::neural::Vec> random_sequence(tea::neural::Rng& rng, int length, int dim) {
  std::vector<tea::neural::Vec> out;
  for (int t = 0; t < length; ++t) {
    tea::neural::Vec v(dim);
    for (int k = 0; k < dim; ++k) v(k) = rng.uniform(-1.0, 1.0);
    out.push_back(v);
  }
  return out;
}

Outcome gradient_checks() {
  using namespace tea::neural;
  double worst = 0.0;
  std::string where;
  auto track = [&](const GradientCheckResult& r, const std::string& model) {
    if (r.max_relative_error > worst) {
      worst = r.max_relative_error;
      where = model + " " + r.worst_parameter;
    }
  };
  Rng rng(5);
  for (int seed = 0; seed < 3; ++seed) {
    TwoBranchModel pair({10, 8, 6, 4, 0.5, 0.5}, static_cast<std::uint64_t>(30 + seed));
    for (int label = 0; label < 4; ++label) {
      SequencePairExample ex{random_sequence(rng, 2 + label, 10), random_sequence(rng, 4, 10), label};
      track(gradient_check(pair, ex, 1e-5, 1.5), "two-branch");
    }
    EventNetwork event({10, 8, 6, 3, 0.5, 0.5}, static_cast<std::uint64_t>(40 + seed));
    for (int label = 0; label < 2; ++label) {
      WindowExample ex{random_sequence(rng, 9, 10), {1.0, 0.0, label ? 1.0 : 0.0, 0.0}, label};
      track(gradient_check(event, ex, 1e-5, 3.0), "event");
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max relative error %.2e", worst);
  if (worst >= 1e-4) return fail(std::string(buf) + " at " + where);
  return {true, buf};
}

Outcome overfit() {
  const auto r = synthetic::overfit_intra(100, 32, 200, 0.99, 7);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu instances, accuracy %.3f after %zu epochs", r.instances, r.accuracy, r.epochs_run);
  if (r.instances != 200 || r.accuracy < 0.99) return fail(buf);
  return {true, buf};
}

Outcome timegraph_closure() {
  std::mt19937_64 gen(77);
  std::size_t queries = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rg = synthetic::random_consistent_graph(gen, 7);
    const auto g = tea::build_timegraph(rg.links);
    const oracle::PointNetwork net(rg.entities, rg.links);
    if (!net.consistent() || !g.consistent()) return fail("graph " + std::to_string(trial) + " reported inconsistent");
    for (const auto& a : rg.entities) {
      for (const auto& b : rg.entities) {
        if (a == b) continue;
        for (auto r : tea::kPositiveRelations) {
          ++queries;
          if (tea::answer_question(g, a, b, r) != net.verdict(a, b, r)) {
            return fail("graph " + std::to_string(trial) + ": " + a + " " + std::string(tea::to_string(r)) + " " + b);
          }
        }
      }
    }
  }
  return {true, "200 graphs, " + std::to_string(queries) + " queries"};
}

Outcome qa_arithmetic() {
  const auto r = tea::qa_metrics(79, 66, 42);
  auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
  char buf[96];
  std::snprintf(buf, sizeof buf, "coverage %.2f precision %.2f recall %.2f f1 %.2f", r.coverage, r.precision, r.recall, r.f1);
  if (round2(r.coverage) != 0.84 || round2(r.precision) != 0.64 || round2(r.recall) != 0.53 || round2(r.f1) != 0.58) {
    return fail(buf);
  }
  return {true, buf};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  auto run = [](const std::string& name) {
    const auto root = fixtures::scratch(name);
    auto c = tea::config_from_json(tea::neural::Json::parse(fixtures::read("tiny_config.json")));
    c.train_corpus = (fixtures::dir() / "corpus").string();
    c.input = c.train_corpus;
    c.checkpoints = (root / "ckpt").string();
    c.output = (root / "out").string();
    tea::run_train(c);
    const auto summary = tea::run_annotate(c);
    if (!summary.ok()) throw std::runtime_error(summary.failures.front());
    std::vector<std::string> texts;
    for (const auto& p : summary.written) texts.push_back(slurp(p));
    return texts;
  };
  const auto a = run("acceptance_run1");
  const auto b = run("acceptance_run2");
  if (a.empty() || a != b) return fail("outputs differ");
  std::size_t bytes = 0;
  for (const auto& t : a) bytes += t.size();
  return {true, std::to_string(a.size()) + " documents, " + std::to_string(bytes) + " bytes"};
}

Outcome timeml_round_trip() {
  std::size_t docs = 0;
  for (const auto& entry : fs::directory_iterator(fixtures::dir() / "corpus")) {
    if (entry.path().extension() != ".tml") continue;
    const auto doc = tea::parse_timeml(slurp(entry.path()));
    const auto again = tea::parse_timeml(tea::serialize_timeml(doc));
    if (!(again == doc)) return fail(entry.path().filename().string());
    ++docs;
  }
  if (docs == 0) return fail("no fixtures");
  return {true, std::to_string(docs) + " documents"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"timex reference values", timex_reference_values},
      {"timex classification vs calendar oracle", timex_classification},
      {"pruning acyclic and exact on small insertions", pruning},
      {"double-check merge truth table", merge_truth_table},
      {"gradient check", gradient_checks},
      {"overfit cued corpus", overfit},
      {"timegraph closure vs point-algebra oracle", timegraph_closure},
      {"QA metric arithmetic", qa_arithmetic},
      {"pipeline determinism", determinism},
      {"TimeML round trip", timeml_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%.2fs) %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

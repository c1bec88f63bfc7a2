// Copyright 2026 The EditJudge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "editjudge/commands.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "editjudge/analysis.h"
#include "editjudge/backends.h"
#include "editjudge/dataset.h"
#include "editjudge/edit_metrics.h"
#include "editjudge/error.h"
#include "editjudge/judge_eval.h"
#include "editjudge/logging.h"
#include "editjudge/parallel.h"
#include "editjudge/prompts.h"
#include "editjudge/remote.h"
#include "editjudge/report.h"
#include "editjudge/resources.h"
#include "editjudge/retrieval.h"
#include "editjudge/segmenter.h"
#include "editjudge/tadpole.h"
#include "editjudge/taxonomy.h"

namespace editjudge::cli {

namespace {

using ojson = nlohmann::ordered_json;

ojson path_or_null(const std::optional<std::filesystem::path>& p) {
  return p ? ojson(p->generic_string()) : ojson(nullptr);
}

const std::filesystem::path& require(const std::optional<std::filesystem::path>& p, const char* flag) {
  if (!p) throw ConfigError(std::string("missing required option ") + flag);
  return *p;
}

void check_choice(const std::string& value, std::initializer_list<const char*> choices, const char* flag) {
  for (const char* c : choices) {
    if (value == c) return;
  }
  std::string list;
  for (const char* c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
  throw ConfigError(std::string(flag) + " must be one of " + list + ", got '" + value + "'");
}

// Taxonomy, segmenter, prompts and the backends a command asked for. The
// remote client is created only when some backend is remote.
class Context {
 public:
  explicit Context(const RunConfig& c) : config_(c), taxonomy_(load_taxonomy(c.taxonomy)) {
    check_choice(c.span_policy, {"strict", "fuzzy"}, "--span-policy");
    if (!(c.tau >= 0.0 && c.tau <= 1.0)) throw ConfigError("--tau must lie in [0, 1]");
    if (c.threads == 0) throw ConfigError("--threads must be at least 1");
    if (c.templates && !std::filesystem::is_directory(*c.templates)) {
      throw ConfigError("--templates: not a directory: " + c.templates->string());
    }
    AbbreviationList abbreviations =
        c.abbreviations ? AbbreviationList::load(*c.abbreviations) : AbbreviationList::defaults();
    segmenter_ = Segmenter(std::move(abbreviations), SegmenterOptions{c.split_semicolons, true});
    prompts_ = PromptLibrary::load(c.templates);
  }

  const ThemeTaxonomy& taxonomy() const { return taxonomy_; }
  const Segmenter& segmenter() const { return segmenter_; }
  const PromptLibrary& prompts() const { return prompts_; }

  std::shared_ptr<const LlmClient> client() {
    if (!client_) {
      if (!config_.backend_config) throw ConfigError("a remote backend needs --backend-config");
      client_ = std::make_shared<const LlmClient>(load_backend_config(*config_.backend_config));
    }
    return client_;
  }

  std::unique_ptr<ContentMatcher> matcher(const std::string& kind) {
    check_choice(kind, {"baseline", "remote"}, "--matcher");
    if (kind == "baseline") return std::make_unique<BaselineMatcher>(segmenter_, config_.tau);
    return std::make_unique<RemoteMatcher>(client(), prompts_.judge, *parse_span_policy(config_.span_policy));
  }

  std::unique_ptr<ThemeClassifier> classifier() {
    check_choice(config_.classifier, {"baseline", "remote"}, "--classifier");
    if (config_.classifier == "baseline") return std::make_unique<KeywordClassifier>();
    return std::make_unique<RemoteClassifier>(client(), prompts_.classify);
  }

  std::unique_ptr<Embedder> embedder() {
    check_choice(config_.embedder, {"baseline", "remote"}, "--embedder");
    if (config_.embedder == "baseline") return std::make_unique<HashingEmbedder>();
    return std::make_unique<RemoteEmbedder>(client());
  }

  std::unique_ptr<TextGenerator> generator() {
    check_choice(config_.generator, {"remote", "echo"}, "--generator");
    if (config_.generator == "echo") return std::make_unique<EchoGenerator>();
    return std::make_unique<RemoteGenerator>(client());
  }

  // Dry runs validate the backend configuration when one is given, and never
  // send requests.
  void check_backends(bool uses_matcher, bool uses_classifier, bool uses_embedder) {
    if (uses_matcher) check_choice(config_.matcher, {"baseline", "remote"}, "--matcher");
    if (uses_classifier) check_choice(config_.classifier, {"baseline", "remote"}, "--classifier");
    if (uses_embedder) check_choice(config_.embedder, {"baseline", "remote"}, "--embedder");
    const bool remote = (uses_matcher && config_.matcher == "remote") ||
                        (uses_classifier && config_.classifier == "remote") ||
                        (uses_embedder && config_.embedder == "remote");
    check_remote(remote);
  }

  void check_remote(bool remote) {
    if (!remote) return;
    if (config_.backend_config) {
      load_backend_config(*config_.backend_config);
    } else {
      spdlog::warn("dry run: no --backend-config given; a real run will need one");
    }
  }

  ThemeScoreOptions theme_options() const { return {!config_.exclude_other, config_.theme_presence}; }

 private:
  const RunConfig& config_;
  ThemeTaxonomy taxonomy_;
  Segmenter segmenter_;
  PromptLibrary prompts_;
  std::shared_ptr<const LlmClient> client_;
};

void write_plan(const RunConfig& c, const ojson& plan, std::ostream& out) {
  ReportWriter writer(c.out, to_json(c));
  ojson doc = {{"command", c.command}, {"dry_run", true}, {"plan", plan}};
  writer.write_file("plan.json", doc.dump(2) + "\n");
  out << "dry run: " << c.command << "\n" << plan.dump(2) << "\n";
}

std::size_t sentence_total(const std::vector<std::string>& texts, const Segmenter& s) {
  std::size_t n = 0;
  for (const auto& t : texts) n += s.count(t);
  return n;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto samples = load_samples(require(c.samples, "--samples"));
  const auto drafts = load_drafts(require(c.drafts, "--drafts"));
  if (c.dry_run) {
    ctx.check_backends(true, true, false);
    std::map<std::string, const MessageSample*> by_id;
    for (const auto& s : samples) by_id.emplace(s.id, &s);
    std::vector<std::string> experts, texts;
    for (std::size_t i = 0; i < drafts.size(); ++i) {
      auto it = by_id.find(drafts[i].sample_id);
      if (it == by_id.end()) {
        throw DataError(c.drafts->string(), i + 1, "unknown sample id '" + drafts[i].sample_id + "'");
      }
      experts.push_back(it->second->response);
      texts.push_back(drafts[i].draft);
    }
    const std::size_t expert_sentences = sentence_total(experts, ctx.segmenter());
    const std::size_t draft_sentences = sentence_total(texts, ctx.segmenter());
    write_plan(c,
               {{"pairs", drafts.size()},
                {"matcher", c.matcher},
                {"classifier", c.classifier},
                {"matcher_calls", expert_sentences},
                {"classifier_calls", expert_sentences + draft_sentences}},
               out);
    return kExitOk;
  }
  auto matcher = ctx.matcher(c.matcher);
  auto classifier = ctx.classifier();
  const Backends backends{*matcher, *classifier, ctx.segmenter(), ctx.taxonomy()};
  EvalOptions options;
  options.theme = ctx.theme_options();
  options.threads = c.threads;
  options.fail_if_all_errored = false;
  const ScoreReport report = evaluate_dataset(samples, drafts, backends, options);

  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  const Table summary = summary_table(report);
  writer.write_table("summary", summary);
  writer.write_table("samples", sample_table(report));
  writer.write_file("samples.jsonl", sample_rows_jsonl(report));
  writer.write_table("themes", classwise_table(report));
  writer.write_table("errored", errored_table(report));
  const auto adaptations = summarize_adaptations(report.groups);
  if (!adaptations.empty()) writer.write_table("adaptation", adaptation_table(adaptations));
  out << to_markdown(summary);
  if (report.sample_count == 0) {
    spdlog::error("every sample errored; see {}", (c.out / "errored.md").string());
    return kExitBackend;
  }
  return kExitOk;
}

int cmd_judge_eval(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto annotations = load_judge_annotations(require(c.annotations, "--annotations"));
  if (annotations.empty()) throw DataError(c.annotations->string(), 0, "no annotations");
  if (c.dry_run) {
    for (const auto& m : c.judge_matchers) check_choice(m, {"baseline", "remote"}, "--matcher");
    ctx.check_remote(std::find(c.judge_matchers.begin(), c.judge_matchers.end(), "remote") !=
                     c.judge_matchers.end());
    write_plan(c, {{"annotations", annotations.size()}, {"matchers", c.judge_matchers},
                   {"matcher_calls", annotations.size() * c.judge_matchers.size()}},
               out);
    return kExitOk;
  }
  std::vector<JudgeEvalReport> reports;
  bool any_answered = false;
  for (const auto& kind : c.judge_matchers) {
    auto matcher = ctx.matcher(kind);
    reports.push_back(evaluate_matcher(annotations, *matcher, c.threads));
    any_answered = any_answered || reports.back().errored < reports.back().n;
  }
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  const Table table = judge_eval_table(reports);
  writer.write_table("judge_eval", table);
  out << to_markdown(table);
  return any_answered ? kExitOk : kExitBackend;
}

int cmd_iap(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto multi = load_multi(require(c.multi, "--multi"));
  if (c.dry_run) {
    ctx.check_backends(true, true, false);
    const auto ids = annotator_ids(multi);
    std::size_t comparisons = 0;
    for (const auto& s : multi) comparisons += s.responses.size() * (s.responses.size() - 1);
    if (ids.size() < 2) throw DataError("iap: need at least two annotators");
    write_plan(c, {{"annotators", ids}, {"ordered_pairs", ids.size() * (ids.size() - 1)},
                   {"comparisons", comparisons}},
               out);
    return kExitOk;
  }
  auto matcher = ctx.matcher(c.matcher);
  auto classifier = ctx.classifier();
  const Backends backends{*matcher, *classifier, ctx.segmenter(), ctx.taxonomy()};
  const IapReport report = iap(multi, backends, ctx.theme_options(), c.threads);
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  const Table summary = iap_summary_table(report);
  writer.write_table("iap", summary);
  writer.write_table("iap_pairs", iap_pairs_table(report));
  writer.write_table("iap_themes", iap_classwise_table(report));
  out << to_markdown(summary);
  return kExitOk;
}

int cmd_iaa(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto multi = load_multi(require(c.multi, "--multi"));
  if (c.dry_run) {
    ctx.check_backends(false, true, true);
    std::size_t responses = 0;
    for (const auto& s : multi) responses += s.responses.size();
    write_plan(c, {{"samples", multi.size()}, {"annotators", annotator_ids(multi)},
                   {"embed_calls", responses}},
               out);
    return kExitOk;
  }
  auto classifier = ctx.classifier();
  auto embedder = ctx.embedder();
  const auto strict = strict_agreement(multi, *classifier, ctx.segmenter(), ctx.taxonomy(), c.threads);
  const auto cosine = pairwise_cosine(multi, *embedder, c.threads);
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  const Table strict_table = strict_agreement_table(strict);
  const Table cos_table = cosine_table(cosine);
  writer.write_table("strict_agreement", strict_table);
  writer.write_table("cosine", cos_table);
  out << to_markdown(strict_table) << "\n" << to_markdown(cos_table);
  return kExitOk;
}

// One corpus per sample or multi-response file; drafts files split into one
// corpus per (model, adaptation).
std::vector<std::pair<std::string, std::vector<std::string>>> load_corpora(
    const std::vector<std::filesystem::path>& paths) {
  std::vector<std::pair<std::string, std::vector<std::string>>> corpora;
  for (const auto& p : paths) {
    const std::string stem = p.stem().string();
    switch (sniff_kind(p)) {
      case DatasetKind::kSingleResponse: {
        std::vector<std::string> texts;
        for (auto& s : load_samples(p)) texts.push_back(std::move(s.response));
        corpora.emplace_back(stem, std::move(texts));
        break;
      }
      case DatasetKind::kMultiResponse: {
        std::vector<std::string> texts;
        for (auto& s : load_multi(p)) {
          for (auto& r : s.responses) texts.push_back(std::move(r.response));
        }
        corpora.emplace_back(stem, std::move(texts));
        break;
      }
      case DatasetKind::kDrafts: {
        std::vector<std::string> order;
        std::map<std::string, std::vector<std::string>> groups;
        for (auto& d : load_drafts(p)) {
          const std::string key = d.model + "/" + d.adaptation;
          if (!groups.count(key)) order.push_back(key);
          groups[key].push_back(std::move(d.draft));
        }
        for (const auto& key : order) corpora.emplace_back(key, std::move(groups[key]));
        break;
      }
      case DatasetKind::kJudgeAnnotations:
        throw DataError(p.string(), 1, "judge annotations are not a response corpus");
    }
  }
  return corpora;
}

int cmd_theme_freq(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  if (c.responses.empty()) throw ConfigError("missing required option --responses");
  const auto corpora = load_corpora(c.responses);
  if (c.dry_run) {
    ctx.check_backends(false, true, false);
    ojson list = ojson::array();
    for (const auto& [name, texts] : corpora) {
      list.push_back({{"corpus", name},
                      {"responses", texts.size()},
                      {"classifier_calls", sentence_total(texts, ctx.segmenter())}});
    }
    write_plan(c, {{"corpora", list}}, out);
    return kExitOk;
  }
  auto classifier = ctx.classifier();
  std::vector<ThemeFrequency> freqs;
  for (const auto& [name, texts] : corpora) {
    if (texts.empty()) throw DataError("corpus '" + name + "' has no responses");
    ThemeFrequency f = theme_frequency(texts, *classifier, ctx.segmenter(), ctx.taxonomy(), c.threads);
    f.corpus = name;
    freqs.push_back(std::move(f));
  }
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  const Table table = theme_frequency_table(freqs, ctx.taxonomy().label_names());
  writer.write_table("theme_frequency", table);
  out << to_markdown(table);
  return kExitOk;
}

std::filesystem::path index_base(const RunConfig& c) { return c.index ? *c.index : c.out / "rag_index"; }

int cmd_rag_index(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto training = load_samples(require(c.samples, "--samples"));
  if (training.empty()) throw DataError(c.samples->string(), 0, "no training samples");
  if (c.dry_run) {
    ctx.check_backends(false, false, true);
    write_plan(c, {{"entries", training.size()}, {"embed_calls", training.size()},
                   {"index", index_base(c).generic_string()}},
               out);
    return kExitOk;
  }
  auto embedder = ctx.embedder();
  const RetrievalIndex index = build_index(training, *embedder, c.threads);
  const auto base = index_base(c);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  index.save(base);
  out << "indexed " << index.size() << " samples, dimension " << index.dimension() << ", embedder "
      << index.embedder_name() << "\n"
      << "wrote " << base.generic_string() << ".idx and " << base.generic_string() << ".meta\n";
  return kExitOk;
}

int cmd_rag_prompt(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  if (c.k == 0) throw ConfigError("--k must be at least 1");
  const auto queries = load_samples(require(c.queries, "--queries"));
  const RetrievalIndex index = RetrievalIndex::load(index_base(c));
  if (index.embedder_name() != c.embedder) {
    throw ConfigError("index was built with the '" + index.embedder_name() + "' embedder but --embedder is '" +
                      c.embedder + "'");
  }
  if (c.dry_run) {
    ctx.check_backends(false, false, true);
    write_plan(c, {{"queries", queries.size()}, {"index_entries", index.size()}, {"k", c.k},
                   {"embed_calls", queries.size()}},
               out);
    return kExitOk;
  }
  auto embedder = ctx.embedder();
  std::vector<std::string> lines(queries.size());
  parallel_for(queries.size(), c.threads, [&](std::size_t i) {
    const auto hits = retrieve_topk(index, queries[i], c.k, *embedder);
    std::vector<const IndexEntry*> examples;
    ojson retrieved = ojson::array();
    for (const auto& h : hits) {
      examples.push_back(&index.entries()[h.entry]);
      retrieved.push_back({{"id", index.entries()[h.entry].id}, {"score", h.score}});
    }
    ojson j = {{"sample_id", queries[i].id},
               {"prompt", build_rag_prompt(queries[i], examples, ctx.prompts())},
               {"retrieved", retrieved}};
    lines[i] = j.dump() + "\n";
  });
  std::string body;
  for (const auto& l : lines) body += l;
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  writer.write_file("rag_prompts.jsonl", body);
  out << "wrote " << queries.size() << " prompts with up to " << c.k << " examples to "
      << (c.out / "rag_prompts.jsonl").generic_string() << "\n";
  return kExitOk;
}

int cmd_prompt(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  check_choice(c.prompt_kind, {"zero-shot", "thematic"}, "--kind");
  const auto samples = load_samples(require(c.samples, "--samples"));
  const PromptKind kind = c.prompt_kind == "thematic" ? PromptKind::kThematic : PromptKind::kZeroShot;
  if (c.dry_run) {
    write_plan(c, {{"samples", samples.size()}, {"kind", c.prompt_kind}}, out);
    return kExitOk;
  }
  std::string body;
  for (const auto& s : samples) {
    ojson j = {{"sample_id", s.id}, {"kind", c.prompt_kind},
               {"prompt", render_prompt(kind, s, ctx.taxonomy(), ctx.prompts())}};
    body += j.dump() + "\n";
  }
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  writer.write_file("prompts.jsonl", body);
  out << "wrote " << samples.size() << " " << c.prompt_kind << " prompts to "
      << (c.out / "prompts.jsonl").generic_string() << "\n";
  return kExitOk;
}

int cmd_tadpole_tuples(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  check_choice(c.generator, {"remote", "echo"}, "--generator");
  const auto samples = load_samples(require(c.bases, "--bases"));
  const auto templates = TadpoleTemplates::load(ctx.taxonomy(), c.templates);
  std::vector<TadpoleBase> bases;
  for (const auto& s : samples) bases.push_back({s.id, s.response});
  ReportWriter writer(c.out, to_json(c));
  if (c.dry_run) {
    ctx.check_remote(c.generator == "remote");
    const TadpoleRun plan = plan_tadpole(bases, ctx.taxonomy());
    writer.write_file("tadpole_assignments.json", assignment_metadata(plan, bases, ctx.taxonomy()));
    ojson per_theme = ojson::object();
    for (const auto& t : ctx.taxonomy().themes()) per_theme[t.name] = 0;
    for (const auto& a : plan.assignments) {
      const std::string name(ctx.taxonomy().name(a.theme));
      per_theme[name] = per_theme[name].get<std::size_t>() + 1;
    }
    write_plan(c, {{"bases", bases.size()}, {"enhancement_calls", plan.enhancement_calls},
                   {"corruption_calls", plan.corruption_calls}, {"per_theme", per_theme}},
               out);
    return kExitOk;
  }
  auto generator = ctx.generator();
  const TadpoleRun run = generate_tadpole_tuples(bases, ctx.taxonomy(), *generator, templates, c.threads);
  writer.write_config();
  writer.write_file("tuples.jsonl", tuples_to_jsonl(run.tuples, ctx.taxonomy()));
  writer.write_file("tadpole_assignments.json", assignment_metadata(run, bases, ctx.taxonomy()));
  out << "wrote " << run.tuples.size() << " tuples (" << run.dropped.size() << " dropped) to "
      << (c.out / "tuples.jsonl").generic_string() << "\n";
  return run.tuples.empty() && !bases.empty() ? kExitBackend : kExitOk;
}

int cmd_tadpole_pairs(const RunConfig& c, std::ostream& out) {
  Context ctx(c);
  const auto strategy = parse_pair_strategy(c.strategy);
  if (!strategy) throw ConfigError("--strategy must be one of enhanced, corrupted, hard-corrupted, blend");
  const auto& tuples_path = require(c.tuples, "--tuples");
  std::ifstream in(tuples_path);
  if (!in) throw DataError(tuples_path.string(), 0, "cannot open file");
  const auto tuples = parse_tuples(in, tuples_path.string(), ctx.taxonomy());
  if (tuples.empty()) throw DataError(tuples_path.string(), 0, "no tuples");
  const auto samples = load_samples(require(c.samples, "--samples"));
  std::map<std::string, const MessageSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!by_id.count(tuples[i].sample_id)) {
      throw DataError(tuples_path.string(), i + 1, "unknown sample id '" + tuples[i].sample_id + "'");
    }
  }
  if (c.dry_run) {
    ojson plan = {{"tuples", tuples.size()}, {"strategy", c.strategy}};
    if (*strategy == PairStrategy::kBlend) {
      const BlendSplit s = blend_split(tuples.size());
      plan["blend"] = {{"enhanced", s.enhanced}, {"corrupted", s.corrupted}, {"hard-corrupted", s.hard_corrupted}};
    }
    write_plan(c, plan, out);
    return kExitOk;
  }
  const PromptLibrary& prompts = ctx.prompts();
  const ThemeTaxonomy& taxonomy = ctx.taxonomy();
  const auto result = make_preference_pairs(tuples, {*strategy, c.dedup}, [&](const TadpoleTuple& t) {
    return render_prompt(PromptKind::kZeroShot, *by_id.at(t.sample_id), taxonomy, prompts);
  });

  Table table;
  table.title = "Preference pairs";
  table.header = {"Strategy", "Pairs", "Skipped"};
  for (auto s : {PairStrategy::kEnhanced, PairStrategy::kCorrupted, PairStrategy::kHardCorrupted}) {
    const auto made = std::count_if(result.pairs.begin(), result.pairs.end(),
                                    [&](const PreferencePair& p) { return p.strategy == s; });
    const auto skipped = std::count_if(result.skipped.begin(), result.skipped.end(),
                                       [&](const SkippedPair& p) { return p.strategy == s; });
    if (made + skipped == 0) continue;
    table.rows.push_back({std::string(pair_strategy_name(s)), std::to_string(made), std::to_string(skipped)});
  }
  ReportWriter writer(c.out, to_json(c));
  writer.write_config();
  writer.write_file("pairs.jsonl", pairs_to_jsonl(result.pairs, taxonomy));
  writer.write_table("pairs", table);
  out << to_markdown(table);
  return kExitOk;
}

struct RawPaths {
  std::string samples, drafts, annotations, multi, index, queries, bases, tuples;
  std::string backend_config, abbreviations, templates, out;
  std::vector<std::string> responses;
};

std::optional<std::filesystem::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

void add_common(CLI::App* app, RunConfig& c, RawPaths& raw) {
  app->add_option("--taxonomy", c.taxonomy, "Taxonomy config file, or 'default'");
  app->add_option("--abbreviations", raw.abbreviations, "Abbreviation list (one per line)");
  app->add_flag("--split-semicolons", c.split_semicolons, "Also split sentences at semicolons");
  app->add_option("--templates", raw.templates, "Directory overriding prompts/... template files");
  app->add_option("--out", raw.out, "Output directory")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  app->add_flag("--dry-run", c.dry_run, "Validate inputs and print the plan without backend calls");
  app->add_option("--seed", c.seed, "Reserved; all defaults are deterministic");
  app->add_option("--backend-config", raw.backend_config, "Remote backend JSON config");
}

void add_matcher(CLI::App* app, RunConfig& c) {
  app->add_option("--matcher", c.matcher, "baseline | remote")->capture_default_str();
  app->add_option("--span-policy", c.span_policy, "strict | fuzzy")->capture_default_str();
  app->add_option("--tau", c.tau, "Baseline matcher threshold")->capture_default_str();
}

void add_classifier(CLI::App* app, RunConfig& c) {
  app->add_option("--classifier", c.classifier, "baseline | remote")->capture_default_str();
}

void add_theme_metric(CLI::App* app, RunConfig& c) {
  app->add_flag("--theme-presence", c.theme_presence, "Score theme presence instead of counts");
  app->add_flag("--exclude-other", c.exclude_other, "Leave 'Other' out of the theme micro average");
}

void add_embedder(CLI::App* app, RunConfig& c) {
  app->add_option("--embedder", c.embedder, "baseline | remote")->capture_default_str();
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  ojson responses = ojson::array();
  for (const auto& p : c.responses) responses.push_back(p.generic_string());
  return {{"command", c.command},
          {"inputs",
           {{"samples", path_or_null(c.samples)},
            {"drafts", path_or_null(c.drafts)},
            {"annotations", path_or_null(c.annotations)},
            {"multi", path_or_null(c.multi)},
            {"responses", responses},
            {"index", path_or_null(c.index)},
            {"queries", path_or_null(c.queries)},
            {"bases", path_or_null(c.bases)},
            {"tuples", path_or_null(c.tuples)}}},
          {"backends",
           {{"matcher", c.command == "judge-eval" ? ojson(c.judge_matchers) : ojson(c.matcher)},
            {"classifier", c.classifier},
            {"embedder", c.embedder},
            {"generator", c.generator},
            {"backend_config", path_or_null(c.backend_config)},
            {"span_policy", c.span_policy},
            {"tau", c.tau}}},
          {"text",
           {{"taxonomy", c.taxonomy},
            {"abbreviations", path_or_null(c.abbreviations)},
            {"split_semicolons", c.split_semicolons},
            {"templates", path_or_null(c.templates)}}},
          {"metrics", {{"theme_presence", c.theme_presence}, {"include_other", !c.exclude_other}}},
          {"adaptation", {{"k", c.k}, {"prompt_kind", c.prompt_kind}, {"strategy", c.strategy}, {"dedup", c.dedup}}},
          {"run", {{"out", c.out.generic_string()}, {"threads", c.threads}, {"dry_run", c.dry_run}, {"seed", c.seed}}}};
}

int execute(const RunConfig& c, std::ostream& out) {
  if (c.command == "evaluate") return cmd_evaluate(c, out);
  if (c.command == "judge-eval") return cmd_judge_eval(c, out);
  if (c.command == "iap") return cmd_iap(c, out);
  if (c.command == "iaa") return cmd_iaa(c, out);
  if (c.command == "theme-freq") return cmd_theme_freq(c, out);
  if (c.command == "rag index") return cmd_rag_index(c, out);
  if (c.command == "rag prompt") return cmd_rag_prompt(c, out);
  if (c.command == "prompt") return cmd_prompt(c, out);
  if (c.command == "tadpole tuples") return cmd_tadpole_tuples(c, out);
  if (c.command == "tadpole pairs") return cmd_tadpole_pairs(c, out);
  throw ConfigError("unknown command '" + c.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  init_logging();
  RunConfig c;
  RawPaths raw;
  raw.out = c.out.string();

  CLI::App app{"editjudge: edit-F1 evaluation of response drafts against clinician responses", "editjudge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "editjudge 1.0.0");

  auto* evaluate = app.add_subcommand("evaluate", "Content- and theme-level edit-F1 of drafts");
  evaluate->add_option("--samples", raw.samples, "Samples with expert responses")->required();
  evaluate->add_option("--drafts", raw.drafts, "Drafts to score")->required();
  add_matcher(evaluate, c);
  add_classifier(evaluate, c);
  add_theme_metric(evaluate, c);
  add_common(evaluate, c, raw);

  auto* judge = app.add_subcommand("judge-eval", "Agreement of matchers with human match annotations");
  judge->add_option("--annotations", raw.annotations, "Judge annotation file")->required();
  judge->add_option("--matcher", c.judge_matchers, "baseline | remote (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  judge->add_option("--span-policy", c.span_policy, "strict | fuzzy")->capture_default_str();
  judge->add_option("--tau", c.tau, "Baseline matcher threshold")->capture_default_str();
  add_common(judge, c, raw);

  auto* iap_cmd = app.add_subcommand("iap", "Inter-annotator predictability");
  iap_cmd->add_option("--multi", raw.multi, "Multi-response samples")->required();
  add_matcher(iap_cmd, c);
  add_classifier(iap_cmd, c);
  add_theme_metric(iap_cmd, c);
  add_common(iap_cmd, c, raw);

  auto* iaa_cmd = app.add_subcommand("iaa", "Strict theme agreement and pairwise cosine similarity");
  iaa_cmd->add_option("--multi", raw.multi, "Multi-response samples")->required();
  add_classifier(iaa_cmd, c);
  add_embedder(iaa_cmd, c);
  add_common(iaa_cmd, c, raw);

  auto* freq = app.add_subcommand("theme-freq", "Theme frequencies of response corpora");
  freq->add_option("--responses", raw.responses, "Samples, multi-response or drafts files")->required();
  add_classifier(freq, c);
  add_common(freq, c, raw);

  auto* rag = app.add_subcommand("rag", "Retrieval-augmented prompting");
  rag->require_subcommand(1);
  auto* rag_index = rag->add_subcommand("index", "Embed training samples into an index");
  rag_index->add_option("--samples", raw.samples, "Training samples")->required();
  rag_index->add_option("--index", raw.index, "Index base path (default <out>/rag_index)");
  add_embedder(rag_index, c);
  add_common(rag_index, c, raw);
  auto* rag_prompt = rag->add_subcommand("prompt", "Build k-shot prompts from the nearest samples");
  rag_prompt->add_option("--queries", raw.queries, "Samples to build prompts for")->required();
  rag_prompt->add_option("--index", raw.index, "Index base path (default <out>/rag_index)");
  rag_prompt->add_option("--k", c.k, "Examples per prompt")->capture_default_str();
  add_embedder(rag_prompt, c);
  add_common(rag_prompt, c, raw);

  auto* prompt = app.add_subcommand("prompt", "Render zero-shot or thematic prompts");
  prompt->add_option("--samples", raw.samples, "Samples")->required();
  prompt->add_option("--kind", c.prompt_kind, "zero-shot | thematic")->capture_default_str();
  add_common(prompt, c, raw);

  auto* tadpole = app.add_subcommand("tadpole", "Theme-driven preference data");
  tadpole->require_subcommand(1);
  auto* tuples = tadpole->add_subcommand("tuples", "Generate enhanced/corrupted variants of base responses");
  tuples->add_option("--bases", raw.bases, "Samples whose responses are the bases")->required();
  tuples->add_option("--generator", c.generator, "remote | echo")->capture_default_str();
  add_common(tuples, c, raw);
  auto* pairs = tadpole->add_subcommand("pairs", "Pair tuples into preference data");
  pairs->add_option("--tuples", raw.tuples, "Tuples file")->required();
  pairs->add_option("--samples", raw.samples, "Samples the tuples were built from")->required();
  pairs->add_option("--strategy", c.strategy, "enhanced | corrupted | hard-corrupted | blend")
      ->capture_default_str();
  pairs->add_flag("--dedup", c.dedup, "Also skip pairs that differ only in case or whitespace");
  add_common(pairs, c, raw);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
    for (const auto* inner : sub->get_subcommands()) c.command += " " + inner->get_name();
  }
  c.samples = opt_path(raw.samples);
  c.drafts = opt_path(raw.drafts);
  c.annotations = opt_path(raw.annotations);
  c.multi = opt_path(raw.multi);
  c.index = opt_path(raw.index);
  c.queries = opt_path(raw.queries);
  c.bases = opt_path(raw.bases);
  c.tuples = opt_path(raw.tuples);
  c.backend_config = opt_path(raw.backend_config);
  c.abbreviations = opt_path(raw.abbreviations);
  c.templates = opt_path(raw.templates);
  c.out = raw.out;
  for (const auto& r : raw.responses) c.responses.emplace_back(r);

  try {
    return execute(c, out);
  } catch (const ConfigError& e) {
    err << "editjudge: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "editjudge: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const BackendError& e) {
    err << "editjudge: backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    err << "editjudge: " << e.what() << "\n";
    return kExitConfig;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace editjudge::cli

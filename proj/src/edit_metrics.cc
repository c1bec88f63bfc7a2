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

#include "editjudge/edit_metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <spdlog/spdlog.h>

#include "editjudge/error.h"
#include "editjudge/parallel.h"
#include "editjudge/text.h"

namespace editjudge {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PRF prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  PRF r;
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  // 2TP / (2TP + FP + FN) is the harmonic mean without the p+r=0 special case.
  r.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  return r;
}

PRF content_scores(const EditCounts& counts) { return prf_from_counts(counts.em, counts.ed, counts.ea); }

PRF aggregate_micro(std::span<const EditCounts> counts) {
  if (counts.empty()) throw std::invalid_argument("aggregate_micro: no counts");
  EditCounts total;
  for (const auto& c : counts) total += c;
  return content_scores(total);
}

EditResult count_edits(std::string_view expert, std::string_view draft, const ContentMatcher& matcher,
                       const Segmenter& segmenter) {
  if (text::trim(expert).empty()) throw std::invalid_argument("count_edits: expert response is empty");
  EditResult r;
  r.expert_sentences = segmenter.segment(expert);
  r.draft_sentences = segmenter.count(draft);
  r.decisions.reserve(r.expert_sentences.size());

  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (const auto& s : r.expert_sentences) {
    MatchDecision d = matcher.match(s.text, draft);
    if (d.is_match()) {
      if (auto range = locate_span(d, draft)) {
        ranges.push_back(*range);
        ++r.counts.em;
        r.decisions.push_back(std::move(d));
        continue;
      }
      ++r.unlocatable_spans;
      spdlog::warn("matcher '{}' returned a span that is not in the draft; counting an addition",
                   matcher.name());
      d = MatchDecision::no_match();
    }
    ++r.counts.ea;
    r.decisions.push_back(std::move(d));
  }

  std::sort(ranges.begin(), ranges.end());
  for (const auto& range : ranges) {
    if (!r.removed.empty() && range.first <= r.removed.back().second) {
      r.removed.back().second = std::max(r.removed.back().second, range.second);
    } else {
      r.removed.push_back(range);
    }
  }

  std::size_t cursor = 0;
  for (const auto& [b, e] : r.removed) {
    r.remainder.append(draft.substr(cursor, b - cursor));
    r.remainder.push_back(' ');
    cursor = e;
  }
  r.remainder.append(draft.substr(cursor));
  r.counts.ed = segmenter.count(r.remainder);
  return r;
}

std::size_t ThemeCounts::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::vector<ThemeLabel> classify_sentences(std::span<const Sentence> sentences,
                                           const ThemeClassifier& classifier, const ThemeTaxonomy& taxonomy) {
  std::vector<ThemeLabel> labels;
  labels.reserve(sentences.size());
  for (const auto& s : sentences) {
    const ThemeLabel l = classifier.classify(s.text, taxonomy);
    if (l.index() >= taxonomy.label_count()) {
      throw BackendError("classifier '" + classifier.name() + "' returned a label outside the taxonomy");
    }
    labels.push_back(l);
  }
  return labels;
}

ThemeCounts counts_from_labels(std::span<const ThemeLabel> labels, std::size_t label_count) {
  ThemeCounts c(label_count);
  for (auto l : labels) ++c.counts.at(l.index());
  return c;
}

ThemeCounts theme_counts(std::string_view response, const ThemeClassifier& classifier,
                         const Segmenter& segmenter, const ThemeTaxonomy& taxonomy) {
  const auto sentences = segmenter.segment(response);
  const auto labels = classify_sentences(sentences, classifier, taxonomy);
  return counts_from_labels(labels, taxonomy.label_count());
}

PRF ThemeEditScores::class_prf(std::size_t label_index) const {
  const auto& t = per_class.at(label_index);
  return prf_from_counts(t.tp, t.fp, t.fn);
}

ThemeTally micro_theme_tally(std::span<const ThemeTally> per_class, const ThemeScoreOptions& options) {
  ThemeTally micro;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (!options.include_other && c + 1 == per_class.size()) continue;
    micro += per_class[c];
  }
  return micro;
}

ThemeEditScores theme_edit_scores(const ThemeCounts& expert, const ThemeCounts& draft,
                                  const ThemeScoreOptions& options) {
  if (expert.counts.size() != draft.counts.size()) {
    throw std::invalid_argument("theme_edit_scores: label spaces differ");
  }
  ThemeEditScores s;
  s.per_class.resize(expert.counts.size());
  for (std::size_t c = 0; c < expert.counts.size(); ++c) {
    std::size_t e = expert.counts[c];
    std::size_t d = draft.counts[c];
    if (options.presence) {
      e = e > 0 ? 1 : 0;
      d = d > 0 ? 1 : 0;
    }
    const std::size_t tp = std::min(e, d);
    s.per_class[c] = ThemeTally{tp, d - tp, e - tp};
  }
  s.micro_tally = micro_theme_tally(s.per_class, options);
  s.micro = prf_from_counts(s.micro_tally.tp, s.micro_tally.fp, s.micro_tally.fn);
  return s;
}

ClasswiseRecall& ClasswiseRecall::operator+=(const ClasswiseRecall& o) {
  if (matched.empty()) {
    matched.assign(o.matched.size(), 0);
    total.assign(o.total.size(), 0);
  }
  if (o.matched.size() != matched.size()) throw std::invalid_argument("ClasswiseRecall: label spaces differ");
  for (std::size_t i = 0; i < matched.size(); ++i) {
    matched[i] += o.matched[i];
    total[i] += o.total[i];
  }
  return *this;
}

std::optional<double> ClasswiseRecall::recall(std::size_t label_index) const {
  if (total.at(label_index) == 0) return std::nullopt;
  return ratio(matched[label_index], total[label_index]);
}

PairEvaluation evaluate_pair(std::string_view expert, std::string_view draft, const Backends& backends,
                             const ThemeScoreOptions& options) {
  PairEvaluation p;
  p.edits = count_edits(expert, draft, backends.matcher, backends.segmenter);
  p.content = content_scores(p.edits.counts);
  p.expert_labels = classify_sentences(p.edits.expert_sentences, backends.classifier, backends.taxonomy);
  p.expert_themes = counts_from_labels(p.expert_labels, backends.taxonomy.label_count());
  p.draft_themes = theme_counts(draft, backends.classifier, backends.segmenter, backends.taxonomy);
  p.theme = theme_edit_scores(p.expert_themes, p.draft_themes, options);
  p.classwise = ClasswiseRecall(backends.taxonomy.label_count());
  for (std::size_t i = 0; i < p.expert_labels.size(); ++i) {
    const auto l = p.expert_labels[i].index();
    ++p.classwise.total[l];
    if (p.edits.matched(i)) ++p.classwise.matched[l];
  }
  return p;
}

ClasswiseRecall classwise_content_recall(std::span<const ResponsePair> pairs, const Backends& backends,
                                         std::size_t threads) {
  if (pairs.empty()) throw std::invalid_argument("classwise_content_recall: no pairs");
  std::vector<ClasswiseRecall> parts(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto edits = count_edits(pairs[i].expert, pairs[i].draft, backends.matcher, backends.segmenter);
    const auto labels = classify_sentences(edits.expert_sentences, backends.classifier, backends.taxonomy);
    ClasswiseRecall c(backends.taxonomy.label_count());
    for (std::size_t s = 0; s < labels.size(); ++s) {
      ++c.total[labels[s].index()];
      if (edits.matched(s)) ++c.matched[labels[s].index()];
    }
    parts[i] = std::move(c);
  });
  ClasswiseRecall out(backends.taxonomy.label_count());
  for (const auto& p : parts) out += p;
  return out;
}

void GroupScores::add(const PairEvaluation& pair) {
  ++samples;
  counts += pair.edits.counts;
  if (theme_per_class.empty()) theme_per_class.resize(pair.theme.per_class.size());
  for (std::size_t c = 0; c < theme_per_class.size(); ++c) theme_per_class[c] += pair.theme.per_class.at(c);
  classwise += pair.classwise;
}

void GroupScores::finish(const ThemeScoreOptions& options) {
  content = content_scores(counts);
  theme_tally = micro_theme_tally(theme_per_class, options);
  theme = prf_from_counts(theme_tally.tp, theme_tally.fp, theme_tally.fn);
}

ScoreReport evaluate_dataset(std::span<const MessageSample> samples, std::span<const DraftRecord> drafts,
                             const Backends& backends, const EvalOptions& options) {
  if (drafts.empty()) throw DataError("evaluate: no drafts to evaluate");
  std::map<std::string_view, const MessageSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);

  std::vector<const MessageSample*> joined(drafts.size());
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto it = by_id.find(drafts[i].sample_id);
    if (it == by_id.end()) {
      throw DataError("draft " + std::to_string(i + 1) + " refers to unknown sample id '" +
                      drafts[i].sample_id + "'");
    }
    joined[i] = it->second;
  }

  std::vector<std::optional<PairEvaluation>> results(drafts.size());
  std::vector<std::string> failures(drafts.size());
  parallel_for(drafts.size(), options.threads, [&](std::size_t i) {
    try {
      results[i] = evaluate_pair(joined[i]->response, drafts[i].draft, backends, options.theme);
    } catch (const BackendError& e) {
      failures[i] = e.what();
    }
  });

  ScoreReport report;
  report.labels = backends.taxonomy.label_names();
  report.overall.model = "all";
  report.overall.adaptation = "all";
  report.overall.classwise = ClasswiseRecall(backends.taxonomy.label_count());
  std::map<std::pair<std::string, std::string>, std::size_t> group_index;

  for (std::size_t i = 0; i < drafts.size(); ++i) {
    const auto& d = drafts[i];
    const auto key = std::make_pair(d.model, d.adaptation);
    if (!group_index.count(key)) {
      group_index.emplace(key, report.groups.size());
      GroupScores g;
      g.model = d.model;
      g.adaptation = d.adaptation;
      g.classwise = ClasswiseRecall(backends.taxonomy.label_count());
      g.theme_per_class.resize(backends.taxonomy.label_count());
      report.groups.push_back(std::move(g));
    }
    if (!results[i]) {
      report.errored.push_back({d.sample_id, d.model, d.adaptation, failures[i]});
      continue;
    }
    const PairEvaluation& p = *results[i];
    SampleRow row;
    row.sample_id = d.sample_id;
    row.model = d.model;
    row.adaptation = d.adaptation;
    row.counts = p.edits.counts;
    row.content = p.content;
    row.theme_tally = p.theme.micro_tally;
    row.theme = p.theme.micro;
    row.expert_sentences = p.edits.expert_sentences.size();
    row.draft_sentences = p.edits.draft_sentences;
    report.rows.push_back(std::move(row));
    report.overall.add(p);
    report.groups[group_index.at(key)].add(p);
    ++report.sample_count;
  }
  if (report.overall.theme_per_class.empty()) report.overall.theme_per_class.resize(backends.taxonomy.label_count());
  report.overall.finish(options.theme);
  for (auto& g : report.groups) g.finish(options.theme);

  if (report.sample_count == 0 && options.fail_if_all_errored) {
    throw BackendError("every sample errored; first failure: " + report.errored.front().reason);
  }
  return report;
}

std::vector<AdaptationSummary> summarize_adaptations(std::span<const GroupScores> groups) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const GroupScores*>> by_adaptation;
  for (const auto& g : groups) {
    if (g.samples == 0) continue;
    auto [it, inserted] = by_adaptation.try_emplace(g.adaptation);
    if (inserted) order.push_back(g.adaptation);
    it->second.push_back(&g);
  }
  auto mean_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::make_pair(mean, std::sqrt(ss / static_cast<double>(xs.size() - 1)));
  };
  std::vector<AdaptationSummary> out;
  for (const auto& a : order) {
    const auto& members = by_adaptation[a];
    if (members.size() < 2) continue;
    AdaptationSummary s;
    s.adaptation = a;
    s.models = members.size();
    auto fill = [&](auto field, PRF& mean, PRF& sd) {
      std::vector<double> p, r, f;
      for (const auto* g : members) {
        const PRF& v = g->*field;
        p.push_back(v.precision);
        r.push_back(v.recall);
        f.push_back(v.f1);
      }
      std::tie(mean.precision, sd.precision) = mean_std(p);
      std::tie(mean.recall, sd.recall) = mean_std(r);
      std::tie(mean.f1, sd.f1) = mean_std(f);
    };
    fill(&GroupScores::content, s.content_mean, s.content_std);
    fill(&GroupScores::theme, s.theme_mean, s.theme_std);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace editjudge

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

// Editing-load metrics.
//
// Content level: every expert sentence is either already present in the
// draft (expected match, EM) or must be written by the clinician (expected
// addition, EA). Whatever is left of the draft after removing matched content
// must be deleted (expected deletions, ED, counted in sentences). With EM as
// true positives, EA as false negatives and ED as false positives:
//
//   recall = EM / (EM + EA)   precision = EM / (EM + ED)
//   F1 = 2 EM / (2 EM + EA + ED)
//
// Theme level: each sentence of both responses gets one theme label, and the
// draft's label multiset is scored as a prediction of the expert's:
// TP_c = min(draft_c, expert_c), FP_c = draft_c - TP_c, FN_c = expert_c - TP_c.
//
// All ratios with a zero denominator are 0.

#ifndef EDITJUDGE_EDIT_METRICS_H_
#define EDITJUDGE_EDIT_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/segmenter.h"
#include "editjudge/taxonomy.h"
#include "editjudge/types.h"

namespace editjudge {

struct EditCounts {
  std::size_t em = 0;
  std::size_t ea = 0;
  std::size_t ed = 0;

  EditCounts& operator+=(const EditCounts& o) {
    em += o.em;
    ea += o.ea;
    ed += o.ed;
    return *this;
  }
  bool operator==(const EditCounts&) const = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PRF prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);
PRF content_scores(const EditCounts& counts);
// Sums the counts, then scores. Throws std::invalid_argument when empty.
PRF aggregate_micro(std::span<const EditCounts> counts);

struct EditResult {
  EditCounts counts;
  std::vector<Sentence> expert_sentences;
  // One per expert sentence. Matches are verbatim spans of the draft.
  std::vector<MatchDecision> decisions;
  // Merged, sorted byte ranges removed from the draft.
  std::vector<std::pair<std::size_t, std::size_t>> removed;
  std::string remainder;
  std::size_t draft_sentences = 0;
  // Match decisions whose span could not be found in the draft. They are
  // counted as additions; a validated matcher never produces them.
  std::size_t unlocatable_spans = 0;

  bool matched(std::size_t expert_index) const { return decisions[expert_index].is_match(); }
};

// Every expert sentence is matched against the full original draft; matched
// ranges are removed together afterwards. Two expert sentences may match the
// same span: both count as EM and the span is removed once. Removed ranges
// are replaced by a single space before the remainder is re-segmented.
// Throws std::invalid_argument if `expert` is blank, BackendError from the
// matcher.
EditResult count_edits(std::string_view expert, std::string_view draft, const ContentMatcher& matcher,
                       const Segmenter& segmenter);

struct ThemeCounts {
  std::vector<std::size_t> counts;  // indexed by ThemeLabel::index()

  ThemeCounts() = default;
  explicit ThemeCounts(std::size_t label_count) : counts(label_count, 0) {}
  std::size_t total() const;
  std::size_t operator[](ThemeLabel l) const { return counts[l.index()]; }
  bool operator==(const ThemeCounts&) const = default;
};

std::vector<ThemeLabel> classify_sentences(std::span<const Sentence> sentences,
                                           const ThemeClassifier& classifier, const ThemeTaxonomy& taxonomy);
ThemeCounts counts_from_labels(std::span<const ThemeLabel> labels, std::size_t label_count);
ThemeCounts theme_counts(std::string_view response, const ThemeClassifier& classifier,
                         const Segmenter& segmenter, const ThemeTaxonomy& taxonomy);

struct ThemeTally {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ThemeTally& operator+=(const ThemeTally& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ThemeTally&) const = default;
};

struct ThemeScoreOptions {
  // Count "Other" (the last label) in the micro average.
  bool include_other = true;
  // Score label presence per response instead of label counts.
  bool presence = false;
};

struct ThemeEditScores {
  std::vector<ThemeTally> per_class;
  ThemeTally micro_tally;
  PRF micro;

  PRF class_prf(std::size_t label_index) const;
};

// Throws std::invalid_argument when the label spaces differ in size.
ThemeEditScores theme_edit_scores(const ThemeCounts& expert, const ThemeCounts& draft,
                                  const ThemeScoreOptions& options = {});

// Micro tally over per-class tallies, honoring include_other.
ThemeTally micro_theme_tally(std::span<const ThemeTally> per_class, const ThemeScoreOptions& options);

// Matched and total expert sentences per theme label.
struct ClasswiseRecall {
  std::vector<std::size_t> matched;
  std::vector<std::size_t> total;

  ClasswiseRecall() = default;
  explicit ClasswiseRecall(std::size_t label_count) : matched(label_count, 0), total(label_count, 0) {}
  ClasswiseRecall& operator+=(const ClasswiseRecall& o);
  // nullopt for labels with no expert sentences.
  std::optional<double> recall(std::size_t label_index) const;
};

struct Backends {
  const ContentMatcher& matcher;
  const ThemeClassifier& classifier;
  const Segmenter& segmenter;
  const ThemeTaxonomy& taxonomy;
};

struct PairEvaluation {
  EditResult edits;
  PRF content;
  std::vector<ThemeLabel> expert_labels;  // per expert sentence
  ThemeCounts expert_themes;
  ThemeCounts draft_themes;
  ThemeEditScores theme;
  ClasswiseRecall classwise;
};

// Content and theme pipelines for one (expert, draft) pair.
PairEvaluation evaluate_pair(std::string_view expert, std::string_view draft, const Backends& backends,
                             const ThemeScoreOptions& options = {});

struct ResponsePair {
  std::string expert;
  std::string draft;
};

// Per-theme recall of expert content: each expert sentence gets a theme label
// and a matched flag. Throws std::invalid_argument on empty input.
ClasswiseRecall classwise_content_recall(std::span<const ResponsePair> pairs, const Backends& backends,
                                         std::size_t threads = 1);

struct SampleRow {
  std::string sample_id;
  std::string model;
  std::string adaptation;
  EditCounts counts;
  PRF content;
  ThemeTally theme_tally;
  PRF theme;
  std::size_t expert_sentences = 0;
  std::size_t draft_sentences = 0;
};

struct ErroredSample {
  std::string sample_id;
  std::string model;
  std::string adaptation;
  std::string reason;
};

// Micro-aggregated scores over a set of evaluated pairs.
struct GroupScores {
  std::string model;
  std::string adaptation;
  std::size_t samples = 0;
  EditCounts counts;
  PRF content;
  std::vector<ThemeTally> theme_per_class;
  ThemeTally theme_tally;
  PRF theme;
  ClasswiseRecall classwise;

  void add(const PairEvaluation& pair);
  // Recomputes the PRF fields from the summed counts.
  void finish(const ThemeScoreOptions& options);
};

struct ScoreReport {
  std::vector<std::string> labels;
  std::vector<SampleRow> rows;
  std::vector<ErroredSample> errored;
  GroupScores overall;
  // One per (model, adaptation) in order of first appearance in the drafts.
  std::vector<GroupScores> groups;
  std::size_t sample_count = 0;  // successfully evaluated pairs
};

struct EvalOptions {
  ThemeScoreOptions theme;
  std::size_t threads = 1;
  // Throw BackendError when every pair errored.
  bool fail_if_all_errored = true;
};

// Joins drafts to samples by id (every draft must join: DataError otherwise)
// and evaluates every pair. Backend failures mark the pair errored; errored
// pairs are left out of all sums.
ScoreReport evaluate_dataset(std::span<const MessageSample> samples, std::span<const DraftRecord> drafts,
                             const Backends& backends, const EvalOptions& options = {});

// Mean and sample standard deviation of per-model micro scores, per
// adaptation. Only produced for adaptations with at least two models.
struct AdaptationSummary {
  std::string adaptation;
  std::size_t models = 0;
  PRF content_mean, content_std;
  PRF theme_mean, theme_std;
};

std::vector<AdaptationSummary> summarize_adaptations(std::span<const GroupScores> groups);

}  // namespace editjudge

#endif  // EDITJUDGE_EDIT_METRICS_H_

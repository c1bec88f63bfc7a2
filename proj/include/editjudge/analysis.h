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

// Agreement between clinicians answering the same messages, and theme
// frequencies of response corpora.

#ifndef EDITJUDGE_ANALYSIS_H_
#define EDITJUDGE_ANALYSIS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/edit_metrics.h"
#include "editjudge/types.h"

namespace editjudge {

// Sorted, distinct annotator ids over all samples.
std::vector<std::string> annotator_ids(const std::vector<MultiResponseSample>& multi);

struct IapPair {
  std::string expert;  // scored as the reference
  std::string draft;   // scored as the draft
  std::size_t comparisons = 0;
  EditCounts counts;
  PRF content;
  ThemeTally theme_tally;
  PRF theme;
};

// Inter-annotator predictability: every other clinician's response scored as
// a draft against each clinician's response, micro-averaged over all
// comparisons.
struct IapReport {
  std::vector<std::string> labels;
  std::vector<std::string> annotators;
  std::size_t ordered_pairs = 0;  // a (a - 1)
  std::size_t pair_count = 0;     // (ordered pair, shared sample) comparisons
  std::size_t errored = 0;        // comparisons dropped for backend failures
  EditCounts counts;
  PRF content;
  std::vector<ThemeTally> theme_per_class;
  ThemeTally theme_tally;
  PRF theme;
  ClasswiseRecall classwise;
  // Ordered by (expert, draft) annotator id.
  std::vector<IapPair> pairs;
};

// Ordered pairs run over all annotators; a sample enters a pair's
// comparisons only when both annotators answered it. Throws DataError with
// fewer than two annotators or when no pair shares a sample, BackendError
// when every comparison failed.
IapReport iap(const std::vector<MultiResponseSample>& multi, const Backends& backends,
              const ThemeScoreOptions& options = {}, std::size_t threads = 1);

struct StrictAgreementRow {
  std::string label;
  double strict_inclusion = 0.0;  // every annotator's response has the theme
  double strict_exclusion = 0.0;  // no annotator's response has the theme
  double strict_agreement = 0.0;  // inclusion + exclusion
};

struct StrictAgreementReport {
  std::vector<std::string> annotators;
  std::size_t samples = 0;
  std::vector<StrictAgreementRow> rows;  // one per label, "Other" last
};

// A theme is included in a response when at least one of its sentences
// carries the label. Throws DataError on an empty input or when samples do
// not all have the same annotator set.
StrictAgreementReport strict_agreement(const std::vector<MultiResponseSample>& multi,
                                       const ThemeClassifier& classifier, const Segmenter& segmenter,
                                       const ThemeTaxonomy& taxonomy, std::size_t threads = 1);

// Mean cosine similarity of two annotators' responses over shared samples.
struct CosineMatrix {
  std::vector<std::string> annotators;
  // Row-major a x a. Symmetric; nullopt where a pair shares no sample; the
  // diagonal is 1.0.
  std::vector<std::optional<double>> values;
  std::vector<std::size_t> shared;  // shared sample counts, same layout

  std::size_t size() const { return annotators.size(); }
  const std::optional<double>& at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

// Throws DataError with fewer than two annotators.
CosineMatrix pairwise_cosine(const std::vector<MultiResponseSample>& multi, const Embedder& embedder,
                             std::size_t threads = 1);

struct ThemeFrequency {
  std::string corpus;
  std::size_t responses = 0;
  std::size_t sentences = 0;
  std::vector<std::size_t> counts;             // sentences per label
  std::vector<double> sentence_fraction;       // counts / sentences
  std::vector<std::size_t> responses_with;     // responses containing the label
  std::vector<double> response_fraction;       // responses_with / responses
};

// Throws std::invalid_argument on an empty corpus.
ThemeFrequency theme_frequency(const std::vector<std::string>& responses, const ThemeClassifier& classifier,
                               const Segmenter& segmenter, const ThemeTaxonomy& taxonomy,
                               std::size_t threads = 1);

}  // namespace editjudge

#endif  // EDITJUDGE_ANALYSIS_H_

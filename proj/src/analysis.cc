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

#include "editjudge/analysis.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "editjudge/error.h"
#include "editjudge/kernels.h"
#include "editjudge/parallel.h"

namespace editjudge {

std::vector<std::string> annotator_ids(const std::vector<MultiResponseSample>& multi) {
  std::set<std::string> ids;
  for (const auto& s : multi) {
    for (const auto& r : s.responses) ids.insert(r.annotator_id);
  }
  return {ids.begin(), ids.end()};
}

IapReport iap(const std::vector<MultiResponseSample>& multi, const Backends& backends,
              const ThemeScoreOptions& options, std::size_t threads) {
  IapReport report;
  report.labels = backends.taxonomy.label_names();
  report.annotators = annotator_ids(multi);
  const std::size_t a = report.annotators.size();
  if (a < 2) throw DataError("iap: need at least two annotators, found " + std::to_string(a));
  report.ordered_pairs = a * (a - 1);

  struct Job {
    std::size_t pair;
    const std::string* expert;
    const std::string* draft;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < a; ++e) {
    for (std::size_t d = 0; d < a; ++d) {
      if (e == d) continue;
      IapPair p;
      p.expert = report.annotators[e];
      p.draft = report.annotators[d];
      for (const auto& s : multi) {
        const auto* re = s.find(p.expert);
        const auto* rd = s.find(p.draft);
        if (re && rd) jobs.push_back({report.pairs.size(), &re->response, &rd->response});
      }
      report.pairs.push_back(std::move(p));
    }
  }
  if (jobs.empty()) throw DataError("iap: no sample is shared by any two annotators");

  std::vector<std::optional<PairEvaluation>> results(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    try {
      results[i] = evaluate_pair(*jobs[i].expert, *jobs[i].draft, backends, options);
    } catch (const BackendError& e) {
      spdlog::warn("iap comparison {} failed: {}", i + 1, e.what());
    }
  });

  const std::size_t labels = backends.taxonomy.label_count();
  std::vector<std::vector<ThemeTally>> pair_classes(report.pairs.size(), std::vector<ThemeTally>(labels));
  report.theme_per_class.assign(labels, ThemeTally{});
  report.classwise = ClasswiseRecall(labels);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i]) {
      ++report.errored;
      continue;
    }
    const PairEvaluation& r = *results[i];
    IapPair& p = report.pairs[jobs[i].pair];
    ++p.comparisons;
    ++report.pair_count;
    p.counts += r.edits.counts;
    report.counts += r.edits.counts;
    for (std::size_t c = 0; c < labels; ++c) {
      pair_classes[jobs[i].pair][c] += r.theme.per_class[c];
      report.theme_per_class[c] += r.theme.per_class[c];
    }
    report.classwise += r.classwise;
  }
  if (report.pair_count == 0) throw BackendError("iap: every comparison failed");

  for (std::size_t k = 0; k < report.pairs.size(); ++k) {
    IapPair& p = report.pairs[k];
    p.content = content_scores(p.counts);
    p.theme_tally = micro_theme_tally(pair_classes[k], options);
    p.theme = prf_from_counts(p.theme_tally.tp, p.theme_tally.fp, p.theme_tally.fn);
  }
  report.content = content_scores(report.counts);
  report.theme_tally = micro_theme_tally(report.theme_per_class, options);
  report.theme = prf_from_counts(report.theme_tally.tp, report.theme_tally.fp, report.theme_tally.fn);
  return report;
}

StrictAgreementReport strict_agreement(const std::vector<MultiResponseSample>& multi,
                                       const ThemeClassifier& classifier, const Segmenter& segmenter,
                                       const ThemeTaxonomy& taxonomy, std::size_t threads) {
  if (multi.empty()) throw DataError("strict agreement: no samples");
  StrictAgreementReport report;
  auto ids_of = [](const MultiResponseSample& s) {
    std::vector<std::string> ids;
    for (const auto& r : s.responses) ids.push_back(r.annotator_id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  report.annotators = ids_of(multi.front());
  for (const auto& s : multi) {
    if (ids_of(s) != report.annotators) {
      throw DataError("strict agreement: sample '" + s.id + "' has a different annotator set than '" +
                      multi.front().id + "'");
    }
  }
  report.samples = multi.size();

  const std::size_t labels = taxonomy.label_count();
  // included[s][l] counts the responses of sample s that contain label l.
  std::vector<std::vector<std::size_t>> included(multi.size(), std::vector<std::size_t>(labels, 0));
  parallel_for(multi.size(), threads, [&](std::size_t i) {
    for (const auto& r : multi[i].responses) {
      const ThemeCounts c = theme_counts(r.response, classifier, segmenter, taxonomy);
      for (std::size_t l = 0; l < labels; ++l) {
        if (c.counts[l] > 0) ++included[i][l];
      }
    }
  });

  const double n = static_cast<double>(multi.size());
  const auto names = taxonomy.label_names();
  for (std::size_t l = 0; l < labels; ++l) {
    std::size_t all = 0, none = 0;
    for (std::size_t i = 0; i < multi.size(); ++i) {
      if (included[i][l] == multi[i].responses.size()) ++all;
      if (included[i][l] == 0) ++none;
    }
    StrictAgreementRow row;
    row.label = names[l];
    row.strict_inclusion = static_cast<double>(all) / n;
    row.strict_exclusion = static_cast<double>(none) / n;
    // Defined as the sum so the identity holds bit for bit.
    row.strict_agreement = row.strict_inclusion + row.strict_exclusion;
    report.rows.push_back(std::move(row));
  }
  return report;
}

CosineMatrix pairwise_cosine(const std::vector<MultiResponseSample>& multi, const Embedder& embedder,
                             std::size_t threads) {
  CosineMatrix m;
  m.annotators = annotator_ids(multi);
  const std::size_t a = m.size();
  if (a < 2) throw DataError("cosine agreement: need at least two annotators, found " + std::to_string(a));

  std::vector<const AnnotatorResponse*> flat;
  for (const auto& s : multi) {
    for (const auto& r : s.responses) flat.push_back(&r);
  }
  std::vector<std::vector<float>> vectors(flat.size());
  parallel_for(flat.size(), threads, [&](std::size_t i) { vectors[i] = embedder.embed(flat[i]->response); });

  std::vector<double> sums(a * a, 0.0);
  m.shared.assign(a * a, 0);
  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(m.annotators.begin(), m.annotators.end(), id) -
                                    m.annotators.begin());
  };
  std::size_t offset = 0;
  for (const auto& s : multi) {
    const std::size_t n = s.responses.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const std::size_t i = index_of(s.responses[x].annotator_id);
        const std::size_t j = index_of(s.responses[y].annotator_id);
        const double c = kernels::cosine(vectors[offset + x], vectors[offset + y]);
        sums[i * a + j] += c;
        sums[j * a + i] += c;
        ++m.shared[i * a + j];
        ++m.shared[j * a + i];
      }
    }
    offset += n;
  }

  m.values.assign(a * a, std::nullopt);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) {
      if (i == j) {
        m.values[i * a + j] = 1.0;
      } else if (m.shared[i * a + j] > 0) {
        m.values[i * a + j] = sums[i * a + j] / static_cast<double>(m.shared[i * a + j]);
      }
    }
  }
  return m;
}

ThemeFrequency theme_frequency(const std::vector<std::string>& responses, const ThemeClassifier& classifier,
                               const Segmenter& segmenter, const ThemeTaxonomy& taxonomy,
                               std::size_t threads) {
  if (responses.empty()) throw std::invalid_argument("theme_frequency: no responses");
  std::vector<ThemeCounts> per_response(responses.size());
  parallel_for(responses.size(), threads, [&](std::size_t i) {
    per_response[i] = theme_counts(responses[i], classifier, segmenter, taxonomy);
  });

  const std::size_t labels = taxonomy.label_count();
  ThemeFrequency f;
  f.responses = responses.size();
  f.counts.assign(labels, 0);
  f.responses_with.assign(labels, 0);
  for (const auto& c : per_response) {
    for (std::size_t l = 0; l < labels; ++l) {
      f.counts[l] += c.counts[l];
      if (c.counts[l] > 0) ++f.responses_with[l];
    }
    f.sentences += c.total();
  }
  for (std::size_t l = 0; l < labels; ++l) {
    f.sentence_fraction.push_back(
        f.sentences == 0 ? 0.0 : static_cast<double>(f.counts[l]) / static_cast<double>(f.sentences));
    f.response_fraction.push_back(static_cast<double>(f.responses_with[l]) / static_cast<double>(f.responses));
  }
  return f;
}

}  // namespace editjudge

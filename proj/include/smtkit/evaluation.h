#ifndef SMTKIT_EVALUATION_H_
#define SMTKIT_EVALUATION_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "smtkit/bleu.h"
#include "smtkit/corpus.h"
#include "smtkit/eval_pair.h"
#include "smtkit/meteor.h"
#include "smtkit/nist.h"
#include "smtkit/ter.h"

namespace smtkit {

struct ScoreConfig {
  bool case_sensitive = false;
  int bleu_max_n = 4;
  int nist_max_n = 5;
  bool meteor_cubic = false;
  std::size_t ter_exhaustive_max_len = 0;
  // Stemmer for the METEOR stem stage; null disables the stage.
  const Stemmer* stemmer = nullptr;
  const SynonymTable* synonyms = nullptr;
  unsigned jobs = 1;
};

struct MetricReport {
  std::size_t sentences = 0;
  BleuResult bleu;
  NistResult nist;
  TerResult ter;
  MeteorResult meteor;
};

// Tokenizes line-parallel hypothesis and reference lines. Throws EmptyCorpus
// for an empty hypothesis side and LineCountMismatch for a reference file of
// a different length.
EvalCorpus make_eval_corpus(const std::vector<std::string>& hypotheses,
                            const std::vector<std::vector<std::string>>& references,
                            const TokenizationScheme& scheme);

MetricReport score_corpus(const EvalCorpus& corpus, const ScoreConfig& config);

// Reads the files, tokenizes (lowercased unless case_sensitive) and scores.
MetricReport score_all(const std::string& hypothesis_path,
                       const std::vector<std::string>& reference_paths, const ScoreConfig& config);

// Rows of "System BLEU NIST TER METEOR" with BLEU, TER and METEOR scaled by
// 100, two decimals, followed by a note that lower TER is better.
std::string render_table(const std::vector<std::pair<std::string, MetricReport>>& rows);

}  // namespace smtkit

#endif  // SMTKIT_EVALUATION_H_

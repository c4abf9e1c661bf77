#ifndef SMTKIT_METEOR_H_
#define SMTKIT_METEOR_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "smtkit/eval_pair.h"
#include "smtkit/stemmer.h"

namespace smtkit {

// Word -> ids of the synonym sets it belongs to.
using SynonymTable = std::map<std::string, std::set<int>>;

struct MeteorOptions {
  const Stemmer* stemmer = nullptr;         // stem stage skipped when null
  const SynonymTable* synonyms = nullptr;   // synonym stage skipped when null
  // Fragmentation penalty 0.5 (C/M)^3 instead of 0.5 (C/M).
  bool cubic_penalty = false;
  // Search states per stage before falling back to a greedy alignment.
  std::size_t state_budget = 200000;
};

// (hypothesis index, reference index), sorted by hypothesis index.
using MeteorAlignment = std::vector<std::pair<std::size_t, std::size_t>>;

// Maximal runs of links adjacent in both sentences.
std::size_t count_chunks(const MeteorAlignment& links);

// Staged one-to-one alignment: exact, then stem, then synonym matches, each
// stage only touching words left unmatched. Every stage maximizes its number
// of matches and, among those, minimizes the chunk count of the whole
// alignment. `exact` is cleared if a stage exceeded the state budget.
MeteorAlignment meteor_align(const Tokens& hyp, const Tokens& ref, const MeteorOptions& options,
                             bool* exact = nullptr);

struct MeteorStats {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

struct MeteorResult {
  double score = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double fmean = 0.0;
  double penalty = 0.0;
  MeteorStats stats;
  std::size_t best_reference = 0;
  bool exact_search = true;
};

// score = 10PR / (R + 9P) * (1 - penalty), penalty = 0.5 C/M.
MeteorResult meteor_from_stats(const MeteorStats& stats, bool cubic_penalty = false);

// Best score over the references.
MeteorResult meteor(const EvalPair& pair, const MeteorOptions& options = {});

// Corpus score from the summed statistics of each sentence's best reference.
// Throws EmptyCorpus.
MeteorResult meteor_corpus(const EvalCorpus& corpus, const MeteorOptions& options = {},
                           unsigned jobs = 1);

}  // namespace smtkit

#endif  // SMTKIT_METEOR_H_

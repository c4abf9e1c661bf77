#ifndef SMTKIT_TER_H_
#define SMTKIT_TER_H_

#include <cstddef>
#include <vector>

#include "smtkit/eval_pair.h"

namespace smtkit {

struct TerOptions {
  // Pairs whose hypothesis and reference both have at most this many tokens
  // use the exact search instead of the greedy one. 0 disables it.
  std::size_t exhaustive_max_len = 0;
  std::size_t max_shift_size = 10;
  std::size_t max_shift_distance = 50;
  std::size_t max_shift_candidates = 1000;
};

struct TerEdits {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t shifts = 0;

  std::size_t total() const { return insertions + deletions + substitutions + shifts; }
  TerEdits& operator+=(const TerEdits& other);
};

// Word-level Levenshtein distance with unit costs.
std::size_t levenshtein(const Tokens& a, const Tokens& b);
TerEdits levenshtein_edits(const Tokens& hyp, const Tokens& ref);

// The usual greedy search: repeatedly apply the block shift that lowers the
// edit distance the most (the block must match the reference where it lands,
// cover a hypothesis error and land on a reference error), keeping a shift
// only if it reduces the distance by more than its own cost; then count the
// remaining Levenshtein edits.
TerEdits ter_greedy(const Tokens& hyp, const Tokens& ref, const TerOptions& options = {});

// Minimum over all sequences of unconstrained block shifts of
// (number of shifts + Levenshtein distance). Exponential; short inputs only.
TerEdits ter_exhaustive(const Tokens& hyp, const Tokens& ref);

struct TerResult {
  double score = 0.0;
  TerEdits edits;  // against the best reference
  double ref_length = 0.0;  // mean reference length
  std::size_t best_reference = 0;
};

// edits / mean reference length, edits taken against the closest reference.
// Throws EmptyReference when the mean reference length is 0.
TerResult ter(const EvalPair& pair, const TerOptions& options = {});

// Summed edits over summed mean reference lengths. Throws EmptyCorpus, or
// EmptyReference if every reference is empty.
TerResult ter_corpus(const EvalCorpus& corpus, const TerOptions& options = {}, unsigned jobs = 1);

}  // namespace smtkit

#endif  // SMTKIT_TER_H_

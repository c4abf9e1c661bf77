#ifndef SMTKIT_BLEU_H_
#define SMTKIT_BLEU_H_

#include <cstdint>
#include <vector>

#include "smtkit/eval_pair.h"

namespace smtkit {

struct BleuOptions {
  int max_n = 4;
  std::vector<double> weights;  // empty means uniform 1/max_n
  // Add-one smoothing of the n >= 2 precisions; for sentence-level use.
  bool add_one = false;
};

// Sufficient statistics; corpus BLEU sums them over sentences.
struct BleuStats {
  std::vector<std::uint64_t> matches;  // clipped, per order
  std::vector<std::uint64_t> totals;   // candidate n-grams, per order
  std::uint64_t hyp_length = 0;
  std::uint64_t ref_length = 0;  // closest reference length

  BleuStats& operator+=(const BleuStats& other);
};

struct BleuResult {
  double score = 0.0;
  std::vector<double> precisions;
  double brevity_penalty = 1.0;
  BleuStats stats;
};

// Candidate counts clip at the maximum count of the n-gram in any single
// reference; the effective reference length is the one closest to the
// hypothesis length, the shorter one on ties.
BleuStats bleu_stats(const EvalPair& pair, int max_n);

// 1 if c > r, else exp(1 - r/c); 0 for an empty candidate.
double brevity_penalty(double c, double r);

// Orders with no candidate n-grams at all (every sentence shorter than n)
// are left out and the remaining weights renormalized. Any zero precision
// makes the score 0 unless add_one is set.
BleuResult bleu_from_stats(const BleuStats& stats, const BleuOptions& options = {});

// Throws EmptyCorpus for an empty corpus, InputError for bad weights.
BleuResult bleu(const EvalCorpus& corpus, const BleuOptions& options = {});

}  // namespace smtkit

#endif  // SMTKIT_BLEU_H_

#ifndef SMTKIT_NIST_H_
#define SMTKIT_NIST_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smtkit/eval_pair.h"

namespace smtkit {

struct NistOptions {
  int max_n = 5;
};

// Information weights from n-gram counts over all reference sentences:
// info(w1..wn) = log2(count(w1..wn-1) / count(w1..wn)), with the total
// number of reference words standing in for the empty prefix.
class NistInfo {
 public:
  NistInfo(const EvalCorpus& corpus, int max_n);

  double info(const std::vector<std::string>& ngram) const;
  std::uint64_t count(const std::vector<std::string>& ngram) const;
  std::uint64_t reference_words() const { return reference_words_; }

 private:
  std::map<std::vector<std::string>, std::uint64_t> counts_;
  std::uint64_t reference_words_ = 0;
};

struct NistResult {
  double score = 0.0;
  std::vector<double> per_order;  // matched information / candidate n-grams
  double brevity_factor = 1.0;
  std::uint64_t hyp_length = 0;
  double ref_length = 0.0;  // sum over sentences of the mean reference length
};

// beta such that the brevity factor is 0.5 when c/r = 2/3.
double nist_beta();
// exp(beta * ln^2(min(c / r, 1))).
double nist_brevity_factor(double c, double r);

// Matches clip at the maximum count over references. Orders with no
// candidate n-grams contribute nothing. Throws EmptyCorpus.
NistResult nist(const EvalCorpus& corpus, const NistOptions& options = {});

}  // namespace smtkit

#endif  // SMTKIT_NIST_H_

#ifndef SMTKIT_MIXTURE_H_
#define SMTKIT_MIXTURE_H_

#include <vector>

#include "smtkit/ngram_model.h"

namespace smtkit {

// Component models over a shared union vocabulary. A model's <unk>
// probability is split evenly between <unk> and the union words it does not
// know, so every component stays normalized over the union.
class UnionView {
 public:
  explicit UnionView(const std::vector<const NGramModel*>& models);

  const LmVocab& vocab() const { return vocab_; }
  std::size_t size() const { return models_.size(); }
  // P_i(w | context) with context and w given as union ids.
  double prob(std::size_t i, const std::vector<WordId>& context, WordId w) const;

 private:
  std::vector<const NGramModel*> models_;
  LmVocab vocab_;
  std::vector<std::vector<WordId>> to_model_;  // union id -> model id (kUnk if unknown)
  std::vector<std::size_t> unknown_;            // union words the model lacks
};

// Linear interpolation materialized as a standalone back-off model over the
// union of the components' n-grams; stored probabilities are the weighted
// sums, backoff weights are recomputed so every history normalizes.
// Zero-weight components are dropped. Throws WeightError for negative weights,
// weights not summing to 1 within 1e-9 or a size mismatch.
NGramModel interpolate(const std::vector<const NGramModel*>& models,
                       const std::vector<double>& weights);

struct TuneResult {
  std::vector<double> weights;
  // log10 per token: the uniform start, then one value per iteration.
  std::vector<double> log_likelihood;
  int iterations = 0;
};

// EM on the per-token mixture over the dev corpus, starting from uniform
// weights; stops once the per-token log-likelihood gains less than 1e-6 or
// after 100 iterations.
TuneResult tune_weights(const std::vector<const NGramModel*>& models, const Sentences& dev,
                        unsigned jobs = 1);

}  // namespace smtkit

#endif  // SMTKIT_MIXTURE_H_

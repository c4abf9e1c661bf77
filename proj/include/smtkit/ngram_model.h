#ifndef SMTKIT_NGRAM_MODEL_H_
#define SMTKIT_NGRAM_MODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/ngram_counts.h"

namespace smtkit {

enum class Smoothing { kKneserNey, kWittenBell, kInterpolated, kUnspecified };

std::string_view to_string(Smoothing smoothing);
std::optional<Smoothing> parse_smoothing(std::string_view name);

// log10 value stored for <s> as a predicted word, which never happens.
inline constexpr double kLogZero = -99.0;

struct NGramEntry {
  double logprob = 0.0;  // log10 P(w | h)
  double backoff = 0.0;  // log10 backoff weight when this n-gram is a history
};

// Back-off n-gram model. Immutable after estimation, so concurrent queries
// are safe.
class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(int order, LmVocab vocab, Smoothing smoothing);

  int order() const { return static_cast<int>(tables_.size()); }
  const LmVocab& vocab() const { return vocab_; }
  Smoothing smoothing() const { return smoothing_; }
  // True when the unknown word has a unigram probability.
  bool has_unk() const;

  const NGramMap<NGramEntry>& table(int n) const { return tables_[n - 1]; }
  NGramMap<NGramEntry>& table(int n) { return tables_[n - 1]; }
  const NGramEntry* find(const NGram& g) const;

  // log10 P(w | context) through the back-off recursion; `context` holds the
  // preceding word ids, most recent last, and may be longer than needed.
  // -infinity when w has no unigram entry.
  double logprob(std::span<const WordId> context, WordId w) const;
  double prob(std::span<const WordId> context, WordId w) const;

  // Words the model can predict: everything in the vocabulary except <s>.
  std::vector<WordId> predictable() const;

  // Remarks from estimation (order reduction, clamped discounts).
  std::vector<std::string> notes;

 private:
  LmVocab vocab_;
  Smoothing smoothing_ = Smoothing::kUnspecified;
  std::vector<NGramMap<NGramEntry>> tables_;
};

struct PerplexityResult {
  double log10_total = 0.0;
  std::size_t tokens = 0;  // scored tokens, </s> included, <s> excluded
  std::size_t sentences = 0;
  std::size_t oov = 0;
  std::size_t zero_probability = 0;  // maximum-likelihood mode only
  double perplexity = 1.0;
};

// Unknown words map to <unk> and are scored when the model has it; otherwise
// they are skipped (and still counted in `oov`).
double sentence_logprob(const NGramModel& model, const std::vector<std::string>& words,
                        std::size_t* oov = nullptr, std::size_t* scored = nullptr);
PerplexityResult perplexity(const NGramModel& model, const Sentences& corpus);

// Unsmoothed evaluation from raw counts: the relative frequency c(hw)/c(h•)
// using the longest history observed in training. Zero-probability tokens
// are counted and left out of the total.
PerplexityResult perplexity_ml(const CountTable& counts, const Sentences& corpus);

}  // namespace smtkit

#endif  // SMTKIT_NGRAM_MODEL_H_

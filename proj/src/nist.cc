#include "smtkit/nist.h"

#include <algorithm>
#include <cmath>

#include "smtkit/error.h"

namespace smtkit {

namespace {

using Counts = std::map<std::vector<std::string>, std::uint64_t>;

Counts ngram_counts(const Tokens& words, int n) {
  Counts out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i)
    ++out[std::vector<std::string>(words.begin() + static_cast<std::ptrdiff_t>(i),
                                   words.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return out;
}

}  // namespace

NistInfo::NistInfo(const EvalCorpus& corpus, int max_n) {
  for (const auto& pair : corpus)
    for (const auto& ref : pair.references) {
      reference_words_ += ref.size();
      for (int n = 1; n <= max_n; ++n)
        for (const auto& [g, c] : ngram_counts(ref, n)) counts_[g] += c;
    }
}

std::uint64_t NistInfo::count(const std::vector<std::string>& ngram) const {
  const auto it = counts_.find(ngram);
  return it == counts_.end() ? 0 : it->second;
}

double NistInfo::info(const std::vector<std::string>& ngram) const {
  const std::uint64_t c = count(ngram);
  if (c == 0) return 0.0;
  const std::uint64_t prefix =
      ngram.size() == 1 ? reference_words_
                        : count(std::vector<std::string>(ngram.begin(), ngram.end() - 1));
  return std::log2(static_cast<double>(prefix) / static_cast<double>(c));
}

double nist_beta() {
  const double l = std::log(1.5);
  return std::log(0.5) / (l * l);
}

double nist_brevity_factor(double c, double r) {
  if (r <= 0.0) return 1.0;
  const double ratio = std::min(c / r, 1.0);
  if (ratio <= 0.0) return 0.0;
  const double l = std::log(ratio);
  return std::exp(nist_beta() * l * l);
}

NistResult nist(const EvalCorpus& corpus, const NistOptions& options) {
  if (corpus.empty()) throw EmptyCorpus();
  if (options.max_n < 1) throw InputError("NIST max n must be at least 1");
  const NistInfo info(corpus, options.max_n);
  std::vector<double> matched(options.max_n, 0.0);
  std::vector<std::uint64_t> totals(options.max_n, 0);
  NistResult result;
  for (const auto& pair : corpus) {
    result.hyp_length += pair.hypothesis.size();
    double ref_sum = 0.0;
    for (const auto& ref : pair.references) ref_sum += static_cast<double>(ref.size());
    if (!pair.references.empty()) result.ref_length += ref_sum / static_cast<double>(pair.references.size());
    for (int n = 1; n <= options.max_n; ++n) {
      Counts max_ref;
      for (const auto& ref : pair.references)
        for (const auto& [g, c] : ngram_counts(ref, n)) {
          auto& slot = max_ref[g];
          slot = std::max(slot, c);
        }
      for (const auto& [g, c] : ngram_counts(pair.hypothesis, n)) {
        totals[n - 1] += c;
        const auto it = max_ref.find(g);
        if (it != max_ref.end())
          matched[n - 1] += static_cast<double>(std::min(c, it->second)) * info.info(g);
      }
    }
  }
  double sum = 0.0;
  for (int n = 0; n < options.max_n; ++n) {
    const double v = totals[n] == 0 ? 0.0 : matched[n] / static_cast<double>(totals[n]);
    result.per_order.push_back(v);
    sum += v;
  }
  result.brevity_factor =
      nist_brevity_factor(static_cast<double>(result.hyp_length), result.ref_length);
  result.score = sum * result.brevity_factor;
  return result;
}

}  // namespace smtkit

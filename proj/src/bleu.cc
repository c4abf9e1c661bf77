#include "smtkit/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "smtkit/error.h"

namespace smtkit {

namespace {

using Counts = std::map<std::vector<std::string>, std::uint64_t>;

Counts ngram_counts(const Tokens& words, int n) {
  Counts out;
  const auto len = static_cast<std::ptrdiff_t>(n);
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i)
    ++out[std::vector<std::string>(words.begin() + static_cast<std::ptrdiff_t>(i),
                                   words.begin() + static_cast<std::ptrdiff_t>(i) + len)];
  return out;
}

std::vector<double> resolve_weights(const BleuOptions& options) {
  if (options.max_n < 1) throw InputError("BLEU max n must be at least 1");
  if (options.weights.empty())
    return std::vector<double>(options.max_n, 1.0 / options.max_n);
  if (static_cast<int>(options.weights.size()) != options.max_n)
    throw InputError("BLEU needs one weight per n-gram order");
  double sum = 0.0;
  for (double w : options.weights) {
    if (!(w > 0.0)) throw InputError("BLEU weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("BLEU weights must sum to 1");
  return options.weights;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (matches.size() < other.matches.size()) {
    matches.resize(other.matches.size());
    totals.resize(other.totals.size());
  }
  for (std::size_t n = 0; n < other.matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats bleu_stats(const EvalPair& pair, int max_n) {
  BleuStats s;
  s.matches.assign(max_n, 0);
  s.totals.assign(max_n, 0);
  s.hyp_length = pair.hypothesis.size();
  for (int n = 1; n <= max_n; ++n) {
    Counts max_ref;
    for (const auto& ref : pair.references)
      for (const auto& [g, c] : ngram_counts(ref, n)) {
        auto& slot = max_ref[g];
        slot = std::max(slot, c);
      }
    for (const auto& [g, c] : ngram_counts(pair.hypothesis, n)) {
      s.totals[n - 1] += c;
      const auto it = max_ref.find(g);
      if (it != max_ref.end()) s.matches[n - 1] += std::min(c, it->second);
    }
  }
  bool first = true;
  for (const auto& ref : pair.references) {
    const std::uint64_t len = ref.size();
    const auto diff = [&](std::uint64_t r) {
      return r > s.hyp_length ? r - s.hyp_length : s.hyp_length - r;
    };
    if (first || diff(len) < diff(s.ref_length) ||
        (diff(len) == diff(s.ref_length) && len < s.ref_length))
      s.ref_length = len;
    first = false;
  }
  return s;
}

double brevity_penalty(double c, double r) {
  if (c > r) return 1.0;
  if (c <= 0.0) return 0.0;
  return std::exp(1.0 - r / c);
}

BleuResult bleu_from_stats(const BleuStats& stats, const BleuOptions& options) {
  const std::vector<double> weights = resolve_weights(options);
  BleuResult result;
  result.stats = stats;
  result.brevity_penalty =
      brevity_penalty(static_cast<double>(stats.hyp_length), static_cast<double>(stats.ref_length));
  if (stats.hyp_length == 0) {
    result.precisions.assign(options.max_n, 0.0);
    result.score = stats.ref_length == 0 ? 1.0 : 0.0;
    return result;
  }
  double log_sum = 0.0;
  double weight_used = 0.0;
  bool zero = false;
  for (int n = 1; n <= options.max_n; ++n) {
    const std::size_t k = static_cast<std::size_t>(n - 1);
    const double m = k < stats.matches.size() ? static_cast<double>(stats.matches[k]) : 0.0;
    const double t = k < stats.totals.size() ? static_cast<double>(stats.totals[k]) : 0.0;
    if (t == 0.0) {
      result.precisions.push_back(0.0);
      continue;
    }
    const bool smooth = options.add_one && n > 1;
    const double p = smooth ? (m + 1.0) / (t + 1.0) : m / t;
    result.precisions.push_back(p);
    if (p == 0.0) {
      zero = true;
      continue;
    }
    log_sum += weights[k] * std::log(p);
    weight_used += weights[k];
  }
  if (zero || weight_used == 0.0) {
    result.score = 0.0;
    return result;
  }
  result.score = result.brevity_penalty * std::exp(log_sum / weight_used);
  return result;
}

BleuResult bleu(const EvalCorpus& corpus, const BleuOptions& options) {
  if (corpus.empty()) throw EmptyCorpus();
  resolve_weights(options);
  BleuStats total;
  total.matches.assign(options.max_n, 0);
  total.totals.assign(options.max_n, 0);
  for (const auto& pair : corpus) total += bleu_stats(pair, options.max_n);
  return bleu_from_stats(total, options);
}

}  // namespace smtkit

#include "smtkit/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smtkit {

std::string_view to_string(Smoothing smoothing) {
  switch (smoothing) {
    case Smoothing::kKneserNey: return "kneser-ney-interpolated";
    case Smoothing::kWittenBell: return "witten-bell";
    case Smoothing::kInterpolated: return "linear-interpolation";
    case Smoothing::kUnspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<Smoothing> parse_smoothing(std::string_view name) {
  if (name == "kn" || name == "kneser-ney" || name == "kneser-ney-interpolated")
    return Smoothing::kKneserNey;
  if (name == "wb" || name == "witten-bell") return Smoothing::kWittenBell;
  if (name == "linear-interpolation") return Smoothing::kInterpolated;
  if (name == "unspecified") return Smoothing::kUnspecified;
  return std::nullopt;
}

NGramModel::NGramModel(int order, LmVocab vocab, Smoothing smoothing)
    : vocab_(std::move(vocab)), smoothing_(smoothing), tables_(order) {}

bool NGramModel::has_unk() const {
  return !tables_.empty() && tables_[0].count(NGram{LmVocab::kUnk}) > 0;
}

const NGramEntry* NGramModel::find(const NGram& g) const {
  if (g.empty() || g.size() > tables_.size()) return nullptr;
  const auto& t = tables_[g.size() - 1];
  const auto it = t.find(g);
  return it == t.end() ? nullptr : &it->second;
}

double NGramModel::logprob(std::span<const WordId> context, WordId w) const {
  if (tables_.empty()) return -std::numeric_limits<double>::infinity();
  const std::size_t max_hist = std::min(context.size(), tables_.size() - 1);
  double backoff = 0.0;
  NGram key;
  for (std::size_t h = max_hist + 1; h-- > 0;) {
    key.assign(context.end() - static_cast<std::ptrdiff_t>(h), context.end());
    key.push_back(w);
    if (const NGramEntry* e = find(key)) return backoff + e->logprob;
    if (h > 0) {
      key.pop_back();
      if (const NGramEntry* hist = find(key)) backoff += hist->backoff;
    }
  }
  return -std::numeric_limits<double>::infinity();
}

double NGramModel::prob(std::span<const WordId> context, WordId w) const {
  return std::pow(10.0, logprob(context, w));
}

std::vector<WordId> NGramModel::predictable() const {
  std::vector<WordId> out;
  out.reserve(vocab_.size());
  for (WordId w = 0; w < vocab_.size(); ++w)
    if (w != LmVocab::kBos) out.push_back(w);
  return out;
}

double sentence_logprob(const NGramModel& model, const std::vector<std::string>& words,
                        std::size_t* oov, std::size_t* scored) {
  const bool unk = model.has_unk();
  std::vector<WordId> context{LmVocab::kBos};
  double total = 0.0;
  auto score = [&](WordId w) {
    total += model.logprob(context, w);
    if (scored) ++*scored;
  };
  for (std::size_t i = 0; i <= words.size(); ++i) {
    WordId w = LmVocab::kEos;
    if (i < words.size()) {
      const auto id = model.vocab().find(words[i]);
      if (!id || *id == LmVocab::kBos || *id == LmVocab::kEos) {
        if (oov) ++*oov;
        w = LmVocab::kUnk;
        if (unk) score(w);
      } else {
        w = *id;
        score(w);
      }
    } else {
      score(w);
    }
    context.push_back(w);
  }
  return total;
}

namespace {

void finish(PerplexityResult& r) {
  r.perplexity = r.tokens == 0 ? 1.0 : std::pow(10.0, -r.log10_total / static_cast<double>(r.tokens));
}

}  // namespace

PerplexityResult perplexity(const NGramModel& model, const Sentences& corpus) {
  PerplexityResult r;
  for (const auto& s : corpus) {
    r.log10_total += sentence_logprob(model, s, &r.oov, &r.tokens);
    ++r.sentences;
  }
  finish(r);
  return r;
}

PerplexityResult perplexity_ml(const CountTable& counts, const Sentences& corpus) {
  const int order = counts.order();
  // history_total[n - 1][h] = sum over v of c(h v) for n-grams of length n.
  std::vector<NGramMap<std::uint64_t>> history_total(order);
  std::uint64_t unigram_total = 0;
  for (const auto& [g, c] : counts.at(1)) unigram_total += c;
  for (int n = 2; n <= order; ++n)
    for (const auto& [g, c] : counts.at(n)) history_total[n - 1][NGram(g.begin(), g.end() - 1)] += c;

  PerplexityResult r;
  for (const auto& words : corpus) {
    ++r.sentences;
    NGram padded{LmVocab::kBos};
    for (const auto& w : words) {
      const auto id = counts.vocab().find(w);
      if (!id || *id == LmVocab::kBos || *id == LmVocab::kEos) {
        ++r.oov;
        padded.push_back(LmVocab::kUnk);
      } else {
        padded.push_back(*id);
      }
    }
    padded.push_back(LmVocab::kEos);
    for (std::size_t pos = 1; pos < padded.size(); ++pos) {
      double p = 0.0;
      const int longest = std::min<int>(order, static_cast<int>(pos) + 1);
      for (int n = longest; n >= 1; --n) {
        const NGram g(padded.begin() + static_cast<std::ptrdiff_t>(pos + 1 - n),
                      padded.begin() + static_cast<std::ptrdiff_t>(pos + 1));
        std::uint64_t total = unigram_total;
        if (n > 1) {
          const auto it = history_total[n - 1].find(NGram(g.begin(), g.end() - 1));
          if (it == history_total[n - 1].end()) continue;
          total = it->second;
        }
        if (total > 0) p = static_cast<double>(counts.count(g)) / static_cast<double>(total);
        break;
      }
      if (p > 0.0) {
        r.log10_total += std::log10(p);
        ++r.tokens;
      } else {
        ++r.zero_probability;
      }
    }
  }
  finish(r);
  return r;
}

}  // namespace smtkit

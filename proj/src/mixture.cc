#include "smtkit/mixture.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "smtkit/error.h"
#include "smtkit/parallel.h"

namespace smtkit {

UnionView::UnionView(const std::vector<const NGramModel*>& models) : models_(models) {
  for (const NGramModel* m : models_)
    for (WordId w = 0; w < m->vocab().size(); ++w) vocab_.add(m->vocab().word(w));
  to_model_.resize(models_.size());
  unknown_.assign(models_.size(), 0);
  for (std::size_t i = 0; i < models_.size(); ++i) {
    auto& map = to_model_[i];
    map.resize(vocab_.size(), LmVocab::kUnk);
    for (WordId u = 0; u < vocab_.size(); ++u) {
      const auto id = models_[i]->vocab().find(vocab_.word(u));
      if (id) {
        map[u] = *id;
      } else {
        ++unknown_[i];
      }
    }
  }
}

double UnionView::prob(std::size_t i, const std::vector<WordId>& context, WordId w) const {
  const auto& map = to_model_[i];
  std::vector<WordId> ctx;
  ctx.reserve(context.size());
  for (WordId u : context) ctx.push_back(map[u]);
  const WordId mw = map[w];
  if (mw == LmVocab::kUnk)
    return models_[i]->prob(ctx, LmVocab::kUnk) / static_cast<double>(unknown_[i] + 1);
  return models_[i]->prob(ctx, mw);
}

namespace {

void check_weights(const std::vector<const NGramModel*>& models, const std::vector<double>& weights) {
  if (models.empty()) throw WeightError("no models to interpolate");
  if (models.size() != weights.size())
    throw WeightError(fmt::format("{} models but {} weights", models.size(), weights.size()));
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw WeightError(fmt::format("negative weight {}", w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw WeightError(fmt::format("weights sum to {}, not 1", sum));
}

}  // namespace

NGramModel interpolate(const std::vector<const NGramModel*>& models,
                       const std::vector<double>& weights) {
  check_weights(models, weights);
  std::vector<const NGramModel*> kept;
  std::vector<double> w;
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (weights[i] > 0.0) {
      kept.push_back(models[i]);
      w.push_back(weights[i]);
    } else {
      notes.push_back(fmt::format("component {} dropped (zero weight)", i));
    }
  }
  const UnionView view(kept);
  int order = 0;
  for (const NGramModel* m : kept) order = std::max(order, m->order());

  // Union of stored n-grams in union ids, closed under taking prefixes so
  // every history has an entry to hold its backoff weight.
  std::vector<std::set<NGram>> events(order);
  for (const NGramModel* m : kept) {
    for (int n = 1; n <= m->order(); ++n) {
      for (const auto& [g, e] : m->table(n)) {
        NGram u;
        for (WordId id : g) u.push_back(*view.vocab().find(m->vocab().word(id)));
        events[n - 1].insert(std::move(u));
      }
    }
  }
  for (WordId u = 0; u < view.vocab().size(); ++u) events[0].insert(NGram{u});
  for (int n = order; n >= 2; --n)
    for (const auto& g : events[n - 1]) events[n - 2].insert(NGram(g.begin(), g.end() - 1));

  NGramModel out(order, view.vocab(), Smoothing::kInterpolated);
  out.notes = std::move(notes);
  auto mix = [&](const NGram& g) {
    const std::vector<WordId> h(g.begin(), g.end() - 1);
    double p = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) p += w[i] * view.prob(i, h, g.back());
    return p;
  };

  // Unigrams, renormalized over the predictable words.
  std::vector<std::pair<WordId, double>> uni;
  double total = 0.0;
  for (const auto& g : events[0]) {
    if (g[0] == LmVocab::kBos) continue;
    const double p = mix(g);
    uni.emplace_back(g[0], p);
    total += p;
  }
  for (const auto& [u, p] : uni) out.table(1)[NGram{u}].logprob = std::log10(p / total);
  out.table(1)[NGram{LmVocab::kBos}].logprob = kLogZero;

  for (int n = 2; n <= order; ++n) {
    auto& table = out.table(n);
    // Sums per history of the stored mixture probabilities and of the lower
    // order's probabilities for the same words.
    NGramMap<std::pair<double, double>> sums;
    for (const auto& g : events[n - 1]) {
      const double p = mix(g);
      table[g].logprob = std::log10(p);
      const NGram h(g.begin(), g.end() - 1);
      const std::vector<WordId> lower_ctx(h.begin() + 1, h.end());
      auto& s = sums[h];
      s.first += p;
      s.second += out.prob(lower_ctx, g.back());
    }
    auto& hist_table = out.table(n - 1);
    for (const auto& [h, s] : sums) {
      const double num = std::max(1.0 - s.first, 0.0);
      const double den = 1.0 - s.second;
      double bow = 0.0;
      if (den > 1e-12) bow = num > 0.0 ? std::log10(num / den) : kLogZero;
      hist_table.at(h).backoff = bow;
    }
  }
  return out;
}

TuneResult tune_weights(const std::vector<const NGramModel*>& models, const Sentences& dev,
                        unsigned jobs) {
  if (models.empty()) throw WeightError("no models to tune");
  const std::size_t k = models.size();
  TuneResult result;
  result.weights.assign(k, 1.0 / static_cast<double>(k));
  if (k == 1) return result;

  const UnionView view(models);
  // Per sentence, per token, per model probabilities.
  std::vector<std::vector<std::vector<double>>> probs(dev.size());
  parallel_for(dev.size(), jobs, [&](std::size_t s) {
    std::vector<WordId> context{LmVocab::kBos};
    for (std::size_t t = 0; t <= dev[s].size(); ++t) {
      WordId u = LmVocab::kEos;
      if (t < dev[s].size()) {
        u = view.vocab().lookup(dev[s][t]);
        if (u == LmVocab::kBos || u == LmVocab::kEos) u = LmVocab::kUnk;
      }
      std::vector<double> p(k);
      for (std::size_t i = 0; i < k; ++i) p[i] = view.prob(i, context, u);
      probs[s].push_back(std::move(p));
      context.push_back(u);
    }
  });

  auto log_likelihood = [&](const std::vector<double>& w) {
    double ll = 0.0;
    std::size_t n = 0;
    for (const auto& sentence : probs)
      for (const auto& p : sentence) {
        double mix = 0.0;
        for (std::size_t i = 0; i < k; ++i) mix += w[i] * p[i];
        if (mix <= 0.0) continue;
        ll += std::log10(mix);
        ++n;
      }
    return n == 0 ? 0.0 : ll / static_cast<double>(n);
  };

  double current = log_likelihood(result.weights);
  result.log_likelihood.push_back(current);
  for (int it = 0; it < 100; ++it) {
    std::vector<double> posterior(k, 0.0);
    std::size_t n = 0;
    for (const auto& sentence : probs)
      for (const auto& p : sentence) {
        double mix = 0.0;
        for (std::size_t i = 0; i < k; ++i) mix += result.weights[i] * p[i];
        if (mix <= 0.0) continue;
        for (std::size_t i = 0; i < k; ++i) posterior[i] += result.weights[i] * p[i] / mix;
        ++n;
      }
    if (n == 0) break;
    for (auto& x : posterior) x /= static_cast<double>(n);
    const double next = log_likelihood(posterior);
    result.weights = std::move(posterior);
    result.log_likelihood.push_back(next);
    result.iterations = it + 1;
    const double gain = next - current;
    current = next;
    if (gain < 1e-6) break;
  }
  return result;
}

}  // namespace smtkit

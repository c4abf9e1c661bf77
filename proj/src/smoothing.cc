#include "smtkit/smoothing.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "smtkit/error.h"

namespace smtkit {

namespace {

int effective_order(const CountTable& counts, std::vector<std::string>& notes) {
  if (counts.empty()) throw DegenerateCounts("no n-gram events to estimate from");
  int n = counts.order();
  while (n > 1 && counts.at(n).empty()) --n;
  if (n < counts.order())
    notes.push_back(fmt::format("order reduced from {} to {}: no {}-gram events", counts.order(), n,
                                counts.order()));
  return n;
}

struct HistoryStats {
  double total = 0.0;      // sum of (adjusted) counts of h v
  std::uint64_t types = 0;  // number of v with h v observed
};

NGramMap<HistoryStats> history_stats(const NGramMap<std::uint64_t>& counts) {
  NGramMap<HistoryStats> out;
  for (const auto& [g, c] : counts) {
    auto& s = out[NGram(g.begin(), g.end() - 1)];
    s.total += static_cast<double>(c);
    ++s.types;
  }
  return out;
}

// Shared estimation skeleton. `mass(c, stats)` is the discounted or scaled
// count share of an observed event, `gamma(stats)` the weight left for the
// lower order; both are already divided by the normalizer.
template <class Mass, class Gamma>
NGramModel build(const CountTable& counts, int order,
                 const std::vector<NGramMap<std::uint64_t>>& used, Smoothing smoothing,
                 std::vector<std::string> notes, Mass mass, Gamma gamma) {
  NGramModel model(order, counts.vocab(), smoothing);
  model.notes = std::move(notes);
  const auto predictable = model.predictable();
  const double uniform = 1.0 / static_cast<double>(predictable.size());

  std::vector<NGramMap<double>> prob(order);
  for (int n = 1; n <= order; ++n) {
    const auto stats = history_stats(used[n - 1]);
    if (n == 1) {
      const HistoryStats& s = stats.at(NGram{});
      const double g = gamma(1, s);
      for (WordId w : predictable) {
        const auto it = used[0].find(NGram{w});
        const double seen = it == used[0].end() ? 0.0 : mass(1, it->second, s);
        prob[0][NGram{w}] = seen + g * uniform;
      }
    } else {
      for (const auto& [g, c] : used[n - 1]) {
        const HistoryStats& s = stats.at(NGram(g.begin(), g.end() - 1));
        const double lower = prob[n - 2].at(NGram(g.begin() + 1, g.end()));
        prob[n - 1][g] = mass(n, c, s) + gamma(n, s) * lower;
      }
    }
    auto& table = model.table(n);
    for (const auto& [g, p] : prob[n - 1]) table[g].logprob = std::log10(p);
    if (n == 1) table[NGram{LmVocab::kBos}].logprob = kLogZero;
    // Backoff weights belong to the histories one order down.
    if (n > 1) {
      auto& hist_table = model.table(n - 1);
      for (const auto& [h, s] : stats) {
        const auto it = hist_table.find(h);
        if (it == hist_table.end())
          throw std::logic_error("history missing from lower-order table");
        it->second.backoff = std::log10(gamma(n, s));
      }
    }
  }
  return model;
}

}  // namespace

Discount kneser_ney_discount(std::uint64_t n1, std::uint64_t n2, double epsilon) {
  Discount d{0.0, n1, n2, false};
  if (n1 + n2 == 0) {
    d.value = epsilon;
    d.clamped = true;
    return d;
  }
  d.value = static_cast<double>(n1) / (static_cast<double>(n1) + 2.0 * static_cast<double>(n2));
  if (d.value < epsilon) {
    d.value = epsilon;
    d.clamped = true;
  } else if (d.value > 1.0 - epsilon) {
    d.value = 1.0 - epsilon;
    d.clamped = true;
  }
  return d;
}

std::vector<NGramMap<std::uint64_t>> kneser_ney_counts(const CountTable& counts, int order) {
  std::vector<NGramMap<std::uint64_t>> adjusted(order);
  adjusted[order - 1] = counts.at(order);
  for (int n = order - 1; n >= 1; --n) {
    NGramMap<std::uint64_t> continuation;
    for (const auto& [g, c] : counts.at(n + 1)) ++continuation[NGram(g.begin() + 1, g.end())];
    for (const auto& [g, c] : counts.at(n)) {
      if (g.front() == LmVocab::kBos) {
        adjusted[n - 1][g] = c;
      } else {
        const auto it = continuation.find(g);
        adjusted[n - 1][g] = it == continuation.end() ? 0 : it->second;
      }
    }
  }
  return adjusted;
}

NGramModel estimate_kneser_ney(const CountTable& counts, const KneserNeyOptions& options,
                               std::vector<Discount>* discounts) {
  std::vector<std::string> notes;
  const int order = effective_order(counts, notes);
  const auto adjusted = kneser_ney_counts(counts, order);

  std::vector<Discount> d(order);
  for (int n = 1; n <= order; ++n) {
    std::uint64_t n1 = 0, n2 = 0;
    for (const auto& [g, a] : adjusted[n - 1]) {
      if (a == 1) ++n1;
      if (a == 2) ++n2;
    }
    d[n - 1] = kneser_ney_discount(n1, n2, options.epsilon);
    if (d[n - 1].clamped)
      notes.push_back(fmt::format("order-{} discount clamped to {} (n1={}, n2={})", n,
                                  d[n - 1].value, n1, n2));
  }
  if (discounts) *discounts = d;

  auto mass = [&](int n, std::uint64_t a, const HistoryStats& s) {
    const double D = d[n - 1].value;
    return std::max(static_cast<double>(a) - D, 0.0) / s.total;
  };
  auto gamma = [&](int n, const HistoryStats& s) {
    return d[n - 1].value * static_cast<double>(s.types) / s.total;
  };
  return build(counts, order, adjusted, Smoothing::kKneserNey, std::move(notes), mass, gamma);
}

NGramModel estimate_witten_bell(const CountTable& counts) {
  std::vector<std::string> notes;
  const int order = effective_order(counts, notes);
  std::vector<NGramMap<std::uint64_t>> raw(order);
  for (int n = 1; n <= order; ++n) raw[n - 1] = counts.at(n);

  auto mass = [](int, std::uint64_t c, const HistoryStats& s) {
    return static_cast<double>(c) / (s.total + static_cast<double>(s.types));
  };
  auto gamma = [](int, const HistoryStats& s) {
    const double t = static_cast<double>(s.types);
    return t / (s.total + t);
  };
  return build(counts, order, raw, Smoothing::kWittenBell, std::move(notes), mass, gamma);
}

NGramModel estimate(const CountTable& counts, Smoothing smoothing) {
  switch (smoothing) {
    case Smoothing::kKneserNey: return estimate_kneser_ney(counts);
    case Smoothing::kWittenBell: return estimate_witten_bell(counts);
    default: throw std::invalid_argument("only Kneser-Ney and Witten-Bell can be estimated");
  }
}

}  // namespace smtkit

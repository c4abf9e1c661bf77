#ifndef SMTKIT_SMOOTHING_H_
#define SMTKIT_SMOOTHING_H_

#include <cstdint>
#include <vector>

#include "smtkit/ngram_counts.h"
#include "smtkit/ngram_model.h"

namespace smtkit {

struct KneserNeyOptions {
  // Discounts are clamped to [epsilon, 1 - epsilon].
  double epsilon = 1e-3;
};

struct Discount {
  double value = 0.0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  bool clamped = false;
};

// D = n1 / (n1 + 2 n2), clamped; 0/0 yields epsilon.
Discount kneser_ney_discount(std::uint64_t n1, std::uint64_t n2, double epsilon);

// Adjusted counts used by Kneser-Ney: raw counts at the highest order and for
// n-grams starting with <s>, left-continuation counts N1+(. g) otherwise.
// Index n - 1 holds n-grams of length n.
std::vector<NGramMap<std::uint64_t>> kneser_ney_counts(const CountTable& counts, int order);

// Interpolated Kneser-Ney with one discount per order. The lowest order
// interpolates with the uniform distribution over the predictable vocabulary,
// which is how <unk> receives mass. If the highest orders have no events the
// order is reduced and a note is recorded; throws DegenerateCounts when there
// are no events at all.
NGramModel estimate_kneser_ney(const CountTable& counts, const KneserNeyOptions& options = {},
                               std::vector<Discount>* discounts = nullptr);

// Interpolated Witten-Bell on raw counts:
// P(w|h) = (c(hw) + T(h) P(w|h')) / (c(h) + T(h)).
NGramModel estimate_witten_bell(const CountTable& counts);

NGramModel estimate(const CountTable& counts, Smoothing smoothing);

}  // namespace smtkit

#endif  // SMTKIT_SMOOTHING_H_

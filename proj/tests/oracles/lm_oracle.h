#ifndef SMTKIT_TESTS_ORACLES_LM_ORACLE_H_
#define SMTKIT_TESTS_ORACLES_LM_ORACLE_H_

// Direct evaluation of the interpolated Kneser-Ney and Witten-Bell equations
// from raw sentences. Shares nothing with the library: counts are recomputed
// over strings and every probability is evaluated by plain recursion.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace smtkit::oracle {

using Words = std::vector<std::string>;

class SmoothedLm {
 public:
  enum class Kind { kKneserNey, kWittenBell };

  SmoothedLm(const std::vector<Words>& sentences, int order, Kind kind, double epsilon = 1e-3)
      : kind_(kind) {
    raw_.resize(order + 1);
    vocab_.insert("<unk>");
    vocab_.insert("</s>");
    for (const auto& s : sentences) {
      Words padded{"<s>"};
      padded.insert(padded.end(), s.begin(), s.end());
      padded.push_back("</s>");
      for (const auto& w : s) vocab_.insert(w);
      for (int n = 1; n <= order; ++n)
        for (std::size_t i = 0; i + n <= padded.size(); ++i) {
          Words g(padded.begin() + i, padded.begin() + i + n);
          if (n == 1 && g[0] == "<s>") continue;
          ++raw_[n][g];
        }
    }
    order_ = order;
    while (order_ > 1 && raw_[order_].empty()) --order_;

    used_.resize(order_ + 1);
    for (int n = 1; n <= order_; ++n) {
      for (const auto& [g, c] : raw_[n]) {
        if (kind_ == Kind::kWittenBell || n == order_ || g[0] == "<s>") {
          used_[n][g] = c;
        } else {
          // Distinct left neighbours among the (n+1)-grams.
          std::set<std::string> left;
          for (const auto& [h, hc] : raw_[n + 1])
            if (std::equal(g.begin(), g.end(), h.begin() + 1)) left.insert(h[0]);
          used_[n][g] = left.size();
        }
      }
    }
    if (kind_ == Kind::kKneserNey) {
      discount_.assign(order_ + 1, 0.0);
      for (int n = 1; n <= order_; ++n) {
        double n1 = 0, n2 = 0;
        for (const auto& [g, a] : used_[n]) {
          if (a == 1) ++n1;
          if (a == 2) ++n2;
        }
        double d = n1 + n2 == 0 ? epsilon : n1 / (n1 + 2 * n2);
        discount_[n] = std::clamp(d, epsilon, 1.0 - epsilon);
      }
    }
  }

  int order() const { return order_; }
  double discount(int n) const { return discount_.at(n); }
  // Every word that can be predicted.
  std::vector<std::string> predictable() const { return {vocab_.begin(), vocab_.end()}; }

  // Histories (length order-1 or shorter) that occur before some word.
  std::set<Words> histories() const {
    std::set<Words> out;
    for (int n = 1; n <= order_; ++n)
      for (const auto& [g, c] : raw_[n]) out.insert(Words(g.begin(), g.end() - 1));
    return out;
  }

  // P(w | h), h truncated to the model order.
  double prob(Words h, const std::string& w) const {
    while (static_cast<int>(h.size()) > order_ - 1) h.erase(h.begin());
    const int n = static_cast<int>(h.size()) + 1;
    double total = 0, types = 0, own = 0;
    for (const auto& [g, c] : used_[n]) {
      if (!std::equal(h.begin(), h.end(), g.begin())) continue;
      total += static_cast<double>(c);
      types += 1;
      if (g.back() == w) own = static_cast<double>(c);
    }
    double lower;
    if (n == 1)
      lower = 1.0 / static_cast<double>(vocab_.size());
    else
      lower = prob(Words(h.begin() + 1, h.end()), w);
    if (types == 0) return lower;
    if (kind_ == Kind::kKneserNey) {
      const double d = discount_[n];
      return std::max(own - d, 0.0) / total + d * types / total * lower;
    }
    return (own + types * lower) / (total + types);
  }

 private:
  Kind kind_;
  int order_ = 0;
  std::set<std::string> vocab_;
  std::vector<std::map<Words, std::uint64_t>> raw_;
  std::vector<std::map<Words, std::uint64_t>> used_;
  std::vector<double> discount_;
};

}  // namespace smtkit::oracle

#endif  // SMTKIT_TESTS_ORACLES_LM_ORACLE_H_

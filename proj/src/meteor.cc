#include "smtkit/meteor.h"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <unordered_map>

#include "smtkit/error.h"
#include "smtkit/parallel.h"

namespace smtkit {

std::size_t count_chunks(const MeteorAlignment& links) {
  std::size_t chunks = 0;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (k == 0 || links[k].first != links[k - 1].first + 1 ||
        links[k].second != links[k - 1].second + 1)
      ++chunks;
  }
  return chunks;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct StageInput {
  std::vector<std::size_t> fixed;                  // per hyp position, kNone if free
  std::vector<std::vector<std::size_t>> candidates;  // per free hyp position
};

struct BudgetExceeded {};

// Exact search over one stage. The memo key is (position, reference index of
// the link at position - 1, set of references used in this stage), reduced
// to what the remaining positions can observe: the used set restricted to
// references still wanted later, and the previous link only when it can
// extend a chunk at this position.
class StageSearch {
 public:
  StageSearch(const StageInput& in, std::size_t ref_len, std::size_t budget)
      : in_(in), budget_(budget), bit_of_(ref_len, kNone) {
    for (const auto& c : in_.candidates)
      for (std::size_t j : c)
        if (bit_of_[j] == kNone) bit_of_[j] = bits_++;
    words_ = (bits_ + 63) / 64;
    const std::size_t n = in_.fixed.size();
    future_.assign(n + 1, std::vector<std::uint64_t>(words_, 0));
    for (std::size_t i = n; i-- > 0;) {
      future_[i] = future_[i + 1];
      for (std::size_t j : in_.candidates[i]) set(future_[i], j);
    }
  }

  // Returns the chosen reference index per hyp position (kNone for none).
  std::vector<std::size_t> solve() {
    std::vector<std::uint64_t> mask(words_, 0);
    best(0, kNone, mask);
    std::vector<std::size_t> choice(in_.fixed.size(), kNone);
    std::size_t prev = kNone;
    for (std::size_t i = 0; i < in_.fixed.size(); ++i) {
      const std::size_t j = memo_.at(key(i, prev, mask)).choice;
      choice[i] = j;
      if (j != kNone && in_.fixed[i] == kNone) set(mask, j);
      prev = j;
    }
    return choice;
  }

 private:
  struct Value {
    std::size_t matches = 0;
    std::size_t chunks = 0;
    std::size_t choice = kNone;
  };

  static bool better(std::size_t m1, std::size_t c1, std::size_t m2, std::size_t c2) {
    return m1 > m2 || (m1 == m2 && c1 < c2);
  }

  bool continues(std::size_t i, std::size_t prev) const {
    if (prev == kNone || i >= in_.fixed.size()) return false;
    if (in_.fixed[i] != kNone) return in_.fixed[i] == prev + 1;
    const auto& c = in_.candidates[i];
    return std::find(c.begin(), c.end(), prev + 1) != c.end();
  }

  std::string key(std::size_t i, std::size_t prev, const std::vector<std::uint64_t>& mask) const {
    if (!continues(i, prev)) prev = kNone;
    std::string k(sizeof(std::size_t) * 2 + sizeof(std::uint64_t) * mask.size(), '\0');
    char* p = k.data();
    std::memcpy(p, &i, sizeof i);
    std::memcpy(p + sizeof i, &prev, sizeof prev);
    p += 2 * sizeof i;
    for (std::size_t w = 0; w < mask.size(); ++w) {
      const std::uint64_t v = mask[w] & future_[i][w];
      std::memcpy(p + w * sizeof v, &v, sizeof v);
    }
    return k;
  }

  bool used(const std::vector<std::uint64_t>& mask, std::size_t j) const {
    const std::size_t b = bit_of_[j];
    return (mask[b / 64] >> (b % 64)) & 1u;
  }
  void set(std::vector<std::uint64_t>& mask, std::size_t j) const {
    const std::size_t b = bit_of_[j];
    mask[b / 64] |= std::uint64_t{1} << (b % 64);
  }

  static std::size_t cost(std::size_t prev, std::size_t j) {
    return prev != kNone && j == prev + 1 ? 0 : 1;
  }

  const Value& best(std::size_t i, std::size_t prev, std::vector<std::uint64_t>& mask) {
    std::string k = key(i, prev, mask);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_) throw BudgetExceeded{};
    Value v;
    if (i < in_.fixed.size()) {
      if (in_.fixed[i] != kNone) {
        const std::size_t j = in_.fixed[i];
        const Value& rest = best(i + 1, j, mask);
        v = {rest.matches, rest.chunks + cost(prev, j), j};
      } else {
        const Value& skip = best(i + 1, kNone, mask);
        v = {skip.matches, skip.chunks, kNone};
        for (std::size_t j : in_.candidates[i]) {
          if (used(mask, j)) continue;
          set(mask, j);
          const Value rest = best(i + 1, j, mask);
          const std::size_t b = bit_of_[j];
          mask[b / 64] &= ~(std::uint64_t{1} << (b % 64));
          const std::size_t m = rest.matches + 1;
          const std::size_t c = rest.chunks + cost(prev, j);
          if (better(m, c, v.matches, v.chunks)) v = {m, c, j};
        }
      }
    }
    return memo_.emplace(std::move(k), v).first->second;
  }

  const StageInput& in_;
  std::size_t budget_;
  std::vector<std::size_t> bit_of_;
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> future_;  // references wanted at or after i
  std::unordered_map<std::string, Value> memo_;
};

std::vector<std::size_t> greedy_stage(const StageInput& in) {
  std::vector<std::size_t> choice(in.fixed.size(), kNone);
  std::vector<bool> taken;
  std::size_t prev = kNone;
  for (std::size_t i = 0; i < in.fixed.size(); ++i) {
    std::size_t j = in.fixed[i];
    if (j == kNone) {
      for (std::size_t c : in.candidates[i]) {
        if (c < taken.size() && taken[c]) continue;
        if (j == kNone || (prev != kNone && c == prev + 1)) j = c;
      }
      if (j != kNone) {
        if (taken.size() <= j) taken.resize(j + 1, false);
        taken[j] = true;
      }
    }
    choice[i] = j;
    prev = j;
  }
  return choice;
}

bool synonyms_match(const SynonymTable& table, const std::string& a, const std::string& b) {
  const auto ia = table.find(a);
  const auto ib = table.find(b);
  if (ia == table.end() || ib == table.end()) return false;
  for (int id : ia->second)
    if (ib->second.count(id)) return true;
  return false;
}

}  // namespace

MeteorAlignment meteor_align(const Tokens& hyp, const Tokens& ref, const MeteorOptions& options,
                             bool* exact) {
  if (exact) *exact = true;
  std::vector<std::size_t> link(hyp.size(), kNone);
  std::vector<bool> ref_used(ref.size(), false);

  std::vector<std::function<bool(std::size_t, std::size_t)>> stages;
  stages.emplace_back([&](std::size_t i, std::size_t j) { return hyp[i] == ref[j]; });
  std::vector<std::string> hyp_stems, ref_stems;
  if (options.stemmer) {
    for (const auto& w : hyp) hyp_stems.push_back(options.stemmer->stem(w));
    for (const auto& w : ref) ref_stems.push_back(options.stemmer->stem(w));
    stages.emplace_back([&](std::size_t i, std::size_t j) { return hyp_stems[i] == ref_stems[j]; });
  }
  if (options.synonyms)
    stages.emplace_back([&](std::size_t i, std::size_t j) {
      return synonyms_match(*options.synonyms, hyp[i], ref[j]);
    });

  for (const auto& matches : stages) {
    StageInput in;
    in.fixed = link;
    in.candidates.resize(hyp.size());
    bool any = false;
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (link[i] != kNone) continue;
      for (std::size_t j = 0; j < ref.size(); ++j)
        if (!ref_used[j] && matches(i, j)) {
          in.candidates[i].push_back(j);
          any = true;
        }
    }
    if (!any) continue;
    std::vector<std::size_t> choice;
    try {
      choice = StageSearch(in, ref.size(), options.state_budget).solve();
    } catch (const BudgetExceeded&) {
      if (exact) *exact = false;
      choice = greedy_stage(in);
    }
    for (std::size_t i = 0; i < hyp.size(); ++i)
      if (link[i] == kNone && choice[i] != kNone) {
        link[i] = choice[i];
        ref_used[choice[i]] = true;
      }
  }

  MeteorAlignment out;
  for (std::size_t i = 0; i < hyp.size(); ++i)
    if (link[i] != kNone) out.emplace_back(i, link[i]);
  return out;
}

MeteorResult meteor_from_stats(const MeteorStats& stats, bool cubic_penalty) {
  MeteorResult r;
  r.stats = stats;
  if (stats.matches == 0) return r;
  const double m = static_cast<double>(stats.matches);
  r.precision = m / static_cast<double>(stats.hyp_length);
  r.recall = m / static_cast<double>(stats.ref_length);
  r.fmean = 10.0 * r.precision * r.recall / (r.recall + 9.0 * r.precision);
  const double frag = static_cast<double>(stats.chunks) / m;
  r.penalty = cubic_penalty ? 0.5 * frag * frag * frag : 0.5 * frag;
  r.score = r.fmean * (1.0 - r.penalty);
  return r;
}

MeteorResult meteor(const EvalPair& pair, const MeteorOptions& options) {
  if (pair.references.empty()) throw InputError("METEOR needs at least one reference");
  MeteorResult best;
  for (std::size_t k = 0; k < pair.references.size(); ++k) {
    const Tokens& ref = pair.references[k];
    bool exact = true;
    const auto links = meteor_align(pair.hypothesis, ref, options, &exact);
    MeteorStats s{links.size(), count_chunks(links), pair.hypothesis.size(), ref.size()};
    MeteorResult r = meteor_from_stats(s, options.cubic_penalty);
    r.best_reference = k;
    r.exact_search = exact;
    if (k == 0 || r.score > best.score) best = r;
  }
  return best;
}

MeteorResult meteor_corpus(const EvalCorpus& corpus, const MeteorOptions& options, unsigned jobs) {
  if (corpus.empty()) throw EmptyCorpus();
  std::vector<MeteorResult> per(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) { per[i] = meteor(corpus[i], options); });
  MeteorStats total;
  bool exact = true;
  for (const auto& r : per) {
    total.matches += r.stats.matches;
    total.chunks += r.stats.chunks;
    total.hyp_length += r.stats.hyp_length;
    total.ref_length += r.stats.ref_length;
    exact = exact && r.exact_search;
  }
  MeteorResult out = meteor_from_stats(total, options.cubic_penalty);
  out.exact_search = exact;
  return out;
}

}  // namespace smtkit

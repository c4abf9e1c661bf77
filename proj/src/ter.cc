#include "smtkit/ter.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "smtkit/error.h"
#include "smtkit/parallel.h"

namespace smtkit {

TerEdits& TerEdits::operator+=(const TerEdits& other) {
  insertions += other.insertions;
  deletions += other.deletions;
  substitutions += other.substitutions;
  shifts += other.shifts;
  return *this;
}

namespace {

enum class Op { kMatch, kSub, kIns, kDel };

// Edit script turning hyp into ref. kIns consumes a reference word only,
// kDel a hypothesis word only.
std::vector<Op> edit_script(const Tokens& hyp, const Tokens& ref) {
  const std::size_t n = hyp.size(), m = ref.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});
  std::vector<Op> ops;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = hyp[i - 1] == ref[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        ops.push_back(same ? Op::kMatch : Op::kSub);
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ops.push_back(Op::kDel);
      --i;
    } else {
      ops.push_back(Op::kIns);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

TerEdits count_ops(const std::vector<Op>& ops) {
  TerEdits e;
  for (Op op : ops) {
    if (op == Op::kSub) ++e.substitutions;
    if (op == Op::kIns) ++e.insertions;
    if (op == Op::kDel) ++e.deletions;
  }
  return e;
}

Tokens perform_shift(const Tokens& words, std::size_t start, std::size_t length,
                     std::size_t target) {
  Tokens out;
  out.reserve(words.size());
  // Bounds clamp like slices, since a target inside the block reaches past it.
  auto append = [&](std::size_t from, std::size_t to) {
    from = std::min(from, words.size());
    to = std::min(to, words.size());
    if (from >= to) return;
    out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(from),
               words.begin() + static_cast<std::ptrdiff_t>(to));
  };
  if (target < start) {
    append(0, target);
    append(start, start + length);
    append(target, start);
    append(start + length, words.size());
  } else if (target > start + length) {
    append(0, start);
    append(start + length, target);
    append(start, start + length);
    append(target, words.size());
  } else {
    append(0, start);
    append(start + length, length + target);
    append(start, start + length);
    append(length + target, words.size());
  }
  return out;
}

}  // namespace

std::size_t levenshtein(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

TerEdits levenshtein_edits(const Tokens& hyp, const Tokens& ref) {
  return count_ops(edit_script(hyp, ref));
}

TerEdits ter_greedy(const Tokens& hyp, const Tokens& ref, const TerOptions& options) {
  Tokens current = hyp;
  std::size_t shifts = 0;
  std::size_t checked = 0;
  std::map<Tokens, std::size_t> cache;
  auto distance = [&](const Tokens& t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    return cache.emplace(t, levenshtein(t, ref)).first->second;
  };

  for (;;) {
    const auto ops = edit_script(current, ref);
    const std::size_t score = count_ops(ops).total();
    // Per reference position: its hypothesis partner (or the hypothesis
    // position it falls after, -1 at the start) and error flags.
    std::vector<long> align(ref.size(), -1);
    std::vector<char> ref_err, hyp_err;
    long h = -1, r = -1;
    for (Op op : ops) {
      switch (op) {
        case Op::kMatch:
        case Op::kSub:
          ++h;
          ++r;
          align[r] = h;
          ref_err.push_back(op == Op::kSub);
          hyp_err.push_back(op == Op::kSub);
          break;
        case Op::kDel:
          ++h;
          hyp_err.push_back(1);
          break;
        case Op::kIns:
          ++r;
          align[r] = h;
          ref_err.push_back(1);
          break;
      }
    }

    // (gain, length, -start, -target) ranks candidates as tercom does.
    using Rank = std::tuple<long, std::size_t, long, long>;
    std::optional<std::pair<Rank, Tokens>> best;
    for (std::size_t sh = 0; sh < current.size() && checked < options.max_shift_candidates; ++sh) {
      for (std::size_t sr = 0; sr < ref.size() && checked < options.max_shift_candidates; ++sr) {
        const std::size_t dist = sh > sr ? sh - sr : sr - sh;
        if (dist > options.max_shift_distance) continue;
        for (std::size_t len = 1; len <= options.max_shift_size && sh + len <= current.size() &&
                                  sr + len <= ref.size();
             ++len) {
          if (current[sh + len - 1] != ref[sr + len - 1]) break;
          bool herr = false, rerr = false;
          for (std::size_t k = 0; k < len; ++k) {
            herr = herr || hyp_err[sh + k];
            rerr = rerr || ref_err[sr + k];
          }
          if (!herr || !rerr) continue;
          const long a = align[sr];
          if (a >= static_cast<long>(sh) && a < static_cast<long>(sh + len)) continue;
          long prev_idx = -1;
          for (long off = -1; off < static_cast<long>(len); ++off) {
            const long rpos = static_cast<long>(sr) + off;
            long idx;
            if (rpos == -1) {
              idx = 0;
            } else if (rpos < static_cast<long>(ref.size())) {
              idx = align[rpos] + 1;
            } else {
              break;
            }
            if (idx == prev_idx) continue;
            prev_idx = idx;
            Tokens shifted = perform_shift(current, sh, len, static_cast<std::size_t>(idx));
            const long gain = static_cast<long>(score) - static_cast<long>(distance(shifted));
            ++checked;
            Rank rank{gain, len, -static_cast<long>(sh), -idx};
            if (!best || rank > best->first) best.emplace(rank, std::move(shifted));
          }
        }
      }
    }
    // A shift costs one edit, so it must save at least two.
    if (!best || std::get<0>(best->first) <= 1) break;
    current = std::move(best->second);
    ++shifts;
    if (checked >= options.max_shift_candidates) break;
  }
  TerEdits e = levenshtein_edits(current, ref);
  e.shifts = shifts;
  return e;
}

TerEdits ter_exhaustive(const Tokens& hyp, const Tokens& ref) {
  // Breadth-first over shift counts. The Levenshtein distance of any
  // reordering is at least max(n, m) minus the multiset overlap, which bounds
  // how deep the search needs to go.
  std::map<std::string, std::size_t> ref_count;
  for (const auto& w : ref) ++ref_count[w];
  std::size_t common = 0;
  for (const auto& w : hyp) {
    auto it = ref_count.find(w);
    if (it != ref_count.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  const std::size_t lower = std::max(hyp.size(), ref.size()) - common;

  std::size_t best = levenshtein(hyp, ref);
  Tokens best_tokens = hyp;
  std::size_t best_shifts = 0;
  std::set<Tokens> seen{hyp};
  std::vector<Tokens> frontier{hyp};
  const std::size_t n = hyp.size();
  for (std::size_t depth = 1; depth + lower < best && !frontier.empty(); ++depth) {
    std::vector<Tokens> next;
    for (const auto& t : frontier) {
      for (std::size_t len = 1; len < n; ++len)
        for (std::size_t s = 0; s + len <= n; ++s) {
          Tokens rest;
          rest.reserve(n);
          rest.insert(rest.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(s));
          rest.insert(rest.end(), t.begin() + static_cast<std::ptrdiff_t>(s + len), t.end());
          for (std::size_t p = 0; p <= rest.size(); ++p) {
            if (p == s) continue;
            Tokens moved = rest;
            moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(p),
                         t.begin() + static_cast<std::ptrdiff_t>(s),
                         t.begin() + static_cast<std::ptrdiff_t>(s + len));
            if (!seen.insert(moved).second) continue;
            const std::size_t cost = depth + levenshtein(moved, ref);
            if (cost < best) {
              best = cost;
              best_tokens = moved;
              best_shifts = depth;
            }
            next.push_back(std::move(moved));
          }
        }
    }
    frontier = std::move(next);
  }
  TerEdits e = levenshtein_edits(best_tokens, ref);
  e.shifts = best_shifts;
  return e;
}

namespace {

TerResult ter_pair(const EvalPair& pair, const TerOptions& options) {
  if (pair.references.empty()) throw InputError("TER needs at least one reference");
  double total_len = 0.0;
  for (const auto& r : pair.references) total_len += static_cast<double>(r.size());
  TerResult result;
  result.ref_length = total_len / static_cast<double>(pair.references.size());
  for (std::size_t k = 0; k < pair.references.size(); ++k) {
    const Tokens& ref = pair.references[k];
    const bool exact = options.exhaustive_max_len > 0 &&
                       pair.hypothesis.size() <= options.exhaustive_max_len &&
                       ref.size() <= options.exhaustive_max_len;
    const TerEdits e = exact ? ter_exhaustive(pair.hypothesis, ref)
                             : ter_greedy(pair.hypothesis, ref, options);
    if (k == 0 || e.total() < result.edits.total()) {
      result.edits = e;
      result.best_reference = k;
    }
  }
  if (result.ref_length > 0.0)
    result.score = static_cast<double>(result.edits.total()) / result.ref_length;
  return result;
}

}  // namespace

TerResult ter(const EvalPair& pair, const TerOptions& options) {
  TerResult result = ter_pair(pair, options);
  if (result.ref_length <= 0.0) throw EmptyReference();
  return result;
}

TerResult ter_corpus(const EvalCorpus& corpus, const TerOptions& options, unsigned jobs) {
  if (corpus.empty()) throw EmptyCorpus();
  std::vector<TerResult> per(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) { per[i] = ter_pair(corpus[i], options); });
  TerResult total;
  for (const auto& r : per) {
    total.edits += r.edits;
    total.ref_length += r.ref_length;
  }
  if (total.ref_length <= 0.0) throw EmptyReference();
  total.score = static_cast<double>(total.edits.total()) / total.ref_length;
  return total;
}

}  // namespace smtkit

#ifndef SMTKIT_TESTS_ORACLES_TER_ORACLE_H_
#define SMTKIT_TESTS_ORACLES_TER_ORACLE_H_

// Minimum number of edits (block moves + insertions, deletions and
// substitutions) turning hyp into ref, by uniform-cost search over every
// sequence of block moves. A state reached with k moves costs at least
// k + |len(hyp) - len(ref)| + (words that cannot be matched by any
// reordering), which is used to stop the search.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace smtkit::oracle {

inline std::size_t edit_distance(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  return d[a.size()][b.size()];
}

// All sequences obtainable by moving one contiguous block elsewhere.
inline std::vector<std::vector<std::string>> block_moves(const std::vector<std::string>& s) {
  std::set<std::vector<std::string>> out;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) {
        if (k >= i && k <= j) continue;
        // Move s[i, j) so that it starts before original position k.
        std::vector<std::string> t;
        if (k < i) {
          t.insert(t.end(), s.begin(), s.begin() + k);
          t.insert(t.end(), s.begin() + i, s.begin() + j);
          t.insert(t.end(), s.begin() + k, s.begin() + i);
          t.insert(t.end(), s.begin() + j, s.end());
        } else {
          t.insert(t.end(), s.begin(), s.begin() + i);
          t.insert(t.end(), s.begin() + j, s.begin() + k);
          t.insert(t.end(), s.begin() + i, s.begin() + j);
          t.insert(t.end(), s.begin() + k, s.end());
        }
        if (t != s) out.insert(std::move(t));
      }
  return {out.begin(), out.end()};
}

inline std::size_t ter_optimal_edits(const std::vector<std::string>& hyp,
                                     const std::vector<std::string>& ref) {
  std::multiset<std::string> pool(ref.begin(), ref.end());
  std::size_t matchable = 0;
  for (const auto& w : hyp) {
    auto it = pool.find(w);
    if (it != pool.end()) {
      pool.erase(it);
      ++matchable;
    }
  }
  const std::size_t floor = std::max(hyp.size(), ref.size()) - matchable;

  std::size_t best = edit_distance(hyp, ref);
  std::map<std::vector<std::string>, std::size_t> depth{{hyp, 0}};
  std::queue<std::vector<std::string>> queue;
  queue.push(hyp);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop();
    const std::size_t k = depth[s] + 1;
    if (k + floor >= best) continue;
    for (auto& t : block_moves(s)) {
      if (depth.count(t)) continue;
      depth[t] = k;
      best = std::min(best, k + edit_distance(t, ref));
      queue.push(std::move(t));
    }
  }
  return best;
}

}  // namespace smtkit::oracle

#endif  // SMTKIT_TESTS_ORACLES_TER_ORACLE_H_

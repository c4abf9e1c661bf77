#include "smtkit/ngram_counts.h"

#include <stdexcept>

#include "smtkit/parallel.h"

namespace smtkit {

LmVocab::LmVocab() {
  add(std::string(kUnkWord));
  add(std::string(kBosWord));
  add(std::string(kEosWord));
}

WordId LmVocab::add(const std::string& word) {
  auto [it, inserted] = ids_.emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<WordId> LmVocab::find(const std::string& word) const {
  const auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

WordId LmVocab::lookup(const std::string& word) const { return find(word).value_or(kUnk); }

CountTable::CountTable(int order) : order_(order), counts_(order > 0 ? order : 0) {
  if (order < 1) throw std::invalid_argument("n-gram order must be at least 1");
}

std::uint64_t CountTable::count(const NGram& g) const {
  if (g.empty() || static_cast<int>(g.size()) > order_) return 0;
  const auto& m = at(static_cast<int>(g.size()));
  const auto it = m.find(g);
  return it == m.end() ? 0 : it->second;
}

bool CountTable::empty() const { return counts_.front().empty(); }

void CountTable::add_sentence(const std::vector<WordId>& words) {
  NGram padded;
  padded.reserve(words.size() + 2);
  padded.push_back(LmVocab::kBos);
  padded.insert(padded.end(), words.begin(), words.end());
  padded.push_back(LmVocab::kEos);
  for (std::size_t end = 1; end < padded.size(); ++end) {
    for (int n = 1; n <= order_ && static_cast<std::size_t>(n) <= end + 1; ++n) {
      NGram g(padded.begin() + static_cast<std::ptrdiff_t>(end + 1 - n),
              padded.begin() + static_cast<std::ptrdiff_t>(end + 1));
      ++counts_[n - 1][std::move(g)];
    }
  }
  ++sentences_;
}

void CountTable::merge(const CountTable& other) {
  for (int n = 1; n <= order_; ++n)
    for (const auto& [g, c] : other.at(n)) at(n)[g] += c;
  sentences_ += other.sentences_;
}

Sentences to_sentences(const Corpus& corpus, const TokenizationScheme& scheme) {
  Sentences out;
  out.reserve(corpus.size());
  for (const auto& seg : corpus) out.push_back(seg.words(scheme));
  return out;
}

CountTable count_ngrams(const Sentences& sentences, int order, unsigned jobs) {
  CountTable table(order);
  // Ids are assigned sequentially in order of first appearance.
  std::vector<std::vector<WordId>> ids(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    ids[s].reserve(sentences[s].size());
    for (const auto& w : sentences[s]) ids[s].push_back(table.vocab().add(w));
  }
  const std::size_t shards = jobs <= 1 ? 1 : std::min<std::size_t>(jobs, sentences.size());
  if (shards <= 1) {
    for (const auto& s : ids) table.add_sentence(s);
    return table;
  }
  std::vector<CountTable> parts(shards, CountTable(order));
  const std::size_t per = (ids.size() + shards - 1) / shards;
  parallel_for(shards, jobs, [&](std::size_t k) {
    const std::size_t lo = k * per;
    const std::size_t hi = std::min(ids.size(), lo + per);
    for (std::size_t s = lo; s < hi; ++s) parts[k].add_sentence(ids[s]);
  });
  for (const auto& p : parts) table.merge(p);
  return table;
}

}  // namespace smtkit

#ifndef SMTKIT_NGRAM_COUNTS_H_
#define SMTKIT_NGRAM_COUNTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "smtkit/corpus.h"

namespace smtkit {

inline constexpr std::string_view kUnkWord = "<unk>";
inline constexpr std::string_view kBosWord = "<s>";
inline constexpr std::string_view kEosWord = "</s>";

using WordId = std::uint32_t;
using NGram = std::vector<WordId>;

struct NGramHash {
  std::size_t operator()(const NGram& g) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (WordId w : g) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

template <class T>
using NGramMap = std::unordered_map<NGram, T, NGramHash>;

// Word <-> id mapping with the unknown word and both sentence sentinels
// reserved at ids 0, 1 and 2.
class LmVocab {
 public:
  static constexpr WordId kUnk = 0;
  static constexpr WordId kBos = 1;
  static constexpr WordId kEos = 2;

  LmVocab();

  WordId add(const std::string& word);
  std::optional<WordId> find(const std::string& word) const;
  // The unknown-word id for words not in the vocabulary.
  WordId lookup(const std::string& word) const;
  const std::string& word(WordId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

// Raw n-gram counts for n = 1..order. Each sentence is padded with one <s>
// and one </s>; the <s> unigram itself is never counted.
class CountTable {
 public:
  explicit CountTable(int order);

  int order() const { return order_; }
  const LmVocab& vocab() const { return vocab_; }
  LmVocab& vocab() { return vocab_; }
  // Counts of n-grams of length n (1-based).
  const NGramMap<std::uint64_t>& at(int n) const { return counts_[n - 1]; }
  NGramMap<std::uint64_t>& at(int n) { return counts_[n - 1]; }
  std::uint64_t count(const NGram& g) const;
  bool empty() const;
  std::size_t sentences() const { return sentences_; }

  void add_sentence(const std::vector<WordId>& words);
  void merge(const CountTable& other);  // vocabularies must be identical

 private:
  int order_;
  LmVocab vocab_;
  std::vector<NGramMap<std::uint64_t>> counts_;
  std::size_t sentences_ = 0;
};

using Sentences = std::vector<std::vector<std::string>>;

Sentences to_sentences(const Corpus& corpus, const TokenizationScheme& scheme = {});

// Counting shards sentences over `jobs` threads; shards merge in order so the
// result does not depend on the thread count.
CountTable count_ngrams(const Sentences& sentences, int order, unsigned jobs = 1);

}  // namespace smtkit

#endif  // SMTKIT_NGRAM_COUNTS_H_

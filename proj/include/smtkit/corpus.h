#ifndef SMTKIT_CORPUS_H_
#define SMTKIT_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smtkit {

struct TokenizationScheme {
  bool lowercase = false;
};

// A token keeps the byte range it was cut from so that edits on token spans
// can be mapped back onto the original text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Token& a, const Token& b) { return a.text == b.text; }
};

// Splits punctuation and symbols away from runs of word characters, then
// splits on whitespace. A run of one repeated punctuation character ("...",
// "--") stays a single token.
std::vector<Token> tokenize(std::string_view text, const TokenizationScheme& scheme = {});
std::vector<std::string> tokenize_words(std::string_view text,
                                        const TokenizationScheme& scheme = {});
std::string join(const std::vector<std::string>& words);

// One line of a corpus. The text is stored NFC-normalized.
class Segment {
 public:
  Segment() = default;
  // Throws InputError if `text` has line breaks or is not valid UTF-8.
  Segment(std::size_t id, std::string_view text);

  std::size_t id() const { return id_; }
  const std::string& text() const { return text_; }
  std::vector<Token> tokens(const TokenizationScheme& scheme = {}) const {
    return tokenize(text_, scheme);
  }
  std::vector<std::string> words(const TokenizationScheme& scheme = {}) const {
    return tokenize_words(text_, scheme);
  }

 private:
  std::size_t id_ = 0;
  std::string text_;
};

using Corpus = std::vector<Segment>;

// Line-parallel source and target sides; ids run 0..size()-1 on both.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;
  // Throws LineCountMismatch when the sides differ in length.
  ParallelCorpus(std::vector<std::string> source, std::vector<std::string> target,
                 std::string source_language = "src", std::string target_language = "tgt");

  std::size_t size() const { return source_.size(); }
  const Corpus& source() const { return source_; }
  const Corpus& target() const { return target_; }
  const std::string& source_language() const { return source_language_; }
  const std::string& target_language() const { return target_language_; }

 private:
  Corpus source_;
  Corpus target_;
  std::string source_language_ = "src";
  std::string target_language_ = "tgt";
};

Corpus make_corpus(const std::vector<std::string>& lines);

// Reads UTF-8 text, one sentence per line. A trailing CR is tolerated; invalid
// UTF-8 raises EncodingError naming the line.
std::vector<std::string> read_lines(std::istream& in);
std::vector<std::string> read_lines(const std::string& path);
void write_lines(std::ostream& out, const std::vector<std::string>& lines);
void write_lines(const std::string& path, const std::vector<std::string>& lines);

class Vocabulary {
 public:
  void add(const std::string& token, std::uint64_t count = 1);

  const std::map<std::string, std::uint64_t>& entries() const { return entries_; }
  std::uint64_t total_tokens() const { return total_; }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t count(const std::string& token) const;
  // Entries sorted by descending count, ties alphabetical.
  std::vector<std::pair<std::string, std::uint64_t>> by_frequency() const;

 private:
  std::map<std::string, std::uint64_t> entries_;
  std::uint64_t total_ = 0;
};

Vocabulary build_vocabulary(const Corpus& corpus, const TokenizationScheme& scheme = {});

using Dictionary = std::set<std::string>;

// One word per line (first whitespace-separated field), normalized the same
// way as corpus tokens.
Dictionary read_dictionary(const std::string& path, const TokenizationScheme& scheme = {});
Dictionary normalize_dictionary(const std::vector<std::string>& words,
                                const TokenizationScheme& scheme = {});

struct CoverageReport {
  std::size_t corpus_vocab_size = 0;
  std::size_t dictionary_size = 0;
  std::size_t intersection_size = 0;
  std::size_t oov_size = 0;
  double oov_rate = 0.0;
  // Same ratio weighted by corpus occurrence counts.
  double oov_token_rate = 0.0;
  std::vector<std::pair<std::string, std::uint64_t>> oov_sample;  // most frequent first
};

// Throws EmptyDictionary when `dictionary` is empty.
CoverageReport coverage_report(const Vocabulary& vocab, const Dictionary& dictionary,
                               std::size_t sample_size = 20);

}  // namespace smtkit

#endif  // SMTKIT_CORPUS_H_

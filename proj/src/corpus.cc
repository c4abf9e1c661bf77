#include "smtkit/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smtkit/error.h"
#include "smtkit/unicode.h"

namespace smtkit {

namespace {

enum class CharKind { kSpace, kWord, kOther };

CharKind kind_of(char32_t cp) {
  if (unicode::is_space(cp)) return CharKind::kSpace;
  if (unicode::is_word_char(cp)) return CharKind::kWord;
  return CharKind::kOther;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const TokenizationScheme& scheme) {
  std::vector<Token> tokens;
  const auto cps = unicode::decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    const CharKind kind = kind_of(cps[i].value);
    if (kind == CharKind::kSpace) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (kind == CharKind::kWord) {
      while (j < cps.size() && kind_of(cps[j].value) == CharKind::kWord) ++j;
    } else {
      while (j < cps.size() && cps[j].value == cps[i].value) ++j;
    }
    Token token;
    token.begin = cps[i].offset;
    token.end = cps[j - 1].offset + cps[j - 1].length;
    token.text = std::string(text.substr(token.begin, token.end - token.begin));
    if (scheme.lowercase) token.text = unicode::to_lower(token.text);
    tokens.push_back(std::move(token));
    i = j;
  }
  return tokens;
}

std::vector<std::string> tokenize_words(std::string_view text, const TokenizationScheme& scheme) {
  std::vector<std::string> words;
  for (auto& token : tokenize(text, scheme)) words.push_back(std::move(token.text));
  return words;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

Segment::Segment(std::size_t id, std::string_view text) : id_(id) {
  if (text.find_first_of("\n\r") != std::string_view::npos)
    throw InputError("segment " + std::to_string(id) + " contains a line break");
  const std::size_t bad = unicode::find_invalid_utf8(text);
  if (bad != std::string_view::npos)
    throw EncodingError("segment " + std::to_string(id) + " is not valid UTF-8", bad);
  text_ = unicode::to_nfc(text);
}

Corpus make_corpus(const std::vector<std::string>& lines) {
  Corpus corpus;
  corpus.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) corpus.emplace_back(i, lines[i]);
  return corpus;
}

ParallelCorpus::ParallelCorpus(std::vector<std::string> source, std::vector<std::string> target,
                               std::string source_language, std::string target_language)
    : source_language_(std::move(source_language)), target_language_(std::move(target_language)) {
  if (source.size() != target.size())
    throw LineCountMismatch(source.size(), target.size(), "target side of parallel corpus");
  source_ = make_corpus(source);
  target_ = make_corpus(target);
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t bad = unicode::find_invalid_utf8(line);
    if (bad != std::string::npos)
      throw EncodingError("invalid UTF-8 on line " + std::to_string(lines.size() + 1), bad);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_lines(in);
  } catch (const EncodingError& e) {
    throw EncodingError(path + ": " + e.what(), e.position());
  }
}

void write_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << line << '\n';
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_lines(out, lines);
}

void Vocabulary::add(const std::string& token, std::uint64_t count) {
  if (count == 0) return;
  entries_[token] += count;
  total_ += count;
}

std::uint64_t Vocabulary::count(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> Vocabulary::by_frequency() const {
  std::vector<std::pair<std::string, std::uint64_t>> out(entries_.begin(), entries_.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

Vocabulary build_vocabulary(const Corpus& corpus, const TokenizationScheme& scheme) {
  Vocabulary vocab;
  for (const auto& segment : corpus)
    for (const auto& word : segment.words(scheme)) vocab.add(word);
  return vocab;
}

Dictionary normalize_dictionary(const std::vector<std::string>& words,
                                const TokenizationScheme& scheme) {
  Dictionary dict;
  for (const auto& w : words) {
    if (w.empty()) continue;
    std::string norm = unicode::to_nfc(w);
    if (scheme.lowercase) norm = unicode::to_lower(norm);
    dict.insert(std::move(norm));
  }
  return dict;
}

Dictionary read_dictionary(const std::string& path, const TokenizationScheme& scheme) {
  std::vector<std::string> words;
  for (const auto& line : read_lines(path)) {
    std::istringstream fields(line);
    std::string first;
    if (fields >> first) words.push_back(first);
  }
  return normalize_dictionary(words, scheme);
}

CoverageReport coverage_report(const Vocabulary& vocab, const Dictionary& dictionary,
                               std::size_t sample_size) {
  if (dictionary.empty()) throw EmptyDictionary();
  CoverageReport report;
  report.corpus_vocab_size = vocab.size();
  report.dictionary_size = dictionary.size();
  std::uint64_t oov_tokens = 0;
  for (const auto& [token, count] : vocab.entries()) {
    if (dictionary.count(token)) {
      ++report.intersection_size;
    } else {
      ++report.oov_size;
      oov_tokens += count;
    }
  }
  if (report.corpus_vocab_size > 0) {
    report.oov_rate =
        static_cast<double>(report.oov_size) / static_cast<double>(report.corpus_vocab_size);
    report.oov_token_rate =
        static_cast<double>(oov_tokens) / static_cast<double>(vocab.total_tokens());
  }
  for (const auto& entry : vocab.by_frequency()) {
    if (report.oov_sample.size() >= sample_size) break;
    if (!dictionary.count(entry.first)) report.oov_sample.push_back(entry);
  }
  return report;
}

}  // namespace smtkit

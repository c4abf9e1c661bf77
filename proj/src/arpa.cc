#include "smtkit/arpa.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "smtkit/error.h"

namespace smtkit {

namespace {

std::vector<std::string> words_of(const NGram& g, const LmVocab& vocab) {
  std::vector<std::string> out;
  for (WordId w : g) out.push_back(vocab.word(w));
  return out;
}

}  // namespace

void write_arpa(const NGramModel& model, std::ostream& out) {
  const int order = model.order();
  out << "# smoothing: " << to_string(model.smoothing()) << "\n\n\\data\\\n";
  for (int n = 1; n <= order; ++n) out << "ngram " << n << "=" << model.table(n).size() << "\n";
  for (int n = 1; n <= order; ++n) {
    out << "\n\\" << n << "-grams:\n";
    std::vector<std::pair<std::vector<std::string>, const NGramEntry*>> rows;
    rows.reserve(model.table(n).size());
    for (const auto& [g, e] : model.table(n)) rows.emplace_back(words_of(g, model.vocab()), &e);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string line;
    for (const auto& [words, e] : rows) {
      line = fmt::format("{:.6f}\t", e->logprob);
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) line.push_back(' ');
        line += words[i];
      }
      if (n < order) line += fmt::format("\t{:.6f}", e->backoff);
      line.push_back('\n');
      out << line;
    }
  }
  out << "\n\\end\\\n";
}

void write_arpa(const NGramModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_arpa(model, out);
  if (!out) throw InputError("write failed: " + path);
}

namespace {

double parse_number(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ArpaFormatError("bad number '" + std::string(s) + "'", line);
  return v;
}

std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

}  // namespace

NGramModel read_arpa(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  Smoothing smoothing = Smoothing::kUnspecified;
  auto next = [&](std::string& line) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  // Preamble up to \data\.
  bool found_data = false;
  while (next(raw)) {
    if (raw == "\\data\\") {
      found_data = true;
      break;
    }
    constexpr std::string_view kTag = "# smoothing: ";
    if (raw.rfind(kTag, 0) == 0)
      smoothing = parse_smoothing(std::string_view(raw).substr(kTag.size()))
                      .value_or(Smoothing::kUnspecified);
  }
  if (!found_data) throw ArpaFormatError("missing \\data\\ header", line_no);

  std::vector<std::size_t> declared;
  while (next(raw)) {
    if (raw.empty()) {
      if (!declared.empty()) break;
      continue;
    }
    if (raw.rfind("ngram ", 0) != 0) throw ArpaFormatError("expected 'ngram N=count'", line_no);
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ArpaFormatError("expected 'ngram N=count'", line_no);
    const auto n = static_cast<std::size_t>(parse_number(std::string_view(raw).substr(6, eq - 6), line_no));
    const auto c = static_cast<std::size_t>(parse_number(std::string_view(raw).substr(eq + 1), line_no));
    if (n != declared.size() + 1) throw ArpaFormatError("n-gram orders out of sequence", line_no);
    declared.push_back(c);
  }
  if (declared.empty()) throw ArpaFormatError("no n-gram counts in header", line_no);

  const int order = static_cast<int>(declared.size());
  struct Row {
    std::vector<std::string> words;
    NGramEntry entry;
  };
  std::vector<std::vector<Row>> rows(order);
  int current = 0;
  std::size_t section_line = line_no;
  auto close_section = [&] {
    if (current > 0 && rows[current - 1].size() != declared[current - 1])
      throw ArpaFormatError(fmt::format("{}-gram section has {} entries, header says {}", current,
                                        rows[current - 1].size(), declared[current - 1]),
                            section_line);
  };
  bool ended = false;
  while (next(raw)) {
    if (raw.empty()) continue;
    if (raw == "\\end\\") {
      ended = true;
      break;
    }
    if (raw.front() == '\\') {
      close_section();
      const std::string expect = fmt::format("\\{}-grams:", current + 1);
      if (raw != expect) throw ArpaFormatError("expected " + expect, line_no);
      ++current;
      section_line = line_no;
      continue;
    }
    if (current == 0) throw ArpaFormatError("entry outside an n-gram section", line_no);
    const auto f = fields(raw);
    const std::size_t n = static_cast<std::size_t>(current);
    if (f.size() != n + 1 && f.size() != n + 2)
      throw ArpaFormatError(fmt::format("expected {} words", n), line_no);
    Row row;
    row.entry.logprob = parse_number(f[0], line_no);
    for (std::size_t i = 0; i < n; ++i) row.words.emplace_back(f[1 + i]);
    if (f.size() == n + 2) row.entry.backoff = parse_number(f[n + 1], line_no);
    rows[current - 1].push_back(std::move(row));
  }
  if (!ended) throw ArpaFormatError("missing \\end\\", line_no);
  close_section();
  if (current != order) throw ArpaFormatError("fewer sections than declared orders", line_no);

  LmVocab vocab;
  for (const auto& r : rows[0]) vocab.add(r.words[0]);
  NGramModel model(order, std::move(vocab), smoothing);
  for (int n = 1; n <= order; ++n) {
    for (auto& r : rows[n - 1]) {
      NGram g;
      for (const auto& w : r.words) {
        const auto id = model.vocab().find(w);
        if (!id) throw ArpaFormatError("word '" + w + "' has no unigram entry", line_no);
        g.push_back(*id);
      }
      model.table(n)[std::move(g)] = r.entry;
    }
  }
  return model;
}

NGramModel read_arpa(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_arpa(in);
}

}  // namespace smtkit

#include "smtkit/tagged.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

#include "smtkit/corpus.h"
#include "smtkit/error.h"
#include "smtkit/unicode.h"

namespace smtkit {

const Analysis& TaggedToken::chosen() const {
  for (const auto& a : analyses)
    if (a.disamb) return a;
  return analyses.front();
}

std::string TaggedToken::grammatical_class() const {
  const std::string& ctag = chosen().ctag;
  return ctag.substr(0, ctag.find(':'));
}

namespace {

// Minimal pull parser: elements, attributes, character data, the five
// predefined entities and numeric references, CDATA, comments, processing
// instructions and a DOCTYPE (internal subsets skipped). Enough for the
// tagger's output; not a validating parser.
class XmlReader {
 public:
  enum class Event { kStart, kEnd, kText, kEof };

  explicit XmlReader(std::string_view doc) : doc_(doc) {}

  Event next() {
    for (;;) {
      if (pending_end_) {
        pending_end_ = false;
        name_ = stack_.back();
        stack_.pop_back();
        return Event::kEnd;
      }
      if (pos_ >= doc_.size()) {
        if (!stack_.empty()) fail("unexpected end of document inside <" + stack_.back() + ">");
        if (!seen_root_) fail("document has no root element");
        return Event::kEof;
      }
      if (doc_[pos_] != '<') {
        text_.clear();
        read_text();
        if (stack_.empty()) {
          if (!is_blank(text_)) fail("text outside the root element");
          continue;
        }
        return Event::kText;
      }
      if (starts_with("<?")) {
        skip_past("?>");
      } else if (starts_with("<!--")) {
        skip_past("-->");
      } else if (starts_with("<![CDATA[")) {
        if (stack_.empty()) fail("CDATA outside the root element");
        pos_ += 9;
        const std::size_t end = find("]]>");
        text_.assign(doc_.substr(pos_, end - pos_));
        advance_to(end + 3);
        return Event::kText;
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else if (starts_with("</")) {
        pos_ += 2;
        name_ = read_name();
        skip_space();
        expect('>');
        if (stack_.empty() || stack_.back() != name_)
          fail("unexpected closing tag </" + name_ + ">");
        stack_.pop_back();
        return Event::kEnd;
      } else {
        ++pos_;
        read_start_tag();
        return Event::kStart;
      }
    }
  }

  const std::string& name() const { return name_; }
  const std::string& text() const { return text_; }
  std::size_t line() const { return line_; }
  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes_)
      if (k == key) return &v;
    return nullptr;
  }

  [[noreturn]] void fail(const std::string& what) const { throw MalformedXml(what, line_); }

 private:
  static bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
  }
  static bool is_name_char(char c) {
    return c != '>' && c != '/' && c != '=' && c != ' ' && c != '\t' && c != '\n' && c != '\r' &&
           c != '<' && c != '"' && c != '\'';
  }

  bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  std::size_t find(std::string_view s) const {
    const std::size_t at = doc_.find(s, pos_);
    if (at == std::string_view::npos) fail("unterminated construct, expected '" + std::string(s) + "'");
    return at;
  }

  void advance_to(std::size_t target) {
    line_ += static_cast<std::size_t>(std::count(doc_.begin() + pos_, doc_.begin() + target, '\n'));
    pos_ = target;
  }

  void skip_past(std::string_view s) { advance_to(find(s) + s.size()); }

  void skip_doctype() {
    int depth = 0;
    while (pos_ < doc_.size()) {
      const char c = doc_[pos_];
      if (c == '\n') ++line_;
      ++pos_;
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == '>' && depth <= 0) return;
    }
    fail("unterminated DOCTYPE");
  }

  void skip_space() {
    while (pos_ < doc_.size() && (doc_[pos_] == ' ' || doc_[pos_] == '\t' || doc_[pos_] == '\n' ||
                                  doc_[pos_] == '\r')) {
      if (doc_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void expect(char c) {
    if (pos_ >= doc_.size() || doc_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
    if (pos_ == start) fail("missing element or attribute name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  void decode_entity(std::string& out) {
    const std::size_t semi = doc_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("unterminated entity reference");
    const std::string_view ent = doc_.substr(pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "amp") out.push_back('&');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (ent.size() > 1 && ent[0] == '#') {
      unsigned value = 0;
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const char* first = ent.data() + (hex ? 2 : 1);
      const char* last = ent.data() + ent.size();
      auto [ptr, ec] = std::from_chars(first, last, value, hex ? 16 : 10);
      if (ec != std::errc() || ptr != last || value == 0 || value > 0x10FFFF)
        fail("bad character reference &" + std::string(ent) + ";");
      unicode::append_utf8(out, static_cast<char32_t>(value));
    } else {
      fail("unknown entity &" + std::string(ent) + ";");
    }
  }

  void read_text() {
    while (pos_ < doc_.size() && doc_[pos_] != '<') {
      const char c = doc_[pos_];
      if (c == '&') {
        decode_entity(text_);
        continue;
      }
      if (c == '\n') ++line_;
      text_.push_back(c);
      ++pos_;
    }
  }

  void read_start_tag() {
    if (stack_.empty() && seen_root_) fail("more than one root element");
    name_ = read_name();
    attributes_.clear();
    for (;;) {
      skip_space();
      if (pos_ >= doc_.size()) fail("unterminated start tag <" + name_ + ">");
      if (doc_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (starts_with("/>")) {
        pos_ += 2;
        pending_end_ = true;
        break;
      }
      std::string key = read_name();
      skip_space();
      expect('=');
      skip_space();
      if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\''))
        fail("attribute value must be quoted");
      const char quote = doc_[pos_++];
      std::string value;
      while (pos_ < doc_.size() && doc_[pos_] != quote) {
        if (doc_[pos_] == '&') {
          decode_entity(value);
          continue;
        }
        if (doc_[pos_] == '<') fail("'<' in attribute value");
        if (doc_[pos_] == '\n') ++line_;
        value.push_back(doc_[pos_++]);
      }
      expect(quote);
      attributes_.emplace_back(std::move(key), std::move(value));
    }
    seen_root_ = true;
    stack_.push_back(name_);
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<std::string> stack_;
  std::string name_;
  std::string text_;
  std::vector<std::pair<std::string, std::string>> attributes_;
  bool pending_end_ = false;
  bool seen_root_ = false;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<Encoding> declared_encoding(std::string_view doc) {
  if (doc.substr(0, 5) != "<?xml") return std::nullopt;
  const std::size_t end = doc.find("?>");
  if (end == std::string_view::npos) return std::nullopt;
  const std::string_view decl = doc.substr(0, end);
  const std::size_t at = decl.find("encoding");
  if (at == std::string_view::npos) return std::nullopt;
  const std::size_t q = decl.find_first_of("\"'", at);
  if (q == std::string_view::npos) return std::nullopt;
  const std::size_t q2 = decl.find(decl[q], q + 1);
  if (q2 == std::string_view::npos) return std::nullopt;
  const std::string_view name = decl.substr(q + 1, q2 - q - 1);
  auto enc = parse_encoding(name);
  if (!enc) throw EncodingError("unsupported document encoding '" + std::string(name) + "'", at);
  return enc;
}

// Flat stream of tokens and sentence-element boundaries in document order.
struct Item {
  TaggedToken token;
  bool sentence_end = false;
};

std::vector<Item> read_items(std::string_view utf8) {
  XmlReader xml(utf8);
  std::vector<Item> items;
  enum class Field { kNone, kOrth, kBase, kCtag };
  bool in_tok = false;
  bool in_lex = false;
  bool has_orth = false;
  Field field = Field::kNone;
  TaggedToken token;
  Analysis analysis;
  bool has_base = false, has_ctag = false;
  std::string buffer;

  for (;;) {
    const auto ev = xml.next();
    if (ev == XmlReader::Event::kEof) break;
    const std::string& name = xml.name();
    if (ev == XmlReader::Event::kText) {
      if (field != Field::kNone) buffer += xml.text();
      continue;
    }
    if (ev == XmlReader::Event::kStart) {
      if (name == "tok") {
        if (in_tok) xml.fail("nested <tok>");
        in_tok = true;
        has_orth = false;
        token = TaggedToken{};
      } else if (in_tok && name == "orth" && !in_lex) {
        field = Field::kOrth;
        buffer.clear();
      } else if (in_tok && name == "lex") {
        if (in_lex) xml.fail("nested <lex>");
        in_lex = true;
        analysis = Analysis{};
        has_base = has_ctag = false;
        const std::string* d = xml.attribute("disamb");
        analysis.disamb = d && trim(*d) == "1";
      } else if (in_lex && name == "base") {
        field = Field::kBase;
        buffer.clear();
      } else if (in_lex && name == "ctag") {
        field = Field::kCtag;
        buffer.clear();
      } else if (name == "sentence" && in_tok) {
        xml.fail("<sentence> inside <tok>");
      }
      continue;
    }
    // End element.
    if (name == "orth" && field == Field::kOrth) {
      token.orth = trim(buffer);
      has_orth = true;
      field = Field::kNone;
    } else if (name == "base" && field == Field::kBase) {
      analysis.base = trim(buffer);
      has_base = true;
      field = Field::kNone;
    } else if (name == "ctag" && field == Field::kCtag) {
      analysis.ctag = trim(buffer);
      if (analysis.ctag.empty() || analysis.ctag.front() == ':')
        xml.fail("<ctag> has no grammatical class");
      has_ctag = true;
      field = Field::kNone;
    } else if (name == "lex" && in_lex) {
      if (!has_base) xml.fail("<lex> without <base>");
      if (!has_ctag) xml.fail("<lex> without <ctag>");
      token.analyses.push_back(std::move(analysis));
      in_lex = false;
    } else if (name == "tok") {
      if (!has_orth) xml.fail("<tok> without <orth>");
      if (token.analyses.empty()) xml.fail("<tok> '" + token.orth + "' has no <lex> analysis");
      items.push_back({std::move(token), false});
      in_tok = false;
    } else if (name == "sentence") {
      items.push_back({{}, true});
    }
  }
  return items;
}

}  // namespace

std::vector<TaggedSentence> parse_tagged_xml(std::string_view document,
                                             const TaggedParseOptions& options) {
  std::string_view doc = document;
  if (doc.substr(0, 3) == "\xEF\xBB\xBF") doc.remove_prefix(3);
  if (trim(doc).empty()) return {};
  const Encoding encoding = options.encoding ? *options.encoding
                                             : declared_encoding(doc).value_or(Encoding::kUtf8);
  const std::string utf8 = transcode(doc, encoding, Encoding::kUtf8);
  const auto items = read_items(utf8);

  const bool marker_mode = std::any_of(items.begin(), items.end(), [&](const Item& it) {
    return !it.sentence_end && it.token.orth == options.line_marker;
  });

  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  for (const auto& item : items) {
    if (marker_mode) {
      if (item.sentence_end) continue;
      if (item.token.orth == options.line_marker) {
        current.marker = true;
        sentences.push_back(std::move(current));
        current = TaggedSentence{};
        continue;
      }
      current.tokens.push_back(item.token);
    } else if (item.sentence_end) {
      if (!current.tokens.empty()) sentences.push_back(std::move(current));
      current = TaggedSentence{};
    } else {
      current.tokens.push_back(item.token);
    }
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<TaggedSentence> parse_tagged_xml(std::istream& in, const TaggedParseOptions& options) {
  const std::string doc((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_tagged_xml(doc, options);
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void write_token(std::ostringstream& out, const TaggedToken& token) {
  out << "   <tok>\n    <orth>" << escape(token.orth) << "</orth>\n";
  for (const auto& a : token.analyses) {
    out << "    <lex" << (a.disamb ? " disamb=\"1\"" : "") << "><base>" << escape(a.base)
        << "</base><ctag>" << escape(a.ctag) << "</ctag></lex>\n";
  }
  out << "   </tok>\n";
}

}  // namespace

std::string write_tagged_xml(const std::vector<TaggedSentence>& sentences,
                             std::string_view line_marker) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!DOCTYPE chunkList SYSTEM \"ccl.dtd\">\n"
      << "<chunkList>\n <chunk id=\"ch1\" type=\"p\">\n";
  std::size_t id = 0;
  for (const auto& s : sentences) {
    out << "  <sentence id=\"s" << ++id << "\">\n";
    for (const auto& t : s.tokens) write_token(out, t);
    if (s.marker) {
      const std::string m(line_marker);
      write_token(out, TaggedToken{m, {Analysis{m, "interp", true}}});
    }
    out << "  </sentence>\n";
  }
  out << " </chunk>\n</chunkList>\n";
  return out.str();
}

std::vector<std::string> surface_forms(const TaggedSentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) out.push_back(t.orth);
  return out;
}

std::vector<std::string> extract_base_forms(const TaggedSentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) out.push_back(t.chosen().base);
  return out;
}

std::string_view to_string(SvoStatus status) {
  switch (status) {
    case SvoStatus::kReordered: return "reordered";
    case SvoStatus::kNoSubject: return "no-subject";
    case SvoStatus::kNoVerb: return "no-verb";
    case SvoStatus::kNoObject: return "no-object";
  }
  return "unknown";
}

bool SvoResult::changed() const {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i) return true;
  return false;
}

namespace {

bool is_nominal_class(std::string_view cls) {
  static constexpr std::array<std::string_view, 9> kNominal = {
      "subst", "depr", "ppron12", "ppron3", "siebie", "adj", "num", "numcol", "ger"};
  return std::find(kNominal.begin(), kNominal.end(), cls) != kNominal.end();
}

bool is_finite_verb_class(std::string_view cls) {
  static constexpr std::array<std::string_view, 7> kFinite = {
      "fin", "praet", "bedzie", "impt", "imps", "winien", "aglt"};
  return std::find(kFinite.begin(), kFinite.end(), cls) != kFinite.end();
}

// Case attribute of a ctag, or empty when it has none.
std::string_view case_of(std::string_view ctag) {
  static constexpr std::array<std::string_view, 7> kCases = {"nom", "gen", "dat", "acc",
                                                             "inst", "loc", "voc"};
  std::size_t start = ctag.find(':');
  while (start != std::string_view::npos) {
    const std::size_t end = ctag.find(':', start + 1);
    const std::string_view field = ctag.substr(start + 1, end == std::string_view::npos
                                                              ? std::string_view::npos
                                                              : end - start - 1);
    // Ambiguous values such as "nom.acc" resolve to their first reading.
    const std::string_view first = field.substr(0, field.find('.'));
    if (std::find(kCases.begin(), kCases.end(), first) != kCases.end()) return first;
    start = end;
  }
  return {};
}

}  // namespace

SvoResult reorder_svo(const TaggedSentence& sentence) {
  const std::size_t n = sentence.tokens.size();
  SvoResult result;
  result.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.order[i] = i;

  enum Block { kOther = 3, kSubject = 0, kVerb = 1, kObject = 2 };
  std::vector<int> block(n, kOther);
  std::size_t verbs = 0;
  bool subject_found = false, object_found = false;

  std::size_t i = 0;
  while (i < n) {
    const auto& tok = sentence.tokens[i];
    const std::string cls = tok.grammatical_class();
    if (is_finite_verb_class(cls)) {
      block[i] = kVerb;
      ++verbs;
      ++i;
      continue;
    }
    const std::string_view c = case_of(tok.chosen().ctag);
    if (!is_nominal_class(cls) || c.empty()) {
      ++i;
      continue;
    }
    // Nominal group: maximal run of nominal tokens sharing one case value.
    std::size_t j = i + 1;
    while (j < n && is_nominal_class(sentence.tokens[j].grammatical_class()) &&
           case_of(sentence.tokens[j].chosen().ctag) == c)
      ++j;
    int assign = kOther;
    if (c == "nom" && !subject_found) {
      assign = kSubject;
      subject_found = true;
    } else if (c == "acc" || c == "gen") {
      assign = kObject;
      object_found = true;
    }
    for (std::size_t k = i; k < j; ++k) block[k] = assign;
    i = j;
  }

  result.multiple_verbs = verbs > 1;
  if (verbs == 0) {
    result.status = SvoStatus::kNoVerb;
    return result;
  }
  if (!subject_found) {
    result.status = SvoStatus::kNoSubject;
    return result;
  }
  if (!object_found) {
    result.status = SvoStatus::kNoObject;
    return result;
  }
  std::stable_sort(result.order.begin(), result.order.end(),
                   [&](std::size_t a, std::size_t b) { return block[a] < block[b]; });
  result.status = SvoStatus::kReordered;
  return result;
}

std::vector<std::string> reorder_svo_words(const TaggedSentence& sentence, bool base_forms,
                                           SvoResult* result) {
  SvoResult r = reorder_svo(sentence);
  const auto words = base_forms ? extract_base_forms(sentence) : surface_forms(sentence);
  std::vector<std::string> out;
  out.reserve(words.size());
  for (std::size_t idx : r.order) out.push_back(words[idx]);
  if (result) *result = std::move(r);
  return out;
}

DerivedCorpora build_derived_corpora(const std::vector<TaggedSentence>& sentences) {
  DerivedCorpora out;
  for (const auto& s : sentences) {
    SvoResult r;
    out.base.push_back(join(extract_base_forms(s)));
    out.svo.push_back(join(reorder_svo_words(s, false, &r)));
    out.base_svo.push_back(join(reorder_svo_words(s, true)));
    if (r.status != SvoStatus::kReordered) ++out.svo_fallbacks;
    if (r.multiple_verbs) ++out.svo_multi_verb;
  }
  return out;
}

}  // namespace smtkit

#include "smtkit/cleaning.h"

#include <algorithm>
#include <sstream>

#include "smtkit/error.h"
#include "smtkit/parallel.h"
#include "smtkit/unicode.h"

namespace smtkit {

std::string_view to_string(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::kBlockDuplication: return "block-duplication";
    case CorruptionKind::kSentenceRepetition: return "sentence-repetition";
    case CorruptionKind::kPartialNesting: return "partial-nesting";
    case CorruptionKind::kForeignScript: return "foreign-script";
    case CorruptionKind::kSymbolNoise: return "symbol-noise";
    case CorruptionKind::kOverlong: return "overlong";
    case CorruptionKind::kLengthRatio: return "length-ratio";
  }
  return "unknown";
}

bool is_duplication(CorruptionKind kind) {
  return kind == CorruptionKind::kBlockDuplication ||
         kind == CorruptionKind::kSentenceRepetition || kind == CorruptionKind::kPartialNesting;
}

std::string_view to_string(Side side) { return side == Side::kSource ? "source" : "target"; }

namespace {

bool blocks_equal(const std::vector<std::string>& t, std::size_t a, std::size_t b,
                  std::size_t length) {
  for (std::size_t k = 0; k < length; ++k)
    if (t[a + k] != t[b + k]) return false;
  return true;
}

bool is_terminal(const std::string& token) {
  if (token.empty()) return false;
  for (const auto& cp : unicode::decode(token)) {
    switch (cp.value) {
      case U'.':
      case U'!':
      case U'?':
      case U'\u2026':  // ellipsis
        break;
      default:
        return false;
    }
  }
  return true;
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

// Removes tokens [begin, end) from `text` together with the whitespace that
// follows them.
std::string cut_tokens(const std::string& text, const std::vector<Token>& tokens,
                       std::size_t begin, std::size_t end) {
  const std::size_t from = tokens[begin].begin;
  const std::size_t to = end < tokens.size() ? tokens[end].begin : text.size();
  return rtrim(text.substr(0, from) + text.substr(to));
}

}  // namespace

std::vector<DuplicateBlock> find_adjacent_duplicates(const std::vector<std::string>& tokens,
                                                     std::size_t min_block) {
  if (min_block == 0) throw InputError("min_block must be at least 1");
  std::vector<DuplicateBlock> blocks;
  const std::size_t n = tokens.size();
  std::size_t last_end = 0;
  std::size_t p = 0;
  while (p < n) {
    std::size_t best = 0;
    for (std::size_t length = (n - p) / 2; length >= min_block; --length) {
      if (p + length < last_end) break;
      if (blocks_equal(tokens, p, p + length, length)) {
        best = length;
        break;
      }
    }
    if (best == 0) {
      ++p;
      continue;
    }
    blocks.push_back({p, best});
    last_end = p + 2 * best;
    p += best;
  }
  return blocks;
}

std::vector<CorruptionFinding> detect_internal_duplication(const Segment& segment,
                                                           std::size_t min_block,
                                                           const TokenizationScheme& scheme,
                                                           Side side) {
  const auto words = segment.words(scheme);
  const auto blocks = find_adjacent_duplicates(words, min_block);
  std::vector<CorruptionFinding> findings;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    CorruptionFinding f;
    f.segment_id = segment.id();
    f.side = side;
    f.span_begin = block.second();
    f.span_end = block.end();
    f.evidence.assign(words.begin() + block.first, words.begin() + block.second());
    const bool chained_before = b > 0 && blocks[b - 1].end() == block.first;
    const bool chained_after = b + 1 < blocks.size() && block.end() == blocks[b + 1].first;
    const bool whole_sentence = is_terminal(words[block.second() - 1]) &&
                                (block.first == 0 || is_terminal(words[block.first - 1]));
    if (chained_before || chained_after)
      f.kind = CorruptionKind::kPartialNesting;
    else if (whole_sentence)
      f.kind = CorruptionKind::kSentenceRepetition;
    else
      f.kind = CorruptionKind::kBlockDuplication;
    findings.push_back(std::move(f));
  }
  return findings;
}

Segment strip_internal_duplication(const Segment& segment, std::size_t min_block,
                                   const TokenizationScheme& scheme) {
  std::string text = segment.text();
  for (;;) {
    const auto tokens = tokenize(text, scheme);
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) words.push_back(t.text);
    const auto blocks = find_adjacent_duplicates(words, min_block);
    if (blocks.empty()) break;
    text = cut_tokens(text, tokens, blocks.front().second(), blocks.front().end());
  }
  return Segment(segment.id(), text);
}

std::set<int> parse_scripts(std::string_view names) {
  std::set<int> scripts;
  std::string list(names);
  std::replace(list.begin(), list.end(), ',', ' ');
  std::istringstream in(list);
  std::string name;
  while (in >> name) {
    const int code = unicode::script_from_name(name);
    if (code < 0) throw InputError("unknown script name '" + name + "'");
    scripts.insert(code);
  }
  return scripts;
}

namespace {

enum class TokenClass { kNeutral, kAllowed, kForeign, kSymbol };

TokenClass classify_token(const std::string& token, const std::set<int>& allowed) {
  bool foreign = false;
  bool any_allowed = false;
  for (const auto& cp : unicode::decode(token)) {
    if (unicode::is_noise_symbol(cp.value)) return TokenClass::kSymbol;
    if (unicode::is_script_neutral(cp.value)) continue;
    if (allowed.count(unicode::script_of(cp.value)))
      any_allowed = true;
    else
      foreign = true;
  }
  if (foreign) return TokenClass::kForeign;
  return any_allowed ? TokenClass::kAllowed : TokenClass::kNeutral;
}

}  // namespace

std::vector<CorruptionFinding> detect_noise(const Segment& segment, const NoiseOptions& options,
                                            Side side) {
  if (options.allowed_scripts.empty()) throw InputError("no allowed scripts given");
  const auto words = segment.words();
  std::vector<TokenClass> classes;
  classes.reserve(words.size());
  for (const auto& w : words) classes.push_back(classify_token(w, options.allowed_scripts));

  std::vector<CorruptionFinding> findings;
  auto emit = [&](CorruptionKind kind, std::size_t b, std::size_t e) {
    CorruptionFinding f;
    f.segment_id = segment.id();
    f.side = side;
    f.kind = kind;
    f.span_begin = b;
    f.span_end = e;
    f.evidence.assign(words.begin() + b, words.begin() + e);
    findings.push_back(std::move(f));
  };

  std::size_t i = 0;
  while (i < words.size()) {
    if (classes[i] == TokenClass::kSymbol) {
      emit(CorruptionKind::kSymbolNoise, i, i + 1);
      ++i;
      continue;
    }
    if (classes[i] != TokenClass::kForeign) {
      ++i;
      continue;
    }
    // A run of foreign tokens; neutral tokens (punctuation, digits) inside it
    // neither break nor extend the run.
    std::size_t last = i;
    std::size_t foreign_count = 1;
    std::size_t j = i + 1;
    while (j < words.size() &&
           (classes[j] == TokenClass::kForeign || classes[j] == TokenClass::kNeutral)) {
      if (classes[j] == TokenClass::kForeign) {
        last = j;
        ++foreign_count;
      }
      ++j;
    }
    if (foreign_count >= options.foreign_run) {
      emit(CorruptionKind::kForeignScript, i, last + 1);
    } else {
      for (std::size_t k = i; k <= last; ++k)
        if (classes[k] == TokenClass::kForeign) emit(CorruptionKind::kSymbolNoise, k, k + 1);
    }
    i = last + 1;
  }
  return findings;
}

LengthDecision length_filter(std::size_t source_tokens, std::size_t target_tokens,
                             std::size_t max_len, double max_ratio) {
  if (max_len < 1) throw InputError("max_len must be at least 1");
  if (!(max_ratio > 0)) throw InputError("max_ratio must be positive");
  if (source_tokens > max_len || target_tokens > max_len)
    return {false, CorruptionKind::kOverlong};
  const std::size_t longer = std::max(source_tokens, target_tokens);
  const std::size_t shorter = std::min(source_tokens, target_tokens);
  if (longer == 0) return {};
  if (shorter == 0) return {false, CorruptionKind::kLengthRatio};
  if (static_cast<double>(longer) / static_cast<double>(shorter) > max_ratio)
    return {false, CorruptionKind::kLengthRatio};
  return {};
}

LengthDecision length_filter(const Segment& source, const Segment& target, std::size_t max_len,
                             double max_ratio, const TokenizationScheme& scheme) {
  return length_filter(source.words(scheme).size(), target.words(scheme).size(), max_len,
                       max_ratio);
}

std::size_t DiagnosticsReport::duplication_count() const {
  return count(CorruptionKind::kBlockDuplication) + count(CorruptionKind::kSentenceRepetition) +
         count(CorruptionKind::kPartialNesting);
}

namespace {

struct PairDiagnosis {
  std::vector<CorruptionFinding> findings;
};

PairDiagnosis diagnose_pair(const Segment& src, const Segment& tgt, const NoiseOptions& noise,
                            const CleaningConfig& config) {
  PairDiagnosis out;
  for (Side side : {Side::kSource, Side::kTarget}) {
    const Segment& seg = side == Side::kSource ? src : tgt;
    auto dups = detect_internal_duplication(seg, config.min_block, config.scheme, side);
    auto noisy = detect_noise(seg, noise, side);
    auto& f = out.findings;
    f.insert(f.end(), dups.begin(), dups.end());
    f.insert(f.end(), noisy.begin(), noisy.end());
  }
  const auto src_len = src.words(config.scheme).size();
  const auto tgt_len = tgt.words(config.scheme).size();
  const auto decision = length_filter(src_len, tgt_len, config.max_len, config.max_ratio);
  if (!decision.keep) {
    CorruptionFinding f;
    f.segment_id = src.id();
    f.kind = *decision.reason;
    f.side = (*decision.reason == CorruptionKind::kOverlong && src_len <= config.max_len) ||
                     (*decision.reason == CorruptionKind::kLengthRatio && tgt_len > src_len)
                 ? Side::kTarget
                 : Side::kSource;
    f.span_begin = 0;
    f.span_end = f.side == Side::kSource ? src_len : tgt_len;
    out.findings.push_back(std::move(f));
  }
  std::stable_sort(out.findings.begin(), out.findings.end(),
                   [](const CorruptionFinding& a, const CorruptionFinding& b) {
                     if (a.side != b.side) return a.side < b.side;
                     return a.span_begin < b.span_begin;
                   });
  return out;
}

NoiseOptions noise_options(const CleaningConfig& config) {
  return {parse_scripts(config.scripts), config.foreign_run};
}

}  // namespace

DiagnosticsReport diagnose(const ParallelCorpus& corpus, const Dictionary* dictionary,
                           const CleaningConfig& config) {
  DiagnosticsReport report;
  report.segment_count = corpus.size();
  const NoiseOptions noise = noise_options(config);
  std::vector<PairDiagnosis> per_pair(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t i) {
    per_pair[i] = diagnose_pair(corpus.source()[i], corpus.target()[i], noise, config);
  });
  for (auto& pair : per_pair) {
    if (!pair.findings.empty()) ++report.affected_segments;
    for (auto& f : pair.findings) {
      ++report.counts[static_cast<std::size_t>(f.kind)];
      report.findings.push_back(std::move(f));
    }
  }
  if (report.segment_count > 0)
    report.affected_fraction = static_cast<double>(report.affected_segments) /
                               static_cast<double>(report.segment_count);
  if (dictionary) {
    const Corpus& side =
        config.dictionary_side == Side::kSource ? corpus.source() : corpus.target();
    report.coverage = coverage_report(build_vocabulary(side, config.scheme), *dictionary);
  }
  return report;
}

namespace {

struct PairRepair {
  std::string source;
  std::string target;
  bool keep = true;
  std::vector<Modification> modifications;
};

std::string remove_noise_tokens(const Segment& seg, const NoiseOptions& noise, bool foreign_runs,
                                std::size_t* removed) {
  const auto findings = detect_noise(seg, noise);
  const auto tokens = seg.tokens();
  std::vector<bool> drop(tokens.size(), false);
  for (const auto& f : findings) {
    if (f.kind == CorruptionKind::kForeignScript && !foreign_runs) continue;
    for (std::size_t k = f.span_begin; k < f.span_end; ++k) drop[k] = true;
  }
  std::string text = seg.text();
  *removed = 0;
  // Cut from the back so earlier byte offsets stay valid.
  for (std::size_t k = tokens.size(); k-- > 0;) {
    if (!drop[k]) continue;
    text = cut_tokens(text, tokens, k, k + 1);
    ++*removed;
  }
  return text;
}

PairRepair repair_pair(const Segment& src, const Segment& tgt, const NoiseOptions& noise,
                       const CleaningConfig& config) {
  PairRepair out;
  Segment sides[2] = {src, tgt};
  for (int s = 0; s < 2; ++s) {
    const Side side = s == 0 ? Side::kSource : Side::kTarget;
    Segment stripped = strip_internal_duplication(sides[s], config.min_block, config.scheme);
    if (stripped.text() != sides[s].text()) {
      out.modifications.push_back({src.id(), side, "strip-duplication",
                                   std::to_string(sides[s].words().size() -
                                                  stripped.words().size()) +
                                       " tokens removed"});
      sides[s] = stripped;
    }
    if (config.remove_noise) {
      std::size_t removed = 0;
      std::string text = remove_noise_tokens(sides[s], noise, config.remove_foreign, &removed);
      if (removed > 0) {
        out.modifications.push_back(
            {src.id(), side, "remove-noise", std::to_string(removed) + " tokens removed"});
        sides[s] = Segment(src.id(), text);
      }
    }
  }
  const auto decision = length_filter(sides[0], sides[1], config.max_len, config.max_ratio,
                                      config.scheme);
  if (!decision.keep) {
    out.keep = false;
    out.modifications.push_back(
        {src.id(), Side::kSource, "drop-pair", std::string(to_string(*decision.reason))});
  }
  out.source = sides[0].text();
  out.target = sides[1].text();
  return out;
}

}  // namespace

CleanResult clean(const ParallelCorpus& corpus, const Dictionary* dictionary,
                  const CleaningConfig& config) {
  DiagnosticsReport report = diagnose(corpus, dictionary, config);
  const NoiseOptions noise = noise_options(config);
  std::vector<PairRepair> repaired(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t i) {
    repaired[i] = repair_pair(corpus.source()[i], corpus.target()[i], noise, config);
  });
  std::vector<std::string> source, target;
  for (auto& pair : repaired) {
    for (auto& m : pair.modifications) report.modifications.push_back(std::move(m));
    if (!pair.keep) continue;
    source.push_back(std::move(pair.source));
    target.push_back(std::move(pair.target));
  }
  return {ParallelCorpus(std::move(source), std::move(target), corpus.source_language(),
                         corpus.target_language()),
          std::move(report)};
}

}  // namespace smtkit

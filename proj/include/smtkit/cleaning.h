#ifndef SMTKIT_CLEANING_H_
#define SMTKIT_CLEANING_H_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/corpus.h"

namespace smtkit {

enum class CorruptionKind {
  kBlockDuplication,
  kSentenceRepetition,
  kPartialNesting,
  kForeignScript,
  kSymbolNoise,
  kOverlong,
  kLengthRatio,
};
inline constexpr std::size_t kCorruptionKindCount = 7;

std::string_view to_string(CorruptionKind kind);
bool is_duplication(CorruptionKind kind);

enum class Side { kSource, kTarget };
std::string_view to_string(Side side);

struct CorruptionFinding {
  std::size_t segment_id = 0;
  Side side = Side::kSource;
  CorruptionKind kind = CorruptionKind::kBlockDuplication;
  // Token index range [span_begin, span_end). For duplications this is the
  // second copy, which is what stripping removes.
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  std::vector<std::string> evidence;
};

// An adjacent repeat: tokens [first, first+length) equal
// tokens [first+length, first+2*length).
struct DuplicateBlock {
  std::size_t first = 0;
  std::size_t length = 0;
  std::size_t second() const { return first + length; }
  std::size_t end() const { return first + 2 * length; }
};

// Scans left to right; at each start takes the longest block of at least
// `min_block` tokens that is immediately repeated. Second copies never overlap.
std::vector<DuplicateBlock> find_adjacent_duplicates(const std::vector<std::string>& tokens,
                                                     std::size_t min_block);

std::vector<CorruptionFinding> detect_internal_duplication(const Segment& segment,
                                                           std::size_t min_block,
                                                           const TokenizationScheme& scheme = {},
                                                           Side side = Side::kSource);

// Removes second copies one at a time, rescanning after each removal, until
// no adjacent duplicate block remains. Spacing around untouched text is kept.
Segment strip_internal_duplication(const Segment& segment, std::size_t min_block,
                                   const TokenizationScheme& scheme = {});

struct NoiseOptions {
  std::set<int> allowed_scripts;  // ICU script codes
  std::size_t foreign_run = 3;
};

// Parses names such as "Latin,Greek". Throws InputError on unknown names.
std::set<int> parse_scripts(std::string_view names);

std::vector<CorruptionFinding> detect_noise(const Segment& segment, const NoiseOptions& options,
                                            Side side = Side::kSource);

struct LengthDecision {
  bool keep = true;
  std::optional<CorruptionKind> reason;  // kOverlong or kLengthRatio when dropped
};

LengthDecision length_filter(std::size_t source_tokens, std::size_t target_tokens,
                             std::size_t max_len, double max_ratio);
LengthDecision length_filter(const Segment& source, const Segment& target, std::size_t max_len,
                             double max_ratio, const TokenizationScheme& scheme = {});

struct CleaningConfig {
  std::size_t max_len = 80;
  double max_ratio = 9.0;
  std::size_t min_block = 3;
  std::string scripts = "Latin";
  std::size_t foreign_run = 3;
  bool remove_noise = true;
  bool remove_foreign = false;
  // Which side the dictionary describes.
  Side dictionary_side = Side::kSource;
  TokenizationScheme scheme;
  unsigned jobs = 1;
};

struct Modification {
  std::size_t segment_id = 0;
  Side side = Side::kSource;
  std::string action;  // "strip-duplication", "remove-noise", "drop-pair"
  std::string detail;
};

struct DiagnosticsReport {
  std::size_t segment_count = 0;
  std::array<std::size_t, kCorruptionKindCount> counts{};
  std::size_t affected_segments = 0;
  double affected_fraction = 0.0;
  std::optional<CoverageReport> coverage;
  std::vector<CorruptionFinding> findings;  // ordered by segment id, side, span
  std::vector<Modification> modifications;  // filled by clean()

  std::size_t count(CorruptionKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
  std::size_t duplication_count() const;
};

// Runs every detector on both sides plus the length filter, and the coverage
// report when a dictionary is supplied (EmptyDictionary propagates).
DiagnosticsReport diagnose(const ParallelCorpus& corpus, const Dictionary* dictionary,
                           const CleaningConfig& config);

struct CleanResult {
  ParallelCorpus corpus;
  DiagnosticsReport report;
};

// Strips duplications, removes noise tokens, and drops pairs failing the
// length filter from both sides. Untouched segments keep their exact text.
CleanResult clean(const ParallelCorpus& corpus, const Dictionary* dictionary,
                  const CleaningConfig& config);

}  // namespace smtkit

#endif  // SMTKIT_CLEANING_H_

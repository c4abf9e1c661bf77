#ifndef SMTKIT_TAGGED_H_
#define SMTKIT_TAGGED_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/encoding.h"

namespace smtkit {

struct Analysis {
  std::string base;
  std::string ctag;  // colon-separated, first field is the grammatical class
  bool disamb = false;

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

struct TaggedToken {
  std::string orth;
  std::vector<Analysis> analyses;  // never empty

  // First analysis marked disamb="1", else the first analysis.
  const Analysis& chosen() const;
  // Grammatical class of the chosen analysis ("subst", "fin", ...).
  std::string grammatical_class() const;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;
  // True when the sentence was closed by an end-of-line marker token.
  bool marker = false;

  friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

inline constexpr std::string_view kDefaultLineMarker = "@@EOL@@";

struct TaggedParseOptions {
  // Overrides the encoding named in the XML declaration.
  std::optional<Encoding> encoding;
  std::string line_marker = std::string(kDefaultLineMarker);
};

// Parses the <chunkList>/<chunk>/<sentence>/<tok> format produced by the
// tagger pipeline. If any token's orth equals the line marker, lines are
// delimited by marker tokens only (a marker after an empty input line yields
// an empty sentence so that line counts survive); otherwise each <sentence>
// element is a sentence, and tokens outside any sentence element form one.
// Throws MalformedXml or EncodingError.
std::vector<TaggedSentence> parse_tagged_xml(std::string_view document,
                                             const TaggedParseOptions& options = {});
std::vector<TaggedSentence> parse_tagged_xml(std::istream& in,
                                             const TaggedParseOptions& options = {});

// Writes the same schema back (UTF-8), one <sentence> per sentence and a
// marker token where `marker` is set.
std::string write_tagged_xml(const std::vector<TaggedSentence>& sentences,
                             std::string_view line_marker = kDefaultLineMarker);

std::vector<std::string> surface_forms(const TaggedSentence& sentence);
std::vector<std::string> extract_base_forms(const TaggedSentence& sentence);

enum class SvoStatus {
  kReordered,  // all three blocks found
  kNoSubject,
  kNoVerb,
  kNoObject,
};
std::string_view to_string(SvoStatus status);

struct SvoResult {
  std::vector<std::size_t> order;  // permutation of token indices
  SvoStatus status = SvoStatus::kReordered;
  bool multiple_verbs = false;
  bool changed() const;
};

// Heuristic block partition on grammatical classes: the first nominative
// nominal group is the subject, finite-verb tokens the verb, remaining
// accusative or genitive nominal groups the object, everything else "other".
// Emits subject, verb, object, other with intra-block order kept. Returns the
// identity order when a block is missing.
SvoResult reorder_svo(const TaggedSentence& sentence);
std::vector<std::string> reorder_svo_words(const TaggedSentence& sentence, bool base_forms,
                                           SvoResult* result = nullptr);

struct DerivedCorpora {
  std::vector<std::string> base;
  std::vector<std::string> svo;
  std::vector<std::string> base_svo;
  std::size_t svo_fallbacks = 0;
  std::size_t svo_multi_verb = 0;
};

DerivedCorpora build_derived_corpora(const std::vector<TaggedSentence>& sentences);

}  // namespace smtkit

#endif  // SMTKIT_TAGGED_H_

#ifndef SMTKIT_ARPA_H_
#define SMTKIT_ARPA_H_

#include <iosfwd>
#include <string>

#include "smtkit/ngram_model.h"

namespace smtkit {

// Standard ARPA text: \data\ header with per-order counts, then one section
// per order with "log10prob<TAB>words[<TAB>log10backoff]", values printed
// with six decimals. Entries are sorted for reproducible output. A comment
// line before \data\ records the smoothing method.
void write_arpa(const NGramModel& model, std::ostream& out);
void write_arpa(const NGramModel& model, const std::string& path);

// Throws ArpaFormatError(line) on malformed input or when a section's size
// disagrees with the header.
NGramModel read_arpa(std::istream& in);
NGramModel read_arpa(const std::string& path);

}  // namespace smtkit

#endif  // SMTKIT_ARPA_H_

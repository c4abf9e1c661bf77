#ifndef SMTKIT_ENCODING_H_
#define SMTKIT_ENCODING_H_

#include <optional>
#include <string>
#include <string_view>

namespace smtkit {

enum class Encoding { kUtf8, kWindows1250 };

std::string_view to_string(Encoding encoding);
// Accepts the usual spellings: "utf-8", "utf8", "windows-1250", "cp1250".
std::optional<Encoding> parse_encoding(std::string_view name);

// Lossless between the two encodings for every character Windows-1250 can
// represent. Throws UnmappableCharacter for characters outside the code page
// and EncodingError for undefined Windows-1250 bytes or ill-formed UTF-8.
std::string transcode(std::string_view bytes, Encoding from, Encoding to);

}  // namespace smtkit

#endif  // SMTKIT_ENCODING_H_

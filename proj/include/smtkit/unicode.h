#ifndef SMTKIT_UNICODE_H_
#define SMTKIT_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Thin helpers over ICU for the handful of Unicode operations the tools need.
namespace smtkit::unicode {

// Byte offset of the first ill-formed UTF-8 sequence, or npos if `text` is valid.
std::size_t find_invalid_utf8(std::string_view text);
inline bool is_valid_utf8(std::string_view text) {
  return find_invalid_utf8(text) == std::string_view::npos;
}

std::string to_nfc(std::string_view text);
std::string to_lower(std::string_view text);

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset in the source string
  std::size_t length;  // encoded length in bytes
};

// Decodes valid UTF-8; ill-formed bytes become U+FFFD of length 1.
std::vector<CodePoint> decode(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
// Letters, combining marks and numbers; everything else that is not
// whitespace counts as punctuation or symbol for tokenization.
bool is_word_char(char32_t cp);

// Characters that carry no script of their own (digits, punctuation, common
// symbols, combining marks) and therefore never decide script membership.
bool is_script_neutral(char32_t cp);
// Symbols that do not belong in running text: "other symbol" category,
// letter-like symbols with no script (mathematical alphanumerics), private
// use, unassigned and control characters.
bool is_noise_symbol(char32_t cp);

// ICU script code (UScriptCode) for a code point.
int script_of(char32_t cp);
// Accepts long or short ICU names ("Latin", "Latn", "greek"); returns -1 when
// the name is unknown.
int script_from_name(std::string_view name);
std::string script_name(int script);

}  // namespace smtkit::unicode

#endif  // SMTKIT_UNICODE_H_

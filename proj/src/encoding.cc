#include "smtkit/encoding.h"

#include <unicode/ucnv.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <unordered_map>

#include "smtkit/error.h"
#include "smtkit/unicode.h"

namespace smtkit {

namespace {

std::string describe(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

// Code page data comes from ICU's converter tables; the conversion loops are
// ours so that error positions are exact.
struct CodePage {
  std::array<char32_t, 256> to_unicode{};  // 0 marks an undefined byte (except 0x00)
  std::unordered_map<char32_t, unsigned char> from_unicode;
};

const CodePage& windows_1250() {
  static CodePage page;
  static std::once_flag once;
  std::call_once(once, [] {
    UErrorCode status = U_ZERO_ERROR;
    UConverter* conv = ucnv_open("windows-1250", &status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU has no windows-1250 converter");
    ucnv_setToUCallBack(conv, UCNV_TO_U_CALLBACK_STOP, nullptr, nullptr, nullptr, &status);
    for (int b = 0; b < 256; ++b) {
      const char in = static_cast<char>(b);
      UChar out[4];
      status = U_ZERO_ERROR;
      ucnv_reset(conv);
      const int32_t n = ucnv_toUChars(conv, out, 4, &in, 1, &status);
      if (U_FAILURE(status) || n != 1) continue;
      // ICU fills the five unassigned bytes with C1 controls; the code page
      // itself leaves them undefined.
      if (out[0] >= 0x80 && out[0] <= 0x9F) continue;
      page.to_unicode[b] = out[0];
      page.from_unicode.emplace(out[0], static_cast<unsigned char>(b));
    }
    ucnv_close(conv);
  });
  return page;
}

std::u32string decode_utf8_strict(std::string_view bytes, std::vector<std::size_t>* offsets) {
  const std::size_t bad = unicode::find_invalid_utf8(bytes);
  if (bad != std::string_view::npos) throw EncodingError("ill-formed UTF-8", bad);
  std::u32string out;
  for (const auto& cp : unicode::decode(bytes)) {
    out.push_back(cp.value);
    offsets->push_back(cp.offset);
  }
  return out;
}

}  // namespace

UnmappableCharacter::UnmappableCharacter(char32_t code_point, std::size_t position)
    : EncodingError(describe(code_point) + " has no Windows-1250 mapping", position),
      code_point_(code_point) {}

std::string_view to_string(Encoding encoding) {
  return encoding == Encoding::kUtf8 ? "UTF-8" : "windows-1250";
}

std::optional<Encoding> parse_encoding(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "utf8") return Encoding::kUtf8;
  if (key == "windows1250" || key == "cp1250" || key == "win1250" || key == "xcp1250")
    return Encoding::kWindows1250;
  return std::nullopt;
}

std::string transcode(std::string_view bytes, Encoding from, Encoding to) {
  if (from == to) {
    if (from == Encoding::kUtf8) {
      const std::size_t bad = unicode::find_invalid_utf8(bytes);
      if (bad != std::string_view::npos) throw EncodingError("ill-formed UTF-8", bad);
    }
    return std::string(bytes);
  }
  const CodePage& page = windows_1250();
  std::string out;
  out.reserve(bytes.size() + bytes.size() / 4);
  if (from == Encoding::kWindows1250) {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      const auto b = static_cast<unsigned char>(bytes[i]);
      const char32_t cp = page.to_unicode[b];
      if (cp == 0 && b != 0) throw EncodingError("undefined Windows-1250 byte", i);
      unicode::append_utf8(out, cp);
    }
    return out;
  }
  std::vector<std::size_t> offsets;
  const std::u32string cps = decode_utf8_strict(bytes, &offsets);
  for (std::size_t k = 0; k < cps.size(); ++k) {
    const auto it = page.from_unicode.find(cps[k]);
    if (it == page.from_unicode.end()) throw UnmappableCharacter(cps[k], offsets[k]);
    out.push_back(static_cast<char>(it->second));
  }
  return out;
}

}  // namespace smtkit

#ifndef OPMINE_UNICODE_HPP
#define OPMINE_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace opmine {

// Minimal UTF-8 handling: decode to codepoints, classify the character
// ranges the pipeline cares about, re-encode. Invalid byte sequences decode
// to U+FFFD one byte at a time so ingestion never throws on mojibake.

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the codepoint starting at s[i]; advances i past it.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> std::uint32_t {
    return static_cast<unsigned char>(s[k]);
  };
  std::uint32_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return k < s.size() && (byte(k) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    char32_t cp = ((b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
    i += 2;
    return cp >= 0x80 ? cp : kReplacementChar;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    char32_t cp = ((b0 & 0x0F) << 12) | ((byte(i + 1) & 0x3F) << 6) |
                  (byte(i + 2) & 0x3F);
    i += 3;
    return cp >= 0x800 ? cp : kReplacementChar;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    char32_t cp = ((b0 & 0x07) << 18) | ((byte(i + 1) & 0x3F) << 12) |
                  ((byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
    i += 4;
    return (cp >= 0x10000 && cp <= 0x10FFFF) ? cp : kReplacementChar;
  }
  ++i;
  return kReplacementChar;
}

inline std::u32string to_codepoints(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(decode_utf8(s, i));
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string from_codepoints(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

// CJK unified ideographs: the URO, extension A, the compatibility block, and
// the supplementary-plane extensions.
inline bool is_cjk_ideograph(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
         (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x20000 && cp <= 0x2FA1F);
}

inline bool is_ascii_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

inline bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

inline bool is_ascii_alnum(char32_t cp) {
  return is_ascii_letter(cp) || is_ascii_digit(cp);
}

// Letters from the non-Latin, non-CJK scripts that show up in a multilingual
// tweet stream. Coarse block ranges; used only for language-ratio
// denominators, so over-inclusion of the odd sign character is harmless.
inline bool is_other_script_letter(char32_t cp) {
  return (cp >= 0x00C0 && cp <= 0x024F)      // Latin-1 supplement + extended
         || (cp >= 0x0370 && cp <= 0x03FF)   // Greek
         || (cp >= 0x0400 && cp <= 0x04FF)   // Cyrillic
         || (cp >= 0x0530 && cp <= 0x058F)   // Armenian
         || (cp >= 0x0590 && cp <= 0x05FF)   // Hebrew
         || (cp >= 0x0600 && cp <= 0x06FF)   // Arabic
         || (cp >= 0x0900 && cp <= 0x0DFF)   // Indic blocks
         || (cp >= 0x0E00 && cp <= 0x0E7F)   // Thai
         || (cp >= 0x1000 && cp <= 0x109F)   // Myanmar
         || (cp >= 0x10A0 && cp <= 0x10FF)   // Georgian
         || (cp >= 0x1100 && cp <= 0x11FF)   // Hangul jamo
         || (cp >= 0x3040 && cp <= 0x30FF)   // Hiragana + Katakana
         || (cp >= 0xAC00 && cp <= 0xD7AF)   // Hangul syllables
         || (cp >= 0xFF66 && cp <= 0xFF9F);  // half-width katakana
}

// Characters that can continue a hashtag token. A tag match requires the
// character after the tag body to fall outside this set.
inline bool is_hashtag_word_char(char32_t cp) {
  return is_ascii_alnum(cp) || cp == '_' || is_cjk_ideograph(cp);
}

inline char32_t ascii_lower(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
}

inline std::string ascii_lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return out;
}

}  // namespace opmine

#endif  // OPMINE_UNICODE_HPP

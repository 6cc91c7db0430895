#ifndef OPMINE_TEXT_HPP
#define OPMINE_TEXT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "opmine/error.hpp"
#include "opmine/io.hpp"
#include "opmine/types.hpp"
#include "opmine/unicode.hpp"

namespace opmine {

struct TokenizedDoc {
  std::uint64_t tweet_id = 0;
  Language language = Language::Other;
  std::vector<std::string> tokens;
};

// Removes URLs, leading RT markers and @mentions, keeps hashtag bodies as
// plain words, collapses whitespace. Output feeds both tokenizers.
inline std::string strip_noise(std::string_view text) {
  std::u32string cps = to_codepoints(text);
  std::u32string kept;
  kept.reserve(cps.size());
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    char32_t c = cps[i];
    if (c == 'h' && (cps.compare(i, 7, U"http://") == 0 ||
                     cps.compare(i, 8, U"https://") == 0)) {
      while (i < n && cps[i] != ' ' && cps[i] != '\t' && cps[i] != '\n') ++i;
      continue;
    }
    if (c == '@') {
      std::size_t j = i + 1;
      while (j < n && (is_ascii_alnum(cps[j]) || cps[j] == '_')) ++j;
      if (j > i + 1) {  // a real mention, not a stray '@'
        if (j < n && cps[j] == ':') ++j;
        i = j;
        continue;
      }
    }
    if (c == '#') {
      ++i;  // keep the body, drop the marker
      continue;
    }
    kept.push_back(c);
    ++i;
  }
  // drop leading "RT" tokens (retweet markers), then collapse whitespace
  std::size_t p = 0;
  auto is_ws = [](char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  for (;;) {
    while (p < kept.size() && is_ws(kept[p])) ++p;
    if (p + 1 < kept.size() && kept[p] == 'R' && kept[p + 1] == 'T' &&
        (p + 2 == kept.size() || is_ws(kept[p + 2]))) {
      p += 2;
      continue;
    }
    break;
  }
  std::u32string out;
  out.reserve(kept.size() - p);
  bool pending_space = false;
  for (std::size_t k = p; k < kept.size(); ++k) {
    if (is_ws(kept[k])) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(kept[k]);
  }
  return from_codepoints(out);
}

// Lowercase; tokens are maximal runs of ASCII letters, digits and
// apostrophes. Everything else separates.
inline std::vector<std::string> tokenize_english_text(std::string_view text) {
  std::u32string cps = to_codepoints(text);
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char32_t c : cps) {
    if (is_ascii_alnum(c) || c == '\'') {
      append_utf8(cur, ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

inline TokenizedDoc tokenize_english(std::uint64_t tweet_id, std::string_view text) {
  return {tweet_id, Language::English, tokenize_english_text(text)};
}

namespace detail_zh {

// Unigram pass shared by the tokenizer and lexicon-term normalization:
// CJK character unigrams and lowercased ASCII runs, in text order. When
// `bigrams` is given, adjacent CJK pairs are collected too; adjacency is
// text adjacency, so bigrams never span a non-CJK character.
inline std::vector<std::string> chinese_units(std::string_view text,
                                              std::vector<std::string>* bigrams) {
  std::u32string cps = to_codepoints(text);
  std::vector<std::string> units;
  std::string latin;
  char32_t prev_cjk = 0;
  auto flush_latin = [&]() {
    if (!latin.empty()) units.push_back(std::move(latin));
    latin.clear();
  };
  for (char32_t c : cps) {
    if (is_cjk_ideograph(c)) {
      flush_latin();
      std::string uni;
      append_utf8(uni, c);
      units.push_back(uni);
      if (prev_cjk && bigrams) {
        std::string bi;
        append_utf8(bi, prev_cjk);
        append_utf8(bi, c);
        bigrams->push_back(bi);
      }
      prev_cjk = c;
    } else {
      prev_cjk = 0;
      if (is_ascii_alnum(c) || c == '\'') {
        append_utf8(latin, ascii_lower(c));
      } else {
        flush_latin();
      }
    }
  }
  flush_latin();
  return units;
}

}  // namespace detail_zh

// CJK character unigrams in order, embedded ASCII runs as single lowercase
// tokens in order, then adjacent-pair bigrams appended.
inline std::vector<std::string> tokenize_chinese_text(std::string_view text) {
  std::vector<std::string> bigrams;
  std::vector<std::string> tokens = detail_zh::chinese_units(text, &bigrams);
  tokens.insert(tokens.end(), bigrams.begin(), bigrams.end());
  return tokens;
}

inline TokenizedDoc tokenize_chinese(std::uint64_t tweet_id, std::string_view text) {
  return {tweet_id, Language::Chinese, tokenize_chinese_text(text)};
}

inline TokenizedDoc tokenize(std::uint64_t tweet_id, std::string_view raw_text,
                             Language lang) {
  std::string clean = strip_noise(raw_text);
  if (lang == Language::Chinese) return tokenize_chinese(tweet_id, clean);
  TokenizedDoc d = tokenize_english(tweet_id, clean);
  d.language = lang;
  return d;
}

// ---------------------------------------------------------------------------
// Lexicons. Entries are stored as token sequences in the normal form the
// language tokenizer emits (English: lowercase words; Chinese: character
// unigrams with ASCII runs lowercased), so matching is a contiguous
// subsequence scan over doc tokens.
// ---------------------------------------------------------------------------

struct Lexicon {
  Language language = Language::English;
  std::vector<std::vector<std::string>> positive;
  std::vector<std::vector<std::string>> negative;
};

namespace detail_lex {

inline std::vector<std::string> normalize_term(std::string_view term, Language lang) {
  if (lang == Language::Chinese) return detail_zh::chinese_units(term, nullptr);
  return tokenize_english_text(term);
}

inline int count_subsequence(const std::vector<std::string>& tokens,
                             const std::vector<std::string>& entry) {
  if (entry.empty() || tokens.size() < entry.size()) return 0;
  int count = 0;
  for (std::size_t i = 0; i + entry.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < entry.size(); ++k)
      if (tokens[i + k] != entry[k]) {
        hit = false;
        break;
      }
    if (hit) ++count;
  }
  return count;
}

}  // namespace detail_lex

// File format: "[positive]" / "[negative]" section markers, one term per
// line, '#' comments allowed.
inline Lexicon load_lexicon(const std::string& path, Language lang) {
  Lexicon lex;
  lex.language = lang;
  int section = 0;  // 0 none, 1 positive, 2 negative
  std::set<std::vector<std::string>> pos_set, neg_set;
  for (auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "[positive]") {
      section = 1;
      continue;
    }
    if (line == "[negative]") {
      section = 2;
      continue;
    }
    if (section == 0)
      throw Error("InvalidData", "lexicon term before section marker in " + path);
    auto entry = detail_lex::normalize_term(line, lang);
    if (entry.empty()) continue;
    (section == 1 ? pos_set : neg_set).insert(std::move(entry));
  }
  for (const auto& e : pos_set)
    if (neg_set.count(e))
      throw Error("InvalidData", "lexicon term in both sections in " + path);
  lex.positive.assign(pos_set.begin(), pos_set.end());
  lex.negative.assign(neg_set.begin(), neg_set.end());
  return lex;
}

struct LexiconCounts {
  int positive = 0;
  int negative = 0;
  int net() const { return positive - negative; }
};

// Counts entry occurrences in the unigram section of the doc. For Chinese
// docs only the leading unigram/ASCII-run section of the token stream is
// scanned so appended bigrams cannot create false adjacencies.
inline LexiconCounts lexicon_counts(const TokenizedDoc& doc, const Lexicon& lex) {
  if (doc.language != lex.language)
    throw Error("LanguageMismatch",
                "doc is " + std::string(to_string(doc.language)) + ", lexicon is " +
                    std::string(to_string(lex.language)));
  std::size_t scan_len = doc.tokens.size();
  if (doc.language == Language::Chinese) {
    // bigrams are exactly the multi-codepoint CJK tokens at the tail
    while (scan_len > 0) {
      const std::string& t = doc.tokens[scan_len - 1];
      std::size_t i = 0;
      char32_t first = decode_utf8(t, i);
      if (is_cjk_ideograph(first) && i < t.size()) --scan_len;
      else break;
    }
  }
  std::vector<std::string> unigrams(doc.tokens.begin(),
                                    doc.tokens.begin() + static_cast<std::ptrdiff_t>(scan_len));
  LexiconCounts c;
  for (const auto& e : lex.positive)
    c.positive += detail_lex::count_subsequence(unigrams, e);
  for (const auto& e : lex.negative)
    c.negative += detail_lex::count_subsequence(unigrams, e);
  return c;
}

inline int lexicon_net_score(const TokenizedDoc& doc, const Lexicon& lex) {
  return lexicon_counts(doc, lex).net();
}

// Affect evidence for the subjectivity stage: every polarity entry, positive
// or negative, votes "has emotion".
inline Lexicon subjectivity_lexicon(const Lexicon& sentiment) {
  Lexicon lex;
  lex.language = sentiment.language;
  std::set<std::vector<std::string>> all(sentiment.positive.begin(),
                                         sentiment.positive.end());
  all.insert(sentiment.negative.begin(), sentiment.negative.end());
  lex.positive.assign(all.begin(), all.end());
  return lex;
}

// ---------------------------------------------------------------------------
// Stop lists.
// ---------------------------------------------------------------------------

struct StopList {
  Language language = Language::English;
  std::unordered_set<std::string> terms;
};

inline StopList load_stoplist(const std::string& path, Language lang) {
  StopList sl;
  sl.language = lang;
  for (auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    sl.terms.insert(line);
  }
  if (sl.terms.empty()) throw Error("InvalidData", "empty stop list " + path);
  return sl;
}

// ---------------------------------------------------------------------------
// Simplified / traditional detection. The table is derived from a mapping
// file of unambiguous pairs; characters valid in both scripts stay out of
// both sets and never influence the decision.
// ---------------------------------------------------------------------------

struct TypefaceTable {
  std::unordered_set<char32_t> simplified_only;
  std::unordered_set<char32_t> traditional_only;
  std::unordered_map<char32_t, char32_t> s_to_t;
  std::unordered_map<char32_t, char32_t> t_to_s;
};

inline TypefaceTable load_typeface_table(const std::string& path) {
  TypefaceTable table;
  for (auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("InvalidData", "typeface mapping line without TAB: " + line);
    std::u32string s = to_codepoints(std::string_view(line).substr(0, tab));
    std::u32string t = to_codepoints(std::string_view(line).substr(tab + 1));
    if (s.size() != 1 || t.size() != 1)
      throw Error("InvalidData", "typeface mapping entries must be single characters");
    if (s[0] == t[0]) continue;
    table.simplified_only.insert(s[0]);
    table.traditional_only.insert(t[0]);
    table.s_to_t.emplace(s[0], t[0]);
    table.t_to_s.emplace(t[0], s[0]);
  }
  // a character listed on both sides is ambiguous; drop it from both
  std::vector<char32_t> shared;
  for (char32_t c : table.simplified_only)
    if (table.traditional_only.count(c)) shared.push_back(c);
  for (char32_t c : shared) {
    table.simplified_only.erase(c);
    table.traditional_only.erase(c);
  }
  return table;
}

// Counts distinctive characters on each side; ties (including no distinctive
// characters at all) default to Simplified, the corpus majority class.
inline Typeface detect_typeface(std::string_view text, const TypefaceTable& table) {
  std::u32string cps = to_codepoints(text);
  bool any_cjk = false;
  int s = 0, t = 0;
  for (char32_t c : cps) {
    if (!is_cjk_ideograph(c)) continue;
    any_cjk = true;
    if (table.simplified_only.count(c)) ++s;
    else if (table.traditional_only.count(c)) ++t;
  }
  if (!any_cjk) throw Error("NoCjkContent", "text has no CJK characters");
  return t > s ? Typeface::Traditional : Typeface::Simplified;
}

}  // namespace opmine

#endif  // OPMINE_TEXT_HPP

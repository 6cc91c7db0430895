#ifndef OPMINE_CORPUS_HPP
#define OPMINE_CORPUS_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "opmine/error.hpp"
#include "opmine/io.hpp"
#include "opmine/time.hpp"
#include "opmine/types.hpp"
#include "opmine/unicode.hpp"

namespace opmine {

// Archive ingestion: JSON Lines replay of a streamed tweet collection.
// Pipeline per line: parse -> hashtag match -> dedup by id -> language
// partition. Order of admitted tweets follows input order.

struct HashtagSet {
  // Kept verbatim in file order, '#' included. The shipped set has 59 tags;
  // two of the Chinese tags are string-identical across the simplified and
  // traditional sections, so matching reports each distinct string once.
  std::vector<std::string> tags;
};

inline HashtagSet load_hashtags(const std::string& path) {
  HashtagSet set;
  for (auto& line : read_lines(path)) {
    if (line.empty()) continue;
    if (line[0] != '#')
      throw Error("InvalidData", "hashtag without '#' in " + path + ": " + line);
    set.tags.push_back(line);
  }
  return set;
}

struct IngestStats {
  std::uint64_t total_lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t admitted = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t no_hashtag = 0;
  std::uint64_t parse_errors = 0;
  std::map<Language, std::uint64_t> per_language;
};

struct LanguageThresholds {
  double cjk_min = 0.30;    // >= -> Chinese
  double latin_min = 0.80;  // >= (and below cjk_min) -> English
};

// Parses one archive line. Field contract: `id` (integer or digit string),
// `created_at` (Twitter layout), `text`; `extended_tweet.full_text` wins over
// the truncated `text`; `user.location` optional. Throws Error with code
// MalformedJson / MissingField / BadTimestamp.
inline RawTweet parse_tweet_record(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("MalformedJson", "line is not a JSON object");

  RawTweet t;
  auto id_it = j.find("id");
  if (id_it == j.end()) throw Error("MissingField", "id");
  if (id_it->is_number_unsigned()) {
    t.id = id_it->get<std::uint64_t>();
  } else if (id_it->is_string()) {
    const std::string& s = id_it->get_ref<const std::string&>();
    if (s.empty()) throw Error("MissingField", "id");
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw Error("MalformedJson", "id is not numeric");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    t.id = v;
  } else {
    throw Error("MalformedJson", "id is not numeric");
  }

  auto ts_it = j.find("created_at");
  if (ts_it == j.end() || !ts_it->is_string())
    throw Error("MissingField", "created_at");
  t.created_at = parse_twitter_time(ts_it->get_ref<const std::string&>());

  auto ext = j.find("extended_tweet");
  if (ext != j.end() && ext->is_object()) {
    auto full = ext->find("full_text");
    if (full != ext->end() && full->is_string())
      t.text = full->get<std::string>();
  }
  if (t.text.empty()) {
    auto text_it = j.find("text");
    if (text_it == j.end() || !text_it->is_string())
      throw Error("MissingField", "text");
    t.text = text_it->get<std::string>();
  }

  auto user = j.find("user");
  if (user != j.end() && user->is_object()) {
    auto loc = user->find("location");
    if (loc != user->end() && loc->is_string())
      t.user_location = loc->get<std::string>();
  }
  return t;
}

// Returns the study-set tags occurring in `text` as complete hashtag tokens:
// '#' + body, with the character after the body being neither an ASCII
// letter/digit, underscore, nor a CJK ideograph. Case-sensitive; each
// distinct tag string is reported once, in set order.
inline std::vector<std::string> match_hashtags(std::string_view text,
                                               const HashtagSet& tags) {
  std::vector<std::string> matched;
  for (const auto& tag : tags.tags) {
    bool already = false;
    for (const auto& m : matched) already |= (m == tag);
    if (already) continue;
    std::size_t pos = 0;
    while ((pos = text.find(tag, pos)) != std::string_view::npos) {
      std::size_t end = pos + tag.size();
      bool boundary = true;
      if (end < text.size()) {
        std::size_t k = end;
        boundary = !is_hashtag_word_char(decode_utf8(text, k));
      }
      if (boundary) {
        matched.push_back(tag);
        break;
      }
      pos += 1;
    }
  }
  return matched;
}

// Character-class ratio heuristic over the text with URLs, @mentions and
// whole hashtags removed. CJK share >= cjk_min -> Chinese; else Basic-Latin
// share >= latin_min -> English; else Other (including no letters at all).
inline Language partition_language(std::string_view text,
                                   const LanguageThresholds& th = {}) {
  std::u32string cps = to_codepoints(text);
  std::uint64_t latin = 0, cjk = 0, other = 0;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    char32_t c = cps[i];
    // skip URLs
    if (c == 'h' && (cps.compare(i, 7, U"http://") == 0 ||
                     cps.compare(i, 8, U"https://") == 0)) {
      while (i < n && cps[i] != ' ' && cps[i] != '\t' && cps[i] != '\n') ++i;
      continue;
    }
    // skip @mentions and #hashtags entirely
    if (c == '@' || c == '#') {
      ++i;
      while (i < n && is_hashtag_word_char(cps[i])) ++i;
      continue;
    }
    if (is_cjk_ideograph(c)) ++cjk;
    else if (is_ascii_letter(c)) ++latin;
    else if (is_other_script_letter(c)) ++other;
    ++i;
  }
  const std::uint64_t letters = latin + cjk + other;
  if (letters == 0) return Language::Other;
  const double cjk_ratio = static_cast<double>(cjk) / static_cast<double>(letters);
  const double latin_ratio = static_cast<double>(latin) / static_cast<double>(letters);
  if (cjk_ratio >= th.cjk_min) return Language::Chinese;
  if (latin_ratio >= th.latin_min) return Language::English;
  return Language::Other;
}

// Folds an archive stream into a corpus. Per-record failures are counted,
// never fatal; the first occurrence of a duplicated id wins.
inline std::pair<Corpus, IngestStats> ingest_stream(std::istream& in,
                                                    const HashtagSet& tags,
                                                    const LanguageThresholds& th = {}) {
  Corpus corpus;
  IngestStats stats;
  stats.per_language[Language::English] = 0;
  stats.per_language[Language::Chinese] = 0;
  stats.per_language[Language::Other] = 0;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++stats.total_lines;
    RawTweet t;
    try {
      t = parse_tweet_record(line);
    } catch (const Error&) {
      ++stats.parse_errors;
      continue;
    }
    ++stats.parsed;
    t.matched_hashtags = match_hashtags(t.text, tags);
    if (t.matched_hashtags.empty()) {
      ++stats.no_hashtag;
      continue;
    }
    if (!seen.insert(t.id).second) {
      ++stats.duplicates;
      continue;
    }
    t.language = partition_language(t.text, th);
    ++stats.per_language[t.language];
    ++stats.admitted;
    corpus.push_back(std::move(t));
  }
  return {std::move(corpus), std::move(stats)};
}

// Canonical JSON Lines record with fixed key order, so stage outputs diff
// byte-exactly.
inline std::string tweet_to_jsonl(const RawTweet& t) {
  nlohmann::ordered_json j;
  j["id"] = t.id;
  j["created_at"] = format_twitter_time(t.created_at);
  j["text"] = t.text;
  j["user_location"] = t.user_location.value_or("");
  j["matched_hashtags"] = t.matched_hashtags;
  j["language"] = to_string(t.language);
  return j.dump();
}

inline RawTweet tweet_from_jsonl(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("MalformedJson", "corpus line is not a JSON object");
  RawTweet t;
  t.id = j.at("id").get<std::uint64_t>();
  t.created_at = parse_twitter_time(j.at("created_at").get_ref<const std::string&>());
  t.text = j.at("text").get<std::string>();
  t.user_location = j.at("user_location").get<std::string>();
  t.matched_hashtags = j.at("matched_hashtags").get<std::vector<std::string>>();
  t.language = language_from_string(j.at("language").get_ref<const std::string&>());
  return t;
}

inline Corpus load_corpus(const std::string& path) {
  Corpus corpus;
  for (auto& line : read_lines(path)) {
    if (line.empty()) continue;
    corpus.push_back(tweet_from_jsonl(line));
  }
  return corpus;
}

}  // namespace opmine

#endif  // OPMINE_CORPUS_HPP

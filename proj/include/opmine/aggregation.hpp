#ifndef OPMINE_AGGREGATION_HPP
#define OPMINE_AGGREGATION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "opmine/csv.hpp"
#include "opmine/error.hpp"
#include "opmine/text.hpp"
#include "opmine/time.hpp"
#include "opmine/types.hpp"
#include "opmine/unicode.hpp"

namespace opmine {

// The three analytical outputs: hourly sentiment series in a configurable
// zone (Beijing by default), per-country counts and positive/negative
// scores, and frequent/distinctive word reports.

struct ClassifiedTweet {
  RawTweet tweet;
  FinalLabel final = FinalLabel::Irrelevant;
  std::optional<Typeface> typeface;
};

// ---------------------------------------------------------------------------
// Hourly series.
// ---------------------------------------------------------------------------

struct TimeBucket {
  std::int64_t start_utc = 0;  // hour boundary in the configured zone
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t neutral = 0;
  std::uint64_t total_classified() const { return positive + negative + neutral; }
};

struct SentimentSeries {
  std::int64_t utc_offset_seconds = 8 * 3600;
  std::vector<TimeBucket> buckets;  // contiguous, empty hours included

  static std::int64_t absolute(const TimeBucket& b) {
    return static_cast<std::int64_t>(b.positive) - static_cast<std::int64_t>(b.negative);
  }
  static double pos_pct(const TimeBucket& b) {
    auto t = b.total_classified();
    return t == 0 ? 0.0 : static_cast<double>(b.positive) / static_cast<double>(t);
  }
  static double neg_pct(const TimeBucket& b) {
    auto t = b.total_classified();
    return t == 0 ? 0.0 : static_cast<double>(b.negative) / static_cast<double>(t);
  }
  static double diff_pct(const TimeBucket& b) { return pos_pct(b) - neg_pct(b); }
};

// Irrelevant tweets are excluded; the bucket range covers the classified
// span contiguously so the series plots as a continuous curve.
inline SentimentSeries bucket_hourly(const std::vector<ClassifiedTweet>& tweets,
                                     std::int64_t utc_offset_seconds = 8 * 3600) {
  SentimentSeries series;
  series.utc_offset_seconds = utc_offset_seconds;
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (const auto& ct : tweets) {
    if (ct.final == FinalLabel::Irrelevant) continue;
    std::int64_t b = floor_to_local_hour(ct.tweet.created_at, utc_offset_seconds);
    if (!any) {
      lo = hi = b;
      any = true;
    } else {
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
  }
  if (!any) throw Error("EmptyCorpus", "no classified relevant tweets to bucket");
  series.buckets.resize(static_cast<std::size_t>((hi - lo) / 3600 + 1));
  for (std::size_t i = 0; i < series.buckets.size(); ++i)
    series.buckets[i].start_utc = lo + static_cast<std::int64_t>(i) * 3600;
  for (const auto& ct : tweets) {
    if (ct.final == FinalLabel::Irrelevant) continue;
    std::int64_t b = floor_to_local_hour(ct.tweet.created_at, utc_offset_seconds);
    auto& bucket = series.buckets[static_cast<std::size_t>((b - lo) / 3600)];
    switch (ct.final) {
      case FinalLabel::Positive: ++bucket.positive; break;
      case FinalLabel::Negative: ++bucket.negative; break;
      default: ++bucket.neutral; break;
    }
  }
  return series;
}

// ---------------------------------------------------------------------------
// Country resolution and scores.
// ---------------------------------------------------------------------------

struct Gazetteer {
  // (alias, country) in file order; aliases held case-folded.
  std::vector<std::pair<std::string, std::string>> entries;
};

inline Gazetteer load_gazetteer(const std::string& path) {
  Gazetteer gz;
  CsvTable t = read_csv_file(path);
  if (t.header != std::vector<std::string>{"alias", "country"})
    throw Error("InvalidData", "gazetteer header must be alias,country");
  for (const auto& row : t.rows) {
    if (row.size() != 2 || row[0].empty() || row[1].empty())
      throw Error("InvalidData", "bad gazetteer row");
    gz.entries.emplace_back(ascii_lower_copy(row[0]), row[1]);
  }
  return gz;
}

inline constexpr std::string_view kUnknownCountry = "Unknown";

namespace detail_geo {

// Word-boundary substring scan: the alias must not be flanked by ASCII
// letters or digits, so "usa" does not fire inside "jerusalem".
inline bool contains_alias(const std::string& folded, const std::string& alias) {
  std::size_t pos = 0;
  while ((pos = folded.find(alias, pos)) != std::string::npos) {
    const bool left_ok =
        pos == 0 || !is_ascii_alnum(static_cast<unsigned char>(folded[pos - 1]));
    const std::size_t end = pos + alias.size();
    const bool right_ok =
        end >= folded.size() || !is_ascii_alnum(static_cast<unsigned char>(folded[end]));
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

}  // namespace detail_geo

// Longest matching alias wins; ties fall to gazetteer order; no match (or an
// empty location) resolves to Unknown.
inline std::string resolve_country(std::string_view location, const Gazetteer& gz) {
  if (location.empty()) return std::string(kUnknownCountry);
  const std::string folded = ascii_lower_copy(location);
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : gz.entries) {
    if (best && entry.first.size() <= best->first.size()) continue;
    if (detail_geo::contains_alias(folded, entry.first)) best = &entry;
  }
  return best ? best->second : std::string(kUnknownCountry);
}

struct CountrySentiment {
  std::string country;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  bool undefined_ratio() const { return negative == 0; }
  std::optional<double> score() const {
    if (negative == 0) return std::nullopt;
    return static_cast<double>(positive) / static_cast<double>(negative);
  }
};

// Counts positive/negative tweets per resolved country. Unknown locations
// and Neutral/Irrelevant tweets contribute nothing; countries appear once
// they have at least one counted tweet, ordered by name.
inline std::vector<CountrySentiment> country_scores(
    const std::vector<ClassifiedTweet>& tweets, const Gazetteer& gz) {
  std::map<std::string, CountrySentiment> by_country;
  for (const auto& ct : tweets) {
    if (ct.final != FinalLabel::Positive && ct.final != FinalLabel::Negative) continue;
    std::string country =
        resolve_country(ct.tweet.user_location.value_or(""), gz);
    if (country == kUnknownCountry) continue;
    auto& entry = by_country[country];
    entry.country = country;
    if (ct.final == FinalLabel::Positive) ++entry.positive;
    else ++entry.negative;
  }
  std::vector<CountrySentiment> out;
  out.reserve(by_country.size());
  for (auto& [name, cs] : by_country) out.push_back(std::move(cs));
  return out;
}

// ---------------------------------------------------------------------------
// Word frequency reports.
// ---------------------------------------------------------------------------

struct WordFreqReport {
  FinalLabel sentiment = FinalLabel::Positive;
  std::vector<std::pair<std::string, std::uint64_t>> ranked;  // count desc, token asc
};

// Token counts over every tweet with the requested final label, stop words
// removed, ranked by (count desc, token asc), truncated to k (k = 0 keeps
// the full ranking).
inline WordFreqReport top_k_words(const std::vector<ClassifiedTweet>& tweets,
                                  FinalLabel cls, const StopList& stop_en,
                                  const StopList& stop_zh, std::size_t k = 10) {
  if (cls != FinalLabel::Positive && cls != FinalLabel::Negative)
    throw Error("UnknownClass", "word reports cover positive and negative only");
  std::map<std::string, std::uint64_t> counts;
  for (const auto& ct : tweets) {
    if (ct.final != cls) continue;
    if (ct.tweet.language == Language::Other) continue;
    TokenizedDoc doc = tokenize(ct.tweet.id, ct.tweet.text, ct.tweet.language);
    const StopList& stop =
        ct.tweet.language == Language::Chinese ? stop_zh : stop_en;
    for (const auto& tok : doc.tokens)
      if (!stop.terms.count(tok)) ++counts[tok];
  }
  WordFreqReport rep;
  rep.sentiment = cls;
  rep.ranked.assign(counts.begin(), counts.end());
  std::sort(rep.ranked.begin(), rep.ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (k > 0 && rep.ranked.size() > k) rep.ranked.resize(k);
  return rep;
}

// Removes every token present in both vocabularies, preserving each side's
// ranking. Feed full (k=0) reports to mirror the word-cloud construction.
inline std::pair<WordFreqReport, WordFreqReport> distinctive_words(
    const WordFreqReport& pos, const WordFreqReport& neg) {
  std::unordered_map<std::string, bool> in_pos, in_neg;
  for (const auto& [tok, c] : pos.ranked) in_pos[tok] = true;
  for (const auto& [tok, c] : neg.ranked) in_neg[tok] = true;
  std::pair<WordFreqReport, WordFreqReport> out;
  out.first.sentiment = pos.sentiment;
  out.second.sentiment = neg.sentiment;
  for (const auto& e : pos.ranked)
    if (!in_neg.count(e.first)) out.first.ranked.push_back(e);
  for (const auto& e : neg.ranked)
    if (!in_pos.count(e.first)) out.second.ranked.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Classified-corpus JSONL (canonical key order, like the corpus format).
// ---------------------------------------------------------------------------

inline std::string classified_to_jsonl(const ClassifiedTweet& ct) {
  nlohmann::ordered_json j;
  j["id"] = ct.tweet.id;
  j["created_at"] = format_twitter_time(ct.tweet.created_at);
  j["text"] = ct.tweet.text;
  j["user_location"] = ct.tweet.user_location.value_or("");
  j["matched_hashtags"] = ct.tweet.matched_hashtags;
  j["language"] = to_string(ct.tweet.language);
  j["typeface"] = ct.typeface ? std::string(to_string(*ct.typeface)) : "";
  j["final"] = to_string(ct.final);
  return j.dump();
}

inline ClassifiedTweet classified_from_jsonl(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("MalformedJson", "classified line is not a JSON object");
  ClassifiedTweet ct;
  ct.tweet.id = j.at("id").get<std::uint64_t>();
  ct.tweet.created_at =
      parse_twitter_time(j.at("created_at").get_ref<const std::string&>());
  ct.tweet.text = j.at("text").get<std::string>();
  ct.tweet.user_location = j.at("user_location").get<std::string>();
  ct.tweet.matched_hashtags = j.at("matched_hashtags").get<std::vector<std::string>>();
  ct.tweet.language = language_from_string(j.at("language").get_ref<const std::string&>());
  const std::string& tf = j.at("typeface").get_ref<const std::string&>();
  if (!tf.empty()) ct.typeface = typeface_from_string(tf);
  ct.final = final_from_string(j.at("final").get_ref<const std::string&>());
  return ct;
}

}  // namespace opmine

#endif  // OPMINE_AGGREGATION_HPP

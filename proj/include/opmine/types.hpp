#ifndef OPMINE_TYPES_HPP
#define OPMINE_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opmine/error.hpp"

namespace opmine {

enum class Language { English, Chinese, Other };

enum class Polarity3 { Positive, Neutral, Negative };

enum class Typeface { Simplified, Traditional };

// Final outcome of the classifier cascade for one tweet.
enum class FinalLabel { Irrelevant, Neutral, Positive, Negative };

inline std::string_view to_string(Language v) {
  switch (v) {
    case Language::English: return "en";
    case Language::Chinese: return "zh";
    default: return "other";
  }
}

inline std::string_view to_string(Polarity3 v) {
  switch (v) {
    case Polarity3::Positive: return "positive";
    case Polarity3::Neutral: return "neutral";
    default: return "negative";
  }
}

inline std::string_view to_string(Typeface v) {
  return v == Typeface::Simplified ? "simplified" : "traditional";
}

inline std::string_view to_string(FinalLabel v) {
  switch (v) {
    case FinalLabel::Irrelevant: return "irrelevant";
    case FinalLabel::Neutral: return "neutral";
    case FinalLabel::Positive: return "positive";
    default: return "negative";
  }
}

inline Language language_from_string(std::string_view s) {
  if (s == "en") return Language::English;
  if (s == "zh") return Language::Chinese;
  if (s == "other") return Language::Other;
  throw Error("UnknownLabel", "language '" + std::string(s) + "'");
}

inline Polarity3 polarity_from_string(std::string_view s) {
  if (s == "positive") return Polarity3::Positive;
  if (s == "neutral") return Polarity3::Neutral;
  if (s == "negative") return Polarity3::Negative;
  throw Error("UnknownLabel", "polarity '" + std::string(s) + "'");
}

inline Typeface typeface_from_string(std::string_view s) {
  if (s == "simplified") return Typeface::Simplified;
  if (s == "traditional") return Typeface::Traditional;
  throw Error("UnknownLabel", "typeface '" + std::string(s) + "'");
}

inline FinalLabel final_from_string(std::string_view s) {
  if (s == "irrelevant") return FinalLabel::Irrelevant;
  if (s == "neutral") return FinalLabel::Neutral;
  if (s == "positive") return FinalLabel::Positive;
  if (s == "negative") return FinalLabel::Negative;
  throw Error("UnknownLabel", "final label '" + std::string(s) + "'");
}

// One ingested tweet. `created_at` is UTC epoch seconds; `user_location` is
// the author's free-text profile location, absent when the field was missing.
struct RawTweet {
  std::uint64_t id = 0;
  std::int64_t created_at = 0;
  std::string text;
  std::optional<std::string> user_location;
  std::vector<std::string> matched_hashtags;
  Language language = Language::Other;
};

using Corpus = std::vector<RawTweet>;

}  // namespace opmine

#endif  // OPMINE_TYPES_HPP

#ifndef OPMINE_CONFIG_HPP
#define OPMINE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "opmine/corpus.hpp"
#include "opmine/error.hpp"
#include "opmine/hash.hpp"
#include "opmine/io.hpp"

namespace opmine {

// Flat key-value JSON configuration. Unknown keys are rejected; data-file
// paths are resolved relative to the config file and must exist at load.
// The canonical dump is hashed into every output sidecar so reruns are
// auditable.

struct Config {
  std::uint64_t seed = 42;
  double cjk_threshold = 0.30;
  double latin_threshold = 0.80;
  int tau_relevance = 2;
  int tau_subjectivity = 2;
  int tau_polarity = 2;
  double svm_lambda = 1e-4;
  int svm_epochs = 20;
  double test_fraction = 0.2;
  int utc_offset_hours = 8;
  std::string hashtags = "hashtags.txt";
  std::string lexicon_en = "lexicon_en.txt";
  std::string lexicon_zh = "lexicon_zh.txt";
  std::string relevance_lexicon_en = "relevance_en.txt";
  std::string relevance_lexicon_zh = "relevance_zh.txt";
  std::string stopwords_en = "stopwords_en.txt";
  std::string stopwords_zh = "stopwords_zh.txt";
  std::string typeface_map = "st_mapping.tsv";
  std::string gazetteer = "gazetteer.csv";

  LanguageThresholds language_thresholds() const {
    return {cjk_threshold, latin_threshold};
  }
  std::int64_t utc_offset_seconds() const {
    return static_cast<std::int64_t>(utc_offset_hours) * 3600;
  }
};

inline std::string dump_config(const Config& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["cjk_threshold"] = c.cjk_threshold;
  j["latin_threshold"] = c.latin_threshold;
  j["tau_relevance"] = c.tau_relevance;
  j["tau_subjectivity"] = c.tau_subjectivity;
  j["tau_polarity"] = c.tau_polarity;
  j["svm_lambda"] = c.svm_lambda;
  j["svm_epochs"] = c.svm_epochs;
  j["test_fraction"] = c.test_fraction;
  j["utc_offset_hours"] = c.utc_offset_hours;
  j["hashtags"] = c.hashtags;
  j["lexicon_en"] = c.lexicon_en;
  j["lexicon_zh"] = c.lexicon_zh;
  j["relevance_lexicon_en"] = c.relevance_lexicon_en;
  j["relevance_lexicon_zh"] = c.relevance_lexicon_zh;
  j["stopwords_en"] = c.stopwords_en;
  j["stopwords_zh"] = c.stopwords_zh;
  j["typeface_map"] = c.typeface_map;
  j["gazetteer"] = c.gazetteer;
  return j.dump(2) + "\n";
}

inline std::uint64_t config_hash(const Config& c) { return fnv1a64(dump_config(c)); }

inline Config load_config(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("InvalidKey", "config is not a JSON object");

  Config c;
  const auto num = [&](const char* key, auto& out, double lo, double hi) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number())
      throw Error("InvalidKey", std::string(key) + " must be a number");
    double v = it->get<double>();
    if (v < lo || v > hi)
      throw Error("InvalidKey", std::string(key) + " out of range");
    out = static_cast<std::decay_t<decltype(out)>>(v);
  };
  const auto str = [&](const char* key, std::string& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_string())
      throw Error("InvalidKey", std::string(key) + " must be a string");
    out = it->get<std::string>();
  };

  static const std::set<std::string> known = {
      "seed",          "cjk_threshold",  "latin_threshold",
      "tau_relevance", "tau_subjectivity", "tau_polarity",
      "svm_lambda",    "svm_epochs",     "test_fraction",
      "utc_offset_hours", "hashtags",    "lexicon_en",
      "lexicon_zh",    "relevance_lexicon_en", "relevance_lexicon_zh",
      "stopwords_en",  "stopwords_zh",   "typeface_map",
      "gazetteer"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw Error("UnknownKey", key);

  num("seed", c.seed, 0, 1.8e19);
  num("cjk_threshold", c.cjk_threshold, 0.0, 1.0);
  num("latin_threshold", c.latin_threshold, 0.0, 1.0);
  num("tau_relevance", c.tau_relevance, 0, 1e9);
  num("tau_subjectivity", c.tau_subjectivity, 0, 1e9);
  num("tau_polarity", c.tau_polarity, 0, 1e9);
  num("svm_lambda", c.svm_lambda, 1e-12, 1e6);
  num("svm_epochs", c.svm_epochs, 1, 1e6);
  num("test_fraction", c.test_fraction, 1e-9, 1.0 - 1e-9);
  num("utc_offset_hours", c.utc_offset_hours, -14, 14);
  str("hashtags", c.hashtags);
  str("lexicon_en", c.lexicon_en);
  str("lexicon_zh", c.lexicon_zh);
  str("relevance_lexicon_en", c.relevance_lexicon_en);
  str("relevance_lexicon_zh", c.relevance_lexicon_zh);
  str("stopwords_en", c.stopwords_en);
  str("stopwords_zh", c.stopwords_zh);
  str("typeface_map", c.typeface_map);
  str("gazetteer", c.gazetteer);

  // seed uses the full 64-bit range; reparse exactly when present
  if (auto it = j.find("seed"); it != j.end() && it->is_number_unsigned())
    c.seed = it->get<std::uint64_t>();

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  const auto resolve = [&](std::string& p, const char* key) {
    std::filesystem::path fp(p);
    if (fp.is_relative()) fp = base / fp;
    if (!std::filesystem::exists(fp))
      throw Error("InvalidKey", std::string(key) + ": no such file " + fp.string());
    p = fp.string();
  };
  resolve(c.hashtags, "hashtags");
  resolve(c.lexicon_en, "lexicon_en");
  resolve(c.lexicon_zh, "lexicon_zh");
  resolve(c.relevance_lexicon_en, "relevance_lexicon_en");
  resolve(c.relevance_lexicon_zh, "relevance_lexicon_zh");
  resolve(c.stopwords_en, "stopwords_en");
  resolve(c.stopwords_zh, "stopwords_zh");
  resolve(c.typeface_map, "typeface_map");
  resolve(c.gazetteer, "gazetteer");
  return c;
}

}  // namespace opmine

#endif  // OPMINE_CONFIG_HPP

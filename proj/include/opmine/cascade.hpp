#ifndef OPMINE_CASCADE_HPP
#define OPMINE_CASCADE_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opmine/error.hpp"
#include "opmine/io.hpp"
#include "opmine/svm.hpp"
#include "opmine/text.hpp"
#include "opmine/types.hpp"

namespace opmine {

// The four-stage decision chain: relevance gate, typeface split for Chinese,
// subjectivity gate, polarity sign. Every trained stage is a hybrid of a
// lexicon count rule and a linear SVM: a strong enough dictionary signal
// overrides the model, otherwise the margin decides.

enum class Task { Relevance, Subjectivity, Polarity };

inline std::string_view to_string(Task t) {
  switch (t) {
    case Task::Relevance: return "relevance";
    case Task::Subjectivity: return "subjectivity";
    default: return "polarity";
  }
}

inline Task task_from_string(std::string_view s) {
  if (s == "relevance") return Task::Relevance;
  if (s == "subjectivity") return Task::Subjectivity;
  if (s == "polarity") return Task::Polarity;
  throw Error("UnknownLabel", "task '" + std::string(s) + "'");
}

inline std::string stage_name(Task task, Language lang) {
  return std::string(to_string(task)) + "_" + std::string(to_string(lang));
}

struct HybridClassifier {
  LinearModel model;
  int override_threshold = 2;  // tau; lexicon wins when |net| >= max(tau, 1)
};

// Positive class by stage: relevant / subjective / positive sentiment.
// A zero margin resolves to the positive class so the rule is total.
inline bool hybrid_decide(const HybridClassifier& clf, const TokenizedDoc& doc,
                          const Lexicon& lex) {
  const int net = lexicon_net_score(doc, lex);
  if (net != 0 && std::abs(net) >= clf.override_threshold) return net > 0;
  return predict_margin(clf.model, featurize(doc, lex)) >= 0.0;
}

// ---------------------------------------------------------------------------
// Model bundle: one versioned container holding every trained stage.
// Serialization uses fixed key order and the shortest round-trip double
// rendering, so load(save(b)) == b and save(load(f)) == f byte for byte.
// ---------------------------------------------------------------------------

struct ModelBundle {
  std::map<std::string, HybridClassifier> stages;

  const HybridClassifier& stage(Task task, Language lang) const {
    auto it = stages.find(stage_name(task, lang));
    if (it == stages.end())
      throw Error("MissingModel", "bundle has no stage " + stage_name(task, lang));
    return it->second;
  }
  bool has_stage(Task task, Language lang) const {
    return stages.count(stage_name(task, lang)) > 0;
  }
};

inline constexpr int kBundleVersion = 1;

inline std::string bundle_to_json(const ModelBundle& bundle) {
  nlohmann::ordered_json j;
  j["format"] = "opmine-bundle";
  j["version"] = kBundleVersion;
  j["hash_buckets"] = kHashBuckets;
  j["hash_salt"] = kHashSalt;
  nlohmann::ordered_json stages = nlohmann::ordered_json::object();
  for (const auto& [name, clf] : bundle.stages) {
    nlohmann::ordered_json s;
    s["override_threshold"] = clf.override_threshold;
    s["lambda"] = clf.model.hyper.lambda;
    s["epochs"] = clf.model.hyper.epochs;
    s["seed"] = clf.model.hyper.seed;
    s["trained_on"] = clf.model.trained_on;
    s["bias"] = clf.model.bias;
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const auto& [idx, w] : clf.model.weights)
      weights.push_back(nlohmann::ordered_json::array({idx, w}));
    s["weights"] = std::move(weights);
    stages[name] = std::move(s);
  }
  j["stages"] = std::move(stages);
  return j.dump(2) + "\n";
}

inline ModelBundle bundle_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("format", "") != "opmine-bundle")
    throw Error("InvalidData", "not a model bundle");
  if (j.value("version", -1) != kBundleVersion)
    throw Error("InvalidData", "unsupported bundle version");
  if (j.value("hash_salt", std::uint64_t{0}) != kHashSalt ||
      j.value("hash_buckets", 0u) != kHashBuckets)
    throw Error("InvalidData", "bundle hashed with a different feature space");
  ModelBundle bundle;
  for (const auto& [name, s] : j.at("stages").items()) {
    HybridClassifier clf;
    clf.override_threshold = s.at("override_threshold").get<int>();
    clf.model.hyper.lambda = s.at("lambda").get<double>();
    clf.model.hyper.epochs = s.at("epochs").get<int>();
    clf.model.hyper.seed = s.at("seed").get<std::uint64_t>();
    clf.model.trained_on = s.at("trained_on").get<std::string>();
    clf.model.bias = s.at("bias").get<double>();
    for (const auto& entry : s.at("weights"))
      clf.model.weights.emplace_back(entry.at(0).get<std::uint32_t>(),
                                     entry.at(1).get<double>());
    bundle.stages.emplace(name, std::move(clf));
  }
  return bundle;
}

inline void save_bundle(const std::string& path, const ModelBundle& bundle) {
  write_file(path, bundle_to_json(bundle));
}

inline ModelBundle load_bundle(const std::string& path) {
  return bundle_from_json(read_file(path));
}

// ---------------------------------------------------------------------------
// Cascade execution.
// ---------------------------------------------------------------------------

// Per-language dictionary resources for the three trained stages. The
// subjectivity lexicon is the union of the sentiment sides: any polarity hit
// is evidence of affect, and there is no lexical evidence of objectivity.
struct LanguageResources {
  Lexicon sentiment;
  Lexicon relevance;
  Lexicon subjectivity;
};

struct CascadeResources {
  LanguageResources english;
  LanguageResources chinese;
  TypefaceTable typeface;

  const LanguageResources& for_language(Language lang) const {
    if (lang == Language::English) return english;
    if (lang == Language::Chinese) return chinese;
    throw Error("UnsupportedLanguage", "no resources for 'other'");
  }
};

inline const Lexicon& stage_lexicon(const CascadeResources& res, Task task,
                                    Language lang) {
  const LanguageResources& lr = res.for_language(lang);
  switch (task) {
    case Task::Relevance: return lr.relevance;
    case Task::Subjectivity: return lr.subjectivity;
    default: return lr.sentiment;
  }
}

struct CascadeOutcome {
  bool relevance = false;
  std::optional<Typeface> typeface;
  std::optional<bool> subjective;
  std::optional<Polarity3> polarity;  // Positive or Negative, never Neutral
  FinalLabel final = FinalLabel::Irrelevant;
};

inline CascadeOutcome classify_cascade(const RawTweet& tweet,
                                       const ModelBundle& bundle,
                                       const CascadeResources& res) {
  if (tweet.language == Language::Other)
    throw Error("UnsupportedLanguage", "cascade handles English and Chinese only");
  const Language lang = tweet.language;
  TokenizedDoc doc = tokenize(tweet.id, tweet.text, lang);

  CascadeOutcome out;
  out.relevance = hybrid_decide(bundle.stage(Task::Relevance, lang), doc,
                                stage_lexicon(res, Task::Relevance, lang));
  if (!out.relevance) {
    out.final = FinalLabel::Irrelevant;
    return out;
  }
  if (lang == Language::Chinese) {
    try {
      out.typeface = detect_typeface(tweet.text, res.typeface);
    } catch (const Error&) {
      // a Chinese-partitioned tweet with no CJK content keeps no typeface
    }
  }
  out.subjective = hybrid_decide(bundle.stage(Task::Subjectivity, lang), doc,
                                 stage_lexicon(res, Task::Subjectivity, lang));
  if (!*out.subjective) {
    out.final = FinalLabel::Neutral;
    return out;
  }
  const bool positive = hybrid_decide(bundle.stage(Task::Polarity, lang), doc,
                                      stage_lexicon(res, Task::Polarity, lang));
  out.polarity = positive ? Polarity3::Positive : Polarity3::Negative;
  out.final = positive ? FinalLabel::Positive : FinalLabel::Negative;
  return out;
}

}  // namespace opmine

#endif  // OPMINE_CASCADE_HPP

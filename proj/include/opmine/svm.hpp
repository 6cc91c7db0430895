#ifndef OPMINE_SVM_HPP
#define OPMINE_SVM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opmine/error.hpp"
#include "opmine/hash.hpp"
#include "opmine/rng.hpp"
#include "opmine/text.hpp"

namespace opmine {

// Hashed bag-of-tokens features plus two dense lexicon-count features, and a
// Pegasos-style hinge-loss trainer. Everything is deterministic for a fixed
// seed: one weight vector layout, one shuffle order, no floating-point
// reassociation across runs.

inline constexpr std::uint32_t kHashBuckets = 1u << 20;
inline constexpr std::uint32_t kLexPosIndex = kHashBuckets;
inline constexpr std::uint32_t kLexNegIndex = kHashBuckets + 1;
inline constexpr std::uint32_t kFeatureSpace = kHashBuckets + 2;
inline constexpr std::uint64_t kHashSalt = 0x5EED5A17ULL;

// Sparse vector, indices strictly increasing.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  double dot(const FeatureVector& other) const {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < entries.size() && j < other.entries.size()) {
      if (entries[i].first < other.entries[j].first) ++i;
      else if (entries[i].first > other.entries[j].first) ++j;
      else sum += entries[i++].second * other.entries[j++].second;
    }
    return sum;
  }

  double norm2() const {
    double s = 0.0;
    for (const auto& [idx, w] : entries) s += w * w;
    return s;
  }
};

// Token counts hashed into 2^20 buckets with a fixed salt, L2-normalized over
// the hashed block; lexicon occurrence counts appended unnormalized.
inline FeatureVector featurize(const TokenizedDoc& doc, const Lexicon& lex) {
  std::map<std::uint32_t, double> acc;
  for (const auto& tok : doc.tokens) {
    std::uint32_t idx = static_cast<std::uint32_t>(fnv1a64(tok, kHashSalt) % kHashBuckets);
    acc[idx] += 1.0;
  }
  double norm = 0.0;
  for (const auto& [idx, w] : acc) norm += w * w;
  norm = std::sqrt(norm);
  FeatureVector v;
  v.entries.reserve(acc.size() + 2);
  for (const auto& [idx, w] : acc) v.entries.emplace_back(idx, w / norm);
  LexiconCounts lc = lexicon_counts(doc, lex);
  if (lc.positive != 0) v.entries.emplace_back(kLexPosIndex, static_cast<double>(lc.positive));
  if (lc.negative != 0) v.entries.emplace_back(kLexNegIndex, static_cast<double>(lc.negative));
  return v;
}

struct Hyperparameters {
  double lambda = 1e-4;  // L2 regularization strength
  int epochs = 20;
  std::uint64_t seed = 1;
};

struct LinearModel {
  std::vector<std::pair<std::uint32_t, double>> weights;  // sparse, sorted
  double bias = 0.0;
  std::string trained_on;  // dataset fingerprint (hex)
  Hyperparameters hyper;
};

inline double predict_margin(const LinearModel& model, const FeatureVector& x) {
  double sum = model.bias;
  std::size_t i = 0, j = 0;
  while (i < model.weights.size() && j < x.entries.size()) {
    if (model.weights[i].first < x.entries[j].first) ++i;
    else if (model.weights[i].first > x.entries[j].first) ++j;
    else sum += model.weights[i++].second * x.entries[j++].second;
  }
  return sum;
}

using LabeledExample = std::pair<FeatureVector, int>;  // label in {+1, -1}

// lambda/2 * ||w||^2 + mean hinge loss; the quantity the trainer descends.
inline double training_objective(const LinearModel& model,
                                 const std::vector<LabeledExample>& data) {
  double norm2 = 0.0;
  for (const auto& [idx, w] : model.weights) norm2 += w * w;
  double loss = 0.0;
  for (const auto& [x, y] : data)
    loss += std::max(0.0, 1.0 - y * predict_margin(model, x));
  return 0.5 * model.hyper.lambda * norm2 + loss / static_cast<double>(data.size());
}

// Seeded stochastic subgradient descent on the regularized hinge objective,
// Pegasos step schedule eta_t = 1/(lambda*t). The L2 shrink is carried as a
// scalar multiplier so each step stays O(nnz). Bias is unregularized.
inline LinearModel train_linear_svm(const std::vector<LabeledExample>& data,
                                    const Hyperparameters& hyper) {
  if (data.empty()) throw Error("NoData", "no training examples");
  bool has_pos = false, has_neg = false;
  for (const auto& [x, y] : data) {
    if (y > 0) has_pos = true;
    else has_neg = true;
  }
  if (!has_pos || !has_neg)
    throw Error("SingleClassData", "training data has only one class");

  std::vector<double> w(kFeatureSpace, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  const double lambda = hyper.lambda;
  SplitMix64 rng(derive_seed(hyper.seed, 0x747261696EULL));
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& [x, y] = data[order[k]];
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      double margin = bias;
      for (const auto& [idx, val] : x.entries) margin += w[idx] * scale * val;
      scale *= 1.0 - eta * lambda;
      if (scale < 1e-9) {  // t=1 shrinks the (still zero) vector to exactly 0
        for (double& v : w) v *= scale;
        scale = 1.0;
      }
      if (y * margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [idx, val] : x.entries) w[idx] += step * val;
        bias += eta * y;
      }
    }
  }

  LinearModel model;
  model.bias = bias;
  model.hyper = hyper;
  for (std::uint32_t i = 0; i < kFeatureSpace; ++i)
    if (w[i] != 0.0) model.weights.emplace_back(i, w[i] * scale);
  return model;
}

// Fingerprint of a training set: order-sensitive hash over labels and sparse
// entries, recorded in the model for audit.
inline std::string dataset_fingerprint(const std::vector<LabeledExample>& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const auto& [x, y] : data) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "|%d", y);
    h = fnv1a64_combine(h, buf);
    for (const auto& [idx, val] : x.entries) {
      std::snprintf(buf, sizeof(buf), ",%u:%.17g", idx, val);
      h = fnv1a64_combine(h, buf);
    }
  }
  return hex64(h);
}

}  // namespace opmine

#endif  // OPMINE_SVM_HPP

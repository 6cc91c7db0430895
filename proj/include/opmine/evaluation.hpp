#ifndef OPMINE_EVALUATION_HPP
#define OPMINE_EVALUATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opmine/error.hpp"
#include "opmine/rng.hpp"

namespace opmine {

// Confusion-matrix scoring with per-class precision/recall/F1 and accuracy.
// Zero denominators yield 0, never NaN, so report generation is total.

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::uint64_t>> counts;  // rows gold, columns predicted

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& row : counts)
      for (auto c : row) t += c;
    return t;
  }

  int index_of(const std::string& cls) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i] == cls) return static_cast<int>(i);
    throw Error("UnknownLabel", "class '" + cls + "' not in matrix");
  }
};

inline ConfusionMatrix confusion(const std::vector<std::string>& classes,
                                 const std::vector<std::string>& gold,
                                 const std::vector<std::string>& pred) {
  if (gold.size() != pred.size())
    throw Error("LengthMismatch", std::to_string(gold.size()) + " gold vs " +
                                      std::to_string(pred.size()) + " predicted");
  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(classes.size(), std::vector<std::uint64_t>(classes.size(), 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    int g = cm.index_of(gold[i]);
    int p = cm.index_of(pred[i]);
    ++cm.counts[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)];
  }
  return cm;
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline ClassMetrics class_metrics(const ConfusionMatrix& cm, const std::string& cls) {
  const auto k = static_cast<std::size_t>(cm.index_of(cls));
  std::uint64_t tp = cm.counts[k][k], fp = 0, fn = 0;
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    if (i == k) continue;
    fp += cm.counts[i][k];
    fn += cm.counts[k][i];
  }
  ClassMetrics m;
  m.precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

inline double accuracy(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw Error("EmptyMatrix", "no evaluated items");
  std::uint64_t trace = 0;
  for (std::size_t i = 0; i < cm.classes.size(); ++i) trace += cm.counts[i][i];
  return static_cast<double>(trace) / static_cast<double>(total);
}

struct EvalReport {
  std::string task;
  std::vector<std::pair<std::string, ClassMetrics>> per_class;
  double accuracy = 0.0;
  std::string dataset_fingerprint;
  std::string split;  // e.g. "stratified 80/20 seed=42"
};

inline EvalReport evaluate_predictions(const std::string& task,
                                       const std::vector<std::string>& classes,
                                       const std::vector<std::string>& gold,
                                       const std::vector<std::string>& pred) {
  ConfusionMatrix cm = confusion(classes, gold, pred);
  EvalReport rep;
  rep.task = task;
  for (const auto& cls : classes) rep.per_class.emplace_back(cls, class_metrics(cm, cls));
  rep.accuracy = accuracy(cm);
  return rep;
}

// Deterministic stratified split: per-class seeded shuffle, then the rounded
// test share is taken from each class (clamped so both sides stay nonempty).
// Items keep their dataset order within each side.
template <typename T, typename ClassOf>
std::pair<std::vector<T>, std::vector<T>> stratified_split(const std::vector<T>& data,
                                                           double test_fraction,
                                                           std::uint64_t seed,
                                                           ClassOf class_of) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error("OutOfRange", "test_fraction must be in (0,1)");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i)
    by_class[std::string(class_of(data[i]))].push_back(i);

  std::vector<bool> in_test(data.size(), false);
  std::uint64_t class_no = 0;
  for (auto& [cls, idx] : by_class) {
    if (idx.size() < 2)
      throw Error("ClassTooSmall", "class '" + cls + "' has " +
                                       std::to_string(idx.size()) + " item(s)");
    SplitMix64 rng(derive_seed(seed, 0x53504C4954ULL, class_no++));
    rng.shuffle(idx);
    auto want = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(idx.size())));
    want = std::clamp<std::size_t>(want, 1, idx.size() - 1);
    for (std::size_t k = 0; k < want; ++k) in_test[idx[k]] = true;
  }
  std::pair<std::vector<T>, std::vector<T>> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    (in_test[i] ? out.second : out.first).push_back(data[i]);
  return out;
}

}  // namespace opmine

#endif  // OPMINE_EVALUATION_HPP

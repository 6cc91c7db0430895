#ifndef OPMINE_ANNOTATION_HPP
#define OPMINE_ANNOTATION_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opmine/csv.hpp"
#include "opmine/error.hpp"
#include "opmine/io.hpp"
#include "opmine/rng.hpp"
#include "opmine/types.hpp"

namespace opmine {

// Per-labeler judgments and their amalgamation into gold labels by majority
// vote. Ties are broken by a seeded uniform draw over the tied candidates
// after sorting them canonically, so ballot order never matters. Each
// (tweet, decision) pair gets its own generator substream derived from the
// master seed, which keeps per-tweet amalgamation pure and parallelizable.

struct Ballot {
  std::uint64_t tweet_id = 0;
  int labeler_id = 0;
  bool relevant = false;
  std::optional<int> score;          // -2..+2, present iff relevant
  std::optional<Typeface> typeface;  // Chinese tweets only
};

struct GoldLabel {
  std::uint64_t tweet_id = 0;
  bool relevant = false;
  std::optional<Polarity3> polarity;
  std::optional<Typeface> typeface;
  std::string relevance_ratio;
  std::string polarity_ratio;
  std::string typeface_ratio;
  bool tie_broken = false;
};

inline Polarity3 collapse_score(int score) {
  if (score > 2 || score < -2)
    throw Error("OutOfRange", "score " + std::to_string(score));
  if (score > 0) return Polarity3::Positive;
  if (score < 0) return Polarity3::Negative;
  return Polarity3::Neutral;
}

// Vote-ratio buckets used by the agreement and dissident reports. The same
// buckets cover four- and three-participant votes (4:0 and 3:0 are both
// "unanimous", 3:1 and 2:1 both "majority", and so on).
enum class RatioClass { Unanimous = 0, Majority = 1, Tie = 2, TwoOneOne = 3, AllDiffer = 4 };
inline constexpr int kRatioClassCount = 5;

namespace detail_vote {

template <typename T>
struct VoteOutcome {
  T value;
  std::string ratio;
  bool tie_broken = false;
};

// Sorted-descending per-value counts; unanimity is rendered with an explicit
// zero ("4:0", "3:0") to match the report layout.
inline std::string ratio_descriptor(std::vector<int> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<int>());
  if (counts.size() == 1) counts.push_back(0);
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(counts[i]);
  }
  return out;
}

inline RatioClass classify_counts(std::vector<int> counts, int participants) {
  std::sort(counts.begin(), counts.end(), std::greater<int>());
  if (counts.size() == 1) return RatioClass::Unanimous;
  if (counts[0] == counts[1]) {
    if (static_cast<int>(counts.size()) == participants && participants >= 3)
      return RatioClass::AllDiffer;
    return RatioClass::Tie;
  }
  return counts.size() == 2 ? RatioClass::Majority : RatioClass::TwoOneOne;
}

// Plurality over arbitrary comparable values. Tied leaders are sorted by
// value before the draw so the outcome is independent of ballot order.
template <typename T>
VoteOutcome<T> plurality(const std::vector<T>& votes, SplitMix64& rng) {
  std::map<T, int> tally;
  for (const T& v : votes) ++tally[v];
  std::vector<int> counts;
  int best = 0;
  for (const auto& [v, c] : tally) {
    counts.push_back(c);
    best = std::max(best, c);
  }
  std::vector<T> leaders;
  for (const auto& [v, c] : tally)
    if (c == best) leaders.push_back(v);  // map order = canonical order
  VoteOutcome<T> out;
  out.ratio = ratio_descriptor(counts);
  if (leaders.size() == 1) {
    out.value = leaders.front();
  } else {
    out.value = leaders[static_cast<std::size_t>(rng.below(leaders.size()))];
    out.tie_broken = true;
  }
  return out;
}

template <typename T>
RatioClass classify_votes(const std::vector<T>& votes) {
  std::map<T, int> tally;
  for (const T& v : votes) ++tally[v];
  std::vector<int> counts;
  for (const auto& [v, c] : tally) counts.push_back(c);
  return classify_counts(counts, static_cast<int>(votes.size()));
}

}  // namespace detail_vote

// Substream ids so a tie in one decision never shifts the draw of another.
enum class Decision : std::uint64_t { Relevance = 0, PolarityVote = 1, TypefaceVote = 2 };

inline SplitMix64 vote_rng(std::uint64_t seed, std::uint64_t tweet_id, Decision d) {
  return SplitMix64(derive_seed(seed, tweet_id, static_cast<std::uint64_t>(d)));
}

struct RelevanceResult {
  bool relevant = false;
  std::string ratio;
  bool tie_broken = false;
};

inline RelevanceResult amalgamate_relevance(const std::vector<Ballot>& ballots,
                                            SplitMix64& rng) {
  if (ballots.empty()) throw Error("EmptyBallotSet", "no ballots for tweet");
  std::vector<bool> votes;
  for (const auto& b : ballots) votes.push_back(b.relevant);
  auto out = detail_vote::plurality(votes, rng);
  return {out.value, out.ratio, out.tie_broken};
}

struct PolarityResult {
  std::optional<Polarity3> polarity;
  std::string ratio;
  bool tie_broken = false;
};

// Only ballots that voted relevant and carry a score participate; an
// irrelevant vote is an abstention. Returns an absent polarity when the
// amalgamated relevance is false.
inline PolarityResult amalgamate_polarity(const std::vector<Ballot>& ballots,
                                          bool relevance, SplitMix64& rng) {
  if (!relevance) return {};
  std::vector<Polarity3> votes;
  for (const auto& b : ballots)
    if (b.relevant && b.score) votes.push_back(collapse_score(*b.score));
  if (votes.empty())
    throw Error("NoParticipants", "relevant tweet with no scored ballots");
  auto out = detail_vote::plurality(votes, rng);
  return {out.value, out.ratio, out.tie_broken};
}

struct TypefaceResult {
  std::optional<Typeface> typeface;
  std::string ratio;
  bool tie_broken = false;
};

inline TypefaceResult amalgamate_typeface(const std::vector<Ballot>& ballots,
                                          SplitMix64& rng) {
  std::vector<Typeface> votes;
  for (const auto& b : ballots)
    if (b.typeface) votes.push_back(*b.typeface);
  if (votes.empty()) return {};
  auto out = detail_vote::plurality(votes, rng);
  return {out.value, out.ratio, out.tie_broken};
}

inline GoldLabel amalgamate_tweet(std::uint64_t tweet_id,
                                  const std::vector<Ballot>& ballots,
                                  std::uint64_t seed) {
  GoldLabel g;
  g.tweet_id = tweet_id;
  auto rng_rel = vote_rng(seed, tweet_id, Decision::Relevance);
  auto rel = amalgamate_relevance(ballots, rng_rel);
  g.relevant = rel.relevant;
  g.relevance_ratio = rel.ratio;
  auto rng_pol = vote_rng(seed, tweet_id, Decision::PolarityVote);
  auto pol = amalgamate_polarity(ballots, rel.relevant, rng_pol);
  g.polarity = pol.polarity;
  g.polarity_ratio = pol.ratio;
  auto rng_tf = vote_rng(seed, tweet_id, Decision::TypefaceVote);
  auto tf = amalgamate_typeface(ballots, rng_tf);
  g.typeface = tf.typeface;
  g.typeface_ratio = tf.ratio;
  g.tie_broken = rel.tie_broken || pol.tie_broken || tf.tie_broken;
  return g;
}

inline std::map<std::uint64_t, std::vector<Ballot>> group_ballots(
    const std::vector<Ballot>& ballots) {
  std::map<std::uint64_t, std::vector<Ballot>> grouped;
  for (const auto& b : ballots) grouped[b.tweet_id].push_back(b);
  return grouped;
}

inline std::vector<GoldLabel> amalgamate_all(const std::vector<Ballot>& ballots,
                                             std::uint64_t seed) {
  std::vector<GoldLabel> out;
  for (const auto& [id, group] : group_ballots(ballots))
    out.push_back(amalgamate_tweet(id, group, seed));
  return out;
}

// ---------------------------------------------------------------------------
// Agreement report (voting-ratio cross-tabulation).
//
// Sentiment rows are split by how the relevance vote went (unanimous vs 3:1
// majority) and cover only tweets whose amalgamated relevance is true;
// tie-broken 2:2 relevance never reaches a sentiment row.
// ---------------------------------------------------------------------------

struct AgreementReport {
  struct Row {
    std::string name;
    std::array<std::uint64_t, kRatioClassCount> counts{};
    std::uint64_t total() const {
      std::uint64_t t = 0;
      for (auto c : counts) t += c;
      return t;
    }
  };
  std::vector<Row> rows;

  const Row* find(std::string_view name) const {
    for (const auto& r : rows)
      if (r.name == name) return &r;
    return nullptr;
  }
};

inline AgreementReport build_agreement_report(
    const std::map<std::uint64_t, std::vector<Ballot>>& grouped) {
  using detail_vote::classify_votes;
  AgreementReport rep;
  rep.rows = {{"relevance", {}},        {"sentiment5_rel_unanimous", {}},
              {"sentiment5_rel_majority", {}}, {"sentiment3_rel_unanimous", {}},
              {"sentiment3_rel_majority", {}}, {"typeface", {}}};
  auto& relevance = rep.rows[0];
  auto& s5u = rep.rows[1];
  auto& s5m = rep.rows[2];
  auto& s3u = rep.rows[3];
  auto& s3m = rep.rows[4];
  auto& typeface = rep.rows[5];

  for (const auto& [id, ballots] : grouped) {
    std::vector<bool> rel_votes;
    for (const auto& b : ballots) rel_votes.push_back(b.relevant);
    RatioClass rel_class = classify_votes(rel_votes);
    ++relevance.counts[static_cast<std::size_t>(rel_class)];

    int rel_yes = 0;
    for (bool v : rel_votes) rel_yes += v ? 1 : 0;
    const bool majority_relevant = 2 * rel_yes > static_cast<int>(rel_votes.size());

    if (majority_relevant &&
        (rel_class == RatioClass::Unanimous || rel_class == RatioClass::Majority)) {
      std::vector<int> scores;
      for (const auto& b : ballots)
        if (b.relevant && b.score) scores.push_back(*b.score);
      if (!scores.empty()) {
        std::vector<Polarity3> collapsed;
        for (int s : scores) collapsed.push_back(collapse_score(s));
        auto& s5 = rel_class == RatioClass::Unanimous ? s5u : s5m;
        auto& s3 = rel_class == RatioClass::Unanimous ? s3u : s3m;
        ++s5.counts[static_cast<std::size_t>(classify_votes(scores))];
        ++s3.counts[static_cast<std::size_t>(classify_votes(collapsed))];
      }
    }

    std::vector<Typeface> tf_votes;
    for (const auto& b : ballots)
      if (b.typeface) tf_votes.push_back(*b.typeface);
    if (!tf_votes.empty())
      ++typeface.counts[static_cast<std::size_t>(classify_votes(tf_votes))];
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dissident report: how often one labeler ends up in the minority of the
// contested (3:1 / 2:1) votes they took part in. Only strict-majority
// contested votes count, so the outcome needs no tie-breaking.
// ---------------------------------------------------------------------------

struct DissidentReport {
  struct Category {
    std::string name;
    std::uint64_t participated = 0;  // contested votes the labeler was part of
    std::uint64_t minority = 0;      // ... where their vote lost
    double ratio() const {
      return participated == 0
                 ? 0.0
                 : static_cast<double>(minority) / static_cast<double>(participated);
    }
  };
  int labeler_id = 0;
  std::vector<Category> categories;
  std::uint64_t total_participated = 0;
  std::uint64_t total_minority = 0;
  double overall_ratio() const {
    return total_participated == 0
               ? 0.0
               : static_cast<double>(total_minority) /
                     static_cast<double>(total_participated);
  }
};

inline DissidentReport build_dissident_report(
    int labeler_id, const std::map<std::uint64_t, std::vector<Ballot>>& grouped) {
  using detail_vote::classify_votes;
  DissidentReport rep;
  rep.labeler_id = labeler_id;
  rep.categories = {{"relevance"},
                    {"sentiment3_rel_unanimous"},
                    {"sentiment3_rel_majority"},
                    {"typeface"}};
  auto& rel_cat = rep.categories[0];
  auto& s3u_cat = rep.categories[1];
  auto& s3m_cat = rep.categories[2];
  auto& tf_cat = rep.categories[3];

  for (const auto& [id, ballots] : grouped) {
    const Ballot* mine = nullptr;
    for (const auto& b : ballots)
      if (b.labeler_id == labeler_id) mine = &b;

    std::vector<bool> rel_votes;
    int rel_yes = 0;
    for (const auto& b : ballots) {
      rel_votes.push_back(b.relevant);
      rel_yes += b.relevant ? 1 : 0;
    }
    RatioClass rel_class = classify_votes(rel_votes);
    const bool majority_relevant = 2 * rel_yes > static_cast<int>(rel_votes.size());

    if (mine && rel_class == RatioClass::Majority) {
      ++rel_cat.participated;
      if (mine->relevant != majority_relevant) ++rel_cat.minority;
    }

    if (majority_relevant &&
        (rel_class == RatioClass::Unanimous || rel_class == RatioClass::Majority)) {
      std::vector<Polarity3> collapsed;
      for (const auto& b : ballots)
        if (b.relevant && b.score) collapsed.push_back(collapse_score(*b.score));
      if (!collapsed.empty() &&
          classify_votes(collapsed) == RatioClass::Majority && mine &&
          mine->relevant && mine->score) {
        std::map<Polarity3, int> tally;
        for (auto p : collapsed) ++tally[p];
        Polarity3 winner = Polarity3::Positive;
        int best = -1;
        for (const auto& [p, c] : tally)
          if (c > best) {
            best = c;
            winner = p;
          }
        auto& cat = rel_class == RatioClass::Unanimous ? s3u_cat : s3m_cat;
        ++cat.participated;
        if (collapse_score(*mine->score) != winner) ++cat.minority;
      }
    }

    std::vector<Typeface> tf_votes;
    for (const auto& b : ballots)
      if (b.typeface) tf_votes.push_back(*b.typeface);
    if (mine && mine->typeface && classify_votes(tf_votes) == RatioClass::Majority) {
      std::map<Typeface, int> tally;
      for (auto t : tf_votes) ++tally[t];
      Typeface winner = Typeface::Simplified;
      int best = -1;
      for (const auto& [t, c] : tally)
        if (c > best) {
          best = c;
          winner = t;
        }
      ++tf_cat.participated;
      if (*mine->typeface != winner) ++tf_cat.minority;
    }
  }

  for (const auto& c : rep.categories) {
    rep.total_participated += c.participated;
    rep.total_minority += c.minority;
  }
  if (rep.total_participated == 0)
    throw Error("NoContestedVotes",
                "labeler " + std::to_string(labeler_id) +
                    " participated in no contested votes");
  return rep;
}

// ---------------------------------------------------------------------------
// Ballot / gold CSV formats.
// ---------------------------------------------------------------------------

inline std::vector<Ballot> ballots_from_csv(const CsvTable& t) {
  const std::vector<std::string> expect = {"tweet_id", "labeler_id", "relevant",
                                           "score", "typeface"};
  if (t.header != expect)
    throw Error("InvalidData", "ballot CSV header mismatch");
  std::vector<Ballot> out;
  for (const auto& row : t.rows) {
    if (row.size() != 5)
      throw Error("InvalidData", "ballot row with wrong field count");
    Ballot b;
    b.tweet_id = std::stoull(row[0]);
    b.labeler_id = std::stoi(row[1]);
    if (row[2] == "true") b.relevant = true;
    else if (row[2] == "false") b.relevant = false;
    else throw Error("InvalidData", "relevant must be true/false");
    if (!row[3].empty()) b.score = std::stoi(row[3]);
    if (b.score && !b.relevant)
      throw Error("InvalidData", "score present on an irrelevant ballot");
    if (b.score && (*b.score < -2 || *b.score > 2))
      throw Error("OutOfRange", "score " + row[3]);
    if (!row[4].empty()) b.typeface = typeface_from_string(row[4]);
    out.push_back(b);
  }
  return out;
}

inline std::vector<Ballot> load_ballots(const std::string& path) {
  return ballots_from_csv(read_csv_file(path));
}

inline std::string ballot_to_csv_row(const Ballot& b) {
  std::vector<std::string> f = {
      std::to_string(b.tweet_id), std::to_string(b.labeler_id),
      b.relevant ? "true" : "false", b.score ? std::to_string(*b.score) : "",
      b.typeface ? std::string(to_string(*b.typeface)) : ""};
  return csv_join(f);
}

inline constexpr std::string_view kBallotCsvHeader =
    "tweet_id,labeler_id,relevant,score,typeface";

inline constexpr std::string_view kGoldCsvHeader =
    "tweet_id,relevant,polarity,typeface,relevance_ratio,polarity_ratio,"
    "typeface_ratio,tie_broken";

inline std::string gold_to_csv_row(const GoldLabel& g) {
  std::vector<std::string> f = {
      std::to_string(g.tweet_id),
      g.relevant ? "true" : "false",
      g.polarity ? std::string(to_string(*g.polarity)) : "",
      g.typeface ? std::string(to_string(*g.typeface)) : "",
      g.relevance_ratio,
      g.polarity_ratio,
      g.typeface_ratio,
      g.tie_broken ? "true" : "false"};
  return csv_join(f);
}

inline std::vector<GoldLabel> gold_from_csv(const CsvTable& t) {
  std::vector<GoldLabel> out;
  for (const auto& row : t.rows) {
    if (row.size() != 8) throw Error("InvalidData", "gold row with wrong field count");
    GoldLabel g;
    g.tweet_id = std::stoull(row[0]);
    g.relevant = row[1] == "true";
    if (!row[2].empty()) g.polarity = polarity_from_string(row[2]);
    if (!row[3].empty()) g.typeface = typeface_from_string(row[3]);
    g.relevance_ratio = row[4];
    g.polarity_ratio = row[5];
    g.typeface_ratio = row[6];
    g.tie_broken = row[7] == "true";
    out.push_back(g);
  }
  return out;
}

inline std::vector<GoldLabel> load_gold(const std::string& path) {
  return gold_from_csv(read_csv_file(path));
}

}  // namespace opmine

#endif  // OPMINE_ANNOTATION_HPP

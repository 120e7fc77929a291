#include "valemo/recommender.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "valemo/error.hpp"
#include "valemo/moral_mapping.hpp"

namespace valemo {

std::string_view to_string(RecommendMode mode) { return mode == RecommendMode::similar ? "similar" : "opposite"; }

RecommendMode recommend_mode_from_string(std::string_view text) {
  if (text == "similar") return RecommendMode::similar;
  if (text == "opposite") return RecommendMode::opposite;
  throw DataError("unknown recommendation mode '" + std::string(text) + "'");
}

namespace {

void require_labels(const Classification& seed) {
  if (seed.labels.empty()) throw DataError("unclassifiable seed: item '" + seed.item_id + "' has no labels");
}

std::optional<ValuePole> pole_of(const LabelExplanation& label) {
  if (!label.value.empty()) return value_pole_from_name(label.value);
  const auto dash = label.label.find('-');
  return value_pole_from_name(std::string_view(label.label).substr(0, dash));
}

std::string emotion_of(const LabelExplanation& label) {
  if (!label.emotion.empty()) return label.emotion;
  const auto dash = label.label.find('-');
  return dash == std::string::npos ? std::string{} : label.label.substr(dash + 1);
}

void finish(std::vector<RankedItem>& ranked, const RecommendOptions& options, bool use_emotions) {
  std::sort(ranked.begin(), ranked.end(), [&](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    if (use_emotions && a.emotion_oppositions != b.emotion_oppositions) {
      return a.emotion_oppositions > b.emotion_oppositions;
    }
    return a.item_id < b.item_id;
  });
  if (ranked.size() > options.limit) ranked.resize(options.limit);
}

}  // namespace

Recommendation similar_items(const Classification& seed, const std::vector<Classification>& catalog,
                             const RecommendOptions& options) {
  require_labels(seed);
  const auto seed_names = seed.label_names();
  const std::set<std::string> seed_labels(seed_names.begin(), seed_names.end());

  Recommendation rec{seed.item_id, RecommendMode::similar, {}};
  for (const auto& item : catalog) {
    if (item.item_id == seed.item_id) continue;
    const auto names = item.label_names();
    const std::set<std::string> labels(names.begin(), names.end());
    std::vector<std::string> shared;
    std::set_intersection(seed_labels.begin(), seed_labels.end(), labels.begin(), labels.end(),
                          std::back_inserter(shared));
    if (shared.empty()) continue;
    std::set<std::string> all = seed_labels;
    all.insert(labels.begin(), labels.end());
    rec.ranked.push_back(
        {item.item_id, static_cast<double>(shared.size()) / static_cast<double>(all.size()), shared, 0});
  }
  finish(rec.ranked, options, false);
  return rec;
}

Recommendation opposite_items(const Classification& seed, const std::vector<Classification>& catalog,
                              const RecommendOptions& options) {
  require_labels(seed);
  std::set<ValuePole> opposed_poles;
  std::vector<std::string> seed_emotions;
  for (const auto& label : seed.labels) {
    if (auto pole = pole_of(label)) opposed_poles.insert(opposite_value_pole(*pole));
    seed_emotions.push_back(emotion_of(label));
  }

  Recommendation rec{seed.item_id, RecommendMode::opposite, {}};
  for (const auto& item : catalog) {
    if (item.item_id == seed.item_id || item.labels.empty()) continue;
    RankedItem ranked{item.item_id, 0.0, {}, 0};
    for (const auto& label : item.labels) {
      const auto pole = pole_of(label);
      if (!pole || !opposed_poles.count(*pole)) continue;
      ranked.labels.push_back(label.label);
      const auto emotion = emotion_of(label);
      for (const auto& seed_emotion : seed_emotions) {
        if (is_known_emotion(seed_emotion) && is_known_emotion(emotion) && emotions_opposed(seed_emotion, emotion)) {
          ++ranked.emotion_oppositions;
        }
      }
    }
    if (ranked.labels.empty()) continue;
    // Hits are a subset of the item's labels, so the union is the label set itself.
    ranked.score = static_cast<double>(ranked.labels.size()) / static_cast<double>(item.labels.size());
    std::sort(ranked.labels.begin(), ranked.labels.end());
    rec.ranked.push_back(std::move(ranked));
  }
  finish(rec.ranked, options, options.emotion_tiebreak);
  return rec;
}

nlohmann::json to_json(const Recommendation& rec) {
  nlohmann::json ranked = nlohmann::json::array();
  for (const auto& r : rec.ranked) {
    nlohmann::json entry{{"item_id", r.item_id}, {"score", r.score}, {"labels", r.labels}};
    if (rec.mode == RecommendMode::opposite) entry["emotion_oppositions"] = r.emotion_oppositions;
    ranked.push_back(std::move(entry));
  }
  return {{"seed_id", rec.seed_id}, {"mode", to_string(rec.mode)}, {"ranked", ranked}};
}

}  // namespace valemo

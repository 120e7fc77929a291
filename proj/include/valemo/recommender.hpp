#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "valemo/classifier.hpp"

namespace valemo {

enum class RecommendMode { similar, opposite };

std::string_view to_string(RecommendMode mode);
RecommendMode recommend_mode_from_string(std::string_view text);

struct RankedItem {
  std::string item_id;
  double score = 0.0;
  std::vector<std::string> labels;       // shared (similar) or opposed (opposite) labels
  std::size_t emotion_oppositions = 0;   // wheel-opposed emotion pairs with the seed (opposite mode)

  bool operator==(const RankedItem&) const = default;
};

struct Recommendation {
  std::string seed_id;
  RecommendMode mode = RecommendMode::similar;
  std::vector<RankedItem> ranked;  // non-increasing score
};

struct RecommendOptions {
  std::size_t limit = 10;
  /// Opposite mode: among equal scores, rank items whose emotions sit across
  /// the wheel from the seed's first.
  bool emotion_tiebreak = false;
};

/// Jaccard similarity of label sets; zero scores omitted, ties by item id.
/// Throws DataError("unclassifiable seed") when the seed has no labels.
Recommendation similar_items(const Classification& seed, const std::vector<Classification>& catalog,
                             const RecommendOptions& options = {});

/// Scores each item by the share of its labels whose value pole is the
/// polarity flip of a seed label's pole.
Recommendation opposite_items(const Classification& seed, const std::vector<Classification>& catalog,
                              const RecommendOptions& options = {});

nlohmann::json to_json(const Recommendation& recommendation);

}  // namespace valemo

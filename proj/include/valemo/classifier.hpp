#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "valemo/prototype_kb.hpp"
#include "valemo/text_pipeline.hpp"

namespace valemo {

inline constexpr double kDefaultThreshold = 0.30;

struct ClassifierConfig {
  double threshold = kDefaultThreshold;  // minimum typical coverage, in (0, 1]
};

/// Throws DataError when the threshold is outside (0, 1].
void validate(const ClassifierConfig& config);

struct MatchResult {
  std::string prototype_name;
  std::set<std::string> matched_rigid;
  std::vector<std::string> matched_typical;  // in the prototype's canonical order
  double coverage = 0.0;
  bool accepted = false;
};

/// Accepted iff every rigid property occurs in the profile and at least
/// `threshold` of the typical properties do.
MatchResult match_prototype(const FeatureProfile& profile, const Prototype& prototype,
                            const ClassifierConfig& config = {});

/// Why an item carries a label: the matched trigger terms split into the
/// emotion column (modifier side) and the value column (head side).
struct LabelExplanation {
  std::string label;
  std::string value;    // head prototype, e.g. "degradation"
  std::string emotion;  // modifier prototype, e.g. "disgust"
  std::vector<std::string> matches;
  std::vector<std::string> emotion_terms;
  std::vector<std::string> value_terms;
  double coverage = 0.0;

  bool operator==(const LabelExplanation&) const = default;
};

struct Classification {
  std::string item_id;
  std::vector<LabelExplanation> labels;  // descending coverage, then label

  std::vector<std::string> label_names() const;
  bool operator==(const Classification&) const = default;
};

Classification classify_item(const FeatureProfile& profile, const std::vector<Prototype>& compounds,
                             const ClassifierConfig& config = {});

nlohmann::json to_json(const LabelExplanation& explanation);
nlohmann::json to_json(const Classification& classification);
Classification classification_from_json(const nlohmann::json& j);

}  // namespace valemo

#include "valemo/classifier.hpp"

#include <algorithm>

#include "valemo/error.hpp"

namespace valemo {

namespace {

// Absorbs the rounding in matched / total so that e.g. 3 of 10 meets 0.30.
constexpr double kCoverageSlack = 1e-12;

}  // namespace

void validate(const ClassifierConfig& config) {
  if (!(config.threshold > 0.0 && config.threshold <= 1.0)) {
    throw DataError("classifier threshold must lie in (0, 1], got " + std::to_string(config.threshold));
  }
}

MatchResult match_prototype(const FeatureProfile& profile, const Prototype& prototype,
                            const ClassifierConfig& config) {
  MatchResult result;
  result.prototype_name = prototype.name;
  for (const auto& r : prototype.rigid) {
    if (profile.contains(r)) result.matched_rigid.insert(r);
  }
  for (const auto& f : prototype.typical) {
    if (profile.contains(f.term)) result.matched_typical.push_back(f.term);
  }
  if (!prototype.typical.empty()) {
    result.coverage =
        static_cast<double>(result.matched_typical.size()) / static_cast<double>(prototype.typical.size());
  }
  const bool rigid_ok = result.matched_rigid.size() == prototype.rigid.size();
  result.accepted = rigid_ok && !prototype.typical.empty() && result.coverage + kCoverageSlack >= config.threshold;
  return result;
}

std::vector<std::string> Classification::label_names() const {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.label);
  return out;
}

Classification classify_item(const FeatureProfile& profile, const std::vector<Prototype>& compounds,
                             const ClassifierConfig& config) {
  validate(config);
  Classification out;
  out.item_id = profile.item_id;
  for (const auto& prototype : compounds) {
    auto match = match_prototype(profile, prototype, config);
    if (!match.accepted) continue;
    LabelExplanation e;
    e.label = prototype.name;
    if (prototype.parents) {
      e.value = prototype.parents->head;
      e.emotion = prototype.parents->modifier;
    }
    e.matches = match.matched_typical;
    for (const auto& term : match.matched_typical) {
      const auto it = std::find_if(prototype.typical.begin(), prototype.typical.end(),
                                   [&](const TypicalFeature& f) { return f.term == term; });
      if (!it->origin) continue;
      if (*it->origin != InclusionParent::head) e.emotion_terms.push_back(term);
      if (*it->origin != InclusionParent::modifier) e.value_terms.push_back(term);
    }
    e.coverage = match.coverage;
    out.labels.push_back(std::move(e));
  }
  std::stable_sort(out.labels.begin(), out.labels.end(), [](const LabelExplanation& a, const LabelExplanation& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.label < b.label;
  });
  return out;
}

nlohmann::json to_json(const LabelExplanation& e) {
  nlohmann::json emotions = nlohmann::json::object();
  nlohmann::json values = nlohmann::json::object();
  if (!e.emotion.empty()) emotions[e.emotion] = e.emotion_terms;
  if (!e.value.empty()) values[e.value] = e.value_terms;
  return {{"label", e.label},     {"value", e.value},       {"emotion", e.emotion}, {"matches", e.matches},
          {"emotions", emotions}, {"values", values},       {"coverage", e.coverage}};
}

nlohmann::json to_json(const Classification& c) {
  nlohmann::json labels = nlohmann::json::array();
  nlohmann::json explanations = nlohmann::json::array();
  nlohmann::json coverage = nlohmann::json::object();
  for (const auto& l : c.labels) {
    labels.push_back(l.label);
    explanations.push_back(to_json(l));
    coverage[l.label] = l.coverage;
  }
  return {{"item_id", c.item_id}, {"labels", labels}, {"explanations", explanations}, {"coverage", coverage}};
}

Classification classification_from_json(const nlohmann::json& j) {
  try {
    Classification c;
    c.item_id = j.at("item_id").get<std::string>();
    for (const auto& x : j.at("explanations")) {
      LabelExplanation e;
      e.label = x.at("label").get<std::string>();
      e.value = x.value("value", std::string{});
      e.emotion = x.value("emotion", std::string{});
      e.matches = x.value("matches", std::vector<std::string>{});
      if (!e.emotion.empty() && x.contains("emotions") && x.at("emotions").contains(e.emotion)) {
        e.emotion_terms = x.at("emotions").at(e.emotion).get<std::vector<std::string>>();
      }
      if (!e.value.empty() && x.contains("values") && x.at("values").contains(e.value)) {
        e.value_terms = x.at("values").at(e.value).get<std::vector<std::string>>();
      }
      e.coverage = x.value("coverage", 0.0);
      c.labels.push_back(std::move(e));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed classification: ") + e.what());
  }
}

}  // namespace valemo

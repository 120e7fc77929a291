#include "valemo/moral_mapping.hpp"

#include <algorithm>
#include <cctype>

#include "valemo/error.hpp"

namespace valemo {

std::string_view to_string(Foundation f) {
  switch (f) {
    case Foundation::care:
      return "care";
    case Foundation::fairness:
      return "fairness";
    case Foundation::loyalty:
      return "loyalty";
    case Foundation::authority:
      return "authority";
    case Foundation::sanctity:
      return "sanctity";
  }
  return "care";
}

std::string_view to_string(Polarity p) { return p == Polarity::virtue ? "virtue" : "vice"; }

std::optional<Foundation> foundation_from_string(std::string_view text) {
  for (auto f : kFoundations) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

std::optional<Polarity> polarity_from_string(std::string_view text) {
  if (text == "virtue") return Polarity::virtue;
  if (text == "vice") return Polarity::vice;
  return std::nullopt;
}

namespace {

std::string_view vice_name(Foundation f) {
  switch (f) {
    case Foundation::care:
      return "harm";
    case Foundation::fairness:
      return "cheating";
    case Foundation::loyalty:
      return "betrayal";
    case Foundation::authority:
      return "subversion";
    case Foundation::sanctity:
      return "degradation";
  }
  return "harm";
}

constexpr ValuePole virtue(Foundation f) { return {f, Polarity::virtue}; }
constexpr ValuePole vice(Foundation f) { return {f, Polarity::vice}; }

constexpr std::array<ValuePole, 10> kPoles = {
    virtue(Foundation::care),      vice(Foundation::care),      virtue(Foundation::fairness),
    vice(Foundation::fairness),    virtue(Foundation::loyalty), vice(Foundation::loyalty),
    virtue(Foundation::authority), vice(Foundation::authority), virtue(Foundation::sanctity),
    vice(Foundation::sanctity),
};

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view ValuePole::name() const {
  return polarity == Polarity::virtue ? to_string(foundation) : vice_name(foundation);
}

std::span<const ValuePole> all_value_poles() { return kPoles; }

std::optional<ValuePole> value_pole_from_name(std::string_view name) {
  for (const auto& pole : kPoles) {
    if (pole.name() == name) return pole;
  }
  return std::nullopt;
}

ValuePole opposite_value_pole(ValuePole pole) {
  pole.polarity = pole.polarity == Polarity::virtue ? Polarity::vice : Polarity::virtue;
  return pole;
}

const std::vector<MappingRow>& moral_mapping_rows() {
  using F = Foundation;
  // "Loyalty -" in the Shame row is read as the betrayal pole.
  static const std::vector<MappingRow> rows = {
      {"Admiration", {virtue(F::authority)}, {"awe"}},
      {"Anger", {vice(F::fairness)}, {"anger"}},
      {"Compassion", {vice(F::care)}, {"grief", "sadness", "pensiveness"}},
      {"Contempt", {vice(F::loyalty), vice(F::fairness)}, {"disapproval"}},
      {"Disgust", {vice(F::sanctity)}, {"disgust", "loathing"}},
      {"Embarrassment", {vice(F::fairness)}, {"annoyance"}},
      {"Evaluation", {virtue(F::sanctity)}, {"awe"}},
      {"Fear", {vice(F::authority)}, {"terror"}},
      {"Gratitude", {virtue(F::fairness)}, {"vigilance", "anticipation", "interest"}},
      {"Guilt", {vice(F::fairness)}, {"remorse"}},
      {"Pity", {vice(F::care)}, {"grief", "sadness", "pensiveness"}},
      {"Pride", {virtue(F::loyalty)}, {"admiration", "trust", "acceptance"}},
      {"Rage", {vice(F::loyalty)}, {"rage"}},
      {"Remorse", {vice(F::care)}, {"grief", "sadness"}},
      {"Reproach", {vice(F::loyalty)}, {"aggressiveness"}},
      {"Respect", {virtue(F::authority)}, {"submission", "fear"}},
      {"Shame", {vice(F::loyalty)}, {"remorse"}},
  };
  return rows;
}

std::vector<ValuePole> value_poles_for_moral_emotion(std::string_view moral_emotion) {
  const auto wanted = lower(moral_emotion);
  for (const auto& row : moral_mapping_rows()) {
    if (lower(row.moral_emotion) == wanted) return row.value_poles;
  }
  throw NotFoundError("unknown moral emotion '" + std::string(moral_emotion) + "'");
}

std::vector<std::string> plutchik_for_value_pole(ValuePole pole) {
  std::vector<std::string> out;
  for (const auto& row : moral_mapping_rows()) {
    if (std::find(row.value_poles.begin(), row.value_poles.end(), pole) == row.value_poles.end()) continue;
    for (auto label : row.plutchik_emotions) {
      if (std::find(out.begin(), out.end(), label) == out.end()) out.emplace_back(label);
    }
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 8> kBasic = {"joy",  "trust",   "fear",  "surprise",
                                                    "sadness", "disgust", "anger", "anticipation"};

struct WheelLabel {
  std::string_view label;
  std::array<std::string_view, 2> components;  // second empty for graded labels
};

// Mild and intense grades of each basic, then the primary dyads.
constexpr std::array<WheelLabel, 24> kDerived = {{
    {"serenity", {"joy", ""}},
    {"ecstasy", {"joy", ""}},
    {"acceptance", {"trust", ""}},
    {"admiration", {"trust", ""}},
    {"apprehension", {"fear", ""}},
    {"terror", {"fear", ""}},
    {"distraction", {"surprise", ""}},
    {"amazement", {"surprise", ""}},
    {"pensiveness", {"sadness", ""}},
    {"grief", {"sadness", ""}},
    {"boredom", {"disgust", ""}},
    {"loathing", {"disgust", ""}},
    {"annoyance", {"anger", ""}},
    {"rage", {"anger", ""}},
    {"interest", {"anticipation", ""}},
    {"vigilance", {"anticipation", ""}},
    {"love", {"joy", "trust"}},
    {"submission", {"trust", "fear"}},
    {"awe", {"fear", "surprise"}},
    {"disapproval", {"surprise", "sadness"}},
    {"remorse", {"sadness", "disgust"}},
    {"contempt", {"disgust", "anger"}},
    {"aggressiveness", {"anger", "anticipation"}},
    {"optimism", {"anticipation", "joy"}},
}};

constexpr std::array<std::string_view, 32> kVocabulary = {
    "joy",         "trust",      "fear",        "surprise",    "sadness",    "disgust",   "anger",
    "anticipation", "serenity",  "ecstasy",     "acceptance",  "admiration", "apprehension", "terror",
    "distraction", "amazement",  "pensiveness", "grief",       "boredom",    "loathing",  "annoyance",
    "rage",        "interest",   "vigilance",   "love",        "submission", "awe",       "disapproval",
    "remorse",     "contempt",   "aggressiveness", "optimism",
};

}  // namespace

std::span<const std::string_view> basic_emotions() { return kBasic; }
std::span<const std::string_view> emotion_vocabulary() { return kVocabulary; }

bool is_known_emotion(std::string_view label) {
  return std::find(kVocabulary.begin(), kVocabulary.end(), label) != kVocabulary.end();
}

bool is_basic_emotion(std::string_view label) {
  return std::find(kBasic.begin(), kBasic.end(), label) != kBasic.end();
}

std::string opposite_emotion(std::string_view basic) {
  // kBasic is laid out so that index i and i + 4 sit across the wheel.
  for (std::size_t i = 0; i < kBasic.size(); ++i) {
    if (kBasic[i] == basic) return std::string(kBasic[(i + 4) % kBasic.size()]);
  }
  throw NotFoundError("'" + std::string(basic) + "' is not a basic emotion");
}

std::vector<std::string> basic_components(std::string_view label) {
  if (is_basic_emotion(label)) return {std::string(label)};
  for (const auto& d : kDerived) {
    if (d.label != label) continue;
    std::vector<std::string> out{std::string(d.components[0])};
    if (!d.components[1].empty()) out.emplace_back(d.components[1]);
    return out;
  }
  return {};
}

bool emotions_opposed(std::string_view a, std::string_view b) {
  for (const auto& x : basic_components(a)) {
    const auto opposite = opposite_emotion(x);
    for (const auto& y : basic_components(b)) {
      if (y == opposite) return true;
    }
  }
  return false;
}

OppositionTable default_opposition_table() {
  OppositionTable table;
  for (std::size_t i = 0; i < 4; ++i) table.add(std::string(kBasic[i]), std::string(kBasic[i + 4]));
  for (auto f : kFoundations) table.add(std::string(to_string(f)), std::string(vice_name(f)));
  return table;
}

nlohmann::json mapping_to_json() {
  auto rows = nlohmann::json::array();
  for (const auto& row : moral_mapping_rows()) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& pole : row.value_poles) {
      values.push_back({{"foundation", to_string(pole.foundation)},
                        {"polarity", to_string(pole.polarity)},
                        {"name", pole.name()}});
    }
    nlohmann::json emotions = nlohmann::json::array();
    for (auto e : row.plutchik_emotions) emotions.push_back(e);
    rows.push_back({{"moral_emotion", row.moral_emotion}, {"values", values}, {"mapped_emotions", emotions}});
  }
  return rows;
}

}  // namespace valemo

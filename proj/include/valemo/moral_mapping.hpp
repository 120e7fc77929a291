#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "valemo/prototype_kb.hpp"

namespace valemo {

enum class Foundation { care, fairness, loyalty, authority, sanctity };
enum class Polarity { virtue, vice };

inline constexpr std::array<Foundation, 5> kFoundations = {Foundation::care, Foundation::fairness, Foundation::loyalty,
                                                           Foundation::authority, Foundation::sanctity};

std::string_view to_string(Foundation f);
std::string_view to_string(Polarity p);
std::optional<Foundation> foundation_from_string(std::string_view text);
std::optional<Polarity> polarity_from_string(std::string_view text);

/// One of the ten moral-foundation poles. The virtue pole is named after the
/// foundation (e.g. "sanctity"), the vice pole after its vice
/// (harm, cheating, betrayal, subversion, degradation).
struct ValuePole {
  Foundation foundation = Foundation::care;
  Polarity polarity = Polarity::virtue;

  std::string_view name() const;
  auto operator<=>(const ValuePole&) const = default;
};

/// All ten poles, virtue before vice within each foundation.
std::span<const ValuePole> all_value_poles();

/// Resolves a pole label such as "degradation" or "sanctity".
std::optional<ValuePole> value_pole_from_name(std::string_view name);

ValuePole opposite_value_pole(ValuePole pole);

/// One row of the moral-emotion table: a moral emotion, the value poles it
/// evokes and the wheel emotions it is expressed through.
struct MappingRow {
  std::string_view moral_emotion;
  std::vector<ValuePole> value_poles;
  std::vector<std::string_view> plutchik_emotions;
};

/// The 17 rows, in table order.
const std::vector<MappingRow>& moral_mapping_rows();

/// Throws NotFoundError for labels outside the table. Matching is
/// case-insensitive ("Fear" and "fear" are the same row).
std::vector<ValuePole> value_poles_for_moral_emotion(std::string_view moral_emotion);

/// Union of the mapped emotions of every row whose value column holds
/// `pole`, deduplicated, in first-appearance order.
std::vector<std::string> plutchik_for_value_pole(ValuePole pole);

// Emotion wheel -------------------------------------------------------------

/// The eight basic emotions.
std::span<const std::string_view> basic_emotions();

/// Every emotion label accepted by the lexicon reader: the eight basics,
/// their mild and intense grades, and the eight primary dyads.
std::span<const std::string_view> emotion_vocabulary();
bool is_known_emotion(std::string_view label);
bool is_basic_emotion(std::string_view label);

/// joy/sadness, trust/disgust, fear/anger, surprise/anticipation.
/// Throws NotFoundError for non-basic labels.
std::string opposite_emotion(std::string_view basic);

/// Basic emotions a label is built from: itself for a basic, its basic for a
/// graded label (awe -> fear, surprise; terror -> fear). Empty for unknown labels.
std::vector<std::string> basic_components(std::string_view label);

/// True if some basic component of `a` is the wheel opposite of some basic
/// component of `b`.
bool emotions_opposed(std::string_view a, std::string_view b);

/// Term-level oppositions implied by the wheel and the value poles: the four
/// basic pairs plus the five virtue/vice name pairs.
OppositionTable default_opposition_table();

/// Rows as JSON records: {moral_emotion, values: [{foundation, polarity, name}], mapped_emotions}.
nlohmann::json mapping_to_json();

}  // namespace valemo

#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "valemo/moral_mapping.hpp"
#include "valemo/prototype_kb.hpp"

namespace valemo {

/// Default number of candidate features kept per basic prototype.
inline constexpr std::size_t kDefaultPrototypeSize = 10;

/// Smallest rescaled probability: lexicon score 0 maps here rather than onto 0.5.
inline constexpr double kRescaleEpsilon = 1e-6;

struct EmotionLexiconEntry {
  std::string term;
  std::string emotion;
  double score = 0.0;

  bool operator==(const EmotionLexiconEntry&) const = default;
};

struct ValueLexiconEntry {
  std::string term;
  Foundation foundation = Foundation::care;
  Polarity polarity = Polarity::virtue;
  double probability = 0.0;

  ValuePole pole() const { return {foundation, polarity}; }
  bool operator==(const ValueLexiconEntry&) const = default;
};

/// `term<TAB>emotion<TAB>score` lines. A first line whose score column is not
/// numeric is taken as a header; blank lines and '#' comments are skipped.
/// Throws ParseError with the 1-based line number.
std::vector<EmotionLexiconEntry> parse_emotion_lexicon(std::istream& in);

/// `term,foundation,polarity,probability` lines, same header and comment rules.
std::vector<ValueLexiconEntry> parse_value_lexicon(std::istream& in);

std::string serialize_emotion_lexicon(const std::vector<EmotionLexiconEntry>& entries);
std::string serialize_value_lexicon(const std::vector<ValueLexiconEntry>& entries);

/// Maps a lexicon score in [0, 1] into (0.5, 1]: 0.5 + score / 2, floored at 0.5 + epsilon.
double rescale_score(double score);

/// Top-k entries of `emotion` by descending score (ties by term), rescaled.
/// Throws DataError("empty prototype") when the emotion has no entries.
Prototype build_emotion_prototype(const std::vector<EmotionLexiconEntry>& entries, const std::string& emotion,
                                  std::size_t k = kDefaultPrototypeSize);

/// Same for a value pole; the prototype is named after the pole ("degradation").
Prototype build_value_prototype(const std::vector<ValueLexiconEntry>& entries, Foundation foundation,
                                Polarity polarity, std::size_t k = kDefaultPrototypeSize);

/// Converts a multi-column moral foundations dictionary (header with
/// `word`, `<foundation>_p` and `<foundation>_sent` columns) into the
/// canonical four-column form: foundation is the argmax probability column,
/// polarity is vice when that foundation's sentiment is negative.
std::vector<ValueLexiconEntry> convert_multicolumn_value_lexicon(std::istream& in);

}  // namespace valemo

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace valemo {

struct CulturalItem {
  std::string id;
  std::string title;
  std::string description;
  std::optional<std::string> source;

  bool operator==(const CulturalItem&) const = default;
};

nlohmann::json to_json(const CulturalItem& item);
CulturalItem cultural_item_from_json(const nlohmann::json& j);

/// Reads a catalog document: a JSON array of {id, title, description, source?}.
/// Throws ParseError on malformed JSON or records.
std::vector<CulturalItem> parse_catalog(std::string_view json_text);
std::vector<CulturalItem> catalog_from_json(const nlohmann::json& j);

/// Lemma -> relative frequency over the surviving tokens of one item.
struct FeatureProfile {
  std::string item_id;
  std::map<std::string, double> frequencies;
  std::size_t token_count = 0;

  bool contains(std::string_view lemma) const { return frequencies.count(std::string(lemma)) > 0; }
};

/// Bundled English stopword list.
const std::set<std::string>& stopwords();
/// Raw text of the bundled list, as versioned in data/stopwords.txt.
std::string_view stopwords_text();
/// SHA-256 of stopwords_text(); cited by classification reports.
const std::string& stopwords_hash();

/// Case folds, splits on non-letters and drops single-letter tokens. No
/// lemmatization and no stopword removal.
std::vector<std::string> tokenize(std::string_view text);

/// Maps one lowercase token to its lemma: the exception table first, then the
/// suffix rules, repeated until nothing changes.
std::string lemma_of(std::string_view token);

/// tokenize() -> lemma_of() -> stopword removal.
std::vector<std::string> lemmatize(std::string_view text);

/// Throws DataError("empty profile") when no tokens survive.
FeatureProfile profile_from_lemmas(std::string item_id, const std::vector<std::string>& lemmas);
FeatureProfile extract_feature_profile(const CulturalItem& item);

/// Exposed for tests: every (surface, lemma) pair of the exception table.
const std::map<std::string, std::string>& lemma_exceptions();

}  // namespace valemo

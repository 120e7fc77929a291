#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "valemo/classifier.hpp"
#include "valemo/combine.hpp"
#include "valemo/lexicon.hpp"
#include "valemo/prototype_kb.hpp"
#include "valemo/text_pipeline.hpp"

namespace valemo {

struct BuildConfig {
  std::size_t k = kDefaultPrototypeSize;
  std::size_t max_features = kDefaultMaxFeatures;
  double threshold = kDefaultThreshold;
  /// Term-level oppositions added to the wheel and value-pole defaults.
  OppositionTable extra_oppositions;
};

/// The persisted unit: basic and compound prototypes, the combination record
/// of every compound, and a manifest describing how it was built.
struct PrototypeBundle {
  std::vector<Prototype> prototypes;                 // sorted by name
  std::map<std::string, nlohmann::json> combinations;  // compound name -> record
  nlohmann::json manifest = nlohmann::json::object();

  std::vector<Prototype> compounds() const;
  const Prototype* find(std::string_view name) const;
  double threshold() const;
};

/// Deterministic text form; identical bundles serialize to identical bytes.
std::string serialize_bundle(const PrototypeBundle& bundle);
/// Throws ParseError on malformed documents and DataError when the
/// prototypes fail knowledge-base validation.
PrototypeBundle parse_bundle(std::string_view text);
std::string bundle_hash(const PrototypeBundle& bundle);

/// lexicons -> basic prototypes -> moral-emotion pairing -> compound catalog.
/// Throws DataError("empty prototype") for an empty lexicon and when no
/// compound can be built.
PrototypeBundle build_prototypes(std::string_view emotion_lexicon_text, std::string_view value_lexicon_text,
                                 const BuildConfig& config = {});

/// Same, reading the lexicons from disk; parse errors name the file.
PrototypeBundle build_prototypes_from_files(const std::string& emotion_path, const std::string& value_path,
                                            const BuildConfig& config = {});

/// Reads "a<TAB>b" pairs, '#' comments allowed.
OppositionTable parse_opposition_list(std::string_view text);

struct UnclassifiedItem {
  std::string item_id;
  std::string reason;

  bool operator==(const UnclassifiedItem&) const = default;
};

struct ClassificationReport {
  std::string bundle_hash;
  double threshold = kDefaultThreshold;
  std::vector<Classification> classifications;  // one per item with a usable profile, catalog order
  std::vector<UnclassifiedItem> unclassified;   // empty profile or no accepted label
};

/// Throws DataError on duplicate item ids; per-item problems become
/// unclassified entries.
ClassificationReport classify_catalog(const std::vector<CulturalItem>& items, const PrototypeBundle& bundle);

nlohmann::json to_json(const ClassificationReport& report);
std::string serialize_report(const ClassificationReport& report);
ClassificationReport parse_report(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace valemo

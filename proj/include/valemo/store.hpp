#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valemo/classifier.hpp"
#include "valemo/text_pipeline.hpp"

namespace valemo {

/// Result of classifying one stored item against one bundle.
struct StoredClassification {
  std::string bundle_hash;
  Classification classification;
  std::optional<std::string> unclassified_reason;

  bool operator==(const StoredClassification&) const = default;
};

/// Append-only JSON-lines persistence for catalog items and their
/// classifications, with an in-memory index rebuilt on open. Later records for
/// the same id supersede earlier ones.
///
///   <dir>/items.jsonl            one CulturalItem per line
///   <dir>/classifications.jsonl  {item_id, bundle_hash, classification, reason?}
///
/// Not thread-safe; the service serializes writers.
class CatalogStore {
 public:
  explicit CatalogStore(std::filesystem::path dir);

  void append_items(const std::vector<CulturalItem>& items);
  void append_classification(const StoredClassification& record);

  const std::map<std::string, CulturalItem>& items() const { return items_; }
  const std::map<std::string, StoredClassification>& classifications() const { return classifications_; }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  void replay();
  void append_line(const std::filesystem::path& file, const std::string& line);

  std::filesystem::path dir_;
  std::map<std::string, CulturalItem> items_;
  std::map<std::string, StoredClassification> classifications_;
};

}  // namespace valemo

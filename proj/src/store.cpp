#include "valemo/store.hpp"

#include <fstream>

#include "valemo/error.hpp"

namespace valemo {

namespace {

const char* kItemsFile = "items.jsonl";
const char* kClassificationsFile = "classifications.jsonl";

nlohmann::json to_json(const StoredClassification& record) {
  nlohmann::json j{{"item_id", record.classification.item_id},
                   {"bundle_hash", record.bundle_hash},
                   {"classification", valemo::to_json(record.classification)}};
  if (record.unclassified_reason) j["reason"] = *record.unclassified_reason;
  return j;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& file, Fn&& fn) {
  std::ifstream in(file);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, file.string() + ": " + e.what());
    }
  }
}

}  // namespace

CatalogStore::CatalogStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  replay();
}

void CatalogStore::replay() {
  for_each_line(dir_ / kItemsFile, [&](const nlohmann::json& j) {
    auto item = cultural_item_from_json(j);
    auto id = item.id;
    items_.insert_or_assign(std::move(id), std::move(item));
  });
  for_each_line(dir_ / kClassificationsFile, [&](const nlohmann::json& j) {
    StoredClassification record;
    record.bundle_hash = j.at("bundle_hash").get<std::string>();
    record.classification = classification_from_json(j.at("classification"));
    if (j.contains("reason")) record.unclassified_reason = j.at("reason").get<std::string>();
    auto id = record.classification.item_id;
    classifications_.insert_or_assign(std::move(id), std::move(record));
  });
}

void CatalogStore::append_line(const std::filesystem::path& file, const std::string& line) {
  std::ofstream out(file, std::ios::app | std::ios::binary);
  if (!out) throw DataError("cannot append to '" + file.string() + "'");
  out << line << '\n';
  out.flush();
  if (!out) throw DataError("append to '" + file.string() + "' failed");
}

void CatalogStore::append_items(const std::vector<CulturalItem>& items) {
  for (const auto& item : items) {
    append_line(dir_ / kItemsFile, to_json(item).dump());
    items_.insert_or_assign(item.id, item);
  }
}

void CatalogStore::append_classification(const StoredClassification& record) {
  if (!items_.count(record.classification.item_id)) {
    throw DataError("classification for unknown item '" + record.classification.item_id + "'");
  }
  append_line(dir_ / kClassificationsFile, to_json(record).dump());
  classifications_.insert_or_assign(record.classification.item_id, record);
}

}  // namespace valemo

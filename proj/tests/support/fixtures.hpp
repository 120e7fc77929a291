#pragma once

#include <string>
#include <vector>

#include "valemo/error.hpp"
#include "valemo/pipeline.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(VALEMO_FIXTURE_DIR) + "/" + name; }

inline valemo::PrototypeBundle bundle() {
  return valemo::build_prototypes_from_files(path("emotions.tsv"), path("values.csv"));
}

inline std::vector<valemo::CulturalItem> catalog() { return valemo::parse_catalog(valemo::read_file(path("catalog.json"))); }

inline valemo::CulturalItem item(const std::string& id) {
  for (auto& i : catalog())
    if (i.id == id) return i;
  throw valemo::NotFoundError("fixture item " + id);
}

}  // namespace fixtures

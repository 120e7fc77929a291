#include "valemo/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "valemo/error.hpp"
#include "valemo/hash.hpp"
#include "valemo/moral_mapping.hpp"

namespace valemo {

namespace {

constexpr int kBundleFormat = 1;

}  // namespace

std::vector<Prototype> PrototypeBundle::compounds() const {
  std::vector<Prototype> out;
  for (const auto& p : prototypes) {
    if (p.kind == PrototypeKind::compound) out.push_back(p);
  }
  return out;
}

const Prototype* PrototypeBundle::find(std::string_view name) const {
  for (const auto& p : prototypes) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

double PrototypeBundle::threshold() const { return manifest.value("threshold", kDefaultThreshold); }

std::string serialize_bundle(const PrototypeBundle& bundle) {
  nlohmann::json prototypes = nlohmann::json::object();
  for (const auto& p : bundle.prototypes) {
    auto entry = to_json(p);
    if (auto it = bundle.combinations.find(p.name); it != bundle.combinations.end()) entry["combination"] = it->second;
    prototypes[p.name] = std::move(entry);
  }
  nlohmann::json doc{{"manifest", bundle.manifest}, {"prototypes", prototypes}};
  return doc.dump(2) + "\n";
}

PrototypeBundle parse_bundle(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("bundle is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("prototypes") || !doc.at("prototypes").is_object()) {
    throw ParseError(0, "bundle must be an object with a 'prototypes' map");
  }
  PrototypeBundle bundle;
  bundle.manifest = doc.value("manifest", nlohmann::json::object());
  for (const auto& [name, entry] : doc.at("prototypes").items()) {
    bundle.prototypes.push_back(prototype_from_json(name, entry));
    if (entry.contains("combination")) bundle.combinations[name] = entry.at("combination");
  }
  const auto max_features = bundle.manifest.value("max_features", kDefaultMaxFeatures);
  const auto report = validate_prototypes(bundle.prototypes, {}, max_features);
  if (!report.empty()) throw DataError("invalid bundle: " + report.front().message);
  return bundle;
}

std::string bundle_hash(const PrototypeBundle& bundle) { return sha256_hex(serialize_bundle(bundle)); }

OppositionTable parse_opposition_list(std::string_view text) {
  OppositionTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "expected 'term<TAB>term'");
    try {
      table.add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return table;
}

PrototypeBundle build_prototypes(std::string_view emotion_lexicon_text, std::string_view value_lexicon_text,
                                 const BuildConfig& config) {
  std::istringstream emotion_in{std::string(emotion_lexicon_text)};
  std::istringstream value_in{std::string(value_lexicon_text)};
  const auto emotion_entries = parse_emotion_lexicon(emotion_in);
  const auto value_entries = parse_value_lexicon(value_in);
  if (emotion_entries.empty()) throw DataError("empty prototype: the emotion lexicon has no entries");
  if (value_entries.empty()) throw DataError("empty prototype: the value lexicon has no entries");

  std::set<std::string> emotion_labels;
  for (const auto& e : emotion_entries) emotion_labels.insert(e.emotion);
  std::vector<Prototype> emotions;
  for (const auto& label : emotion_labels) emotions.push_back(build_emotion_prototype(emotion_entries, label, config.k));

  std::set<ValuePole> poles;
  for (const auto& e : value_entries) poles.insert(e.pole());
  std::vector<Prototype> values;
  for (const auto& pole : poles) {
    values.push_back(build_value_prototype(value_entries, pole.foundation, pole.polarity, config.k));
  }

  auto oppositions = default_opposition_table();
  oppositions.merge(config.extra_oppositions);
  auto catalog = build_compound_catalog(values, emotions, oppositions, config.max_features);
  if (catalog.compounds.empty()) throw DataError("no compound prototype could be built from the lexicons");

  PrototypeBundle bundle;
  for (auto& p : emotions) bundle.prototypes.push_back(std::move(p));
  for (auto& p : values) bundle.prototypes.push_back(std::move(p));
  for (const auto& result : catalog.compounds) {
    bundle.prototypes.push_back(result.compound);
    bundle.combinations[result.compound.name] = combination_record(result);
  }
  std::sort(bundle.prototypes.begin(), bundle.prototypes.end(),
            [](const Prototype& a, const Prototype& b) { return a.name < b.name; });

  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : catalog.failures) {
    failures.push_back({{"head", f.head}, {"modifier", f.modifier}, {"reason", f.reason},
                        {"discarded", to_json(f.discarded)}});
  }
  nlohmann::json opposition_pairs = nlohmann::json::array();
  for (const auto& [a, b] : oppositions.pairs) {
    if (a < b) opposition_pairs.push_back({a, b});
  }
  bundle.manifest = {
      {"format", kBundleFormat},
      {"emotion_lexicon_sha256", sha256_hex(emotion_lexicon_text)},
      {"value_lexicon_sha256", sha256_hex(value_lexicon_text)},
      {"k", config.k},
      {"max_features", config.max_features},
      {"threshold", config.threshold},
      {"stopwords_sha256", stopwords_hash()},
      {"oppositions", opposition_pairs},
      {"failures", failures},
  };
  return bundle;
}

PrototypeBundle build_prototypes_from_files(const std::string& emotion_path, const std::string& value_path,
                                            const BuildConfig& config) {
  const auto emotions = read_file(emotion_path);
  const auto values = read_file(value_path);
  try {
    std::istringstream in{emotions};
    parse_emotion_lexicon(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), emotion_path + ": " + e.reason());
  }
  try {
    std::istringstream in{values};
    parse_value_lexicon(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), value_path + ": " + e.reason());
  }
  return build_prototypes(emotions, values, config);
}

ClassificationReport classify_catalog(const std::vector<CulturalItem>& items, const PrototypeBundle& bundle) {
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (!ids.insert(item.id).second) throw DataError("duplicate item id '" + item.id + "'");
  }
  ClassificationReport report;
  report.bundle_hash = bundle_hash(bundle);
  report.threshold = bundle.threshold();
  const ClassifierConfig config{report.threshold};
  const auto compounds = bundle.compounds();
  for (const auto& item : items) {
    FeatureProfile profile;
    try {
      profile = extract_feature_profile(item);
    } catch (const DataError& e) {
      report.unclassified.push_back({item.id, e.what()});
      continue;
    }
    auto classification = classify_item(profile, compounds, config);
    if (classification.labels.empty()) report.unclassified.push_back({item.id, "no matching prototype"});
    report.classifications.push_back(std::move(classification));
  }
  return report;
}

nlohmann::json to_json(const ClassificationReport& report) {
  nlohmann::json classifications = nlohmann::json::array();
  nlohmann::json histogram = nlohmann::json::object();
  std::size_t classified = 0;
  for (const auto& c : report.classifications) {
    classifications.push_back(to_json(c));
    if (!c.labels.empty()) ++classified;
    for (const auto& l : c.labels) histogram[l.label] = histogram.value(l.label, 0) + 1;
  }
  nlohmann::json unclassified = nlohmann::json::array();
  for (const auto& u : report.unclassified) unclassified.push_back({{"item_id", u.item_id}, {"reason", u.reason}});
  return {{"bundle_hash", report.bundle_hash},
          {"stopwords_sha256", stopwords_hash()},
          {"threshold", report.threshold},
          {"classifications", classifications},
          {"unclassified", unclassified},
          {"summary",
           {{"items", classified + report.unclassified.size()},
            {"classified", classified},
            {"unclassified", report.unclassified.size()},
            {"label_histogram", histogram}}}};
}

std::string serialize_report(const ClassificationReport& report) { return to_json(report).dump(2) + "\n"; }

ClassificationReport parse_report(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ClassificationReport report;
    report.bundle_hash = doc.value("bundle_hash", std::string{});
    report.threshold = doc.value("threshold", kDefaultThreshold);
    for (const auto& c : doc.at("classifications")) report.classifications.push_back(classification_from_json(c));
    for (const auto& u : doc.value("unclassified", nlohmann::json::array())) {
      report.unclassified.push_back({u.at("item_id").get<std::string>(), u.value("reason", std::string{})});
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed classification report: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write to '" + path + "' failed");
}

}  // namespace valemo

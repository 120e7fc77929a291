#include "valemo/prototype_kb.hpp"

#include <algorithm>
#include <sstream>

#include "valemo/error.hpp"

namespace valemo {

std::string_view to_string(PrototypeKind kind) {
  switch (kind) {
    case PrototypeKind::emotion:
      return "emotion";
    case PrototypeKind::value:
      return "value";
    case PrototypeKind::compound:
      return "compound";
  }
  return "emotion";
}

std::string_view to_string(InclusionParent parent) {
  switch (parent) {
    case InclusionParent::head:
      return "HEAD";
    case InclusionParent::modifier:
      return "MODIFIER";
    case InclusionParent::both:
      return "BOTH";
  }
  return "HEAD";
}

PrototypeKind prototype_kind_from_string(std::string_view text) {
  if (text == "emotion") return PrototypeKind::emotion;
  if (text == "value") return PrototypeKind::value;
  if (text == "compound") return PrototypeKind::compound;
  throw DataError("unknown prototype kind '" + std::string(text) + "'");
}

InclusionParent inclusion_parent_from_string(std::string_view text) {
  if (text == "HEAD") return InclusionParent::head;
  if (text == "MODIFIER") return InclusionParent::modifier;
  if (text == "BOTH") return InclusionParent::both;
  throw DataError("unknown inclusion parent '" + std::string(text) + "'");
}

bool is_typicality_probability(double p) { return p > kMinTypicality && p <= kMaxTypicality; }

bool Prototype::has_typical(std::string_view term) const {
  return std::any_of(typical.begin(), typical.end(), [&](const TypicalFeature& f) { return f.term == term; });
}

std::optional<double> Prototype::typical_probability(std::string_view term) const {
  for (const auto& f : typical) {
    if (f.term == term) return f.probability;
  }
  return std::nullopt;
}

bool canonical_feature_less(const TypicalFeature& a, const TypicalFeature& b) {
  if (a.probability != b.probability) return a.probability > b.probability;
  return a.term < b.term;
}

void canonicalize(std::vector<TypicalFeature>& features) {
  std::stable_sort(features.begin(), features.end(), canonical_feature_less);
}

namespace {

void throw_if_invalid(const ValidationReport& report) {
  if (report.empty()) return;
  std::ostringstream msg;
  msg << "invalid prototype: ";
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (i) msg << "; ";
    msg << report[i].message;
  }
  throw DataError(msg.str());
}

}  // namespace

Prototype make_basic_prototype(std::string name, PrototypeKind kind, std::set<std::string> rigid,
                               std::vector<TypicalFeature> typical) {
  if (kind == PrototypeKind::compound) {
    throw DataError("basic prototype '" + name + "' cannot have kind compound");
  }
  canonicalize(typical);
  Prototype p{std::move(name), kind, std::move(rigid), std::move(typical), std::nullopt};
  throw_if_invalid(validate_prototype(p));
  return p;
}

Prototype make_compound_prototype(std::string name, CompoundParents parents, std::set<std::string> rigid,
                                  std::vector<TypicalFeature> typical, std::size_t max_features) {
  canonicalize(typical);
  Prototype p{std::move(name), PrototypeKind::compound, std::move(rigid), std::move(typical), std::move(parents)};
  throw_if_invalid(validate_prototype(p, max_features));
  return p;
}

void OppositionTable::add(const std::string& a, const std::string& b) {
  if (a == b) throw DataError("a term cannot oppose itself: '" + a + "'");
  pairs.emplace(a, b);
  pairs.emplace(b, a);
}

bool OppositionTable::opposed(std::string_view a, std::string_view b) const {
  return pairs.count({std::string(a), std::string(b)}) > 0;
}

void OppositionTable::merge(const OppositionTable& other) {
  for (const auto& [a, b] : other.pairs) add(a, b);
}

void KnowledgeBase::add(Prototype prototype) {
  if (prototypes.count(prototype.name)) {
    throw DataError("duplicate prototype name '" + prototype.name + "'");
  }
  if (prototype.parents) {
    for (const auto* parent : {&prototype.parents->head, &prototype.parents->modifier}) {
      if (!prototypes.count(*parent)) {
        throw DataError("dangling parent '" + *parent + "' of '" + prototype.name + "'");
      }
    }
  }
  throw_if_invalid(validate_prototype(prototype));
  auto name = prototype.name;
  prototypes.emplace(std::move(name), std::move(prototype));
}

const Prototype& KnowledgeBase::at(std::string_view name) const {
  auto it = prototypes.find(std::string(name));
  if (it == prototypes.end()) throw NotFoundError("unknown prototype '" + std::string(name) + "'");
  return it->second;
}

bool KnowledgeBase::contains(std::string_view name) const { return prototypes.count(std::string(name)) > 0; }

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::bad_probability:
      return "bad_probability";
    case ViolationKind::rigid_typical_overlap:
      return "rigid_typical_overlap";
    case ViolationKind::kind_parents_mismatch:
      return "kind_parents_mismatch";
    case ViolationKind::too_many_features:
      return "too_many_features";
    case ViolationKind::duplicate_name:
      return "duplicate_name";
    case ViolationKind::dangling_parent:
      return "dangling_parent";
    case ViolationKind::asymmetric_opposition:
      return "asymmetric_opposition";
    case ViolationKind::self_opposition:
      return "self_opposition";
    case ViolationKind::unordered_features:
      return "unordered_features";
  }
  return "unknown";
}

ValidationReport validate_prototype(const Prototype& p, std::size_t max_features) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& f : p.typical) {
    if (!is_typicality_probability(f.probability)) {
      std::ostringstream msg;
      msg << p.name << "/" << f.term << ": probability must exceed 0.5 and not exceed 1 (got " << f.probability
          << ")";
      report.push_back({ViolationKind::bad_probability, p.name, msg.str()});
    }
    if (p.rigid.count(f.term)) {
      report.push_back({ViolationKind::rigid_typical_overlap, p.name,
                        p.name + "/" + f.term + ": term is both rigid and typical"});
    }
    if (!seen.insert(f.term).second) {
      report.push_back({ViolationKind::duplicate_name, p.name, p.name + "/" + f.term + ": duplicate typical term"});
    }
  }
  if (!std::is_sorted(p.typical.begin(), p.typical.end(), canonical_feature_less)) {
    report.push_back({ViolationKind::unordered_features, p.name, p.name + ": typical features not in canonical order"});
  }
  const bool is_compound = p.kind == PrototypeKind::compound;
  if (is_compound != p.parents.has_value()) {
    report.push_back({ViolationKind::kind_parents_mismatch, p.name,
                      p.name + ": compound kind and parents must occur together"});
  }
  if (is_compound && p.typical.size() > max_features) {
    report.push_back({ViolationKind::too_many_features, p.name,
                      p.name + ": compound has " + std::to_string(p.typical.size()) + " typical features, max " +
                          std::to_string(max_features)});
  }
  return report;
}

namespace {

void validate_oppositions(const OppositionTable& table, ValidationReport& report) {
  for (const auto& [a, b] : table.pairs) {
    if (a == b) {
      report.push_back({ViolationKind::self_opposition, a, "opposition pair (" + a + ", " + a + ") is reflexive"});
    } else if (!table.pairs.count({b, a})) {
      report.push_back({ViolationKind::asymmetric_opposition, a,
                        "asymmetric opposition: (" + a + ", " + b + ") present without (" + b + ", " + a + ")"});
    }
  }
}

void validate_parents(const Prototype& p, const std::set<std::string>& names, ValidationReport& report) {
  if (!p.parents) return;
  for (const auto* parent : {&p.parents->head, &p.parents->modifier}) {
    if (!names.count(*parent)) {
      report.push_back({ViolationKind::dangling_parent, p.name, p.name + ": dangling parent '" + *parent + "'"});
    }
  }
}

}  // namespace

ValidationReport validate_knowledge_base(const KnowledgeBase& kb, std::size_t max_features) {
  ValidationReport report;
  std::set<std::string> names;
  for (const auto& [key, p] : kb.prototypes) names.insert(key);
  for (const auto& [key, p] : kb.prototypes) {
    if (key != p.name) {
      report.push_back({ViolationKind::duplicate_name, key, "prototype keyed '" + key + "' is named '" + p.name + "'"});
    }
    auto sub = validate_prototype(p, max_features);
    report.insert(report.end(), sub.begin(), sub.end());
    validate_parents(p, names, report);
  }
  validate_oppositions(kb.oppositions, report);
  return report;
}

ValidationReport validate_prototypes(const std::vector<Prototype>& prototypes, const OppositionTable& oppositions,
                                     std::size_t max_features) {
  ValidationReport report;
  std::set<std::string> names;
  for (const auto& p : prototypes) {
    if (!names.insert(p.name).second) {
      report.push_back({ViolationKind::duplicate_name, p.name, "duplicate prototype name '" + p.name + "'"});
    }
  }
  for (const auto& p : prototypes) {
    auto sub = validate_prototype(p, max_features);
    report.insert(report.end(), sub.begin(), sub.end());
    validate_parents(p, names, report);
  }
  validate_oppositions(oppositions, report);
  return report;
}

nlohmann::json to_json(const Prototype& p) {
  nlohmann::json j;
  j["kind"] = to_string(p.kind);
  j["rigid"] = nlohmann::json::array();
  for (const auto& term : p.rigid) j["rigid"].push_back(term);
  j["typical"] = nlohmann::json::array();
  for (const auto& f : p.typical) {
    nlohmann::json feature{{"term", f.term}, {"p", f.probability}};
    if (f.origin) feature["parent"] = to_string(*f.origin);
    j["typical"].push_back(std::move(feature));
  }
  if (p.parents) j["parents"] = {{"head", p.parents->head}, {"modifier", p.parents->modifier}};
  return j;
}

Prototype prototype_from_json(const std::string& name, const nlohmann::json& j) {
  try {
    Prototype p;
    p.name = name;
    p.kind = prototype_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& term : j.value("rigid", nlohmann::json::array())) p.rigid.insert(term.get<std::string>());
    for (const auto& f : j.at("typical")) {
      TypicalFeature feature{f.at("term").get<std::string>(), f.at("p").get<double>(), std::nullopt};
      if (f.contains("parent")) feature.origin = inclusion_parent_from_string(f.at("parent").get<std::string>());
      p.typical.push_back(std::move(feature));
    }
    if (j.contains("parents")) {
      const auto& parents = j.at("parents");
      p.parents = CompoundParents{parents.at("head").get<std::string>(), parents.at("modifier").get<std::string>()};
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "prototype '" + name + "': " + e.what());
  } catch (const DataError& e) {
    throw ParseError(0, "prototype '" + name + "': " + e.what());
  }
}

}  // namespace valemo

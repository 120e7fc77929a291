#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace valemo {

inline constexpr std::size_t kDefaultMaxFeatures = 7;

/// Lower bound (exclusive) and upper bound (inclusive) of a typicality probability.
inline constexpr double kMinTypicality = 0.5;
inline constexpr double kMaxTypicality = 1.0;

enum class PrototypeKind { emotion, value, compound };

/// Which side of a combination an inclusion came from.
enum class InclusionParent { head, modifier, both };

std::string_view to_string(PrototypeKind kind);
std::string_view to_string(InclusionParent parent);
PrototypeKind prototype_kind_from_string(std::string_view text);
InclusionParent inclusion_parent_from_string(std::string_view text);

/// True iff p lies in the half-open interval (0.5, 1].
bool is_typicality_probability(double p);

/// One weighted typical property of a prototype. `origin` is only set on
/// compound prototypes and records which parent contributed the term.
struct TypicalFeature {
  std::string term;
  double probability = 1.0;
  std::optional<InclusionParent> origin;

  bool operator==(const TypicalFeature&) const = default;
};

/// "p :: T(subject) is included in feature": typical members of `subject`
/// have `feature` with probability p.
struct TypicalityInclusion {
  std::string subject;
  std::string feature;
  double probability = 1.0;
  InclusionParent parent = InclusionParent::head;

  bool operator==(const TypicalityInclusion&) const = default;
};

struct CompoundParents {
  std::string head;
  std::string modifier;

  bool operator==(const CompoundParents&) const = default;
};

/// A named concept: rigid properties hold for every member, typical
/// properties for typical members only. `typical` is kept in canonical order
/// (descending probability, then term).
///
/// The struct is a plain value so that data read from disk can be held and
/// reported on by validate_knowledge_base(); use make_basic_prototype() /
/// make_compound_prototype() to build prototypes that are valid by
/// construction.
struct Prototype {
  std::string name;
  PrototypeKind kind = PrototypeKind::emotion;
  std::set<std::string> rigid;
  std::vector<TypicalFeature> typical;
  std::optional<CompoundParents> parents;

  bool has_typical(std::string_view term) const;
  std::optional<double> typical_probability(std::string_view term) const;

  bool operator==(const Prototype&) const = default;
};

/// Canonical feature order: descending probability, then lexicographic term.
bool canonical_feature_less(const TypicalFeature& a, const TypicalFeature& b);
void canonicalize(std::vector<TypicalFeature>& features);

/// Checked constructors; throw DataError on any invariant violation.
Prototype make_basic_prototype(std::string name, PrototypeKind kind, std::set<std::string> rigid,
                               std::vector<TypicalFeature> typical);
Prototype make_compound_prototype(std::string name, CompoundParents parents, std::set<std::string> rigid,
                                  std::vector<TypicalFeature> typical,
                                  std::size_t max_features = kDefaultMaxFeatures);

/// Symmetric set of term pairs that cannot hold together. add() always
/// inserts both directions; `pairs` is exposed so that externally loaded data
/// can be validated as-is.
struct OppositionTable {
  std::set<std::pair<std::string, std::string>> pairs;

  void add(const std::string& a, const std::string& b);
  bool opposed(std::string_view a, std::string_view b) const;
  std::size_t size() const { return pairs.size() / 2; }
  void merge(const OppositionTable& other);

  bool operator==(const OppositionTable&) const = default;
};

struct KnowledgeBase {
  std::map<std::string, Prototype> prototypes;
  OppositionTable oppositions;

  /// Checked insertion: rejects duplicate names and dangling compound parents.
  void add(Prototype prototype);
  const Prototype& at(std::string_view name) const;
  bool contains(std::string_view name) const;
};

enum class ViolationKind {
  bad_probability,
  rigid_typical_overlap,
  kind_parents_mismatch,
  too_many_features,
  duplicate_name,
  dangling_parent,
  asymmetric_opposition,
  self_opposition,
  unordered_features,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string message;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

/// Checks a single prototype (probabilities, overlap, kind/parents, cap, order).
ValidationReport validate_prototype(const Prototype& prototype, std::size_t max_features = kDefaultMaxFeatures);

/// One violation record per broken invariant; an empty report means valid.
/// The vector overload also catches duplicate names, which a map-keyed
/// KnowledgeBase cannot represent.
ValidationReport validate_knowledge_base(const KnowledgeBase& kb, std::size_t max_features = kDefaultMaxFeatures);
ValidationReport validate_prototypes(const std::vector<Prototype>& prototypes, const OppositionTable& oppositions,
                                     std::size_t max_features = kDefaultMaxFeatures);

nlohmann::json to_json(const Prototype& prototype);
/// Reads one prototype entry from a bundle. Shape errors throw ParseError;
/// domain invariants are left to validate_prototype().
Prototype prototype_from_json(const std::string& name, const nlohmann::json& j);

}  // namespace valemo

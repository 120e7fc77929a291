#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "valemo/error.hpp"
#include "valemo/prototype_kb.hpp"

namespace valemo {

/// Largest inclusion pool the exhaustive scenario search accepts (2^20 scenarios).
inline constexpr std::size_t kMaxPoolSize = 20;

/// Two scenario probabilities closer than this (relative) are treated as a tie.
inline constexpr double kTieTolerance = 1e-12;

/// A kept/dropped choice over an inclusion pool. `kept` holds ascending pool
/// indices; probability is the product of p over kept and (1 - p) over dropped.
struct Scenario {
  std::vector<std::size_t> kept;
  double probability = 1.0;

  bool operator==(const Scenario&) const = default;
};

enum class BlockReason { inconsistent, trivial, head_starved, modifier_starved };

std::string_view to_string(BlockReason reason);

struct DiscardCounts {
  std::size_t inconsistent = 0;
  std::size_t trivial = 0;
  std::size_t head_starved = 0;
  std::size_t modifier_starved = 0;

  void count(BlockReason reason);
  std::size_t total() const { return inconsistent + trivial + head_starved + modifier_starved; }
  bool operator==(const DiscardCounts&) const = default;
};

nlohmann::json to_json(const DiscardCounts& counts);

struct CombinationRequest {
  Prototype head;      // the dominant concept (a value in the standard pipeline)
  Prototype modifier;  // the subordinate concept (an emotion)
  OppositionTable oppositions;
  std::size_t max_features = kDefaultMaxFeatures;
};

struct CombinationResult {
  Prototype compound;
  std::vector<TypicalityInclusion> pool;
  Scenario winning_scenario;
  DiscardCounts discarded;
  std::size_t admissible = 0;  // scenarios that survived blocking
};

/// Thrown by combine_concepts() when blocking removes every scenario.
class NoAdmissibleScenarioError : public DataError {
 public:
  NoAdmissibleScenarioError(const std::string& what, DiscardCounts counts)
      : DataError(what), counts_(counts) {}
  const DiscardCounts& counts() const { return counts_; }

 private:
  DiscardCounts counts_;
};

/// One inclusion per distinct typical term of either parent, canonical order.
/// A term shared by both parents becomes a single BOTH inclusion carrying the
/// head's probability.
std::vector<TypicalityInclusion> build_inclusion_pool(const Prototype& head, const Prototype& modifier);

double scenario_probability(std::span<const TypicalityInclusion> pool, std::span<const std::size_t> kept);

/// All 2^n scenarios, descending probability, ties by kept-set order.
/// Throws DataError("pool too large") above kMaxPoolSize.
std::vector<Scenario> enumerate_scenarios(std::span<const TypicalityInclusion> pool);

/// First applicable reason, checked in the order trivial, inconsistent,
/// head-starved, modifier-starved.
std::optional<BlockReason> is_blocked(std::span<const std::size_t> kept, std::span<const TypicalityInclusion> pool,
                                      const std::set<std::string>& rigid, const OppositionTable& oppositions);

/// True when `a` should win over `b`: higher probability, then more
/// head-attributed features, then the lexicographically smaller kept set.
bool scenario_preferred(const Scenario& a, const Scenario& b, std::span<const TypicalityInclusion> pool);

/// Builds the pool, searches every scenario, and emits the most probable
/// admissible one as a compound named "<head>-<modifier>", truncated to
/// max_features in canonical order.
CombinationResult combine_concepts(const CombinationRequest& request);

struct CombinationFailure {
  std::string head;
  std::string modifier;
  std::string reason;
  DiscardCounts discarded;
};

struct CompoundCatalog {
  std::vector<CombinationResult> compounds;  // sorted by compound name
  std::vector<CombinationFailure> failures;
};

/// Pairs every value prototype (as head) with each emotion prototype mapped
/// to its pole by the moral-emotion table. Prototypes whose name is not a
/// value pole are ignored. Pairs with no admissible scenario are recorded in
/// `failures`.
CompoundCatalog build_compound_catalog(const std::vector<Prototype>& values, const std::vector<Prototype>& emotions,
                                       const OppositionTable& oppositions,
                                       std::size_t max_features = kDefaultMaxFeatures);

/// Explainability record stored next to a compound in the bundle.
nlohmann::json combination_record(const CombinationResult& result);

}  // namespace valemo

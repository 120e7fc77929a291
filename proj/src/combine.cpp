#include "valemo/combine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "valemo/moral_mapping.hpp"

namespace valemo {

std::string_view to_string(BlockReason reason) {
  switch (reason) {
    case BlockReason::inconsistent:
      return "INCONSISTENT";
    case BlockReason::trivial:
      return "TRIVIAL";
    case BlockReason::head_starved:
      return "HEAD_STARVED";
    case BlockReason::modifier_starved:
      return "MODIFIER_STARVED";
  }
  return "INCONSISTENT";
}

void DiscardCounts::count(BlockReason reason) {
  switch (reason) {
    case BlockReason::inconsistent:
      ++inconsistent;
      break;
    case BlockReason::trivial:
      ++trivial;
      break;
    case BlockReason::head_starved:
      ++head_starved;
      break;
    case BlockReason::modifier_starved:
      ++modifier_starved;
      break;
  }
}

nlohmann::json to_json(const DiscardCounts& c) {
  return {{"inconsistent", c.inconsistent},
          {"trivial", c.trivial},
          {"head_starved", c.head_starved},
          {"modifier_starved", c.modifier_starved}};
}

namespace {

bool has_head_side(InclusionParent p) { return p != InclusionParent::modifier; }
bool has_modifier_side(InclusionParent p) { return p != InclusionParent::head; }

bool inclusion_less(const TypicalityInclusion& a, const TypicalityInclusion& b) {
  if (a.probability != b.probability) return a.probability > b.probability;
  return a.feature < b.feature;
}

void check_pool_size(std::size_t n) {
  if (n > kMaxPoolSize) {
    throw DataError("pool too large: " + std::to_string(n) + " inclusions, limit " + std::to_string(kMaxPoolSize));
  }
}

std::vector<std::size_t> mask_to_indices(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

std::size_t head_feature_count(std::span<const std::size_t> kept, std::span<const TypicalityInclusion> pool) {
  return static_cast<std::size_t>(
      std::count_if(kept.begin(), kept.end(), [&](std::size_t i) { return has_head_side(pool[i].parent); }));
}

/// Bitmask view of the blocking rules for one pool; agrees with is_blocked().
struct BlockingMasks {
  std::uint32_t full = 0;
  std::uint32_t head = 0;
  std::uint32_t modifier = 0;
  std::uint32_t rigid_opposed = 0;
  std::vector<std::uint32_t> opposed_pairs;

  BlockingMasks(std::span<const TypicalityInclusion> pool, const std::set<std::string>& rigid,
                const OppositionTable& oppositions) {
    const auto n = pool.size();
    full = n == 32 ? ~0u : ((1u << n) - 1u);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = 1u << i;
      if (has_head_side(pool[i].parent)) head |= bit;
      if (has_modifier_side(pool[i].parent)) modifier |= bit;
      for (const auto& r : rigid) {
        if (oppositions.opposed(pool[i].feature, r)) rigid_opposed |= bit;
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (oppositions.opposed(pool[i].feature, pool[j].feature)) opposed_pairs.push_back(bit | (1u << j));
      }
    }
  }

  std::optional<BlockReason> check(std::uint32_t mask) const {
    if (mask == full) return BlockReason::trivial;
    if (mask & rigid_opposed) return BlockReason::inconsistent;
    for (auto pair : opposed_pairs) {
      if ((mask & pair) == pair) return BlockReason::inconsistent;
    }
    if (!(mask & head)) return BlockReason::head_starved;
    if (!(mask & modifier)) return BlockReason::modifier_starved;
    return std::nullopt;
  }
};

}  // namespace

std::vector<TypicalityInclusion> build_inclusion_pool(const Prototype& head, const Prototype& modifier) {
  std::vector<TypicalityInclusion> pool;
  for (const auto& f : head.typical) {
    const auto parent = modifier.has_typical(f.term) ? InclusionParent::both : InclusionParent::head;
    pool.push_back({head.name, f.term, f.probability, parent});
  }
  for (const auto& f : modifier.typical) {
    if (head.has_typical(f.term)) continue;
    pool.push_back({modifier.name, f.term, f.probability, InclusionParent::modifier});
  }
  std::stable_sort(pool.begin(), pool.end(), inclusion_less);
  return pool;
}

double scenario_probability(std::span<const TypicalityInclusion> pool, std::span<const std::size_t> kept) {
  std::vector<bool> keep(pool.size(), false);
  for (auto i : kept) keep.at(i) = true;
  double p = 1.0;
  for (std::size_t i = 0; i < pool.size(); ++i) p *= keep[i] ? pool[i].probability : 1.0 - pool[i].probability;
  return p;
}

std::vector<Scenario> enumerate_scenarios(std::span<const TypicalityInclusion> pool) {
  const auto n = pool.size();
  check_pool_size(n);
  std::vector<Scenario> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto kept = mask_to_indices(mask, n);
    const double p = scenario_probability(pool, kept);
    out.push_back({std::move(kept), p});
  }
  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.kept < b.kept;
  });
  return out;
}

std::optional<BlockReason> is_blocked(std::span<const std::size_t> kept, std::span<const TypicalityInclusion> pool,
                                      const std::set<std::string>& rigid, const OppositionTable& oppositions) {
  if (kept.size() == pool.size()) return BlockReason::trivial;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    const auto& term = pool[kept[a]].feature;
    for (const auto& r : rigid) {
      if (oppositions.opposed(term, r)) return BlockReason::inconsistent;
    }
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      if (oppositions.opposed(term, pool[kept[b]].feature)) return BlockReason::inconsistent;
    }
  }
  bool head = false;
  bool modifier = false;
  for (auto i : kept) {
    head = head || has_head_side(pool[i].parent);
    modifier = modifier || has_modifier_side(pool[i].parent);
  }
  if (!head) return BlockReason::head_starved;
  if (!modifier) return BlockReason::modifier_starved;
  return std::nullopt;
}

bool scenario_preferred(const Scenario& a, const Scenario& b, std::span<const TypicalityInclusion> pool) {
  if (!nearly_equal(a.probability, b.probability)) return a.probability > b.probability;
  const auto ha = head_feature_count(a.kept, pool);
  const auto hb = head_feature_count(b.kept, pool);
  if (ha != hb) return ha > hb;
  return a.kept < b.kept;
}

CombinationResult combine_concepts(const CombinationRequest& request) {
  const auto& head = request.head;
  const auto& modifier = request.modifier;
  CombinationResult result;
  result.pool = build_inclusion_pool(head, modifier);
  const auto& pool = result.pool;
  const auto n = pool.size();
  check_pool_size(n);

  std::set<std::string> rigid = head.rigid;
  rigid.insert(modifier.rigid.begin(), modifier.rigid.end());

  const BlockingMasks masks(pool, rigid, request.oppositions);
  std::optional<Scenario> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (auto reason = masks.check(mask)) {
      result.discarded.count(*reason);
      continue;
    }
    ++result.admissible;
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= (mask & (1u << i)) ? pool[i].probability : 1.0 - pool[i].probability;
    if (best && p < best->probability && !nearly_equal(p, best->probability)) continue;
    Scenario candidate{mask_to_indices(mask, n), p};
    if (!best || scenario_preferred(candidate, *best, pool)) best = std::move(candidate);
  }

  const auto name = head.name + "-" + modifier.name;
  if (!best) {
    throw NoAdmissibleScenarioError("no admissible scenario for '" + name + "' (" +
                                        std::to_string(result.discarded.total()) + " scenarios blocked)",
                                    result.discarded);
  }

  std::vector<TypicalFeature> features;
  for (auto i : best->kept) {
    // A term that is rigid in either parent already holds for every member.
    if (rigid.count(pool[i].feature)) continue;
    features.push_back({pool[i].feature, pool[i].probability, pool[i].parent});
  }
  canonicalize(features);
  if (features.size() > request.max_features) features.resize(request.max_features);

  result.compound = make_compound_prototype(name, {head.name, modifier.name}, std::move(rigid), std::move(features),
                                            request.max_features);
  result.winning_scenario = std::move(*best);
  return result;
}

CompoundCatalog build_compound_catalog(const std::vector<Prototype>& values, const std::vector<Prototype>& emotions,
                                       const OppositionTable& oppositions, std::size_t max_features) {
  std::map<std::string, const Prototype*> emotion_by_name;
  for (const auto& e : emotions) emotion_by_name.emplace(e.name, &e);

  CompoundCatalog catalog;
  std::map<std::string, CombinationResult> by_name;
  for (const auto& value : values) {
    const auto pole = value_pole_from_name(value.name);
    if (!pole) continue;
    for (const auto& label : plutchik_for_value_pole(*pole)) {
      auto it = emotion_by_name.find(label);
      if (it == emotion_by_name.end()) continue;
      const auto name = value.name + "-" + label;
      if (by_name.count(name)) continue;
      try {
        by_name.emplace(name, combine_concepts({value, *it->second, oppositions, max_features}));
      } catch (const NoAdmissibleScenarioError& e) {
        catalog.failures.push_back({value.name, label, e.what(), e.counts()});
      } catch (const DataError& e) {
        catalog.failures.push_back({value.name, label, e.what(), {}});
      }
    }
  }
  for (auto& [name, result] : by_name) catalog.compounds.push_back(std::move(result));
  return catalog;
}

nlohmann::json combination_record(const CombinationResult& result) {
  nlohmann::json kept = nlohmann::json::array();
  for (auto i : result.winning_scenario.kept) kept.push_back(result.pool[i].feature);
  return {{"scenario_probability", result.winning_scenario.probability},
          {"kept", kept},
          {"pool_size", result.pool.size()},
          {"admissible", result.admissible},
          {"discarded", to_json(result.discarded)}};
}

}  // namespace valemo

#include "valemo/recommender.hpp"

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "valemo/error.hpp"

using namespace valemo;

namespace {

Classification labelled(std::string id, std::vector<std::string> labels) {
  Classification c;
  c.item_id = std::move(id);
  for (auto& l : labels) {
    LabelExplanation e;
    const auto dash = l.find('-');
    e.value = l.substr(0, dash);
    e.emotion = l.substr(dash + 1);
    e.label = std::move(l);
    c.labels.push_back(std::move(e));
  }
  return c;
}

std::vector<std::string> ids(const Recommendation& r) {
  std::vector<std::string> out;
  for (const auto& x : r.ranked) out.push_back(x.item_id);
  return out;
}

const RankedItem* entry(const Recommendation& r, const std::string& id) {
  for (const auto& x : r.ranked)
    if (x.item_id == id) return &x;
  return nullptr;
}

std::vector<Classification> fixture_classifications() {
  return classify_catalog(fixtures::catalog(), fixtures::bundle()).classifications;
}

}  // namespace

TEST_CASE("similar_items scores by Jaccard") {
  const auto seed = labelled("s", {"degradation-disgust"});
  const std::vector<Classification> catalog{
      seed,
      labelled("a", {"degradation-disgust", "betrayal-aggressiveness"}),
      labelled("b", {"degradation-disgust"}),
      labelled("c", {"sanctity-awe"}),
  };
  const auto r = similar_items(seed, catalog);
  CHECK(ids(r) == std::vector<std::string>{"b", "a"});
  CHECK(r.ranked[0].score == 1.0);
  CHECK(r.ranked[1].score == doctest::Approx(0.5));
  CHECK(r.ranked[1].labels == std::vector<std::string>{"degradation-disgust"});
  CHECK(entry(r, "c") == nullptr);
  CHECK(entry(r, "s") == nullptr);
}

TEST_CASE("unlabelled seed") {
  const auto seed = labelled("s", {});
  CHECK_THROWS_WITH_AS(similar_items(seed, {}), doctest::Contains("unclassifiable seed"), DataError);
  CHECK_THROWS_WITH_AS(opposite_items(seed, {}), doctest::Contains("unclassifiable seed"), DataError);
}

TEST_CASE("opposite_items flips the value pole") {
  const auto seed = labelled("catapult", {"degradation-disgust"});
  const std::vector<Classification> catalog{
      seed,
      labelled("bar", {"sanctity-awe"}),
      labelled("mixed", {"sanctity-awe", "harm-sadness"}),
      labelled("other", {"loyalty-trust"}),
  };
  const auto r = opposite_items(seed, catalog);
  CHECK(ids(r) == std::vector<std::string>{"bar", "mixed"});
  CHECK(r.ranked[0].score == 1.0);
  CHECK(r.ranked[1].score == doctest::Approx(0.5));
  CHECK(r.ranked[0].labels == std::vector<std::string>{"sanctity-awe"});

  const std::vector<Classification> none{seed, labelled("other", {"loyalty-trust"})};
  CHECK(opposite_items(seed, none).ranked.empty());
}

TEST_CASE("opposite_items with a seed in both poles of one foundation") {
  const auto seed = labelled("s", {"sanctity-awe", "degradation-disgust"});
  const std::vector<Classification> catalog{
      seed,
      labelled("a", {"degradation-loathing"}),
      labelled("b", {"sanctity-awe", "harm-grief"}),
      labelled("c", {"sanctity-awe", "degradation-disgust", "loyalty-trust"}),
  };
  const auto r = opposite_items(seed, catalog);
  // a: 1/1; b: 1/2; c: 2/3
  CHECK(ids(r) == std::vector<std::string>{"a", "c", "b"});
  CHECK(entry(r, "c")->score == doctest::Approx(2.0 / 3.0));
  CHECK(entry(r, "b")->score == doctest::Approx(0.5));
}

TEST_CASE("emotion tie-break prefers wheel-opposed emotions") {
  const auto seed = labelled("s", {"degradation-disgust"});
  const std::vector<Classification> catalog{
      seed,
      labelled("a", {"sanctity-awe"}),
      labelled("b", {"sanctity-trust"}),
  };
  CHECK(ids(opposite_items(seed, catalog)) == std::vector<std::string>{"a", "b"});
  RecommendOptions opts;
  opts.emotion_tiebreak = true;
  const auto r = opposite_items(seed, catalog, opts);
  CHECK(ids(r) == std::vector<std::string>{"b", "a"});
  CHECK(r.ranked[0].emotion_oppositions == 1);
}

TEST_CASE("limit is exact") {
  const auto seed = labelled("s", {"x-y"});
  std::vector<Classification> catalog{seed};
  for (int i = 0; i < 6; ++i) catalog.push_back(labelled("i" + std::to_string(i), {"x-y"}));
  for (std::size_t limit : {0u, 1u, 3u, 6u, 10u}) {
    RecommendOptions opts;
    opts.limit = limit;
    CHECK(similar_items(seed, catalog, opts).ranked.size() == std::min<std::size_t>(limit, 6));
  }
}

TEST_CASE("fixture catalog: Catapult's opposite ranking starts with Bar Kochva") {
  const auto all = fixture_classifications();
  const auto seed = *std::find_if(all.begin(), all.end(), [](const auto& c) { return c.item_id == "catapult"; });
  const auto r = opposite_items(seed, all);
  REQUIRE_FALSE(r.ranked.empty());
  CHECK(r.ranked[0].item_id == "bar-kochva-rebellion");
  CHECK(r.ranked[0].score > 0.0);
}

TEST_CASE("property: rankings are sorted, cite real labels and exclude the seed") {
  const auto all = fixture_classifications();
  for (const auto& seed : all) {
    if (seed.labels.empty()) continue;
    for (const auto& r : {similar_items(seed, all), opposite_items(seed, all)}) {
      for (std::size_t i = 0; i < r.ranked.size(); ++i) {
        const auto& x = r.ranked[i];
        CHECK(x.item_id != seed.item_id);
        CHECK(x.score > 0.0);
        CHECK(x.score <= 1.0);
        if (i) CHECK(r.ranked[i - 1].score >= x.score);
        const auto item = std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.item_id == x.item_id; });
        const auto names = item->label_names();
        for (const auto& l : x.labels) CHECK(std::count(names.begin(), names.end(), l) == 1);
      }
    }
    // Identical label sets come first in the similar ranking.
    const auto sim = similar_items(seed, all);
    bool seen_partial = false;
    for (const auto& x : sim.ranked) {
      if (x.score < 1.0) seen_partial = true;
      if (seen_partial) CHECK(x.score < 1.0);
    }
  }
}

TEST_CASE("property: opposition is symmetric per foundation") {
  const auto all = fixture_classifications();
  for (const auto& a : all) {
    if (a.labels.empty()) continue;
    for (const auto& x : opposite_items(a, all, {100, false}).ranked) {
      const auto b = *std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.item_id == x.item_id; });
      const auto back = opposite_items(b, all, {100, false});
      CHECK(entry(back, a.item_id) != nullptr);
    }
  }
}

TEST_CASE("recommendation JSON") {
  const auto seed = labelled("s", {"degradation-disgust"});
  const auto j = to_json(opposite_items(seed, {seed, labelled("a", {"sanctity-awe"})}));
  CHECK(j.at("mode") == "opposite");
  CHECK(j.at("seed_id") == "s");
  CHECK(j.at("ranked")[0].at("item_id") == "a");
  CHECK(j.at("ranked")[0].contains("emotion_oppositions"));
  CHECK(recommend_mode_from_string("similar") == RecommendMode::similar);
  CHECK_THROWS_AS(recommend_mode_from_string("sideways"), DataError);
}

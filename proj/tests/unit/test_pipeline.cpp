#include "valemo/pipeline.hpp"

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "valemo/error.hpp"
#include "valemo/hash.hpp"

using namespace valemo;

namespace {

const Classification* find(const ClassificationReport& r, const std::string& id) {
  for (const auto& c : r.classifications)
    if (c.item_id == id) return &c;
  return nullptr;
}

const char* kEmotions = "term\temotion\tscore\nfilth\tdisgust\t0.9\nvomit\tdisgust\t0.6\n";
const char* kValues = "term,foundation,polarity,probability\nweapon,sanctity,vice,0.8\nsacred,sanctity,virtue,0.9\n";

}  // namespace

TEST_CASE("fixture bundle holds the expected compounds") {
  const auto bundle = fixtures::bundle();
  std::vector<std::string> names;
  for (const auto& p : bundle.compounds()) names.push_back(p.name);
  for (const char* want : {"degradation-disgust", "betrayal-aggressiveness", "sanctity-awe", "authority-awe"}) {
    CAPTURE(want);
    CHECK(std::count(names.begin(), names.end(), want) == 1);
  }
  for (const auto& p : bundle.compounds()) {
    CHECK(p.typical.size() <= kDefaultMaxFeatures);
    CHECK(bundle.combinations.count(p.name) == 1);
  }
  CHECK(std::is_sorted(bundle.prototypes.begin(), bundle.prototypes.end(),
                       [](const Prototype& a, const Prototype& b) { return a.name < b.name; }));
  CHECK(bundle.find("disgust") != nullptr);
  CHECK(bundle.find("nothing") == nullptr);
  CHECK(bundle.threshold() == kDefaultThreshold);
}

TEST_CASE("manifest records the build inputs") {
  const auto bundle = fixtures::bundle();
  const auto& m = bundle.manifest;
  for (const char* key : {"format", "emotion_lexicon_sha256", "value_lexicon_sha256", "k", "max_features",
                          "threshold", "stopwords_sha256", "oppositions", "failures"}) {
    CAPTURE(key);
    CHECK(m.contains(key));
  }
  CHECK(m.at("emotion_lexicon_sha256") == sha256_hex(read_file(fixtures::path("emotions.tsv"))));
  CHECK(m.at("stopwords_sha256") == stopwords_hash());
  CHECK(m.at("k") == kDefaultPrototypeSize);
}

TEST_CASE("rebuilds are byte-identical") {
  const auto a = serialize_bundle(fixtures::bundle());
  const auto b = serialize_bundle(fixtures::bundle());
  CHECK(a == b);
  CHECK(bundle_hash(fixtures::bundle()) == sha256_hex(a));
}

TEST_CASE("bundle round trip") {
  const auto bundle = fixtures::bundle();
  const auto text = serialize_bundle(bundle);
  const auto back = parse_bundle(text);
  CHECK(serialize_bundle(back) == text);
  CHECK(back.prototypes == bundle.prototypes);
  CHECK(back.combinations == bundle.combinations);

  CHECK_THROWS_AS(parse_bundle("not json"), ParseError);
  CHECK_THROWS_AS(parse_bundle("{}"), ParseError);
  CHECK_THROWS_AS(parse_bundle(R"({"manifest":{},"prototypes":[]})"), ParseError);
  CHECK(parse_bundle(R"({"prototypes":{}})").prototypes.empty());
  auto doc = nlohmann::json::parse(text);
  doc["prototypes"]["degradation-disgust"]["typical"][0]["p"] = 0.4;
  CHECK_THROWS_AS(parse_bundle(doc.dump()), Error);
}

TEST_CASE("build_prototypes from small lexicons") {
  const auto bundle = build_prototypes(kEmotions, kValues);
  const auto* p = bundle.find("degradation-disgust");
  REQUIRE(p != nullptr);
  CHECK(p->has_typical("weapon"));
  CHECK(p->has_typical("filth"));
  CHECK_THROWS_WITH_AS(build_prototypes("term\temotion\tscore\n", kValues), doctest::Contains("empty prototype"),
                       DataError);
  CHECK_THROWS_AS(build_prototypes(kEmotions, "term,foundation,polarity,probability\n"), DataError);
}

TEST_CASE("file loaders name the offending file") {
  CHECK_THROWS_AS(read_file(fixtures::path("missing.tsv")), Error);
  try {
    build_prototypes_from_files(fixtures::path("values.csv"), fixtures::path("values.csv"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("values.csv") != std::string::npos);
  }
}

TEST_CASE("opposition list parsing") {
  const auto t = parse_opposition_list("# pairs\nweapon\tsacred\n\nfilth\tholy\n");
  CHECK(t.opposed("weapon", "sacred"));
  CHECK(t.opposed("holy", "filth"));
  CHECK_THROWS_AS(parse_opposition_list("lonely\n"), ParseError);
}

TEST_CASE("classify_catalog reproduces the fixture labels") {
  const auto report = classify_catalog(fixtures::catalog(), fixtures::bundle());
  const auto* catapult = find(report, "catapult");
  REQUIRE(catapult);
  CHECK(catapult->label_names() == std::vector<std::string>{"degradation-disgust"});
  CHECK(catapult->labels[0].matches == std::vector<std::string>{"molestation", "weapon"});
  const auto* gear = find(report, "roman-war-gear");
  REQUIRE(gear);
  CHECK(gear->label_names() == std::vector<std::string>{"betrayal-aggressiveness"});
  CHECK(gear->labels[0].matches == std::vector<std::string>{"brutality", "violently"});
  const auto* bar = find(report, "bar-kochva-rebellion");
  REQUIRE(bar);
  CHECK(bar->label_names() == std::vector<std::string>{"sanctity-awe"});
  CHECK(bar->labels[0].matches == std::vector<std::string>{"surprise", "torture", "kill"});

  const auto j = to_json(report);
  CHECK(j.at("summary").at("items") == 12);
  CHECK(j.at("summary").at("unclassified") == report.unclassified.size());
  CHECK(j.at("bundle_hash") == bundle_hash(fixtures::bundle()));
}

TEST_CASE("classify_catalog edge cases") {
  const auto bundle = fixtures::bundle();
  const auto empty = to_json(classify_catalog({}, bundle));
  CHECK(empty.at("summary").at("items") == 0);
  CHECK(empty.at("summary").at("classified") == 0);

  const auto stop = classify_catalog({{"s", "Stop", "the of and were", {}}}, bundle);
  CHECK(stop.classifications.empty());
  REQUIRE(stop.unclassified.size() == 1);
  CHECK(stop.unclassified[0] == UnclassifiedItem{"s", "empty profile"});

  const CulturalItem a{"a", "A", "weapon", {}};
  CHECK_THROWS_WITH_AS(classify_catalog({a, a}, bundle), doctest::Contains("duplicate item id"), DataError);
}

TEST_CASE("report round trip") {
  const auto report = classify_catalog(fixtures::catalog(), fixtures::bundle());
  const auto text = serialize_report(report);
  const auto back = parse_report(text);
  CHECK(back.bundle_hash == report.bundle_hash);
  CHECK(back.classifications == report.classifications);
  CHECK(back.unclassified == report.unclassified);
  CHECK(serialize_report(back) == text);
  CHECK_THROWS_AS(parse_report("[]"), ParseError);
}

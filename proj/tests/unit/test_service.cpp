#include "valemo/service.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "valemo/error.hpp"

using namespace valemo;
namespace fs = std::filesystem;

namespace {

ApiResponse get(Service& s, const std::string& path, std::map<std::string, std::string> query = {}) {
  return s.handle({"GET", path, std::move(query), ""});
}

ApiResponse post(Service& s, const std::string& path, const std::string& body) {
  return s.handle({"POST", path, {}, body});
}

std::string catapult_body() {
  return nlohmann::json{{"items", {to_json(fixtures::item("catapult"))}}}.dump();
}

}  // namespace

TEST_CASE("health and aliases") {
  Service s(fixtures::bundle());
  const auto h = get(s, "/v1/health");
  CHECK(h.status == 200);
  CHECK(h.body.at("status") == "ok");
  CHECK(h.body.at("items") == 0);
  CHECK(h.body.at("bundle_hash") == bundle_hash(fixtures::bundle()));
  CHECK(get(s, "/health").body == h.body);
  CHECK(get(s, "/v1/nowhere").status == 404);
  CHECK(s.handle({"DELETE", "/v1/health", {}, ""}).status == 405);
}

TEST_CASE("items, classification and recommendations") {
  Service s(fixtures::bundle());
  s.ingest(fixtures::catalog());
  CHECK(get(s, "/v1/health").body.at("items") == 12);
  const auto item = get(s, "/v1/items/catapult");
  CHECK(item.status == 200);
  CHECK(item.body.at("title") == fixtures::item("catapult").title);
  CHECK(get(s, "/v1/items/ghost").status == 404);
  CHECK(get(s, "/v1/items/catapult/other").status == 404);

  const auto c = get(s, "/v1/items/catapult/classification");
  CHECK(c.status == 200);
  CHECK(c.body.at("labels") == nlohmann::json{"degradation-disgust"});

  const auto lamp = get(s, "/v1/items/oil-lamp/classification");
  CHECK(lamp.body.at("labels").empty());
  CHECK(lamp.body.at("reason") == "no matching prototype");

  const auto opp = get(s, "/v1/items/catapult/opposite");
  CHECK(opp.status == 200);
  CHECK(opp.body.at("ranked")[0].at("item_id") == "bar-kochva-rebellion");
  const auto sim = get(s, "/v1/items/bar-kochva-rebellion/similar", {{"limit", "1"}});
  CHECK(sim.status == 200);
  REQUIRE(sim.body.at("ranked").size() == 1);
  CHECK(sim.body.at("ranked")[0].at("item_id") == "torah-niche");

  CHECK(get(s, "/v1/items/oil-lamp/similar").status == 422);
  CHECK(get(s, "/v1/items/catapult/similar", {{"limit", "x"}}).status == 400);
}

TEST_CASE("inline and stored classify") {
  Service s(fixtures::bundle());
  s.ingest(fixtures::catalog());
  const auto inline_result = post(s, "/v1/classify", catapult_body());
  REQUIRE(inline_result.status == 200);
  const auto& first = inline_result.body.at("classifications")[0];
  CHECK(first.at("labels") == nlohmann::json{"degradation-disgust"});
  CHECK(first.at("explanations")[0].at("emotions").at("disgust") == nlohmann::json{"molestation"});
  CHECK(first.at("explanations")[0].at("values").at("degradation") == nlohmann::json{"weapon"});

  const auto stored = post(s, "/v1/classify", R"({"stored":true})");
  CHECK(stored.status == 200);
  CHECK(stored.body.at("classifications").size() == 12);
  CHECK(post(s, "/v1/classify", "").body.at("classifications").size() == 12);

  CHECK(post(s, "/v1/classify", "{oops").status == 400);
  CHECK(post(s, "/v1/classify", R"({"items":[{"id":"x"}]})").status == 400);
  const auto stop = post(s, "/v1/classify", R"([{"id":"x","title":"t","description":"the of"}])");
  CHECK(stop.body.at("unclassified")[0].at("reason") == "empty profile");
  CHECK(post(s, "/v1/classify",
             R"([{"id":"x","title":"t","description":"a"},{"id":"x","title":"t","description":"b"}])")
            .status == 400);
}

TEST_CASE("prototype listing") {
  Service s(fixtures::bundle());
  const auto list = get(s, "/v1/prototypes");
  CHECK(list.status == 200);
  CHECK(list.body.at("prototypes").size() == fixtures::bundle().prototypes.size());
  const auto one = get(s, "/v1/prototypes/degradation-disgust");
  CHECK(one.status == 200);
  CHECK(one.body.contains("combination"));
  CHECK(get(s, "/v1/prototypes/nothing").status == 404);
}

TEST_CASE("catalog ingestion publishes a new snapshot") {
  Service s(fixtures::bundle());
  const auto before = s.snapshot();
  const auto r = post(s, "/v1/catalog", catapult_body());
  CHECK(r.status == 200);
  CHECK(r.body.at("ingested") == 1);
  CHECK(r.body.at("classified") == 1);
  CHECK(before->items.empty());
  CHECK(s.snapshot()->items.size() == 1);
  CHECK(post(s, "/v1/catalog", "nope").status == 400);
}

TEST_CASE("bundle swap reclassifies and leaves old snapshots intact") {
  Service s(fixtures::bundle());
  s.ingest(fixtures::catalog());
  const auto old = s.snapshot();
  auto bundle = build_prototypes("term\temotion\tscore\nlamp\tdisgust\t0.9\nwick\tdisgust\t0.7\n",
                                 "term,foundation,polarity,probability\nclay,sanctity,vice,0.8\nkiln,sanctity,vice,0.7\n");
  s.swap_bundle(bundle);
  const auto now = s.snapshot();
  CHECK(now->bundle_hash == bundle_hash(bundle));
  CHECK(old->bundle_hash == bundle_hash(fixtures::bundle()));
  CHECK(old->classifications.at("catapult").label_names() == std::vector<std::string>{"degradation-disgust"});
  CHECK(now->classifications.at("catapult").labels.empty());
}

TEST_CASE("store-backed service") {
  const auto dir = fs::temp_directory_path() / ("valemo-svc-" + std::to_string(std::random_device{}()));
  {
    CatalogStore store(dir);
    Service s(fixtures::bundle(), &store);
    s.ingest(fixtures::catalog());
    CHECK(store.classifications().size() == 12);
  }
  {
    CatalogStore store(dir);
    Service s(fixtures::bundle(), &store);
    CHECK(s.snapshot()->items.size() == 12);
    CHECK(get(s, "/v1/items/catapult/classification").body.at("labels") == nlohmann::json{"degradation-disgust"});
  }
  fs::remove_all(dir);
}

TEST_CASE("concurrent readers during ingestion") {
  Service s(fixtures::bundle());
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      const auto snap = s.snapshot();
      if (snap->classifications.size() > snap->items.size()) ++bad;
      if (get(s, "/v1/health").status != 200) ++bad;
    }
  });
  for (const auto& item : fixtures::catalog()) s.ingest({item});
  done = true;
  reader.join();
  CHECK(bad == 0);
  CHECK(s.snapshot()->items.size() == 12);
}

TEST_CASE("bind address parsing") {
  CHECK(parse_bind_address("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK_THROWS_AS(parse_bind_address("localhost"), DataError);
  CHECK_THROWS_AS(parse_bind_address("host:99999"), DataError);
  CHECK_THROWS_AS(parse_bind_address(":80"), DataError);
}

TEST_CASE("HTTP transport") {
  Service s(fixtures::bundle());
  s.ingest(fixtures::catalog());
  HttpServer server(s);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  server.start();

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(nlohmann::json::parse(health->body).at("items") == 12);

  const auto classify = client.Post("/v1/classify", catapult_body(), "application/json");
  REQUIRE(classify);
  CHECK(classify->status == 200);
  CHECK(nlohmann::json::parse(classify->body).at("classifications")[0].at("labels") ==
        nlohmann::json{"degradation-disgust"});

  const auto opp = client.Get("/v1/items/catapult/opposite?limit=3");
  REQUIRE(opp);
  const auto ranked = nlohmann::json::parse(opp->body).at("ranked");
  CHECK(ranked.size() <= 3);
  CHECK(ranked[0].at("item_id") == "bar-kochva-rebellion");

  const auto missing = client.Get("/v1/items/ghost");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(nlohmann::json::parse(missing->body).contains("error"));

  server.stop();
}

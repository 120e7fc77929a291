#include "valemo/service.hpp"

#include <charconv>
#include <set>
#include <thread>

#include "httplib.h"
#include "valemo/error.hpp"

namespace valemo {

std::vector<Classification> Snapshot::all_classifications() const {
  std::vector<Classification> out;
  out.reserve(classifications.size());
  for (const auto& [id, c] : classifications) out.push_back(c);
  return out;
}

Service::Service(PrototypeBundle bundle, CatalogStore* store) : store_(store) {
  auto shared = std::make_shared<const PrototypeBundle>(std::move(bundle));
  std::map<std::string, CulturalItem> items;
  if (store_) items = store_->items();
  auto snap = classify_all(std::move(shared), std::move(items), nullptr);
  if (store_) {
    // Reuse stored classifications made with this bundle; persist the rest.
    for (const auto& [id, item] : snap->items) {
      auto it = store_->classifications().find(id);
      if (it != store_->classifications().end() && it->second.bundle_hash == snap->bundle_hash) continue;
      StoredClassification record;
      record.bundle_hash = snap->bundle_hash;
      if (auto c = snap->classifications.find(id); c != snap->classifications.end()) {
        record.classification = c->second;
      } else {
        record.classification.item_id = id;
      }
      if (auto u = snap->unclassified.find(id); u != snap->unclassified.end()) record.unclassified_reason = u->second;
      store_->append_classification(record);
    }
  }
  publish(std::move(snap));
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void Service::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(next);
}

std::shared_ptr<Snapshot> Service::classify_all(std::shared_ptr<const PrototypeBundle> bundle,
                                                std::map<std::string, CulturalItem> items,
                                                const Snapshot* previous) const {
  auto snap = std::make_shared<Snapshot>();
  snap->bundle_hash = bundle_hash(*bundle);
  snap->compounds = bundle->compounds();
  snap->bundle = std::move(bundle);
  snap->items = std::move(items);
  const ClassifierConfig config{snap->bundle->threshold()};
  for (const auto& [id, item] : snap->items) {
    if (previous && previous->bundle_hash == snap->bundle_hash) {
      auto prev_item = previous->items.find(id);
      if (prev_item != previous->items.end() && prev_item->second == item) {
        if (auto c = previous->classifications.find(id); c != previous->classifications.end()) {
          snap->classifications.emplace(id, c->second);
        }
        if (auto u = previous->unclassified.find(id); u != previous->unclassified.end()) {
          snap->unclassified.emplace(id, u->second);
        }
        continue;
      }
    }
    try {
      auto c = classify_item(extract_feature_profile(item), snap->compounds, config);
      if (c.labels.empty()) snap->unclassified.emplace(id, "no matching prototype");
      snap->classifications.emplace(id, std::move(c));
    } catch (const DataError& e) {
      snap->unclassified.emplace(id, e.what());
    }
  }
  return snap;
}

void Service::ingest(const std::vector<CulturalItem>& items) {
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (!ids.insert(item.id).second) throw DataError("duplicate item id '" + item.id + "'");
  }
  std::lock_guard writer(writer_mutex_);
  const auto current = snapshot();
  auto merged = current->items;
  for (const auto& item : items) merged.insert_or_assign(item.id, item);
  auto next = classify_all(current->bundle, std::move(merged), current.get());
  if (store_) {
    store_->append_items(items);
    for (const auto& item : items) {
      StoredClassification record;
      record.bundle_hash = next->bundle_hash;
      if (auto c = next->classifications.find(item.id); c != next->classifications.end()) {
        record.classification = c->second;
      } else {
        record.classification.item_id = item.id;
      }
      if (auto u = next->unclassified.find(item.id); u != next->unclassified.end()) {
        record.unclassified_reason = u->second;
      }
      store_->append_classification(record);
    }
  }
  publish(std::move(next));
}

void Service::swap_bundle(PrototypeBundle bundle) {
  std::lock_guard writer(writer_mutex_);
  const auto current = snapshot();
  publish(classify_all(std::make_shared<const PrototypeBundle>(std::move(bundle)), current->items, nullptr));
}

namespace {

ApiResponse error_response(int status, const std::string& reason) { return {status, {{"error", reason}}}; }

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto slash = path.find('/', start);
    const auto end = slash == std::string::npos ? path.size() : slash;
    if (end > start) parts.push_back(path.substr(start, end - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  return parts;
}

std::size_t parse_limit(const ApiRequest& request) {
  auto it = request.query.find("limit");
  if (it == request.query.end()) return RecommendOptions{}.limit;
  std::size_t value = 0;
  const auto& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError(0, "limit must be a non-negative integer");
  return value;
}

nlohmann::json classification_payload(const Snapshot& snap, const std::string& id) {
  nlohmann::json body;
  if (auto c = snap.classifications.find(id); c != snap.classifications.end()) {
    body = to_json(c->second);
  } else {
    body = {{"item_id", id}, {"labels", nlohmann::json::array()}, {"explanations", nlohmann::json::array()},
            {"coverage", nlohmann::json::object()}};
  }
  if (auto u = snap.unclassified.find(id); u != snap.unclassified.end()) body["reason"] = u->second;
  body["bundle_hash"] = snap.bundle_hash;
  return body;
}

std::vector<CulturalItem> items_from_body(const nlohmann::json& body) {
  if (body.is_array()) return catalog_from_json(body);
  if (body.is_object() && body.contains("items")) return catalog_from_json(body.at("items"));
  throw ParseError(0, "expected an items array or an object with 'items'");
}

}  // namespace

ApiResponse Service::handle_classify(const ApiRequest& request, const Snapshot& snap) const {
  nlohmann::json body = nlohmann::json::object();
  if (!request.body.empty()) {
    try {
      body = nlohmann::json::parse(request.body);
    } catch (const nlohmann::json::parse_error& e) {
      return error_response(400, std::string("malformed JSON body: ") + e.what());
    }
  }
  const bool stored = body.is_object() && (body.empty() || body.value("stored", false));
  if (stored) {
    nlohmann::json classifications = nlohmann::json::array();
    for (const auto& [id, item] : snap.items) classifications.push_back(classification_payload(snap, id));
    return {200, {{"bundle_hash", snap.bundle_hash}, {"classifications", classifications}}};
  }
  const auto items = items_from_body(body);
  std::set<std::string> ids;
  const ClassifierConfig config{snap.bundle->threshold()};
  nlohmann::json classifications = nlohmann::json::array();
  nlohmann::json unclassified = nlohmann::json::array();
  for (const auto& item : items) {
    if (!ids.insert(item.id).second) return error_response(400, "duplicate item id '" + item.id + "'");
    try {
      auto c = classify_item(extract_feature_profile(item), snap.compounds, config);
      if (c.labels.empty()) unclassified.push_back({{"item_id", item.id}, {"reason", "no matching prototype"}});
      classifications.push_back(to_json(c));
    } catch (const DataError& e) {
      unclassified.push_back({{"item_id", item.id}, {"reason", e.what()}});
    }
  }
  return {200,
          {{"bundle_hash", snap.bundle_hash}, {"classifications", classifications}, {"unclassified", unclassified}}};
}

ApiResponse Service::handle_read(const ApiRequest& request, const Snapshot& snap) const {
  const auto parts = split_path(request.path);
  const auto n = parts.size();

  if (n == 2 && parts[1] == "health") {
    return {200,
            {{"status", "ok"},
             {"bundle_hash", snap.bundle_hash},
             {"items", snap.items.size()},
             {"compounds", snap.compounds.size()}}};
  }
  if (n >= 3 && parts[1] == "items") {
    const auto& id = parts[2];
    auto item = snap.items.find(id);
    if (item == snap.items.end()) return error_response(404, "unknown item '" + id + "'");
    if (n == 3) return {200, to_json(item->second)};
    if (n == 4 && parts[3] == "classification") return {200, classification_payload(snap, id)};
    if (n == 4 && (parts[3] == "similar" || parts[3] == "opposite")) {
      auto seed = snap.classifications.find(id);
      if (seed == snap.classifications.end() || seed->second.labels.empty()) {
        return error_response(422, "unclassifiable seed: item '" + id + "' has no labels");
      }
      RecommendOptions options;
      options.limit = parse_limit(request);
      options.emotion_tiebreak = request.query.count("emotion_tiebreak") > 0;
      const auto catalog = snap.all_classifications();
      const auto rec = parts[3] == "similar" ? similar_items(seed->second, catalog, options)
                                             : opposite_items(seed->second, catalog, options);
      return {200, to_json(rec)};
    }
    return error_response(404, "unknown resource " + request.path);
  }
  if (n == 2 && parts[1] == "prototypes") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& p : snap.bundle->prototypes) {
      nlohmann::json entry{{"name", p.name}, {"kind", to_string(p.kind)}, {"features", p.typical.size()}};
      if (p.parents) entry["parents"] = {{"head", p.parents->head}, {"modifier", p.parents->modifier}};
      list.push_back(std::move(entry));
    }
    return {200, {{"bundle_hash", snap.bundle_hash}, {"prototypes", list}}};
  }
  if (n == 3 && parts[1] == "prototypes") {
    const auto* p = snap.bundle->find(parts[2]);
    if (!p) return error_response(404, "unknown prototype '" + parts[2] + "'");
    auto body = to_json(*p);
    body["name"] = p->name;
    if (auto it = snap.bundle->combinations.find(p->name); it != snap.bundle->combinations.end()) {
      body["combination"] = it->second;
    }
    return {200, body};
  }
  return error_response(404, "unknown resource " + request.path);
}

ApiResponse Service::handle(const ApiRequest& request) {
  try {
    // Unprefixed paths are aliases of their /v1 counterparts.
    ApiRequest routed = request;
    if (split_path(request.path).empty() || split_path(request.path).front() != "v1") {
      routed.path = "/v1" + request.path;
    }
    const auto parts = split_path(routed.path);

    if (routed.method == "GET") return handle_read(routed, *snapshot());
    if (routed.method != "POST") return error_response(405, "method not allowed");

    if (parts.size() == 2 && parts[1] == "classify") return handle_classify(routed, *snapshot());
    if (parts.size() == 2 && parts[1] == "catalog") {
      nlohmann::json body;
      try {
        body = nlohmann::json::parse(routed.body);
      } catch (const nlohmann::json::parse_error& e) {
        return error_response(400, std::string("malformed JSON body: ") + e.what());
      }
      const auto items = items_from_body(body);
      ingest(items);
      const auto snap = snapshot();
      std::size_t classified = 0;
      for (const auto& item : items) {
        auto c = snap->classifications.find(item.id);
        if (c != snap->classifications.end() && !c->second.labels.empty()) ++classified;
      }
      return {200,
              {{"ingested", items.size()},
               {"classified", classified},
               {"unclassified", items.size() - classified},
               {"bundle_hash", snap->bundle_hash}}};
    }
    return error_response(404, "unknown resource " + request.path);
  } catch (const ParseError& e) {
    return error_response(400, e.what());
  } catch (const DataError& e) {
    return error_response(400, e.what());
  } catch (const NotFoundError& e) {
    return error_response(404, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

std::pair<std::string, int> parse_bind_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw DataError("bind address must look like host:port, got '" + address + "'");
  }
  int port = 0;
  const auto text = address.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc() || ptr != text.data() + text.size() || port < 0 || port > 65535) {
    throw DataError("invalid port '" + text + "'");
  }
  return {address.substr(0, colon), port};
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(Service& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      ApiRequest request{req.method, req.path, {}, req.body};
      for (const auto& [key, value] : req.params) request.query.emplace(key, value);
      const auto response = service.handle(request);
      res.status = response.status;
      res.set_content(response.body.dump(), "application/json; charset=utf-8");
    };
    server.Get(R"(/.*)", forward);
    server.Post(R"(/.*)", forward);
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void serve(Service& service, const std::string& host, int port) {
  HttpServer server(service);
  server.bind(host, port);
  server.listen();
}

}  // namespace valemo

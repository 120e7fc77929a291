#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "valemo/classifier.hpp"
#include "valemo/pipeline.hpp"
#include "valemo/recommender.hpp"
#include "valemo/store.hpp"
#include "valemo/text_pipeline.hpp"

namespace valemo {

/// Immutable view served to readers. Writers build a new snapshot and swap
/// the pointer; readers keep whichever snapshot they started with.
struct Snapshot {
  std::shared_ptr<const PrototypeBundle> bundle;
  std::string bundle_hash;
  std::vector<Prototype> compounds;
  std::map<std::string, CulturalItem> items;
  std::map<std::string, Classification> classifications;  // items with a usable profile
  std::map<std::string, std::string> unclassified;       // item id -> reason

  std::vector<Classification> all_classifications() const;
};

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Transport-independent core of the HTTP API. All handlers are safe to call
/// concurrently; writes (catalog ingestion) are serialized internally.
class Service {
 public:
  /// `store` is optional; when given, its items are loaded and reclassified
  /// against `bundle` if their stored classification used another bundle.
  explicit Service(PrototypeBundle bundle, CatalogStore* store = nullptr);

  std::shared_ptr<const Snapshot> snapshot() const;

  /// Adds or replaces items, classifies them, persists them and publishes a
  /// new snapshot. Throws DataError on duplicate ids within `items`.
  void ingest(const std::vector<CulturalItem>& items);

  /// Publishes a snapshot in which every item is classified against `bundle`.
  void swap_bundle(PrototypeBundle bundle);

  /// Routes one API call. Reads use the current snapshot; POST /v1/catalog
  /// goes through ingest().
  ApiResponse handle(const ApiRequest& request);

 private:
  void publish(std::shared_ptr<const Snapshot> next);
  std::shared_ptr<Snapshot> classify_all(std::shared_ptr<const PrototypeBundle> bundle,
                                         std::map<std::string, CulturalItem> items,
                                         const Snapshot* previous) const;
  ApiResponse handle_read(const ApiRequest& request, const Snapshot& snap) const;
  ApiResponse handle_classify(const ApiRequest& request, const Snapshot& snap) const;

  mutable std::mutex snapshot_mutex_;  // guards only the pointer swap / copy
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex writer_mutex_;
  CatalogStore* store_ = nullptr;
};

/// Splits "host:port"; throws DataError when malformed.
std::pair<std::string, int> parse_bind_address(const std::string& address);

/// HTTP transport for a Service. bind() with port 0 picks a free port.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port; throws Error when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called from another thread.
  void listen();
  void start();  // listen() on a background thread
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and blocks serving `service` until the process is stopped.
void serve(Service& service, const std::string& host, int port);

}  // namespace valemo

// valemo: build value/emotion prototypes, classify catalogs, recommend and serve.
//
// Exit codes: 0 ok, 1 usage, 2 data error.

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "valemo/error.hpp"
#include "valemo/moral_mapping.hpp"
#include "valemo/pipeline.hpp"
#include "valemo/recommender.hpp"
#include "valemo/service.hpp"
#include "valemo/store.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct BuildArgs {
  std::string emotions;
  std::string values;
  std::size_t k = valemo::kDefaultPrototypeSize;
  std::size_t max_features = valemo::kDefaultMaxFeatures;
  double threshold = valemo::kDefaultThreshold;
  std::string oppositions;
  std::string out;
};

struct ClassifyArgs {
  std::string catalog;
  std::string bundle;
  std::string out;
};

struct RecommendArgs {
  std::string item;
  std::string mode;
  std::string report;
  std::string catalog;
  std::string bundle;
  std::size_t limit = 10;
  bool emotion_tiebreak = false;
};

struct ServeArgs {
  std::string bind = "127.0.0.1:8080";
  std::string bundle;
  std::string catalog;
  std::string store;
};

void run_build(const BuildArgs& args) {
  valemo::BuildConfig config;
  config.k = args.k;
  config.max_features = args.max_features;
  config.threshold = args.threshold;
  if (!args.oppositions.empty()) {
    config.extra_oppositions = valemo::parse_opposition_list(valemo::read_file(args.oppositions));
  }
  const auto bundle = valemo::build_prototypes_from_files(args.emotions, args.values, config);
  valemo::write_file(args.out, valemo::serialize_bundle(bundle));
  std::cerr << "wrote " << args.out << " (" << bundle.compounds().size() << " compounds, sha256 "
            << valemo::bundle_hash(bundle) << ")\n";
}

void run_classify(const ClassifyArgs& args) {
  const auto bundle = valemo::parse_bundle(valemo::read_file(args.bundle));
  const auto items = valemo::parse_catalog(valemo::read_file(args.catalog));
  const auto report = valemo::classify_catalog(items, bundle);
  for (const auto& u : report.unclassified) std::cerr << "warning: " << u.item_id << ": " << u.reason << '\n';
  valemo::write_file(args.out, valemo::serialize_report(report));
}

void run_recommend(const RecommendArgs& args) {
  const auto mode = valemo::recommend_mode_from_string(args.mode);
  valemo::ClassificationReport report;
  if (!args.report.empty()) {
    report = valemo::parse_report(valemo::read_file(args.report));
  } else {
    const auto bundle = valemo::parse_bundle(valemo::read_file(args.bundle));
    report = valemo::classify_catalog(valemo::parse_catalog(valemo::read_file(args.catalog)), bundle);
  }
  const valemo::Classification* seed = nullptr;
  for (const auto& c : report.classifications) {
    if (c.item_id == args.item) seed = &c;
  }
  if (!seed) {
    for (const auto& u : report.unclassified) {
      if (u.item_id == args.item) throw valemo::DataError("unclassifiable seed: " + u.reason);
    }
    throw valemo::NotFoundError("unknown item '" + args.item + "'");
  }
  valemo::RecommendOptions options;
  options.limit = args.limit;
  options.emotion_tiebreak = args.emotion_tiebreak;
  const auto rec = mode == valemo::RecommendMode::similar
                       ? valemo::similar_items(*seed, report.classifications, options)
                       : valemo::opposite_items(*seed, report.classifications, options);
  std::cout << valemo::to_json(rec).dump(2) << '\n';
}

void run_serve(const ServeArgs& args) {
  const auto [host, port] = valemo::parse_bind_address(args.bind);
  auto bundle = valemo::parse_bundle(valemo::read_file(args.bundle));
  std::unique_ptr<valemo::CatalogStore> store;
  if (!args.store.empty()) store = std::make_unique<valemo::CatalogStore>(args.store);
  valemo::Service service(std::move(bundle), store.get());
  if (!args.catalog.empty()) service.ingest(valemo::parse_catalog(valemo::read_file(args.catalog)));
  valemo::HttpServer server(service);
  const int bound = server.bind(host, port);
  std::cerr << "listening on " << host << ':' << bound << " (bundle " << service.snapshot()->bundle_hash << ")\n";
  server.listen();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value/emotion classification of cultural items"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build-prototypes", "Build the prototype bundle from two lexicons");
  build_cmd->add_option("--emotions", build.emotions, "Emotion lexicon (term<TAB>emotion<TAB>score)")->required();
  build_cmd->add_option("--values", build.values, "Value lexicon CSV (term,foundation,polarity,probability)")
      ->required();
  build_cmd->add_option("--k", build.k, "Typical features per basic prototype")->check(CLI::PositiveNumber);
  build_cmd->add_option("--max-features", build.max_features, "Typical features per compound")
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--threshold", build.threshold, "Coverage threshold recorded in the manifest")
      ->check(CLI::Range(0.0, 1.0));
  build_cmd->add_option("--oppositions", build.oppositions, "Extra opposed term pairs (a<TAB>b)");
  build_cmd->add_option("--out", build.out, "Bundle path")->required();

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a catalog against a bundle");
  classify_cmd->add_option("--catalog", classify.catalog, "Catalog JSON")->required();
  classify_cmd->add_option("--bundle", classify.bundle, "Prototype bundle")->required();
  classify_cmd->add_option("--out", classify.out, "Report path")->required();

  RecommendArgs recommend;
  auto* recommend_cmd = app.add_subcommand("recommend", "Rank similar or opposite items for a seed");
  recommend_cmd->add_option("--item", recommend.item, "Seed item id")->required();
  recommend_cmd->add_option("--mode", recommend.mode, "similar or opposite")
      ->required()
      ->check(CLI::IsMember({"similar", "opposite"}));
  auto* report_opt = recommend_cmd->add_option("--report", recommend.report, "Classification report");
  auto* catalog_opt = recommend_cmd->add_option("--catalog", recommend.catalog, "Catalog JSON (with --bundle)");
  auto* bundle_opt = recommend_cmd->add_option("--bundle", recommend.bundle, "Prototype bundle (with --catalog)");
  catalog_opt->needs(bundle_opt)->excludes(report_opt);
  bundle_opt->needs(catalog_opt)->excludes(report_opt);
  recommend_cmd->add_option("--limit", recommend.limit, "Maximum results");
  recommend_cmd->add_flag("--emotion-tiebreak", recommend.emotion_tiebreak,
                          "Opposite mode: break ties by opposed wheel emotions");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the /v1 HTTP API");
  serve_cmd->add_option("--bind", serve.bind, "host:port");
  serve_cmd->add_option("--bundle", serve.bundle, "Prototype bundle")->required();
  serve_cmd->add_option("--catalog", serve.catalog, "Catalog JSON ingested at startup");
  serve_cmd->add_option("--store", serve.store, "Directory for the persistent JSON-lines store");

  auto* export_cmd = app.add_subcommand("export-mapping", "Print the moral emotion mapping as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (*recommend_cmd && recommend.report.empty() && recommend.catalog.empty()) {
    std::cerr << "recommend: give --report, or --catalog with --bundle\n";
    return kExitUsage;
  }

  try {
    if (*build_cmd) run_build(build);
    if (*classify_cmd) run_classify(classify);
    if (*recommend_cmd) run_recommend(recommend);
    if (*serve_cmd) run_serve(serve);
    if (*export_cmd) std::cout << valemo::mapping_to_json().dump(2) << '\n';
  } catch (const valemo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

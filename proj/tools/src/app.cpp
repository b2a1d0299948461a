#include "signalcast/cli/app.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "signalcast/error.hpp"

namespace signalcast::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

const char* describe(std::string_view stage) {
  if (stage == "ingest") return "parse, select, clean and label the tweet corpus";
  if (stage == "topics") return "fit the topic model and assign every document";
  if (stage == "build-series") return "build daily topic-sentiment counts and lagged features";
  if (stage == "adf") return "unit-root tests and differencing orders";
  if (stage == "granger") return "rank components by Granger causality against cases";
  if (stage == "grid-search") return "ARIMA and ARIMAX order search by AIC";
  if (stage == "fit-arima") return "refit the best orders on the training window";
  if (stage == "fit-var") return "VAR order selection, fit and forecast";
  if (stage == "forecast") return "forecasts with prediction intervals for the test window";
  if (stage == "backtest") return "score the test-window forecasts";
  if (stage == "emit-plots") return "plot-ready CSV files";
  return "run every stage in order";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forecast case counts from topic and sentiment signals in social media posts", "signalcast"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  std::vector<std::string> names = stage_names();
  names.emplace_back("pipeline");
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--config", config_path, "pipeline configuration (JSON)")->required();
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_option("--out", out_dir, "override the output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    std::optional<fs::path> out_override;
    if (out_dir) out_override = fs::path(*out_dir);
    const auto config = load_config(config_path, seed, out_override);
    run_stage(stage, config, out);
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace signalcast::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "signalcast/date.hpp"

namespace signalcast::cli {

namespace fs = std::filesystem;

struct TopicSettings {
  std::optional<int> k;  ///< nullopt selects k by coherence over [k_min, k_max]
  int k_min = 5;
  int k_max = 50;
  int seeds_per_k = 1;
  double alpha = -1.0;
  double beta = 0.01;
  int iterations = 1000;
  std::int64_t min_freq = 500;
  std::size_t top_n = 20;
  std::size_t window = 110;
};

struct GridSettings {
  int p_min = 0;
  int p_max = 7;
  int q_min = 0;
  int q_max = 7;
  std::optional<int> d;  ///< nullopt uses the order found by the adf stage
};

enum class ExogMode { kAll, kSignificant };

struct PipelineConfig {
  fs::path config_dir;
  fs::path tweets;
  fs::path cases;
  std::optional<fs::path> sidecar;
  std::optional<fs::path> stopwords;
  std::optional<fs::path> lexicon;
  fs::path out = "out";

  DateRange window{};
  Date split{};
  int utc_offset_minutes = 0;

  std::size_t min_terms = 10;
  std::size_t bigram_min_freq = 500;
  std::string normalizer = "identity";
  std::string sentiment = "pass-through";  ///< pass-through | lexicon | sidecar

  TopicSettings topics;
  std::optional<int> volume_topic;

  int max_lag = 14;
  int min_count = 10;
  double alpha = 0.05;
  int d_cap = 2;

  GridSettings grid;
  ExogMode exog_mode = ExogMode::kAll;
  int restarts = 0;

  int var_p_max = 20;
  int var_max_variables = 3;
  int var_horizon = 7;
  bool var_difference = false;

  std::vector<double> significances{0.01, 0.05};
  std::uint64_t seed = 0;
};

/// Stage seeds are fixed offsets from the pipeline seed.
inline constexpr std::uint64_t kTopicSeedOffset = 1000;
inline constexpr std::uint64_t kArimaSeedOffset = 2000;

/// Reads a JSON config. Relative paths resolve against the config's directory.
/// Throws ValidationError on missing keys, bad dates or a missing seed.
PipelineConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed_override = std::nullopt,
                           std::optional<fs::path> out_override = std::nullopt);

/// Fully resolved configuration as JSON text.
std::string resolved_json(const PipelineConfig& config);

}  // namespace signalcast::cli

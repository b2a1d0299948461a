#include "signalcast/cli/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "signalcast/error.hpp"

namespace signalcast::cli {

using nlohmann::json;

namespace {

Date date_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ValidationError(std::string("config: missing date \"") + key + "\"");
  const auto d = parse_date(j[key].get<std::string>());
  if (!d) throw ValidationError(std::string("config: \"") + key + "\" is not a YYYY-MM-DD date");
  return *d;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: \"") + key + "\" has the wrong type");
  }
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  T v{};
  take(j, key, v);
  out = v;
}

}  // namespace

PipelineConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed_override,
                           std::optional<fs::path> out_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file " + path.string() + " cannot be opened");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }

  PipelineConfig c;
  c.config_dir = fs::absolute(path).parent_path();

  const json paths = j.value("paths", json::object());
  if (!paths.contains("tweets") || !paths.contains("cases")) {
    throw ValidationError("config: paths.tweets and paths.cases are required");
  }
  c.tweets = resolve(c.config_dir, paths["tweets"].get<std::string>());
  c.cases = resolve(c.config_dir, paths["cases"].get<std::string>());
  for (auto [key, slot] : {std::pair{"sidecar", &c.sidecar}, std::pair{"stopwords", &c.stopwords},
                           std::pair{"lexicon", &c.lexicon}}) {
    if (paths.contains(key) && !paths[key].is_null()) *slot = resolve(c.config_dir, paths[key].get<std::string>());
  }
  if (paths.contains("out")) c.out = resolve(c.config_dir, paths["out"].get<std::string>());
  else c.out = c.config_dir / "out";

  const json window = j.value("window", json::object());
  c.window = {date_field(window, "start"), date_field(window, "end")};
  if (c.window.last < c.window.first) throw ValidationError("config: window ends before it starts");
  c.split = date_field(j, "split");
  if (c.split < c.window.first || c.split >= c.window.last) {
    throw ValidationError("config: split must fall inside the window, before its last day");
  }
  take(j, "utc_offset_minutes", c.utc_offset_minutes);

  const json ingest = j.value("ingest", json::object());
  take(ingest, "min_terms", c.min_terms);
  take(ingest, "bigram_min_freq", c.bigram_min_freq);
  take(ingest, "normalizer", c.normalizer);
  take(ingest, "sentiment", c.sentiment);
  if (c.sentiment != "pass-through" && c.sentiment != "lexicon" && c.sentiment != "sidecar") {
    throw ValidationError("config: ingest.sentiment must be pass-through, lexicon or sidecar");
  }
  if (c.sentiment == "sidecar" && !c.sidecar) throw ValidationError("config: sidecar sentiment needs paths.sidecar");

  const json topics = j.value("topics", json::object());
  if (topics.contains("k") && topics["k"].is_number_integer()) {
    c.topics.k = topics["k"].get<int>();
  } else if (topics.contains("k") && !(topics["k"].is_string() && topics["k"] == "auto")) {
    throw ValidationError("config: topics.k must be an integer or \"auto\"");
  }
  take(topics, "k_min", c.topics.k_min);
  take(topics, "k_max", c.topics.k_max);
  take(topics, "seeds_per_k", c.topics.seeds_per_k);
  take(topics, "alpha", c.topics.alpha);
  take(topics, "beta", c.topics.beta);
  take(topics, "iterations", c.topics.iterations);
  take(topics, "min_freq", c.topics.min_freq);
  take(topics, "top_n", c.topics.top_n);
  take(topics, "window", c.topics.window);
  take(j, "volume_topic", c.volume_topic);

  take(j, "max_lag", c.max_lag);
  take(j, "min_count", c.min_count);
  take(j, "alpha", c.alpha);
  take(j, "d_cap", c.d_cap);
  if (c.max_lag < 1) throw ValidationError("config: max_lag must be at least 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ValidationError("config: alpha must lie in (0, 1)");

  const json grid = j.value("grid", json::object());
  take(grid, "p_min", c.grid.p_min);
  take(grid, "p_max", c.grid.p_max);
  take(grid, "q_min", c.grid.q_min);
  take(grid, "q_max", c.grid.q_max);
  take(grid, "d", c.grid.d);

  const json arimax = j.value("arimax", json::object());
  std::string mode = "all";
  take(arimax, "columns", mode);
  if (mode == "all") c.exog_mode = ExogMode::kAll;
  else if (mode == "significant") c.exog_mode = ExogMode::kSignificant;
  else throw ValidationError("config: arimax.columns must be \"all\" or \"significant\"");
  take(arimax, "restarts", c.restarts);

  const json var = j.value("var", json::object());
  take(var, "p_max", c.var_p_max);
  take(var, "max_variables", c.var_max_variables);
  take(var, "horizon", c.var_horizon);
  take(var, "difference", c.var_difference);

  take(j, "significances", c.significances);
  for (double s : c.significances) {
    if (!(s > 0.0 && s < 1.0)) throw ValidationError("config: significances must lie in (0, 1)");
  }

  if (seed_override) {
    c.seed = *seed_override;
  } else if (j.contains("seed") && j["seed"].is_number_unsigned()) {
    c.seed = j["seed"].get<std::uint64_t>();
  } else {
    throw ValidationError("config: an unsigned integer \"seed\" is required (or pass --seed)");
  }
  if (out_override) c.out = fs::absolute(*out_override);
  return c;
}

std::string resolved_json(const PipelineConfig& c) {
  json j;
  const auto opt_path = [](const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); };
  j["paths"] = {{"tweets", c.tweets.string()}, {"cases", c.cases.string()},   {"sidecar", opt_path(c.sidecar)},
                {"stopwords", opt_path(c.stopwords)}, {"lexicon", opt_path(c.lexicon)}, {"out", c.out.string()}};
  j["window"] = {{"start", format_date(c.window.first)}, {"end", format_date(c.window.last)}};
  j["split"] = format_date(c.split);
  j["utc_offset_minutes"] = c.utc_offset_minutes;
  j["ingest"] = {{"min_terms", c.min_terms}, {"bigram_min_freq", c.bigram_min_freq},
                 {"normalizer", c.normalizer}, {"sentiment", c.sentiment}};
  j["topics"] = {{"k", c.topics.k ? json(*c.topics.k) : json("auto")},
                 {"k_min", c.topics.k_min},
                 {"k_max", c.topics.k_max},
                 {"seeds_per_k", c.topics.seeds_per_k},
                 {"alpha", c.topics.alpha},
                 {"beta", c.topics.beta},
                 {"iterations", c.topics.iterations},
                 {"min_freq", c.topics.min_freq},
                 {"top_n", c.topics.top_n},
                 {"window", c.topics.window}};
  j["volume_topic"] = c.volume_topic ? json(*c.volume_topic) : json(nullptr);
  j["max_lag"] = c.max_lag;
  j["min_count"] = c.min_count;
  j["alpha"] = c.alpha;
  j["d_cap"] = c.d_cap;
  j["grid"] = {{"p_min", c.grid.p_min}, {"p_max", c.grid.p_max}, {"q_min", c.grid.q_min},
               {"q_max", c.grid.q_max}, {"d", c.grid.d ? json(*c.grid.d) : json(nullptr)}};
  j["arimax"] = {{"columns", c.exog_mode == ExogMode::kAll ? "all" : "significant"}, {"restarts", c.restarts}};
  j["var"] = {{"p_max", c.var_p_max},
              {"max_variables", c.var_max_variables},
              {"horizon", c.var_horizon},
              {"difference", c.var_difference}};
  j["significances"] = c.significances;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

}  // namespace signalcast::cli

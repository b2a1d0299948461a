#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "signalcast/arima.hpp"
#include "signalcast/cli/app.hpp"
#include "signalcast/csv.hpp"
#include "signalcast/error.hpp"
#include "signalcast/eval.hpp"
#include "signalcast/ingest.hpp"
#include "signalcast/parallel.hpp"
#include "signalcast/sentiment.hpp"
#include "signalcast/series.hpp"
#include "signalcast/stattests.hpp"
#include "signalcast/topics.hpp"
#include "signalcast/var.hpp"
#include "workspace.hpp"

namespace signalcast::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string sig_label(double s) {
  const double pct = s * 100.0;
  std::ostringstream o;
  if (std::abs(pct - std::round(pct)) < 1e-9) o << static_cast<long>(std::round(pct));
  else o << pct;
  return o.str();
}

std::vector<double> split_doubles(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("artifact " + p.string() + " is not valid JSON: " + e.what());
  }
}

json metrics_json(const eval::MetricsReport& m) {
  json j{{"rmse", m.rmse}, {"r2", m.r2}, {"r2_residual", m.r2_residual}, {"n", m.n}};
  j["mape"] = m.mape ? json(*m.mape) : json(nullptr);
  if (!m.mape) j["mape_reason"] = m.mape_reason;
  return j;
}

// ---------------------------------------------------------------- ingest

std::unique_ptr<sentiment::SentimentProvider> make_provider(const PipelineConfig& c) {
  if (c.sentiment == "lexicon") {
    return std::make_unique<sentiment::LexiconProvider>(
        c.lexicon ? sentiment::LexiconProvider::from_file(c.lexicon->string()) : sentiment::LexiconProvider::bundled());
  }
  if (c.sentiment == "sidecar") {
    return std::make_unique<sentiment::SidecarProvider>(sentiment::SidecarProvider::from_file(c.sidecar->string()));
  }
  return std::make_unique<sentiment::PassThroughProvider>();
}

void stage_ingest(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  auto parsed = ingest::parse_corpus(c.tweets.string(), {}, c.window);
  ws.write("ingest_rejections.csv", [&](std::ostream& o) { ingest::write_rejections(o, parsed.rejections); });
  const std::size_t n_parsed = parsed.records.size();
  const auto selected = ingest::select_tweets(std::move(parsed.records), c.min_terms);

  const auto stop = c.stopwords ? ingest::StopwordList::from_file(c.stopwords->string()) : ingest::StopwordList::english();
  const auto normalizer = ingest::make_normalizer(c.normalizer);
  const auto provider = make_provider(c);
  const std::chrono::minutes offset{c.utc_offset_minutes};

  std::vector<std::optional<ingest::CleanDoc>> cleaned(selected.size());
  std::vector<int> labels(selected.size(), 0);
  parallel_for(selected.size(), [&](std::size_t i) {
    cleaned[i] = ingest::clean_and_tokenize(selected[i], stop, *normalizer, offset);
    labels[i] = provider->classify(selected[i]).label;
  });
  std::vector<ingest::CleanDoc> docs;
  std::vector<int> doc_labels;
  for (std::size_t i = 0; i < cleaned.size(); ++i) {
    if (!cleaned[i]) continue;
    docs.push_back(std::move(*cleaned[i]));
    doc_labels.push_back(labels[i]);
  }
  const std::size_t n_empty = selected.size() - docs.size();
  auto merged = ingest::detect_and_merge_bigrams(std::move(docs), c.bigram_min_freq);

  ws.write("ingest_docs.csv", [&](std::ostream& o) {
    csv::write_row(o, {"id", "date", "sentiment", "tokens"});
    for (std::size_t i = 0; i < merged.docs.size(); ++i) {
      const auto& d = merged.docs[i];
      std::string tokens;
      for (const auto& t : d.tokens) {
        if (!tokens.empty()) tokens += ' ';
        tokens += t;
      }
      csv::write_row(o, {d.tweet_id, format_date(d.date), std::to_string(doc_labels[i]), tokens});
    }
  });
  ws.write("ingest_bigrams.csv", [&](std::ostream& o) {
    csv::write_row(o, {"first", "second"});
    for (const auto& [a, b] : merged.bigrams) csv::write_row(o, {a, b});
  });
  const json summary{{"parsed", n_parsed},
                     {"rejected", parsed.rejections.size()},
                     {"selected", selected.size()},
                     {"empty_after_cleaning", n_empty},
                     {"documents", merged.docs.size()},
                     {"bigrams", merged.bigrams.size()}};
  ws.write_text("ingest_summary.json", summary.dump(2) + "\n");
  log << "ingest: " << n_parsed << " parsed, " << parsed.rejections.size() << " rejected, " << merged.docs.size()
      << " documents\n";
}

struct LabelledDocs {
  std::vector<ingest::CleanDoc> docs;
  std::vector<int> sentiment;
};

LabelledDocs read_docs(const Workspace& ws) {
  const auto rows = csv::read_file(ws.require("ingest_docs.csv", "ingest").string());
  if (rows.empty()) throw ValidationError("ingest_docs.csv is empty");
  const csv::Header h(rows.front());
  const auto c_id = h.require("id"), c_date = h.require("date"), c_sent = h.require("sentiment"),
             c_tok = h.require("tokens");
  LabelledDocs out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    ingest::CleanDoc d{f[c_id], *parse_date(f[c_date]), {}};
    std::stringstream toks(f[c_tok]);
    std::string t;
    while (toks >> t) d.tokens.push_back(t);
    out.docs.push_back(std::move(d));
    out.sentiment.push_back(std::stoi(f[c_sent]));
  }
  return out;
}

// ---------------------------------------------------------------- topics

void stage_topics(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto input = read_docs(ws);
  if (input.docs.empty()) throw ValidationError("topics: ingest produced no documents");
  const auto vb = topics::build_vocabulary(input.docs, c.topics.min_freq);
  const std::uint64_t seed = c.seed + kTopicSeedOffset;

  topics::LdaModel model;
  std::vector<std::pair<int, double>> table;
  if (c.topics.k) {
    topics::LdaOptions o;
    o.k = *c.topics.k;
    o.alpha = c.topics.alpha;
    o.beta = c.topics.beta;
    o.iterations = c.topics.iterations;
    o.seed = seed;
    model = topics::fit_lda(vb.corpus, vb.vocabulary, o);
    table.emplace_back(o.k, topics::coherence_cv(model, input.docs, std::min(c.topics.top_n, model.vocab_size()),
                                                 c.topics.window)
                                .value);
  } else {
    topics::KSelectionOptions o;
    o.k_min = c.topics.k_min;
    o.k_max = c.topics.k_max;
    o.seeds_per_k = c.topics.seeds_per_k;
    o.alpha = c.topics.alpha;
    o.beta = c.topics.beta;
    o.iterations = c.topics.iterations;
    o.seed = seed;
    o.top_n = c.topics.top_n;
    o.window = c.topics.window;
    auto sel = topics::select_k(vb.corpus, vb.vocabulary, input.docs, o);
    model = std::move(sel.best);
    table = std::move(sel.table);
  }
  const auto score =
      topics::coherence_cv(model, input.docs, std::min(c.topics.top_n, model.vocab_size()), c.topics.window);

  const auto& docs = input.docs;
  std::vector<std::optional<topics::TopicAssignment>> assigned(docs.size());
  parallel_for(docs.size(), [&](std::size_t i) {
    try {
      assigned[i] = topics::assign_topic(model, docs[i]);
    } catch (const topics::OutOfVocabulary&) {
    }
  });
  std::size_t unassigned = 0;
  ws.write("topics_assignments.csv", [&](std::ostream& o) {
    csv::write_row(o, {"id", "date", "topic", "sentiment", "probability"});
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!assigned[i]) {
        ++unassigned;
        continue;
      }
      const auto& a = *assigned[i];
      csv::write_row(o, {docs[i].tweet_id, format_date(docs[i].date), std::to_string(a.topic),
                         std::to_string(input.sentiment[i]), num(a.probabilities[static_cast<std::size_t>(a.topic)])});
    }
  });
  ws.write("topics_k_table.csv", [&](std::ostream& o) {
    csv::write_row(o, {"k", "coherence"});
    for (const auto& [k, v] : table) csv::write_row(o, {std::to_string(k), num(v)});
  });
  const std::size_t top_n = std::min<std::size_t>(c.topics.top_n, model.vocab_size());
  ws.write("topics_top_words.csv", [&](std::ostream& o) {
    csv::write_row(o, {"topic", "rank", "word", "count"});
    for (int t = 0; t < model.k; ++t) {
      const auto top = model.top_words(t, top_n);
      for (std::size_t r = 0; r < top.size(); ++r) {
        csv::write_row(o, {std::to_string(t), std::to_string(r + 1), model.vocabulary.term(top[r]),
                           std::to_string(model.word_count(t, top[r]))});
      }
    }
  });
  json j{{"k", model.k},
         {"alpha", model.alpha},
         {"beta", model.beta},
         {"iterations", model.iterations},
         {"seed", model.seed},
         {"vocabulary_size", model.vocab_size()},
         {"documents", model.doc_count()},
         {"pruned_documents", vb.dropped.size()},
         {"unassigned_documents", unassigned},
         {"coherence", score.value},
         {"coherence_per_topic", score.per_topic},
         {"warnings", model.warnings}};
  ws.write_text("topics_model.json", j.dump(2) + "\n");
  log << "topics: k=" << model.k << ", coherence " << num(score.value) << ", " << model.vocab_size() << " terms\n";
}

// ---------------------------------------------------------------- series

series::CaseSeries cases_in_window(const PipelineConfig& c) {
  const auto all = series::read_case_series(c.cases.string());
  if (!all.range().contains(c.window.first) || !all.range().contains(c.window.last)) {
    throw ValidationError("case series " + c.cases.string() + " covers " + format_date(all.start) + ".." +
                          format_date(all.end()) + ", which does not include the study window");
  }
  const auto from = static_cast<std::size_t>((c.window.first - all.start).count());
  const auto n = static_cast<std::size_t>(c.window.days());
  return {c.window.first, {all.values.begin() + static_cast<std::ptrdiff_t>(from),
                           all.values.begin() + static_cast<std::ptrdiff_t>(from + n)}};
}

void stage_build_series(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto rows = csv::read_file(ws.require("topics_assignments.csv", "topics").string());
  const auto model = read_json(ws.require("topics_model.json", "topics"));
  const int k = model.at("k").get<int>();
  if (rows.empty()) throw ValidationError("topics_assignments.csv is empty");
  const csv::Header h(rows.front());
  const auto c_date = h.require("date"), c_topic = h.require("topic"), c_sent = h.require("sentiment");
  std::vector<series::DocLabel> labels;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    labels.push_back({*parse_date(f[c_date]), std::stoi(f[c_topic]), std::stoi(f[c_sent])});
  }
  const auto built = series::build_tensor(labels, c.window, k);
  const auto cases = cases_in_window(c);
  const auto lagged = series::lag_features(built.tensor, cases, c.max_lag);

  ws.write("series_tensor.csv", [&](std::ostream& o) { series::write_tensor(o, built.tensor); });
  ws.write("series_cases.csv", [&](std::ostream& o) { series::write_daily(o, cases, "new_cases"); });
  ws.write("series_lagged.csv", [&](std::ostream& o) { series::write_lagged(o, lagged); });
  ws.write("series_volume_overall.csv", [&](std::ostream& o) {
    series::write_daily(o, series::volumetric_series(labels, c.window, series::VolumeMode::overall()), "posts");
  });
  if (c.volume_topic) {
    if (*c.volume_topic < 0 || *c.volume_topic >= k) {
      throw ValidationError("volume_topic " + std::to_string(*c.volume_topic) + " is outside 0.." + std::to_string(k - 1));
    }
    ws.write("series_volume_topic.csv", [&](std::ostream& o) {
      series::write_daily(o, series::volumetric_series(labels, c.window, series::VolumeMode::of_topic(*c.volume_topic)),
                          "posts");
    });
  }
  log << "build-series: " << built.tensor.days() << " days x " << built.tensor.components() << " components, "
      << lagged.columns.size() << " lagged columns\n";
}

struct SeriesInputs {
  series::SeriesTensor tensor;
  series::CaseSeries cases;
};

SeriesInputs read_series(const Workspace& ws) {
  auto tensor = series::read_tensor(ws.require("series_tensor.csv", "build-series").string());
  auto cases = series::read_case_series(ws.require("series_cases.csv", "build-series").string());
  if (cases.start != tensor.window().first || cases.size() != tensor.days()) {
    throw ValidationError("series_tensor.csv and series_cases.csv cover different dates; rerun `signalcast build-series`");
  }
  return {std::move(tensor), std::move(cases)};
}

std::vector<stattests::Component> components_of(const series::SeriesTensor& t) {
  std::vector<stattests::Component> out;
  for (int c = 0; c < t.components(); ++c) {
    out.push_back({series::SeriesTensor::component_name(c), series::SeriesTensor::component_topic(c),
                   series::SeriesTensor::component_sentiment(c), t.component(c).values});
  }
  return out;
}

// ---------------------------------------------------------------- adf

void stage_adf(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto in = read_series(ws);
  std::vector<std::pair<std::string, std::vector<double>>> all{{"y", in.cases.values}};
  for (const auto& comp : components_of(in.tensor)) all.emplace_back(comp.name, comp.values);

  struct Row {
    int d = -1;
    stattests::AdfResult adf;
    std::string note;
  };
  std::vector<Row> rows(all.size());
  parallel_for(all.size(), [&](std::size_t i) {
    try {
      const auto r = stattests::ensure_stationary(all[i].second, c.d_cap, c.alpha);
      rows[i] = {r.d, r.adf, ""};
    } catch (const stattests::NotStationary& e) {
      rows[i] = {-1, e.last(), "not stationary within d_cap"};
    } catch (const std::exception& e) {
      rows[i] = {-1, {}, e.what()};
    }
  });
  ws.write("adf_report.csv", [&](std::ostream& o) {
    csv::write_row(o, {"series", "d", "statistic", "p_value", "lag", "nobs", "stationary", "note"});
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto& r = rows[i];
      csv::write_row(o, {all[i].first, std::to_string(r.d), num(r.adf.statistic), num(r.adf.p_value),
                         std::to_string(r.adf.chosen_lag), std::to_string(r.adf.nobs), r.d >= 0 ? "true" : "false",
                         r.note});
    }
  });
  if (rows[0].d < 0) {
    throw NumericError("adf: target series is not stationary after " + std::to_string(c.d_cap) +
                       " differences (" + rows[0].note + ")");
  }
  ws.write_text("adf_summary.json", json{{"y_d", rows[0].d}}.dump(2) + "\n");
  const auto stationary = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.d >= 0; });
  log << "adf: y needs d=" << rows[0].d << "; " << stationary << "/" << rows.size() << " series stationary\n";
}

// ---------------------------------------------------------------- granger

void stage_granger(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto in = read_series(ws);
  stattests::FeatureSelectionOptions o;
  o.max_lag = c.max_lag;
  o.alpha = c.alpha;
  o.min_count = c.min_count;
  o.max_d = c.d_cap;
  const auto ranking = stattests::select_features(components_of(in.tensor), in.cases.values, o);
  ws.write("granger_ranking.csv", [&](std::ostream& out) { stattests::write_ranking(out, ranking.ranked); });
  ws.write("granger_all.csv", [&](std::ostream& out) { stattests::write_ranking(out, ranking.all); });
  ws.write("granger_skipped.csv", [&](std::ostream& out) {
    csv::write_row(out, {"component", "reason"});
    for (const auto& s : ranking.skipped) csv::write_row(out, {s.name, s.reason});
  });
  log << "granger: " << ranking.ranked.size() << " components significant at >= " << c.min_count << " of "
      << c.max_lag << " lags";
  if (!ranking.ranked.empty()) {
    log << " (top: " << ranking.ranked.front().name << " " << ranking.ranked.front().significant_count << ")";
  }
  log << "\n";
}

struct Selected {
  int component;
  std::string name;
  int count;
  std::vector<double> p_values;
};

std::vector<Selected> read_ranking(const Workspace& ws) {
  const auto rows = csv::read_file(ws.require("granger_ranking.csv", "granger").string());
  if (rows.empty()) throw ValidationError("granger_ranking.csv is empty");
  const csv::Header h(rows.front());
  const auto c_name = h.require("component"), c_topic = h.require("topic"), c_sent = h.require("sentiment"),
             c_count = h.require("significant_count"), c_p = h.require("p_values");
  std::vector<Selected> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    out.push_back({std::stoi(f[c_topic]) * series::kSentiments + std::stoi(f[c_sent]), f[c_name],
                   std::stoi(f[c_count]), split_doubles(f[c_p], ';')});
  }
  return out;
}

// ------------------------------------------------------------ model inputs

/// Target and exogenous matrix on the lag-trimmed sample shared by the
/// ARIMA and ARIMAX models, plus the train/test boundary.
struct ModelData {
  series::CaseSeries y;
  arima::Exog exog;
  std::size_t train = 0;  ///< rows on or before the split date
};

ModelData model_data(const PipelineConfig& c, const Workspace& ws, bool with_exog) {
  const auto in = read_series(ws);
  const int L = c.max_lag;
  if (in.cases.size() <= static_cast<std::size_t>(L) + 2) throw ValidationError("series too short for max_lag");
  ModelData m;
  m.y.start = in.cases.date(static_cast<std::size_t>(L));
  m.y.values.assign(in.cases.values.begin() + L, in.cases.values.end());
  if (c.split < m.y.start) throw ValidationError("split falls inside the lag warm-up period");
  m.train = static_cast<std::size_t>((c.split - m.y.start).count()) + 1;

  if (with_exog) {
    const auto selected = read_ranking(ws);
    std::vector<std::pair<int, int>> cols;  // (component, lag)
    std::vector<std::string> names;
    for (const auto& s : selected) {
      for (int l = 0; l <= L; ++l) {
        const bool keep = c.exog_mode == ExogMode::kAll ||
                          (l >= 1 && static_cast<std::size_t>(l) <= s.p_values.size() &&
                           s.p_values[static_cast<std::size_t>(l - 1)] < c.alpha);
        if (!keep) continue;
        cols.emplace_back(s.component, l);
        names.push_back(s.name + "_lag" + std::to_string(l));
      }
    }
    m.exog.names = names;
    m.exog.values.resize(static_cast<Eigen::Index>(m.y.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto full = in.tensor.component(cols[j].first).values;
      for (std::size_t t = 0; t < m.y.size(); ++t) {
        m.exog.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) =
            full[t + static_cast<std::size_t>(L - cols[j].second)];
      }
    }
  }
  return m;
}

arima::Exog rows_of(const arima::Exog& e, std::size_t from, std::size_t count) {
  return {e.names, e.values.middleRows(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(count))};
}

int grid_d(const PipelineConfig& c, const Workspace& ws) {
  if (c.grid.d) return *c.grid.d;
  return read_json(ws.require("adf_summary.json", "adf")).at("y_d").get<int>();
}

arima::FitOptions fit_options(const PipelineConfig& c) {
  arima::FitOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed + kArimaSeedOffset;
  return o;
}

// ----------------------------------------------------------- grid-search

void write_grid(Workspace& ws, const std::string& name, const arima::GridResult& g) {
  ws.write(name, [&](std::ostream& o) {
    csv::write_row(o, {"rank", "p", "d", "q", "aic", "bic", "loglik", "sigma2", "converged"});
    for (std::size_t i = 0; i < g.ranked.size(); ++i) {
      const auto& f = g.ranked[i];
      csv::write_row(o, {std::to_string(i + 1), std::to_string(f.spec.p), std::to_string(f.spec.d),
                         std::to_string(f.spec.q), num(f.aic), num(f.bic), num(f.loglik), num(f.sigma2),
                         f.converged ? "true" : "false"});
    }
  });
}

void stage_grid_search(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const int d = grid_d(c, ws);
  const bool with_exog = ws.has("granger_ranking.csv");
  const auto m = model_data(c, ws, with_exog);
  const std::vector<double> train(m.y.values.begin(), m.y.values.begin() + static_cast<std::ptrdiff_t>(m.train));
  const auto opts = fit_options(c);

  const auto plain = arima::grid_search(train, nullptr, c.grid.p_min, c.grid.p_max, d, c.grid.q_min, c.grid.q_max, opts);
  write_grid(ws, "grid_arima.csv", plain);
  std::vector<std::pair<std::string, arima::GridFailure>> failures;
  for (const auto& f : plain.failures) failures.emplace_back("arima", f);
  log << "grid-search: ARIMA" << plain.ranked.front().spec.label() << " AIC " << num(plain.ranked.front().aic);

  if (with_exog && !m.exog.empty()) {
    const auto ex = rows_of(m.exog, 0, m.train);
    const auto g = arima::grid_search(train, &ex, c.grid.p_min, c.grid.p_max, d, c.grid.q_min, c.grid.q_max, opts);
    write_grid(ws, "grid_arimax.csv", g);
    for (const auto& f : g.failures) failures.emplace_back("arimax", f);
    log << "; ARIMAX" << g.ranked.front().spec.label() << " AIC " << num(g.ranked.front().aic) << " with "
        << m.exog.columns() << " exogenous columns";
  } else if (ws.has("grid_arimax.csv")) {
    fs::remove(ws.path("grid_arimax.csv"));
  }
  log << "\n";
  ws.write("grid_failures.csv", [&](std::ostream& o) {
    csv::write_row(o, {"model", "p", "d", "q", "reason"});
    for (const auto& [model, f] : failures) {
      csv::write_row(o, {model, std::to_string(f.spec.p), std::to_string(f.spec.d), std::to_string(f.spec.q), f.reason});
    }
  });
}

arima::ArimaSpec top_spec(const fs::path& grid) {
  const auto rows = csv::read_file(grid.string());
  if (rows.size() < 2) throw ValidationError(grid.string() + " has no ranked models");
  const csv::Header h(rows.front());
  const auto& f = rows[1].fields;
  return {std::stoi(f[h.require("p")]), std::stoi(f[h.require("d")]), std::stoi(f[h.require("q")])};
}

// ------------------------------------------------------------- fit-arima

void stage_fit_arima(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto spec = top_spec(ws.require("grid_arima.csv", "grid-search"));
  const bool with_exog = ws.has("grid_arimax.csv");
  const auto m = model_data(c, ws, with_exog);
  const std::vector<double> train(m.y.values.begin(), m.y.values.begin() + static_cast<std::ptrdiff_t>(m.train));
  const auto opts = fit_options(c);

  std::vector<std::pair<std::string, arima::ArimaFit>> fits;
  fits.emplace_back("arima", arima::fit_arima(train, spec, nullptr, opts));
  if (with_exog) {
    const auto ex = rows_of(m.exog, 0, m.train);
    fits.emplace_back("arimax", arima::fit_arima(train, top_spec(ws.path("grid_arimax.csv")), &ex, opts));
  } else if (ws.has("fit_arimax.json")) {
    fs::remove(ws.path("fit_arimax.json"));
  }
  ws.write("residual_acf.csv", [&](std::ostream& o) {
    csv::write_row(o, {"model", "lag", "acf", "band", "flagged"});
    for (const auto& [name, fit] : fits) {
      const int max_lag = std::min<int>(20, static_cast<int>(fit.residuals.size()) - 1);
      const auto acf = arima::residual_acf(fit, max_lag);
      for (int l = 1; l <= max_lag; ++l) {
        const bool flagged = std::find(acf.flagged.begin(), acf.flagged.end(), l) != acf.flagged.end();
        csv::write_row(o, {name, std::to_string(l), num(acf.acf[static_cast<std::size_t>(l)]), num(acf.band),
                           flagged ? "true" : "false"});
      }
    }
  });
  for (const auto& [name, fit] : fits) {
    ws.write_text("fit_" + name + ".json", arima::fit_report_json(fit) + "\n");
    log << "fit-arima: " << name << fit.spec.label() << " AIC " << num(fit.aic)
        << (fit.converged ? "" : " (not converged)") << "\n";
  }
}

arima::ArimaSpec spec_from_report(const fs::path& p) {
  const auto j = read_json(p);
  const auto& s = j.at("spec");
  return {s.at("p").get<int>(), s.at("d").get<int>(), s.at("q").get<int>()};
}

// ---------------------------------------------------------------- fit-var

struct VarData {
  Eigen::MatrixXd levels;  ///< full window, column 0 is y
  std::vector<std::string> names;
  std::size_t train = 0;
  int d = 0;
};

VarData var_data(const PipelineConfig& c, const Workspace& ws) {
  const auto in = read_series(ws);
  const auto selected = read_ranking(ws);
  VarData v;
  v.names.push_back("y");
  std::vector<std::vector<double>> cols{in.cases.values};
  for (const auto& s : selected) {
    if (static_cast<int>(cols.size()) > c.var_max_variables) break;
    cols.push_back(in.tensor.component(s.component).values);
    v.names.push_back(s.name);
  }
  v.levels.resize(static_cast<Eigen::Index>(in.cases.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t t = 0; t < cols[j].size(); ++t) {
      v.levels(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = cols[j][t];
    }
  }
  v.train = static_cast<std::size_t>((c.split - in.cases.start).count()) + 1;
  v.d = c.var_difference ? read_json(ws.require("adf_summary.json", "adf")).at("y_d").get<int>() : 0;
  return v;
}

Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& x, int d) {
  Eigen::MatrixXd out = x;
  for (int k = 0; k < d; ++k) out = (out.bottomRows(out.rows() - 1) - out.topRows(out.rows() - 1)).eval();
  return out;
}

/// Largest order that still leaves ten residual degrees of freedom per
/// equation on the common sample.
int cap_var_order(int p_max, Eigen::Index rows, Eigen::Index vars) {
  int p = std::max(0, p_max);
  while (p > 0 && (rows - p) - (vars * p + 1) < 10) --p;
  return p;
}

void stage_fit_var(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto v = var_data(c, ws);
  const Eigen::MatrixXd train_levels = v.levels.topRows(static_cast<Eigen::Index>(v.train));
  const Eigen::MatrixXd train = difference_rows(train_levels, v.d);
  const int p_max = cap_var_order(c.var_p_max, train.rows(), train.cols());
  const auto sel = var::select_var_order(train, p_max, v.names);
  const auto& fit = sel.best;

  Eigen::MatrixXd last = train.bottomRows(fit.p);
  Eigen::MatrixXd fc = var::forecast_var(fit, last, c.var_horizon);
  for (int k = v.d - 1; k >= 0; --k) {
    // Integrate one level: the anchor is the last row of the k-times differenced data.
    const Eigen::MatrixXd level = difference_rows(train_levels, k);
    Eigen::RowVectorXd acc = level.bottomRows(1);
    for (Eigen::Index h = 0; h < fc.rows(); ++h) {
      acc += fc.row(h);
      fc.row(h) = acc;
    }
  }

  ws.write("var_order.csv", [&](std::ostream& o) {
    csv::write_row(o, {"p", "aic", "aic_per_obs"});
    for (std::size_t i = 0; i < sel.table.size(); ++i) {
      csv::write_row(o, {std::to_string(sel.table[i].first), num(sel.table[i].second), num(sel.table_per_obs[i].second)});
    }
  });
  auto report = json::parse(var::fit_report_json(fit));
  report["p_max_searched"] = p_max;
  report["differenced"] = v.d;
  ws.write_text("fit_var.json", report.dump(2) + "\n");
  ws.write("var_forecast.csv", [&](std::ostream& o) {
    std::vector<std::string> row{"date"};
    row.insert(row.end(), v.names.begin(), v.names.end());
    csv::write_row(o, row);
    for (Eigen::Index h = 0; h < fc.rows(); ++h) {
      row.assign(1, format_date(c.split + std::chrono::days{h + 1}));
      for (Eigen::Index j = 0; j < fc.cols(); ++j) row.push_back(num(fc(h, j)));
      csv::write_row(o, row);
    }
  });
  log << "fit-var: p=" << fit.p << " over " << v.names.size() << " variables (searched 0.." << p_max << ")\n";
}

// ---------------------------------------------------- forecast / backtest

struct ModelRun {
  std::string name;
  eval::BacktestResult result;
};

std::vector<ModelRun> run_arima_models(const PipelineConfig& c, const Workspace& ws) {
  const auto spec = spec_from_report(ws.require("fit_arima.json", "fit-arima"));
  const bool with_exog = ws.has("fit_arimax.json");
  const auto m = model_data(c, ws, with_exog);
  eval::BacktestOptions o;
  o.significances = c.significances;
  o.fit = fit_options(c);
  std::vector<ModelRun> runs;
  runs.push_back({"arima", eval::backtest(m.y, nullptr, c.split, spec, o)});
  if (with_exog) {
    runs.push_back({"arimax", eval::backtest(m.y, &m.exog, c.split, spec_from_report(ws.path("fit_arimax.json")), o)});
  }
  return runs;
}

void write_forecast(Workspace& ws, const std::string& name, const eval::BacktestResult& r) {
  std::vector<std::string> dates;
  for (const auto& d : r.test_dates) dates.push_back(format_date(d));
  ws.write(name, [&](std::ostream& o) { arima::write_forecast_csv(o, r.forecast, dates); });
}

void stage_forecast(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  for (const auto& run : run_arima_models(c, ws)) {
    write_forecast(ws, "forecast_" + run.name + ".csv", run.result);
    log << "forecast: " << run.name << " " << run.result.forecast.horizon << " days after " << format_date(c.split)
        << "\n";
  }
}

void stage_backtest(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto runs = run_arima_models(c, ws);
  json models = json::object();
  for (const auto& run : runs) {
    const auto& fit = std::get<arima::ArimaFit>(run.result.fit);
    json upper = json::object();
    for (const auto& [s, m] : run.result.upper_metrics) upper[sig_label(s) + "%"] = metrics_json(m);
    models[run.name] = {{"spec", {{"p", fit.spec.p}, {"d", fit.spec.d}, {"q", fit.spec.q}}},
                        {"exog_columns", fit.exog_names.size()},
                        {"point", metrics_json(run.result.point_metrics)},
                        {"upper", upper}};
    write_forecast(ws, "forecast_" + run.name + ".csv", run.result);
  }

  if (ws.has("fit_var.json")) {
    const auto v = var_data(c, ws);
    const int p = read_json(ws.path("fit_var.json")).at("p").get<int>();
    series::CaseSeries y{c.window.first, {}};
    y.values.resize(static_cast<std::size_t>(v.levels.rows()));
    for (Eigen::Index t = 0; t < v.levels.rows(); ++t) y.values[static_cast<std::size_t>(t)] = v.levels(t, 0);
    arima::Exog ex{{v.names.begin() + 1, v.names.end()}, v.levels.rightCols(v.levels.cols() - 1)};
    if (v.d == 0) {
      const auto r = eval::backtest(y, ex.empty() ? nullptr : &ex, c.split, eval::VarOrder{p});
      models["var"] = {{"p", p}, {"variables", v.names}, {"point", metrics_json(r.point_metrics)}};
    } else {
      models["var"] = {{"p", p}, {"variables", v.names}, {"note", "differenced VAR is scored from var_forecast.csv only"}};
    }
  }

  json report{{"format_version", 1}, {"split", format_date(c.split)}, {"models", models}};
  if (models.contains("arima") && models.contains("arimax")) {
    const double a = models["arima"]["point"]["rmse"].get<double>();
    const double x = models["arimax"]["point"]["rmse"].get<double>();
    report["arimax_rmse_improvement_pct"] = finite_or_null(a > 0.0 ? 100.0 * (a - x) / a : 0.0);
  }
  ws.write_text("backtest_metrics.json", report.dump(2) + "\n");
  for (const auto& run : runs) {
    log << "backtest: " << run.name << " point RMSE " << num(run.result.point_metrics.rmse);
    if (run.result.point_metrics.mape) log << ", MAPE " << num(*run.result.point_metrics.mape) << "%";
    log << "\n";
  }
}

// ------------------------------------------------------------- emit-plots

void stage_emit_plots(const PipelineConfig& c, Workspace& ws, std::ostream& log) {
  const auto cases = series::read_case_series(ws.require("series_cases.csv", "build-series").string());
  std::vector<std::string> models;
  for (const char* name : {"arima", "arimax"}) {
    if (ws.has(std::string("forecast_") + name + ".csv")) models.push_back(name);
  }
  if (models.empty()) ws.require("forecast_arima.csv", "forecast");
  std::size_t files = 0;
  for (const auto& model : models) {
    const auto rows = csv::read_file(ws.path("forecast_" + model + ".csv").string());
    const csv::Header h(rows.front());
    const auto c_date = h.require("date"), c_point = h.require("point");
    for (double s : c.significances) {
      const std::string tag = sig_label(s);
      const auto c_lo = h.require("lower_" + tag), c_hi = h.require("upper_" + tag);
      ws.write("plots/forecast_" + model + "_" + tag + ".csv", [&](std::ostream& o) {
        csv::write_row(o, {"date", "actual", "point", "lower", "upper"});
        for (std::size_t r = 1; r < rows.size(); ++r) {
          const auto& f = rows[r].fields;
          const auto d = *parse_date(f[c_date]);
          const auto i = static_cast<std::size_t>((d - cases.start).count());
          csv::write_row(o, {f[c_date], num(cases.values.at(i)), f[c_point], f[c_lo], f[c_hi]});
        }
      });
      ++files;
    }
  }
  if (ws.has("topics_k_table.csv")) {
    const auto text = csv::read_file(ws.path("topics_k_table.csv").string());
    ws.write("plots/topics_coherence.csv", [&](std::ostream& o) {
      for (const auto& r : text) csv::write_row(o, r.fields);
    });
    ++files;
  }
  if (ws.has("series_volume_overall.csv")) {
    const auto vol = csv::read_file(ws.path("series_volume_overall.csv").string());
    const auto c_posts = csv::Header(vol.front()).require("posts");
    ws.write("plots/volume_vs_cases.csv", [&](std::ostream& o) {
      csv::write_row(o, {"date", "cases", "posts"});
      for (std::size_t i = 0; i < cases.size(); ++i) {
        csv::write_row(o, {format_date(cases.date(i)), num(cases.values[i]), vol.at(i + 1).fields[c_posts]});
      }
    });
    ++files;
  }
  log << "emit-plots: " << files << " files under " << ws.path("plots").string() << "\n";
}

}  // namespace

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names{"ingest",    "topics",   "build-series", "adf",
                                              "granger",   "grid-search", "fit-arima", "fit-var",
                                              "forecast",  "backtest", "emit-plots"};
  return names;
}

void run_stage(std::string_view name, const PipelineConfig& config, std::ostream& log) {
  Workspace ws(config.out);
  ws.write_text("resolved_config.json", resolved_json(config));
  using Fn = void (*)(const PipelineConfig&, Workspace&, std::ostream&);
  static const std::map<std::string_view, Fn> table{
      {"ingest", stage_ingest},       {"topics", stage_topics},         {"build-series", stage_build_series},
      {"adf", stage_adf},             {"granger", stage_granger},       {"grid-search", stage_grid_search},
      {"fit-arima", stage_fit_arima}, {"fit-var", stage_fit_var},       {"forecast", stage_forecast},
      {"backtest", stage_backtest},   {"emit-plots", stage_emit_plots},
  };
  if (name == "pipeline") {
    for (const auto& stage : stage_names()) run_stage(stage, config, log);
    return;
  }
  const auto it = table.find(name);
  if (it == table.end()) throw ValidationError("unknown subcommand " + std::string(name));
  it->second(config, ws, log);
  ws.record(std::string(name), config.seed);
}

}  // namespace signalcast::cli

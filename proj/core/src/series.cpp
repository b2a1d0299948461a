#include "signalcast/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "signalcast/csv.hpp"
#include "signalcast/error.hpp"

namespace signalcast::series {
namespace {

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " value '" + s + "'");
  }
}

Date require_date(const std::string& s) {
  const auto d = parse_date(s);
  if (!d) throw ValidationError("cannot parse date '" + s + "'");
  return *d;
}

constexpr const char* kSentimentNames[kSentiments] = {"negative", "neutral", "positive"};

}  // namespace

CaseSeries read_case_series(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw ValidationError("case file " + path + " is empty");
  const csv::Header header(rows.front());
  const auto c_date = header.require("date");
  const auto c_cases = header.require("new_cases");
  std::map<Date, double> by_date;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) throw ValidationError("case file row " + std::to_string(r) + " has wrong width");
    const Date d = require_date(f[c_date]);
    const double v = parse_number(f[c_cases], "new_cases");
    if (v < 0) throw ValidationError("negative case count on " + f[c_date]);
    if (!by_date.emplace(d, v).second) throw ValidationError("duplicate date " + f[c_date] + " in case file");
  }
  if (by_date.empty()) throw ValidationError("case file " + path + " has no rows");
  CaseSeries out;
  out.start = by_date.begin()->first;
  for (const auto& [d, v] : by_date) {
    if (d != out.date(out.values.size())) {
      throw ValidationError("case file dates are not contiguous at " + format_date(d));
    }
    out.values.push_back(v);
  }
  return out;
}

void write_daily(std::ostream& out, const DailySeries& s, const std::string& value_column) {
  csv::write_row(out, {"date", value_column});
  for (std::size_t i = 0; i < s.size(); ++i) csv::write_row(out, {format_date(s.date(i)), format_number(s.values[i])});
}

SeriesTensor::SeriesTensor(DateRange window, int topics) : window_(window), topics_(topics) {
  if (window.last < window.first) throw ValidationError("tensor window ends before it starts");
  if (topics < 1) throw ValidationError("tensor needs at least one topic");
  days_ = static_cast<std::size_t>(window.days());
  counts_.assign(days_ * static_cast<std::size_t>(components()), 0);
}

std::int64_t& SeriesTensor::at(std::size_t t, int topic, int sentiment) {
  return counts_[t * static_cast<std::size_t>(components()) + static_cast<std::size_t>(topic * kSentiments + sentiment)];
}

std::int64_t SeriesTensor::at(std::size_t t, int topic, int sentiment) const {
  return counts_[t * static_cast<std::size_t>(components()) + static_cast<std::size_t>(topic * kSentiments + sentiment)];
}

DailySeries SeriesTensor::component(int c) const {
  DailySeries s{window_.first, std::vector<double>(days_)};
  for (std::size_t t = 0; t < days_; ++t) {
    s.values[t] = static_cast<double>(at(t, component_topic(c), component_sentiment(c)));
  }
  return s;
}

std::string SeriesTensor::component_name(int c) {
  return "topic" + std::to_string(component_topic(c)) + "_" + kSentimentNames[component_sentiment(c)];
}

DailySeries SeriesTensor::total() const {
  DailySeries s{window_.first, std::vector<double>(days_, 0.0)};
  for (std::size_t t = 0; t < days_; ++t) {
    for (int c = 0; c < components(); ++c) {
      s.values[t] += static_cast<double>(counts_[t * static_cast<std::size_t>(components()) + static_cast<std::size_t>(c)]);
    }
  }
  return s;
}

TensorBuild build_tensor(const std::vector<DocLabel>& docs, DateRange window, int topics) {
  TensorBuild out{SeriesTensor(window, topics), {}};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& d = docs[i];
    if (d.topic < 0 || d.topic >= topics) {
      throw ValidationError("document topic " + std::to_string(d.topic) + " outside 0.." + std::to_string(topics - 1));
    }
    if (d.sentiment < 0 || d.sentiment >= kSentiments) {
      throw ValidationError("document sentiment " + std::to_string(d.sentiment) + " outside 0..2");
    }
    if (!window.contains(d.date)) {
      out.outside_window.push_back(i);
      continue;
    }
    ++out.tensor.at(static_cast<std::size_t>((d.date - window.first).count()), d.topic, d.sentiment);
  }
  return out;
}

void write_tensor(std::ostream& out, const SeriesTensor& tensor) {
  std::vector<std::string> row{"date"};
  for (int c = 0; c < tensor.components(); ++c) row.push_back(SeriesTensor::component_name(c));
  csv::write_row(out, row);
  for (std::size_t t = 0; t < tensor.days(); ++t) {
    row.assign(1, format_date(tensor.date(t)));
    for (int c = 0; c < tensor.components(); ++c) {
      row.push_back(std::to_string(tensor.at(t, SeriesTensor::component_topic(c), SeriesTensor::component_sentiment(c))));
    }
    csv::write_row(out, row);
  }
}

SeriesTensor read_tensor(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.size() < 2) throw ValidationError("tensor file " + path + " has no data rows");
  const auto& head = rows.front().fields;
  if (head.empty() || head.front() != "date" || (head.size() - 1) % kSentiments != 0 || head.size() < 4) {
    throw ValidationError("tensor file " + path + " has an unexpected header");
  }
  const int topics = static_cast<int>((head.size() - 1) / kSentiments);
  for (int c = 0; c < topics * kSentiments; ++c) {
    if (head[static_cast<std::size_t>(c) + 1] != SeriesTensor::component_name(c)) {
      throw ValidationError("tensor file column " + head[static_cast<std::size_t>(c) + 1] + " out of order");
    }
  }
  const Date first = require_date(rows[1].fields.front());
  const Date last = first + std::chrono::days{static_cast<long>(rows.size() - 2)};
  SeriesTensor tensor({first, last}, topics);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != head.size()) throw ValidationError("tensor row " + std::to_string(r) + " has wrong width");
    if (require_date(f.front()) != tensor.date(r - 1)) throw ValidationError("tensor dates are not contiguous");
    for (int c = 0; c < tensor.components(); ++c) {
      const double v = parse_number(f[static_cast<std::size_t>(c) + 1], "count");
      tensor.at(r - 1, SeriesTensor::component_topic(c), SeriesTensor::component_sentiment(c)) =
          static_cast<std::int64_t>(v);
    }
  }
  return tensor;
}

std::ptrdiff_t LaggedDataset::find(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

LaggedDataset lag_series(const std::vector<std::pair<std::string, DailySeries>>& components, const CaseSeries& y,
                         int max_lag) {
  if (max_lag < 0) throw ValidationError("max_lag must be non-negative");
  if (y.size() <= static_cast<std::size_t>(max_lag)) {
    throw ValidationError("series of " + std::to_string(y.size()) + " days is too short for max_lag " +
                          std::to_string(max_lag));
  }
  LaggedDataset out;
  out.max_lag = max_lag;
  const auto lag = static_cast<std::size_t>(max_lag);
  for (std::size_t t = lag; t < y.size(); ++t) {
    out.dates.push_back(y.date(t));
    out.y.push_back(y.values[t]);
  }
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& [name, s] = components[c];
    if (s.start != y.start || s.size() != y.size()) {
      throw ValidationError("component " + name + " covers " + format_date(s.start) + ".." +
                            (s.size() ? format_date(s.end()) : std::string("(empty)")) + " but y covers " +
                            format_date(y.start) + ".." + format_date(y.end()));
    }
    for (int l = 0; l <= max_lag; ++l) {
      LaggedColumn col{name + "_lag" + std::to_string(l), static_cast<int>(c), l, {}};
      col.values.reserve(y.size() - lag);
      for (std::size_t t = lag; t < y.size(); ++t) col.values.push_back(s.values[t - static_cast<std::size_t>(l)]);
      out.columns.push_back(std::move(col));
    }
  }
  return out;
}

LaggedDataset lag_features(const SeriesTensor& tensor, const CaseSeries& y, int max_lag) {
  if (y.size() == 0 || y.start != tensor.window().first || y.end() != tensor.window().last) {
    throw ValidationError("tensor window " + format_date(tensor.window().first) + ".." +
                          format_date(tensor.window().last) + " differs from the case series range");
  }
  std::vector<std::pair<std::string, DailySeries>> comps;
  for (int c = 0; c < tensor.components(); ++c) comps.emplace_back(SeriesTensor::component_name(c), tensor.component(c));
  return lag_series(comps, y, max_lag);
}

void write_lagged(std::ostream& out, const LaggedDataset& data) {
  std::vector<std::string> row{"date", "y"};
  for (const auto& c : data.columns) row.push_back(c.name);
  csv::write_row(out, row);
  for (std::size_t t = 0; t < data.dates.size(); ++t) {
    row.assign({format_date(data.dates[t]), format_number(data.y[t])});
    for (const auto& c : data.columns) row.push_back(format_number(c.values[t]));
    csv::write_row(out, row);
  }
}

std::vector<double> difference(const std::vector<double>& series, int d) {
  if (d < 0) throw ValidationError("differencing order must be non-negative");
  if (series.size() <= static_cast<std::size_t>(d)) {
    throw ValidationError("series of length " + std::to_string(series.size()) + " is too short to difference " +
                          std::to_string(d) + " times");
  }
  std::vector<double> out = series;
  for (int k = 0; k < d; ++k) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

std::vector<double> integrate(const std::vector<double>& differenced, const std::vector<double>& heads) {
  std::vector<double> out = differenced;
  for (auto it = heads.rbegin(); it != heads.rend(); ++it) {
    std::vector<double> up;
    up.reserve(out.size() + 1);
    up.push_back(*it);
    for (double x : out) up.push_back(up.back() + x);
    out = std::move(up);
  }
  return out;
}

DailySeries volumetric_series(const std::vector<DocLabel>& docs, DateRange window, VolumeMode mode) {
  DailySeries out{window.first, std::vector<double>(static_cast<std::size_t>(window.days()), 0.0)};
  for (const auto& d : docs) {
    if (!window.contains(d.date)) continue;
    if (mode.kind == VolumeMode::Kind::kTopic && d.topic != mode.topic) continue;
    out.values[static_cast<std::size_t>((d.date - window.first).count())] += 1.0;
  }
  return out;
}

RescaledTrend rescale_trend_blocks(const std::vector<DailySeries>& blocks) {
  if (blocks.empty()) throw ValidationError("rescale: no blocks");
  RescaledTrend out;
  out.merged = blocks.front();
  out.factors.push_back(1.0);
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const auto& prev = blocks[b - 1];
    const auto& cur = blocks[b];
    if (cur.size() == 0) throw ValidationError("rescale: block " + std::to_string(b) + " is empty");
    const Date lo = std::max(prev.start, cur.start);
    const Date hi = std::min(prev.end(), cur.end());
    if (hi < lo) throw ValidationError("rescale: blocks " + std::to_string(b - 1) + " and " + std::to_string(b) + " do not overlap");
    double sum = 0.0;
    int used = 0;
    for (Date d = lo; d <= hi; d += std::chrono::days{1}) {
      const double p = prev.values[static_cast<std::size_t>((d - prev.start).count())];
      const double c = cur.values[static_cast<std::size_t>((d - cur.start).count())];
      if (p != 0.0 && c != 0.0) {
        sum += p / c;
        ++used;
      }
    }
    if (used == 0) {
      throw ValidationError("rescale: overlap of blocks " + std::to_string(b - 1) + " and " + std::to_string(b) +
                            " has no day that is nonzero in both");
    }
    const double factor = out.factors.back() * (sum / used);
    out.factors.push_back(factor);
    if (cur.start < out.merged.start) throw ValidationError("rescale: blocks must be ordered by start date");
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const Date d = cur.date(i);
      if (d <= out.merged.end()) continue;
      while (out.merged.end() + std::chrono::days{1} < d) out.merged.values.push_back(0.0);
      out.merged.values.push_back(cur.values[i] * factor);
    }
  }
  return out;
}

}  // namespace signalcast::series

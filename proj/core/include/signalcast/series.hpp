#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signalcast/date.hpp"

namespace signalcast::series {

inline constexpr int kSentiments = 3;

/// Contiguous daily values starting at `start`.
struct DailySeries {
  Date start{};
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  Date date(std::size_t i) const { return start + std::chrono::days{static_cast<long>(i)}; }
  Date end() const { return date(values.size() - 1); }
  DateRange range() const { return {start, end()}; }
};

/// Daily confirmed cases. Same layout as any daily series; values are
/// non-negative counts when loaded from file.
using CaseSeries = DailySeries;

/// Reads CSV with columns date,new_cases. Rows may be unordered but must form
/// a contiguous range once sorted.
CaseSeries read_case_series(const std::string& path);
void write_daily(std::ostream& out, const DailySeries& s, const std::string& value_column);

/// One labelled document reduced to what the tensor needs.
struct DocLabel {
  Date date;
  int topic;
  int sentiment;
};

/// counts[t][j][k] for T days, J topics and 3 sentiments.
class SeriesTensor {
 public:
  SeriesTensor(DateRange window, int topics);

  std::int64_t& at(std::size_t t, int topic, int sentiment);
  std::int64_t at(std::size_t t, int topic, int sentiment) const;

  std::size_t days() const { return days_; }
  int topics() const { return topics_; }
  int components() const { return topics_ * kSentiments; }
  DateRange window() const { return window_; }
  Date date(std::size_t t) const { return window_.first + std::chrono::days{static_cast<long>(t)}; }

  /// Component c = topic * 3 + sentiment as a daily series.
  DailySeries component(int c) const;
  static std::string component_name(int c);  ///< e.g. "topic6_neutral"
  static int component_topic(int c) { return c / kSentiments; }
  static int component_sentiment(int c) { return c % kSentiments; }

  /// Sum over topics and sentiments for every day.
  DailySeries total() const;

 private:
  DateRange window_;
  std::size_t days_;
  int topics_;
  std::vector<std::int64_t> counts_;
};

struct TensorBuild {
  SeriesTensor tensor;
  std::vector<std::size_t> outside_window;  ///< indices of excluded docs
};

/// Exact daily counts; empty days are explicit zeros. Topics must be < J and
/// sentiments in {0,1,2} (ValidationError otherwise).
TensorBuild build_tensor(const std::vector<DocLabel>& docs, DateRange window, int topics);

void write_tensor(std::ostream& out, const SeriesTensor& tensor);
SeriesTensor read_tensor(const std::string& path);

struct LaggedColumn {
  std::string name;  ///< "<component>_lag<l>"
  int component;
  int lag;
  std::vector<double> values;
};

struct LaggedDataset {
  std::vector<Date> dates;
  std::vector<double> y;
  std::vector<LaggedColumn> columns;
  int max_lag = 0;

  /// Index of a column by name, -1 when absent.
  std::ptrdiff_t find(const std::string& name) const;
};

/// For every component, lag 0..max_lag columns; the first max_lag days are
/// dropped so nothing is missing. y must cover exactly the tensor window.
LaggedDataset lag_features(const SeriesTensor& tensor, const CaseSeries& y, int max_lag = 14);

/// Lag columns for arbitrary named series sharing y's dates.
LaggedDataset lag_series(const std::vector<std::pair<std::string, DailySeries>>& components,
                         const CaseSeries& y, int max_lag);

void write_lagged(std::ostream& out, const LaggedDataset& data);

/// d-fold first differencing. Throws ValidationError when size <= d.
std::vector<double> difference(const std::vector<double>& series, int d);

/// Inverse of difference: `heads` holds the first value of each differencing
/// level, heads[0] = x[0], heads[1] = (Δx)[0], ...
std::vector<double> integrate(const std::vector<double>& differenced, const std::vector<double>& heads);

struct VolumeMode {
  enum class Kind { kOverall, kTopic } kind = Kind::kOverall;
  int topic = 0;

  static VolumeMode overall() { return {}; }
  static VolumeMode of_topic(int j) { return {Kind::kTopic, j}; }
};

/// Daily document counts over `window`, either all docs or docs whose
/// assigned topic is j. Docs outside the window are ignored.
DailySeries volumetric_series(const std::vector<DocLabel>& docs, DateRange window, VolumeMode mode);

/// Merges overlapping search-interest blocks onto the first block's scale.
/// Each block's factor is the mean over shared nonzero days of
/// previous/current, and factors compose down the chain.
struct RescaledTrend {
  DailySeries merged;
  std::vector<double> factors;  ///< cumulative factor per block, factors[0] = 1
};

RescaledTrend rescale_trend_blocks(const std::vector<DailySeries>& blocks);

}  // namespace signalcast::series

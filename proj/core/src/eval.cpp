#include "signalcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "signalcast/error.hpp"

namespace signalcast::eval {

MetricsReport metrics(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.size() != predicted.size()) {
    throw ValidationError("metrics: " + std::to_string(actual.size()) + " actuals vs " +
                          std::to_string(predicted.size()) + " predictions");
  }
  if (actual.empty()) throw ValidationError("metrics: empty input");

  const double n = static_cast<double>(actual.size());
  MetricsReport m;
  m.n = static_cast<int>(actual.size());

  double sse = 0.0, ape = 0.0;
  bool zero_actual = false;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    sse += e * e;
    if (actual[i] == 0.0) {
      zero_actual = true;
    } else {
      ape += std::abs(e / actual[i]);
    }
  }
  m.rmse = std::sqrt(sse / n);
  if (zero_actual) {
    m.mape_reason = "an actual value is zero";
  } else {
    m.mape = 100.0 / n * ape;
  }

  const double mean_a = std::accumulate(actual.begin(), actual.end(), 0.0) / n;
  const double mean_p = std::accumulate(predicted.begin(), predicted.end(), 0.0) / n;
  double sst = 0.0, spp = 0.0, sap = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double da = actual[i] - mean_a, dp = predicted[i] - mean_p;
    sst += da * da;
    spp += dp * dp;
    sap += da * dp;
  }
  // A constant prediction has no correlation; rounding in mean_p must not fake one.
  const auto [lo, hi] = std::minmax_element(predicted.begin(), predicted.end());
  if (*lo == *hi) spp = 0.0;
  m.r2 = (sst > 0.0 && spp > 0.0) ? (sap * sap) / (sst * spp) : 0.0;
  if (sst > 0.0) {
    m.r2_residual = 1.0 - sse / sst;
  } else {
    m.r2_residual = sse == 0.0 ? 1.0 : 0.0;
  }
  return m;
}

BacktestResult backtest(const series::CaseSeries& y, const arima::Exog* exog, Date split, const ModelChoice& model,
                        const BacktestOptions& options) {
  if (y.size() < 2) throw ValidationError("backtest: series too short");
  if (!(split >= y.start && split < y.end())) {
    throw ValidationError("backtest: split " + format_date(split) + " is not strictly inside " + format_date(y.start) +
                          ".." + format_date(y.end()));
  }
  if (exog && static_cast<std::size_t>(exog->values.rows()) != y.size()) {
    throw ValidationError("backtest: exog rows do not match the series length");
  }
  const auto n_train = static_cast<std::size_t>((split - y.start).count()) + 1;
  const auto horizon = static_cast<int>(y.size() - n_train);
  const std::vector<double> train(y.values.begin(), y.values.begin() + static_cast<std::ptrdiff_t>(n_train));

  BacktestResult out;
  for (int h = 0; h < horizon; ++h) out.test_dates.push_back(y.date(n_train + static_cast<std::size_t>(h)));

  if (const auto* spec = std::get_if<arima::ArimaSpec>(&model)) {
    std::optional<arima::Exog> train_x, test_x;
    if (exog) {
      train_x = arima::Exog{exog->names, exog->values.topRows(static_cast<Eigen::Index>(n_train))};
      test_x = arima::Exog{exog->names, exog->values.bottomRows(horizon)};
    }
    auto fit = arima::fit_arima(train, *spec, train_x ? &*train_x : nullptr, options.fit);
    out.forecast = arima::forecast(fit, horizon, options.significances, test_x ? &*test_x : nullptr);
    out.fit = std::move(fit);
  } else {
    const int p = std::get<VarOrder>(model).p;
    const Eigen::Index cols = 1 + (exog ? exog->values.cols() : 0);
    Eigen::MatrixXd data(static_cast<Eigen::Index>(n_train), cols);
    for (std::size_t t = 0; t < n_train; ++t) data(static_cast<Eigen::Index>(t), 0) = train[t];
    std::vector<std::string> names{"y"};
    if (exog) {
      data.rightCols(cols - 1) = exog->values.topRows(static_cast<Eigen::Index>(n_train));
      names.insert(names.end(), exog->names.begin(), exog->names.end());
    }
    auto fit = var::fit_var(data, p, names);
    const Eigen::MatrixXd last = data.bottomRows(fit.p);
    const Eigen::MatrixXd fc = var::forecast_var(fit, last, horizon);
    out.forecast.horizon = horizon;
    for (int h = 0; h < horizon; ++h) out.forecast.point.push_back(fc(h, 0));
    out.fit = std::move(fit);
  }

  // Test-period actuals are read only after the forecast exists.
  out.actual.assign(y.values.begin() + static_cast<std::ptrdiff_t>(n_train), y.values.end());
  out.point_metrics = metrics(out.actual, out.forecast.point);
  for (const auto& [s, band] : out.forecast.bounds) out.upper_metrics[s] = metrics(out.actual, band.upper);
  return out;
}

}  // namespace signalcast::eval

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "signalcast/arima.hpp"
#include "signalcast/date.hpp"
#include "signalcast/series.hpp"
#include "signalcast/var.hpp"

namespace signalcast::eval {

struct MetricsReport {
  double rmse = 0.0;
  std::optional<double> mape;  ///< percent; absent when an actual is zero
  std::string mape_reason;
  double r2 = 0.0;           ///< squared correlation of actual and predicted
  double r2_residual = 0.0;  ///< 1 - SSres / SStot
  int n = 0;
};

/// RMSE, MAPE (x100) and R2 of predictions. Throws ValidationError on empty
/// or mismatched input.
MetricsReport metrics(const std::vector<double>& actual, const std::vector<double>& predicted);

struct VarOrder {
  int p = 1;
};

using ModelChoice = std::variant<arima::ArimaSpec, VarOrder>;

struct BacktestResult {
  std::variant<arima::ArimaFit, var::VarFit> fit;
  arima::ForecastResult forecast;  ///< VAR backtests fill only the point forecast
  std::vector<double> actual;
  std::vector<Date> test_dates;
  MetricsReport point_metrics;
  std::map<double, MetricsReport> upper_metrics;  ///< per significance, scored on the upper bound
};

struct BacktestOptions {
  std::vector<double> significances{0.05, 0.01};
  arima::FitOptions fit;
};

/// Fits on dates <= split and forecasts every later date. exog, when given,
/// has one row per day of y; ARIMA models use it as regressors, VAR models
/// append its columns to y as extra variables. Test-period y is never read
/// before the forecast is complete.
BacktestResult backtest(const series::CaseSeries& y, const arima::Exog* exog, Date split, const ModelChoice& model,
                        const BacktestOptions& options = {});

}  // namespace signalcast::eval

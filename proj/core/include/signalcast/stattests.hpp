#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "signalcast/error.hpp"

namespace signalcast::stattests {

struct AdfCriticalValues {
  double one = 0.0;
  double five = 0.0;
  double ten = 0.0;
};

struct AdfResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int chosen_lag = 0;
  int nobs = 0;
  bool reject_h0 = false;  ///< true when the unit root is rejected
  AdfCriticalValues critical;
};

/// MacKinnon (1994) response-surface p-value for the constant-only,
/// single-series Dickey-Fuller distribution.
double adf_pvalue_constant(double statistic);

/// MacKinnon (2010) finite-sample critical values, constant only.
AdfCriticalValues adf_critical_values_constant(int nobs);

/// Augmented Dickey-Fuller with a constant and no trend. The augmentation lag
/// minimises AIC over 0..max_lag on a common sample and the chosen regression
/// is then refitted on all available rows. Throws ValidationError for short
/// or constant input.
AdfResult adf_test(const std::vector<double>& series, int max_lag, double alpha = 0.05);

/// Default augmentation lag used when callers do not pick one:
/// 12 * (n/100)^(1/4), capped so the regression keeps 10 spare rows.
int default_adf_lag(std::size_t n);

struct StationaryResult {
  std::vector<double> series;
  int d = 0;
  AdfResult adf;
};

class NotStationary : public NumericError {
 public:
  NotStationary(const std::string& what, AdfResult last) : NumericError(what), last_(last) {}
  const AdfResult& last() const noexcept { return last_; }

 private:
  AdfResult last_;
};

/// Differences until the ADF test rejects a unit root, at most max_d times.
/// max_lag < 0 selects default_adf_lag for each attempt.
StationaryResult ensure_stationary(const std::vector<double>& series, int max_d = 2, double alpha = 0.05,
                                   int max_lag = -1);

struct GrangerLag {
  int lag = 0;
  double f_statistic = 0.0;
  double p_value = 1.0;
  int df_num = 0;
  int df_den = 0;
  double ssr_restricted = 0.0;
  double ssr_unrestricted = 0.0;
};

struct GrangerResult {
  std::vector<GrangerLag> per_lag;  ///< lags 1..max_lag in order
  int significant_count = 0;
};

/// SSR F-test of "x does not Granger-cause y" for every lag 1..max_lag.
/// Inputs must already be stationary. A singular design throws
/// SingularMatrixError whose message names the lag.
GrangerResult granger_test(const std::vector<double>& x, const std::vector<double>& y, int max_lag = 14,
                           double alpha = 0.05);

struct Component {
  std::string name;
  int topic = -1;
  int sentiment = -1;
  std::vector<double> values;
};

struct RankedFeature {
  std::size_t index = 0;  ///< position in the input component list
  std::string name;
  int topic = -1;
  int sentiment = -1;
  int d = 0;
  int significant_count = 0;
  std::vector<double> p_values;
};

struct SkippedFeature {
  std::size_t index = 0;
  std::string name;
  std::string reason;
};

struct FeatureRanking {
  std::vector<RankedFeature> ranked;  ///< significant_count desc, index asc, filtered by min_count
  std::vector<RankedFeature> all;     ///< every tested component, same order
  std::vector<SkippedFeature> skipped;
  int y_d = 0;
};

struct FeatureSelectionOptions {
  int max_lag = 14;
  double alpha = 0.05;
  int min_count = 10;
  int max_d = 2;
};

/// Differences y and each component to its own passing order (capped at
/// max_d), aligns them on their common trailing dates, and Granger-tests
/// every component against y. Components that are constant or cannot be made
/// stationary are reported in `skipped`. Failure to make y stationary throws.
FeatureRanking select_features(const std::vector<Component>& components, const std::vector<double>& y,
                               const FeatureSelectionOptions& options = {});

/// CSV: component,topic,sentiment,significant_count,p_values
void write_ranking(std::ostream& out, const std::vector<RankedFeature>& ranking);

}  // namespace signalcast::stattests

#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "corraudit/error.hpp"
#include "corraudit/linear_model.hpp"
#include "corraudit/stats.hpp"

namespace corraudit {

/// What mape does with a zero target value.
enum class ZeroPolicy { error, exclude };

enum class Metric { mape, mae, rmse };

template <typename Scalar>
struct BasicMetricSet {
  Scalar mape;  // percent
  Scalar mae;
  Scalar rmse;
  /// Pairs entering MAPE; MAE and RMSE always use all n_used + n_excluded_zero_target.
  Eigen::Index n_used;
  Eigen::Index n_excluded_zero_target;

  Scalar get(Metric m) const {
    switch (m) {
      case Metric::mape: return mape;
      case Metric::mae: return mae;
      case Metric::rmse: return rmse;
    }
    return rmse;
  }
};

using MetricSet = BasicMetricSet<double>;

namespace detail {

template <typename Scalar>
void require_series(const BasicPredictionSeries<Scalar>& s) {
  if (s.actual.size() != s.predicted.size()) {
    throw DataError("prediction series length mismatch: " + std::to_string(s.actual.size()) +
                    " actual vs " + std::to_string(s.predicted.size()) + " predicted");
  }
  if (s.actual.size() == 0) throw DataError("empty prediction series");
}

}  // namespace detail

template <typename Scalar>
Scalar mae(const BasicPredictionSeries<Scalar>& s) {
  detail::require_series(s);
  CompensatedSum<Scalar> acc;
  for (Eigen::Index i = 0; i < s.actual.size(); ++i) acc += std::abs(s.actual[i] - s.predicted[i]);
  return acc.value() / static_cast<Scalar>(s.actual.size());
}

/// Root of the mean squared error with denominator n.
template <typename Scalar>
Scalar rmse(const BasicPredictionSeries<Scalar>& s) {
  detail::require_series(s);
  CompensatedSum<Scalar> acc;
  for (Eigen::Index i = 0; i < s.actual.size(); ++i) {
    const Scalar e = s.actual[i] - s.predicted[i];
    acc += e * e;
  }
  return std::sqrt(acc.value() / static_cast<Scalar>(s.actual.size()));
}

template <typename Scalar>
struct MapeResult {
  Scalar value;
  Eigen::Index n_used;
  Eigen::Index n_excluded;
};

template <typename Scalar>
MapeResult<Scalar> mape_detail(const BasicPredictionSeries<Scalar>& s, ZeroPolicy policy) {
  detail::require_series(s);
  CompensatedSum<Scalar> acc;
  Eigen::Index used = 0;
  for (Eigen::Index i = 0; i < s.actual.size(); ++i) {
    const Scalar y = s.actual[i];
    if (y == Scalar(0)) {
      if (policy == ZeroPolicy::error) {
        throw NumericError("MAPE undefined: target is zero at row " + std::to_string(i));
      }
      continue;
    }
    acc += std::abs((y - s.predicted[i]) / y);
    ++used;
  }
  if (used == 0) throw NumericError("MAPE undefined: every target value is zero");
  return {acc.value() / static_cast<Scalar>(used) * Scalar(100), used, s.actual.size() - used};
}

/// Mean absolute percentage error, in percent.
template <typename Scalar>
Scalar mape(const BasicPredictionSeries<Scalar>& s, ZeroPolicy policy = ZeroPolicy::error) {
  return mape_detail(s, policy).value;
}

template <typename Scalar>
BasicMetricSet<Scalar> evaluate_all(const BasicPredictionSeries<Scalar>& s,
                                    ZeroPolicy policy = ZeroPolicy::error) {
  const auto p = mape_detail(s, policy);
  return {p.value, mae(s), rmse(s), p.n_used, p.n_excluded};
}

std::string to_string(Metric m);
Metric parse_metric(const std::string& text);
std::string to_string(ZeroPolicy p);
ZeroPolicy parse_zero_policy(const std::string& text);

}  // namespace corraudit

#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "corraudit/error.hpp"
#include "corraudit/stats.hpp"

namespace corraudit {

/// Closed-form least-squares line y = alpha + beta * x.
template <typename Scalar>
struct BasicFitResult {
  Scalar alpha;
  Scalar beta;
  /// Absent when y is constant.
  std::optional<Scalar> r;
  Eigen::Index n;
  std::string x_label;
  std::string y_label;
  /// sqrt(SSE / (n - 2)); absent for n < 3.
  std::optional<Scalar> residual_std_error;
  Scalar x_mean;
  Scalar y_mean;
  Scalar sxx;
};

using FitResult = BasicFitResult<double>;

template <typename Scalar>
struct BasicPredictionSeries {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector actual;
  Vector predicted;
};

using PredictionSeries = BasicPredictionSeries<double>;

template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> predict(const BasicFitResult<Scalar>& fit,
                                                 const Eigen::DenseBase<Derived>& xs) {
  return (fit.alpha + fit.beta * xs.derived().array()).matrix();
}

/// e_i = y_i - yhat_i.
template <typename Scalar, typename DerivedX, typename DerivedY>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> residuals(const BasicFitResult<Scalar>& fit,
                                                   const Eigen::DenseBase<DerivedX>& xs,
                                                   const Eigen::DenseBase<DerivedY>& ys) {
  detail::require_paired(xs, ys, 0);
  return ys.derived() - predict(fit, xs);
}

template <typename DerivedX, typename DerivedY>
BasicFitResult<typename DerivedX::Scalar> fit_ols(const Eigen::DenseBase<DerivedX>& xs,
                                                  const Eigen::DenseBase<DerivedY>& ys,
                                                  std::string x_label = "x",
                                                  std::string y_label = "y") {
  using Scalar = typename DerivedX::Scalar;
  const auto t = covariance_terms(xs, ys);
  if (t.sxx == Scalar(0)) {
    throw NumericError("cannot fit a line: predictor '" + x_label + "' is constant");
  }

  BasicFitResult<Scalar> fit;
  fit.n = xs.size();
  fit.x_mean = mean(xs);
  fit.y_mean = mean(ys);
  fit.sxx = t.sxx;
  fit.beta = t.sxy / t.sxx;
  fit.alpha = fit.y_mean - fit.beta * fit.x_mean;
  if (t.syy != Scalar(0)) {
    fit.r = std::clamp(t.sxy / correlation_denominator(t.sxx, t.syy), Scalar(-1), Scalar(1));
  }
  fit.x_label = std::move(x_label);
  fit.y_label = std::move(y_label);

  if (fit.n >= 3) {
    const auto e = residuals(fit, xs, ys);
    CompensatedSum<Scalar> sse;
    for (Eigen::Index i = 0; i < e.size(); ++i) sse += e[i] * e[i];
    fit.residual_std_error = std::sqrt(sse.value() / static_cast<Scalar>(fit.n - 2));
  }
  return fit;
}

}  // namespace corraudit

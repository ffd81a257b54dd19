#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "corraudit/error.hpp"

namespace corraudit {

/// Kahan-Babuska (Neumaier) running sum.
template <typename Scalar>
class CompensatedSum {
public:
  CompensatedSum& operator+=(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + carry_; }

private:
  Scalar sum_ = Scalar(0);
  Scalar carry_ = Scalar(0);
};

template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& xs) {
  CompensatedSum<typename Derived::Scalar> acc;
  for (Eigen::Index i = 0; i < xs.size(); ++i) acc += xs.derived().coeff(i);
  return acc.value();
}

/// Arithmetic mean from a compensated sum, clamped into [min, max] so a
/// constant column has a mean equal to its value.
template <typename Derived>
typename Derived::Scalar mean(const Eigen::DenseBase<Derived>& xs) {
  if (xs.size() == 0) throw NumericError("mean of an empty sequence is undefined");
  using Scalar = typename Derived::Scalar;
  const Scalar m = compensated_sum(xs) / static_cast<Scalar>(xs.size());
  return std::clamp(m, xs.minCoeff(), xs.maxCoeff());
}

/// Sum of squared deviations from the mean, two-pass.
template <typename Derived>
typename Derived::Scalar centered_sum_of_squares(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  const Scalar m = mean(xs);
  CompensatedSum<Scalar> acc;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const Scalar d = xs.derived().coeff(i) - m;
    acc += d * d;
  }
  return acc.value();
}

template <typename Derived>
typename Derived::Scalar variance_pop(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  return centered_sum_of_squares(xs) / static_cast<Scalar>(xs.size());
}

template <typename Derived>
typename Derived::Scalar variance_sample(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  if (xs.size() < 2) throw NumericError("sample variance needs at least 2 values");
  return centered_sum_of_squares(xs) / static_cast<Scalar>(xs.size() - 1);
}

/// Centered cross and self sums: sxy = sum (x-xbar)(y-ybar), sxx, syy.
template <typename Scalar>
struct CovarianceTerms {
  Scalar sxy;
  Scalar sxx;
  Scalar syy;
};

namespace detail {

template <typename DerivedX, typename DerivedY>
void require_paired(const Eigen::DenseBase<DerivedX>& xs, const Eigen::DenseBase<DerivedY>& ys,
                    Eigen::Index min_n) {
  if (xs.size() != ys.size()) {
    throw DataError("length mismatch: " + std::to_string(xs.size()) + " vs " +
                    std::to_string(ys.size()));
  }
  if (xs.size() < min_n) {
    throw DataError("need at least " + std::to_string(min_n) + " paired values, got " +
                    std::to_string(xs.size()));
  }
}

}  // namespace detail

template <typename DerivedX, typename DerivedY>
CovarianceTerms<typename DerivedX::Scalar> covariance_terms(const Eigen::DenseBase<DerivedX>& xs,
                                                            const Eigen::DenseBase<DerivedY>& ys) {
  using Scalar = typename DerivedX::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedY::Scalar>, "mixed scalar types");
  detail::require_paired(xs, ys, 2);

  const Scalar mx = mean(xs);
  const Scalar my = mean(ys);
  CompensatedSum<Scalar> sxy, sxx, syy;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const Scalar dx = xs.derived().coeff(i) - mx;
    const Scalar dy = ys.derived().coeff(i) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return {sxy.value(), sxx.value(), syy.value()};
}

/// sqrt(sxx * syy), falling back to separate roots when the product leaves
/// the normal range.
template <typename Scalar>
Scalar correlation_denominator(Scalar sxx, Scalar syy) {
  const Scalar product = sxx * syy;
  if (std::isnormal(product) && product < std::numeric_limits<Scalar>::max()) {
    return std::sqrt(product);
  }
  return std::sqrt(sxx) * std::sqrt(syy);
}

template <typename Scalar>
struct BasicCorrelationResult {
  Scalar r;
  Eigen::Index n;
  std::string x_label;
  std::string y_label;
};

using CorrelationResult = BasicCorrelationResult<double>;

/// Product-moment correlation sxy / sqrt(sxx * syy), clamped to [-1, 1].
template <typename DerivedX, typename DerivedY>
BasicCorrelationResult<typename DerivedX::Scalar> pearson_r(const Eigen::DenseBase<DerivedX>& xs,
                                                            const Eigen::DenseBase<DerivedY>& ys,
                                                            std::string x_label = "x",
                                                            std::string y_label = "y") {
  using Scalar = typename DerivedX::Scalar;
  const auto t = covariance_terms(xs, ys);
  if (t.sxx == Scalar(0) || t.syy == Scalar(0)) {
    const std::string& which = t.sxx == Scalar(0) ? x_label : y_label;
    throw NumericError("correlation undefined for constant variable '" + which + "'");
  }
  const Scalar r = t.sxy / correlation_denominator(t.sxx, t.syy);
  return {std::clamp(r, Scalar(-1), Scalar(1)), xs.size(), std::move(x_label),
          std::move(y_label)};
}

}  // namespace corraudit

#include "corraudit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corraudit/error.hpp"
#include "corraudit/format.hpp"

namespace corraudit {

std::vector<Eigen::Index> shuffle_indices(Eigen::Index n, std::uint64_t seed) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(std::max<Eigen::Index>(n, 0)));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  SplitMix64 rng(seed);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

Protocol parse_protocol(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto no_arg = [&](auto kind) {
    if (colon != std::string::npos) throw ConfigError("protocol '" + head + "' takes no argument");
    return Protocol{kind, seed};
  };

  if (head == "insample") return no_arg(Resubstitution{});
  if (head == "loo") return no_arg(LeaveOneOut{});
  if (head == "holdout") {
    const auto f = parse_double(arg);
    if (!f || !(*f > 0.0 && *f < 1.0)) {
      throw ConfigError("holdout needs a train fraction in (0, 1), got '" + arg + "'");
    }
    return Protocol{Holdout{*f}, seed};
  }
  if (head == "kfold") {
    const auto k = parse_double(arg);
    if (!k || *k != std::floor(*k) || *k < 2 || *k > 1e9) {
      throw ConfigError("kfold needs an integer k >= 2, got '" + arg + "'");
    }
    return Protocol{KFold{static_cast<Eigen::Index>(*k)}, seed};
  }
  throw ConfigError("unknown protocol '" + text + "'; expected insample, holdout:F, kfold:K or loo");
}

std::string to_string(const Protocol& p) {
  struct Visitor {
    std::string operator()(const Resubstitution&) const { return "insample"; }
    std::string operator()(const Holdout& h) const {
      return "holdout:" + format_shortest(h.train_fraction);
    }
    std::string operator()(const KFold& k) const { return "kfold:" + std::to_string(k.k); }
    std::string operator()(const LeaveOneOut&) const { return "loo"; }
  };
  return std::visit(Visitor{}, p.kind);
}

namespace {

Eigen::VectorXd gather(const Eigen::Ref<const Eigen::VectorXd>& v,
                       const std::vector<Eigen::Index>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[rows[i]];
  return out;
}

// Fits on `train` (ascending row order) and writes predictions for `test` rows.
void fit_and_predict(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     const std::vector<Eigen::Index>& train, const std::vector<Eigen::Index>& test,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& where, Eigen::VectorXd& predicted) {
  const Eigen::VectorXd tx = gather(x, train);
  const Eigen::VectorXd ty = gather(y, train);
  FitResult fit;
  try {
    fit = fit_ols(tx, ty, x_label, y_label);
  } catch (const NumericError& e) {
    throw NumericError(where + ": " + e.what());
  }
  for (const auto row : test) predicted[row] = fit.alpha + fit.beta * x[row];
}

}  // namespace

EvalOutcome run_protocol(const Dataset& ds, const std::string& y_label, const std::string& x_label,
                         const Protocol& protocol, ZeroPolicy zero_policy) {
  const auto x = column(ds, x_label);
  const auto y = column(ds, y_label);
  const Eigen::Index n = ds.rows();

  EvalOutcome out{protocol, fit_ols(x, y, x_label, y_label), {}, 0, 0, {}, {}, {}};
  Eigen::VectorXd predicted = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Eigen::Index{0});

  auto run_folds = [&](Eigen::Index k, const std::vector<Eigen::Index>& order) {
    // contiguous blocks of `order`; the first n % k folds take one extra row
    const Eigen::Index base = n / k;
    const Eigen::Index extra = n % k;
    out.fold_of_row.assign(static_cast<std::size_t>(n), 0);
    Eigen::Index start = 0;
    for (Eigen::Index f = 0; f < k; ++f) {
      const Eigen::Index size = base + (f < extra ? 1 : 0);
      for (Eigen::Index i = start; i < start + size; ++i) out.fold_of_row[order[i]] = f;
      start += size;
    }
    for (Eigen::Index f = 0; f < k; ++f) {
      std::vector<Eigen::Index> train, test;
      for (Eigen::Index row = 0; row < n; ++row) {
        (out.fold_of_row[row] == f ? test : train).push_back(row);
      }
      fit_and_predict(x, y, train, test, x_label, y_label, "fold " + std::to_string(f), predicted);
    }
    out.n_train = n - (base + (extra > 0 ? 1 : 0));
    out.n_test = n;
    out.test_rows = all;
  };

  struct Visitor {
    EvalOutcome& out;
    decltype(run_folds)& folds;
    const Eigen::Ref<const Eigen::VectorXd>& x;
    const Eigen::Ref<const Eigen::VectorXd>& y;
    Eigen::VectorXd& predicted;
    const std::vector<Eigen::Index>& all;
    const std::string& x_label;
    const std::string& y_label;
    Eigen::Index n;
    std::uint64_t seed;

    void operator()(const Resubstitution&) {
      predicted = predict(out.fit_on_full, x);
      out.n_train = out.n_test = n;
      out.test_rows = all;
    }
    void operator()(const Holdout& h) {
      if (!(h.train_fraction > 0.0 && h.train_fraction < 1.0)) {
        throw ConfigError("holdout train fraction must lie in (0, 1)");
      }
      const auto n_train = static_cast<Eigen::Index>(std::llround(h.train_fraction * n));
      if (n_train < 2 || n - n_train < 1) {
        throw ConfigError("holdout:" + format_shortest(h.train_fraction) + " on n=" +
                          std::to_string(n) + " gives " + std::to_string(n_train) +
                          " training and " + std::to_string(n - n_train) +
                          " test rows; need at least 2 and 1");
      }
      const auto perm = shuffle_indices(n, seed);
      std::vector<Eigen::Index> train(perm.begin(), perm.begin() + n_train);
      std::vector<Eigen::Index> test(perm.begin() + n_train, perm.end());
      std::sort(train.begin(), train.end());
      std::sort(test.begin(), test.end());
      fit_and_predict(x, y, train, test, x_label, y_label, "holdout training set", predicted);
      out.n_train = n_train;
      out.n_test = n - n_train;
      out.test_rows = std::move(test);
    }
    void operator()(const KFold& k) {
      if (k.k < 2 || k.k > n) {
        throw ConfigError("kfold:" + std::to_string(k.k) + " needs 2 <= k <= n = " +
                          std::to_string(n));
      }
      if (n - (n + k.k - 1) / k.k < 2) {
        throw ConfigError("kfold:" + std::to_string(k.k) + " on n=" + std::to_string(n) +
                          " leaves fewer than 2 training rows in some fold");
      }
      folds(k.k, shuffle_indices(n, seed));
    }
    void operator()(const LeaveOneOut&) {
      if (n < 3) throw ConfigError("leave-one-out needs n >= 3 so each training set has 2 rows");
      folds(n, all);
    }
  };
  std::visit(Visitor{out, run_folds, x, y, predicted, all, x_label, y_label, n, protocol.seed},
             protocol.kind);

  out.predictions.actual = gather(y, out.test_rows);
  out.predictions.predicted = gather(predicted, out.test_rows);
  out.metrics = evaluate_all(out.predictions, zero_policy);
  return out;
}

}  // namespace corraudit

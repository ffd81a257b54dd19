#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "corraudit/dataset.hpp"
#include "corraudit/linear_model.hpp"
#include "corraudit/metrics.hpp"

namespace corraudit {

/// SplitMix64 (Steele, Lea & Flood). Output is fully specified by the seed,
/// so permutations are identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    // 2^64 mod bound, computed without 128-bit arithmetic
    const std::uint64_t rem = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (rem == 0 || x < 0 - rem) return x % bound;
    }
  }

private:
  std::uint64_t state_;
};

/// Fisher-Yates over 0..n-1 driven by SplitMix64(seed).
std::vector<Eigen::Index> shuffle_indices(Eigen::Index n, std::uint64_t seed);

struct Resubstitution {};
struct Holdout {
  double train_fraction;
};
struct KFold {
  Eigen::Index k;
};
struct LeaveOneOut {};

struct Protocol {
  std::variant<Resubstitution, Holdout, KFold, LeaveOneOut> kind;
  std::uint64_t seed = 0;
};

/// "insample" | "holdout:<fraction>" | "kfold:<k>" | "loo".
Protocol parse_protocol(const std::string& text, std::uint64_t seed = 0);
std::string to_string(const Protocol& p);

struct EvalOutcome {
  Protocol protocol;
  FitResult fit_on_full;
  MetricSet metrics;
  Eigen::Index n_train;
  Eigen::Index n_test;
  /// Scored rows in ascending original-row order, with their predictions.
  std::vector<Eigen::Index> test_rows;
  PredictionSeries predictions;
  /// Fold index per row for kfold and loo; empty otherwise.
  std::vector<Eigen::Index> fold_of_row;
};

EvalOutcome run_protocol(const Dataset& ds, const std::string& y_label, const std::string& x_label,
                         const Protocol& protocol, ZeroPolicy zero_policy = ZeroPolicy::error);

}  // namespace corraudit

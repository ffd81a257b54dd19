#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "corraudit/dataset.hpp"
#include "corraudit/linear_model.hpp"
#include "corraudit/metrics.hpp"
#include "corraudit/protocols.hpp"
#include "corraudit/stats.hpp"

namespace corraudit {

/// Values closer than this are ranked as tied.
inline constexpr double kTieTolerance = 1e-12;

struct RankedPredictor {
  std::string label;
  double value;
  /// Entries sharing a tie group are tied; groups count up from 0 in rank order.
  int tie_group;
};

struct Ranking {
  std::vector<RankedPredictor> entries;

  std::vector<std::string> labels() const;
  bool has_ties() const;
};

enum class SortOrder { ascending, descending };

/// Sorts by value, groups neighbours within `tolerance` as ties, and orders
/// each tie group by label.
Ranking make_ranking(std::vector<std::pair<std::string, double>> values, SortOrder order,
                     double tolerance = kTieTolerance);

/// Number of predictor pairs ordered strictly one way by `a` and strictly the
/// other way by `b`. Pairs tied in either ranking are not counted.
int kendall_tau_distance(const Ranking& a, const Ranking& b);

struct AuditSpec {
  std::string y_label;
  std::vector<std::string> x_labels;
  std::vector<Protocol> protocols;
  std::vector<Metric> metrics;
  ZeroPolicy zero_policy = ZeroPolicy::error;
};

struct EvaluationCell {
  MetricSet metrics;
  Eigen::Index n_train;
  Eigen::Index n_test;
};

/// protocol string -> predictor label -> cell
using Evaluations = std::map<std::string, std::map<std::string, EvaluationCell>>;

struct Disagreement {
  std::string protocol;
  Metric metric;
  std::vector<std::string> correlation_ranking;
  std::vector<std::string> metric_ranking;
  int kendall_tau_distance;
};

struct AuditReport {
  std::string dataset;
  std::string target;
  std::uint64_t seed;
  ZeroPolicy zero_policy;
  std::vector<std::string> protocols;
  std::vector<Metric> metrics;
  /// Keyed by predictor label.
  std::map<std::string, CorrelationResult> correlations;
  std::map<std::string, FitResult> fits;
  Evaluations evaluations;
  Ranking correlation_ranking;
  std::map<std::string, std::map<Metric, Ranking>> metric_rankings;
  std::map<std::string, std::map<Metric, int>> kendall_distances;
  std::vector<Disagreement> disagreements;
};

/// Throws ConfigError or DataError when `spec` does not fit `ds`.
void validate(const AuditSpec& spec, const Dataset& ds);

Ranking rank_by_correlation(const Dataset& ds, const AuditSpec& spec);

/// Throws std::logic_error if a (predictor, protocol) cell is missing.
Ranking rank_by_metric(const Evaluations& evaluations, const std::string& protocol, Metric metric,
                       const std::vector<std::string>& predictors);

AuditReport compile_audit(const Dataset& ds, const AuditSpec& spec);

nlohmann::json to_json(const AuditReport& report);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string serialize(const AuditReport& report);

std::string tool_version();

}  // namespace corraudit

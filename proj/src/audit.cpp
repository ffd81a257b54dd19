#include "corraudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "corraudit/error.hpp"

#ifndef CORRAUDIT_VERSION
#define CORRAUDIT_VERSION "0.0.0"
#endif

namespace corraudit {

std::string tool_version() { return CORRAUDIT_VERSION; }

std::vector<std::string> Ranking::labels() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

bool Ranking::has_ties() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].tie_group == entries[i - 1].tie_group) return true;
  }
  return false;
}

Ranking make_ranking(std::vector<std::pair<std::string, double>> values, SortOrder order,
                     double tolerance) {
  std::sort(values.begin(), values.end(), [order](const auto& a, const auto& b) {
    if (a.second != b.second) {
      return order == SortOrder::ascending ? a.second < b.second : a.second > b.second;
    }
    return a.first < b.first;
  });

  Ranking ranking;
  int group = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || std::abs(values[i].second - values[i - 1].second) > tolerance) ++group;
    ranking.entries.push_back({values[i].first, values[i].second, group});
  }
  // within a tie group, label order
  auto& e = ranking.entries;
  for (auto first = e.begin(); first != e.end();) {
    auto last = std::find_if(first, e.end(),
                             [g = first->tie_group](const auto& r) { return r.tie_group != g; });
    std::sort(first, last, [](const auto& a, const auto& b) { return a.label < b.label; });
    first = last;
  }
  return ranking;
}

int kendall_tau_distance(const Ranking& a, const Ranking& b) {
  std::map<std::string, int> group_a, group_b;
  for (const auto& e : a.entries) group_a[e.label] = e.tie_group;
  for (const auto& e : b.entries) group_b[e.label] = e.tie_group;
  if (group_a.size() != group_b.size()) {
    throw std::logic_error("kendall_tau_distance: rankings cover different predictors");
  }
  int discordant = 0;
  for (auto p = group_a.begin(); p != group_a.end(); ++p) {
    for (auto q = std::next(p); q != group_a.end(); ++q) {
      const auto bp = group_b.find(p->first);
      const auto bq = group_b.find(q->first);
      if (bp == group_b.end() || bq == group_b.end()) {
        throw std::logic_error("kendall_tau_distance: rankings cover different predictors");
      }
      const int da = p->second - q->second;
      const int db = bp->second - bq->second;
      if ((da < 0 && db > 0) || (da > 0 && db < 0)) ++discordant;
    }
  }
  return discordant;
}

namespace {

[[noreturn]] void rethrow_with(const Error& e, const std::string& prefix) {
  const std::string msg = prefix + e.what();
  switch (e.kind()) {
    case ErrorKind::data: throw DataError(msg);
    case ErrorKind::numeric: throw NumericError(msg);
    case ErrorKind::config: throw ConfigError(msg);
    case ErrorKind::usage: throw UsageError(msg);
  }
  throw DataError(msg);
}

}  // namespace

void validate(const AuditSpec& spec, const Dataset& ds) {
  if (spec.x_labels.size() < 2) throw ConfigError("an audit needs at least 2 predictors");
  if (spec.protocols.empty()) throw ConfigError("an audit needs at least 1 protocol");
  if (spec.metrics.empty()) throw ConfigError("an audit needs at least 1 metric");

  std::set<std::string> seen;
  for (const auto& x : spec.x_labels) {
    if (x == spec.y_label) throw ConfigError("predictor '" + x + "' is also the target");
    if (!seen.insert(x).second) throw ConfigError("predictor '" + x + "' listed twice");
  }
  std::set<std::string> protocols;
  for (const auto& p : spec.protocols) {
    if (!protocols.insert(to_string(p)).second) {
      throw ConfigError("protocol '" + to_string(p) + "' listed twice");
    }
  }
  std::set<Metric> metrics(spec.metrics.begin(), spec.metrics.end());
  if (metrics.size() != spec.metrics.size()) throw ConfigError("metric listed twice");

  ds.index_of(spec.y_label);
  for (const auto& x : spec.x_labels) ds.index_of(x);
}

Ranking rank_by_correlation(const Dataset& ds, const AuditSpec& spec) {
  const auto y = column(ds, spec.y_label);
  std::vector<std::pair<std::string, double>> values;
  for (const auto& x : spec.x_labels) {
    try {
      values.emplace_back(x, std::abs(pearson_r(column(ds, x), y, x, spec.y_label).r));
    } catch (const Error& e) {
      rethrow_with(e, "predictor '" + x + "': ");
    }
  }
  return make_ranking(std::move(values), SortOrder::descending);
}

Ranking rank_by_metric(const Evaluations& evaluations, const std::string& protocol, Metric metric,
                       const std::vector<std::string>& predictors) {
  const auto row = evaluations.find(protocol);
  if (row == evaluations.end()) {
    throw std::logic_error("audit incomplete: no evaluations for protocol '" + protocol + "'");
  }
  std::vector<std::pair<std::string, double>> values;
  for (const auto& x : predictors) {
    const auto cell = row->second.find(x);
    if (cell == row->second.end()) {
      throw std::logic_error("audit incomplete: no evaluation for predictor '" + x +
                             "' under protocol '" + protocol + "'");
    }
    values.emplace_back(x, cell->second.metrics.get(metric));
  }
  return make_ranking(std::move(values), SortOrder::ascending);
}

AuditReport compile_audit(const Dataset& ds, const AuditSpec& spec) {
  validate(spec, ds);

  AuditReport report;
  report.dataset = ds.name();
  report.target = spec.y_label;
  report.seed = spec.protocols.front().seed;
  report.zero_policy = spec.zero_policy;
  report.metrics = spec.metrics;

  const auto y = column(ds, spec.y_label);
  for (const auto& x : spec.x_labels) {
    try {
      report.correlations.emplace(x, pearson_r(column(ds, x), y, x, spec.y_label));
      report.fits.emplace(x, fit_ols(column(ds, x), y, x, spec.y_label));
    } catch (const Error& e) {
      rethrow_with(e, "predictor '" + x + "': ");
    }
  }
  report.correlation_ranking = rank_by_correlation(ds, spec);

  for (const auto& p : spec.protocols) {
    const std::string key = to_string(p);
    report.protocols.push_back(key);
    for (const auto& x : spec.x_labels) {
      try {
        const auto outcome = run_protocol(ds, spec.y_label, x, p, spec.zero_policy);
        report.evaluations[key][x] = {outcome.metrics, outcome.n_train, outcome.n_test};
      } catch (const Error& e) {
        rethrow_with(e, "predictor '" + x + "' under " + key + ": ");
      }
    }
  }

  for (const auto& key : report.protocols) {
    for (const auto m : spec.metrics) {
      auto ranking = rank_by_metric(report.evaluations, key, m, spec.x_labels);
      const int distance = kendall_tau_distance(report.correlation_ranking, ranking);
      report.kendall_distances[key][m] = distance;
      if (distance > 0) {
        report.disagreements.push_back(
            {key, m, report.correlation_ranking.labels(), ranking.labels(), distance});
      }
      report.metric_rankings[key].emplace(m, std::move(ranking));
    }
  }
  return report;
}

namespace {

nlohmann::json ranking_json(const Ranking& r, const char* value_key) {
  auto out = nlohmann::json::array();
  for (const auto& e : r.entries) {
    out.push_back({{"label", e.label}, {value_key, e.value}, {"tie_group", e.tie_group}});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const AuditReport& report) {
  using nlohmann::json;
  json j;
  j["dataset"] = report.dataset;
  j["target"] = report.target;
  j["seed"] = report.seed;
  j["tool_version"] = tool_version();
  j["zero_policy"] = to_string(report.zero_policy);
  j["protocols"] = report.protocols;
  j["metrics"] = json::array();
  for (const auto m : report.metrics) j["metrics"].push_back(to_string(m));

  j["predictors"] = json::object();
  for (const auto& [label, fit] : report.fits) {
    json p{{"alpha", fit.alpha}, {"beta", fit.beta}, {"n", fit.n},
           {"r", report.correlations.at(label).r}};
    p["residual_std_error"] =
        fit.residual_std_error ? json(*fit.residual_std_error) : json(nullptr);
    j["predictors"][label] = std::move(p);
  }

  j["evaluations"] = json::object();
  for (const auto& [protocol, row] : report.evaluations) {
    for (const auto& [label, cell] : row) {
      j["evaluations"][protocol][label] = {
          {"mape", cell.metrics.mape},
          {"mae", cell.metrics.mae},
          {"rmse", cell.metrics.rmse},
          {"n_used", cell.metrics.n_used},
          {"n_excluded_zero_target", cell.metrics.n_excluded_zero_target},
          {"n_train", cell.n_train},
          {"n_test", cell.n_test},
      };
    }
  }

  j["correlation_ranking"] = ranking_json(report.correlation_ranking, "abs_r");
  j["metric_rankings"] = json::object();
  for (const auto& [protocol, by_metric] : report.metric_rankings) {
    for (const auto& [metric, ranking] : by_metric) {
      j["metric_rankings"][protocol][to_string(metric)] = ranking_json(ranking, "value");
    }
  }
  j["kendall_tau_distance"] = json::object();
  for (const auto& [protocol, by_metric] : report.kendall_distances) {
    for (const auto& [metric, d] : by_metric) {
      j["kendall_tau_distance"][protocol][to_string(metric)] = d;
    }
  }

  j["disagreements"] = json::array();
  for (const auto& d : report.disagreements) {
    j["disagreements"].push_back({{"protocol", d.protocol},
                                  {"metric", to_string(d.metric)},
                                  {"correlation_ranking", d.correlation_ranking},
                                  {"metric_ranking", d.metric_ranking},
                                  {"kendall_tau_distance", d.kendall_tau_distance}});
  }
  return j;
}

std::string serialize(const AuditReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace corraudit

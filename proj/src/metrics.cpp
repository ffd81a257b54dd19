#include "corraudit/metrics.hpp"

namespace corraudit {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::mape: return "mape";
    case Metric::mae: return "mae";
    case Metric::rmse: return "rmse";
  }
  return "rmse";
}

Metric parse_metric(const std::string& text) {
  if (text == "mape") return Metric::mape;
  if (text == "mae") return Metric::mae;
  if (text == "rmse") return Metric::rmse;
  throw ConfigError("unknown metric '" + text + "'; expected mape, mae or rmse");
}

std::string to_string(ZeroPolicy p) { return p == ZeroPolicy::error ? "error" : "exclude"; }

ZeroPolicy parse_zero_policy(const std::string& text) {
  if (text == "error") return ZeroPolicy::error;
  if (text == "exclude") return ZeroPolicy::exclude;
  throw ConfigError("unknown zero policy '" + text + "'; expected error or exclude");
}

}  // namespace corraudit

#include "corraudit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corraudit/audit.hpp"
#include "corraudit/dataset.hpp"
#include "corraudit/error.hpp"
#include "corraudit/format.hpp"
#include "corraudit/linear_model.hpp"
#include "corraudit/metrics.hpp"
#include "corraudit/plot.hpp"
#include "corraudit/protocols.hpp"
#include "corraudit/reference_data.hpp"
#include "corraudit/stats.hpp"

namespace corraudit {

namespace {

using nlohmann::json;

enum class Format { text, json, csv };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw UsageError("unknown format '" + s + "'; expected text, json or csv");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Left-aligned columns separated by two spaces.
class TextTable {
public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out) const {
    std::vector<std::size_t> widths;
    for (const auto& r : rows_) {
      widths.resize(std::max(widths.size(), r.size()));
      for (std::size_t j = 0; j < r.size(); ++j) widths[j] = std::max(widths[j], r[j].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t j = 0; j < r.size(); ++j) {
        line += r[j];
        if (j + 1 < r.size()) line += std::string(widths[j] - r[j].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (j) out << ',';
    out << csv_escape(fields[j]);
  }
  out << '\n';
}

std::string sig(double v) { return format_significant(v, 4); }
std::string num(double v) { return format_shortest(v); }

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool strict = false;

  Dataset load(const std::string& source) const {
    if (!source.empty() && source.front() == '@') return load_embedded(source.substr(1));
    const auto ds = load_csv_file(
        source, CsvOptions{strict ? NonNumeric::reject : NonNumeric::skip});
    for (const auto& s : ds.skipped()) {
      err << "warning: skipped non-numeric column '" << s << "'\n";
    }
    return ds;
  }
};

void write_output_file(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path == "-") {
    out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "' for writing");
  f << bytes;
  if (!f) throw DataError("failed writing '" + path + "'");
  out << "wrote " << path << '\n';
}

// --- summarize --------------------------------------------------------------

void run_summarize(const Context& ctx, const std::string& source, const std::string& columns,
                   Format format) {
  const Dataset ds = ctx.load(source);
  std::vector<std::string> labels = columns.empty() ? ds.labels() : split_list(columns);
  std::vector<ColumnStats> stats;
  for (const auto& l : labels) stats.push_back(summarize(ds, l));

  auto var_sample = [](const ColumnStats& s, bool text) -> std::string {
    if (!s.variance_sample) return text ? "-" : "";
    return text ? sig(*s.variance_sample) : num(*s.variance_sample);
  };

  switch (format) {
    case Format::text: {
      ctx.out << "dataset " << ds.name() << " (n = " << ds.rows() << ")\n";
      TextTable t({"column", "n", "min", "mean", "max", "var_pop", "var_sample"});
      for (const auto& s : stats) {
        t.add({s.label, std::to_string(s.n), sig(s.min), sig(s.mean), sig(s.max),
               sig(s.variance_pop), var_sample(s, true)});
      }
      t.write(ctx.out);
      break;
    }
    case Format::json: {
      json j{{"dataset", ds.name()}, {"n", ds.rows()}, {"columns", json::array()}};
      for (const auto& s : stats) {
        j["columns"].push_back({{"label", s.label},
                                {"n", s.n},
                                {"min", s.min},
                                {"mean", s.mean},
                                {"max", s.max},
                                {"variance_pop", s.variance_pop},
                                {"variance_sample", s.variance_sample
                                                        ? json(*s.variance_sample)
                                                        : json(nullptr)}});
      }
      ctx.out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      write_csv_row(ctx.out, {"column", "n", "min", "mean", "max", "variance_pop",
                              "variance_sample"});
      for (const auto& s : stats) {
        write_csv_row(ctx.out, {s.label, std::to_string(s.n), num(s.min), num(s.mean),
                                num(s.max), num(s.variance_pop), var_sample(s, false)});
      }
      break;
  }
}

// --- correlate --------------------------------------------------------------

void run_correlate(const Context& ctx, const std::string& source, const std::string& target,
                   const std::string& predictors, Format format) {
  const Dataset ds = ctx.load(source);
  const auto y = column(ds, target);
  std::vector<CorrelationResult> results;
  for (const auto& x : split_list(predictors)) {
    results.push_back(pearson_r(column(ds, x), y, x, target));
  }
  if (results.empty()) throw UsageError("--predictors lists no columns");

  switch (format) {
    case Format::text: {
      TextTable t({"predictor", "r", "r_4sig", "n"});
      for (const auto& c : results) {
        t.add({c.x_label, format_fixed(c.r, 2), sig(c.r), std::to_string(c.n)});
      }
      ctx.out << "target " << target << '\n';
      t.write(ctx.out);
      break;
    }
    case Format::json: {
      json j{{"dataset", ds.name()}, {"target", target}, {"correlations", json::array()}};
      for (const auto& c : results) {
        j["correlations"].push_back({{"predictor", c.x_label}, {"r", c.r}, {"n", c.n}});
      }
      ctx.out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      write_csv_row(ctx.out, {"predictor", "r", "n"});
      for (const auto& c : results) {
        write_csv_row(ctx.out, {c.x_label, num(c.r), std::to_string(c.n)});
      }
      break;
  }
}

// --- fit --------------------------------------------------------------------

json fit_json(const FitResult& f) {
  return {{"predictor", f.x_label},
          {"target", f.y_label},
          {"alpha", f.alpha},
          {"beta", f.beta},
          {"n", f.n},
          {"r", f.r ? json(*f.r) : json(nullptr)},
          {"residual_std_error",
           f.residual_std_error ? json(*f.residual_std_error) : json(nullptr)}};
}

void run_fit(const Context& ctx, const std::string& source, const std::string& target,
             const std::string& predictor, Format format) {
  const Dataset ds = ctx.load(source);
  const FitResult f = fit_ols(column(ds, predictor), column(ds, target), predictor, target);
  const auto opt = [](const std::optional<double>& v, bool text) -> std::string {
    if (!v) return text ? "-" : "";
    return text ? sig(*v) : num(*v);
  };

  switch (format) {
    case Format::text: {
      ctx.out << target << " = " << sig(f.alpha) << (std::signbit(f.beta) ? " - " : " + ")
              << sig(std::abs(f.beta)) << " * " << predictor << '\n';
      TextTable t({"alpha", "beta", "r", "r_2dp", "n", "residual_std_error"});
      t.add({sig(f.alpha), sig(f.beta), opt(f.r, true), f.r ? format_fixed(*f.r, 2) : "-",
             std::to_string(f.n), opt(f.residual_std_error, true)});
      t.write(ctx.out);
      break;
    }
    case Format::json: {
      json j = fit_json(f);
      j["dataset"] = ds.name();
      ctx.out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      write_csv_row(ctx.out, {"predictor", "target", "alpha", "beta", "r", "n",
                              "residual_std_error"});
      write_csv_row(ctx.out, {predictor, target, num(f.alpha), num(f.beta), opt(f.r, false),
                              std::to_string(f.n), opt(f.residual_std_error, false)});
      break;
  }
}

// --- evaluate ---------------------------------------------------------------

void run_evaluate(const Context& ctx, const std::string& source, const std::string& target,
                  const std::string& predictor, const Protocol& protocol, ZeroPolicy policy,
                  Format format) {
  const Dataset ds = ctx.load(source);
  const auto o = run_protocol(ds, target, predictor, protocol, policy);
  const auto& m = o.metrics;

  switch (format) {
    case Format::text: {
      ctx.out << target << " ~ " << predictor << " under " << to_string(protocol) << " (seed "
              << protocol.seed << ")\n";
      TextTable t({"mape_pct", "mae", "rmse", "n_train", "n_test", "n_excluded_zero_target"});
      t.add({sig(m.mape), sig(m.mae), sig(m.rmse), std::to_string(o.n_train),
             std::to_string(o.n_test), std::to_string(m.n_excluded_zero_target)});
      t.write(ctx.out);
      break;
    }
    case Format::json: {
      json j{{"dataset", ds.name()},
             {"target", target},
             {"predictor", predictor},
             {"protocol", to_string(protocol)},
             {"seed", protocol.seed},
             {"zero_policy", to_string(policy)},
             {"fit", fit_json(o.fit_on_full)},
             {"metrics",
              {{"mape", m.mape},
               {"mae", m.mae},
               {"rmse", m.rmse},
               {"n_used", m.n_used},
               {"n_excluded_zero_target", m.n_excluded_zero_target}}},
             {"n_train", o.n_train},
             {"n_test", o.n_test}};
      ctx.out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      write_csv_row(ctx.out, {"protocol", "predictor", "mape", "mae", "rmse", "n_train",
                              "n_test", "n_excluded_zero_target"});
      write_csv_row(ctx.out, {to_string(protocol), predictor, num(m.mape), num(m.mae),
                              num(m.rmse), std::to_string(o.n_train), std::to_string(o.n_test),
                              std::to_string(m.n_excluded_zero_target)});
      break;
  }
}

// --- audit ------------------------------------------------------------------

void write_audit_text(std::ostream& out, const AuditReport& r) {
  out << "audit of " << r.target << " on " << r.dataset << " (seed " << r.seed
      << ", zero policy " << to_string(r.zero_policy) << ")\n\n";

  out << "correlation ranking (|r| descending)\n";
  TextTable corr({"rank", "predictor", "r", "r_2dp", "alpha", "beta", "tie_group"});
  for (std::size_t i = 0; i < r.correlation_ranking.entries.size(); ++i) {
    const auto& e = r.correlation_ranking.entries[i];
    const auto& fit = r.fits.at(e.label);
    const double rv = r.correlations.at(e.label).r;
    corr.add({std::to_string(i + 1), e.label, sig(rv), format_fixed(rv, 2), sig(fit.alpha),
              sig(fit.beta), std::to_string(e.tie_group)});
  }
  corr.write(out);

  for (const auto& protocol : r.protocols) {
    out << "\nprotocol " << protocol << '\n';
    std::vector<std::string> header{"predictor"};
    for (const auto m : r.metrics) header.push_back(to_string(m) + "_rank");
    for (const auto m : r.metrics) header.push_back(to_string(m) == "mape" ? "mape_pct" : to_string(m));
    TextTable t(header);
    for (const auto& e : r.correlation_ranking.entries) {
      std::vector<std::string> row{e.label};
      for (const auto m : r.metrics) {
        const auto& entries = r.metric_rankings.at(protocol).at(m).entries;
        const auto it = std::find_if(entries.begin(), entries.end(),
                                     [&](const auto& x) { return x.label == e.label; });
        row.push_back(std::to_string(it - entries.begin() + 1));
      }
      const auto& cell = r.evaluations.at(protocol).at(e.label).metrics;
      for (const auto m : r.metrics) row.push_back(sig(cell.get(m)));
      t.add(row);
    }
    t.write(out);
  }

  out << '\n';
  if (r.disagreements.empty()) {
    out << "no disagreements: every metric ranking agrees with the |r| ranking\n";
    return;
  }
  out << "disagreements\n";
  TextTable d({"protocol", "metric", "by_abs_r", "by_metric", "kendall_tau_distance"});
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " > " : "") + v[i];
    return s;
  };
  for (const auto& x : r.disagreements) {
    d.add({x.protocol, to_string(x.metric), join(x.correlation_ranking), join(x.metric_ranking),
           std::to_string(x.kendall_tau_distance)});
  }
  d.write(out);
}

void write_audit_csv(std::ostream& out, const AuditReport& r) {
  write_csv_row(out, {"protocol", "predictor", "r", "alpha", "beta", "mape", "mae", "rmse",
                      "n_train", "n_test", "abs_r_rank", "mape_rank", "mae_rank", "rmse_rank"});
  auto rank_of = [](const Ranking& ranking, const std::string& label) {
    const auto& e = ranking.entries;
    const auto it =
        std::find_if(e.begin(), e.end(), [&](const auto& x) { return x.label == label; });
    return std::to_string(it - e.begin() + 1);
  };
  for (const auto& protocol : r.protocols) {
    for (const auto& [label, cell] : r.evaluations.at(protocol)) {
      const auto& fit = r.fits.at(label);
      std::vector<std::string> row{protocol,        label,
                                   num(r.correlations.at(label).r),
                                   num(fit.alpha),  num(fit.beta),
                                   num(cell.metrics.mape), num(cell.metrics.mae),
                                   num(cell.metrics.rmse), std::to_string(cell.n_train),
                                   std::to_string(cell.n_test),
                                   rank_of(r.correlation_ranking, label)};
      for (const auto m : {Metric::mape, Metric::mae, Metric::rmse}) {
        const auto& by_metric = r.metric_rankings.at(protocol);
        const auto it = by_metric.find(m);
        row.push_back(it == by_metric.end() ? "" : rank_of(it->second, label));
      }
      write_csv_row(out, row);
    }
  }
}

void run_audit(const Context& ctx, const std::string& source, const AuditSpec& spec,
               Format format) {
  const Dataset ds = ctx.load(source);
  const AuditReport report = compile_audit(ds, spec);
  switch (format) {
    case Format::text: write_audit_text(ctx.out, report); break;
    case Format::json: ctx.out << serialize(report); break;
    case Format::csv: write_audit_csv(ctx.out, report); break;
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::config: return kExitUsage;
    case ErrorKind::data: return kExitData;
    case ErrorKind::numeric: return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit Pearson-correlation predictor selection against regression error metrics",
               "corraudit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::string source, target, predictor, predictors, columns, protocol_text = "insample";
  std::string protocols_text = "insample", metrics_text = "mape,mae,rmse";
  std::string format_text = "text", zero_policy_text = "error", out_path;
  std::uint64_t seed = 0;
  bool strict = false;
  bool no_band = false;
  int width = 640, height = 480;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("source", source, "CSV file, or @mtcars / @iris for embedded data")
        ->required();
    sub->add_flag("--strict", strict, "Reject non-numeric columns instead of skipping them");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_zero_policy = [&](CLI::App* sub) {
    sub->add_option("--zero-policy", zero_policy_text, "MAPE with zero targets: error or exclude")
        ->check(CLI::IsMember({"error", "exclude"}));
  };

  auto* summarize_cmd = app.add_subcommand("summarize", "Min, mean, max and variance per column");
  add_source(summarize_cmd);
  summarize_cmd->add_option("--columns", columns, "Comma-separated columns (default: all)");
  add_format(summarize_cmd);

  auto* correlate_cmd = app.add_subcommand("correlate", "Pearson r of each predictor with the target");
  add_source(correlate_cmd);
  correlate_cmd->add_option("--target", target, "Response column")->required();
  correlate_cmd->add_option("--predictors", predictors, "Comma-separated predictor columns")
      ->required();
  add_format(correlate_cmd);

  auto* fit_cmd = app.add_subcommand("fit", "Least-squares line target = alpha + beta * predictor");
  add_source(fit_cmd);
  fit_cmd->add_option("--target", target, "Response column")->required();
  fit_cmd->add_option("--predictor", predictor, "Predictor column")->required();
  add_format(fit_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "MAPE, MAE and RMSE under one protocol");
  add_source(evaluate_cmd);
  evaluate_cmd->add_option("--target", target, "Response column")->required();
  evaluate_cmd->add_option("--predictor", predictor, "Predictor column")->required();
  evaluate_cmd->add_option("--protocol", protocol_text, "insample, holdout:F, kfold:K or loo")
      ->required();
  evaluate_cmd->add_option("--seed", seed, "Shuffle seed for holdout and kfold");
  add_zero_policy(evaluate_cmd);
  add_format(evaluate_cmd);

  auto* audit_cmd =
      app.add_subcommand("audit", "Compare |r| ranking with error-metric rankings");
  add_source(audit_cmd);
  audit_cmd->add_option("--target", target, "Response column")->required();
  audit_cmd->add_option("--predictors", predictors, "Comma-separated predictor columns (>= 2)")
      ->required();
  audit_cmd->add_option("--protocols", protocols_text, "Comma-separated protocols");
  audit_cmd->add_option("--metrics", metrics_text, "Comma-separated subset of mape,mae,rmse");
  audit_cmd->add_option("--seed", seed, "Shuffle seed for holdout and kfold");
  add_zero_policy(audit_cmd);
  add_format(audit_cmd);

  auto* plot_cmd = app.add_subcommand("plot", "SVG scatter plot with the fitted line");
  add_source(plot_cmd);
  plot_cmd->add_option("--target", target, "Response column (y axis)")->required();
  plot_cmd->add_option("--predictor", predictor, "Predictor column (x axis)")->required();
  plot_cmd->add_option("--out", out_path, "Output SVG path, or - for stdout")->required();
  plot_cmd->add_option("--width", width, "Canvas width in pixels")->check(CLI::Range(100, 100000));
  plot_cmd->add_option("--height", height, "Canvas height in pixels")
      ->check(CLI::Range(100, 100000));
  plot_cmd->add_flag("--no-band", no_band, "Omit the standard-error band");

  auto* datasets_cmd = app.add_subcommand("datasets", "Embedded study-case datasets");
  datasets_cmd->require_subcommand(1);
  auto* list_cmd = datasets_cmd->add_subcommand("list", "List embedded datasets");
  auto* export_cmd = datasets_cmd->add_subcommand("export", "Write an embedded dataset as CSV");
  std::string dataset_name;
  export_cmd->add_option("name", dataset_name, "mtcars or iris")->required();
  export_cmd->add_option("--out", out_path, "Output CSV path, or - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Context ctx{out, err, strict};
  try {
    const Format format = parse_format(format_text);
    const ZeroPolicy policy = parse_zero_policy(zero_policy_text);
    if (summarize_cmd->parsed()) {
      run_summarize(ctx, source, columns, format);
    } else if (correlate_cmd->parsed()) {
      run_correlate(ctx, source, target, predictors, format);
    } else if (fit_cmd->parsed()) {
      run_fit(ctx, source, target, predictor, format);
    } else if (evaluate_cmd->parsed()) {
      run_evaluate(ctx, source, target, predictor, parse_protocol(protocol_text, seed), policy,
                   format);
    } else if (audit_cmd->parsed()) {
      AuditSpec spec;
      spec.y_label = target;
      spec.x_labels = split_list(predictors);
      for (const auto& p : split_list(protocols_text)) {
        spec.protocols.push_back(parse_protocol(p, seed));
      }
      for (const auto& m : split_list(metrics_text)) spec.metrics.push_back(parse_metric(m));
      spec.zero_policy = policy;
      run_audit(ctx, source, spec, format);
    } else if (plot_cmd->parsed()) {
      const Dataset ds = ctx.load(source);
      PlotSpec spec;
      spec.x_label = predictor;
      spec.y_label = target;
      spec.width = width;
      spec.height = height;
      spec.show_band = !no_band;
      write_output_file(out_path, render_plot(ds, spec), out);
    } else if (list_cmd->parsed()) {
      for (const auto& name : embedded_names()) {
        const Dataset ds = load_embedded(name);
        out << name << "  n=" << ds.rows() << "  numeric columns=" << ds.cols() << '\n';
      }
    } else if (export_cmd->parsed()) {
      write_output_file(out_path, std::string(embedded(dataset_name).payload), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"corraudit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace corraudit

#include "corraudit/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "corraudit/error.hpp"
#include "corraudit/format.hpp"
#include "corraudit/stats.hpp"

namespace corraudit {

Dataset::Dataset(std::string name, std::vector<std::string> labels, Eigen::MatrixXd values,
                 std::vector<std::string> skipped)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      values_(std::move(values)),
      skipped_(std::move(skipped)) {
  if (static_cast<Eigen::Index>(labels_.size()) != values_.cols()) {
    throw DataError("dataset '" + name_ + "': " + std::to_string(labels_.size()) +
                    " labels for " + std::to_string(values_.cols()) + " columns");
  }
  if (labels_.empty()) throw DataError("dataset '" + name_ + "' has no numeric columns");
  if (values_.rows() < 1) throw DataError("dataset '" + name_ + "' has no rows");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw DataError("dataset '" + name_ + "': empty column label");
    if (!seen.insert(l).second) {
      throw DataError("dataset '" + name_ + "': duplicate column label '" + l + "'");
    }
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      if (!std::isfinite(values_(i, j))) {
        throw DataError("dataset '" + name_ + "': non-finite value at row " +
                        std::to_string(i + 1) + ", column " + labels_[j]);
      }
    }
  }
}

bool Dataset::has(std::string_view label) const {
  for (const auto& l : labels_) {
    if (l == label) return true;
  }
  return false;
}

Eigen::Index Dataset::index_of(std::string_view label) const {
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (labels_[j] == label) return static_cast<Eigen::Index>(j);
  }
  std::string msg = "unknown column '" + std::string(label) + "' in dataset '" + name_ +
                    "'; available:";
  for (std::size_t j = 0; j < labels_.size(); ++j) msg += (j ? ", " : " ") + labels_[j];
  throw DataError(msg);
}

bool Dataset::same_contents(const Dataset& other) const {
  if (labels_ != other.labels_) return false;
  if (values_.rows() != other.values_.rows() || values_.cols() != other.values_.cols()) {
    return false;
  }
  return std::memcmp(values_.data(), other.values_.data(),
                     sizeof(double) * static_cast<std::size_t>(values_.size())) == 0;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_quoted = false;
    // a bare empty line carries no fields
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_quoted) {
          in_quotes = true;
          field_quoted = true;
        } else {
          field += c;
        }
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_quoted = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field at end of input");
  if (!field.empty() || field_quoted || !record.empty()) end_record();
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Dataset load_csv(std::string_view text, const std::string& name, const CsvOptions& options) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw DataError("'" + name + "': empty CSV input");
  const auto& header = records.front();
  const std::size_t width = header.size();
  const std::size_t n = records.size() - 1;
  if (n == 0) throw DataError("'" + name + "': CSV has a header but no data rows");

  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw DataError("'" + name + "': row " + std::to_string(r) + " has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(width));
    }
  }

  std::vector<std::string> labels;
  std::vector<std::string> skipped;
  std::vector<std::size_t> kept;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(width));

  for (std::size_t j = 0; j < width; ++j) {
    std::optional<std::size_t> first_bad;
    std::size_t parsed = 0;
    const auto col = static_cast<Eigen::Index>(kept.size());
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto v = parse_double(records[r][j]);
      if (v) {
        values(static_cast<Eigen::Index>(r - 1), col) = *v;
        ++parsed;
        if (!std::isfinite(*v)) {
          throw DataError("'" + name + "': non-finite value at row " + std::to_string(r) +
                          ", column " + header[j]);
        }
      } else if (!first_bad) {
        first_bad = r;
      }
    }
    if (first_bad) {
      if (options.non_numeric == NonNumeric::skip && parsed == 0) {
        skipped.push_back(header[j]);
        continue;
      }
      throw DataError("'" + name + "': cannot parse '" + records[*first_bad][j] +
                      "' as a number at row " + std::to_string(*first_bad) + ", column " +
                      header[j]);
    }
    kept.push_back(j);
    labels.push_back(header[j]);
  }

  values.conservativeResize(Eigen::NoChange, static_cast<Eigen::Index>(kept.size()));
  return Dataset(name, std::move(labels), std::move(values), std::move(skipped));
}

Dataset load_csv(std::istream& in, const std::string& name, const CsvOptions& options) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_csv(text, name, options);
}

Dataset load_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string name = path;
  if (const auto slash = name.find_last_of("/\\"); slash != std::string::npos) {
    name.erase(0, slash + 1);
  }
  if (const auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name.erase(dot);
  return load_csv(in, name, options);
}

Eigen::Ref<const Eigen::VectorXd> column(const Dataset& ds, std::string_view label) {
  return ds.values().col(ds.index_of(label));
}

ColumnStats summarize(std::string label, Eigen::Ref<const Eigen::VectorXd> values) {
  if (values.size() < 1) throw DataError("cannot summarize empty column '" + label + "'");
  ColumnStats s;
  s.label = std::move(label);
  s.n = values.size();
  s.min = values.minCoeff();
  s.max = values.maxCoeff();
  s.mean = mean(values);
  s.variance_pop = variance_pop(values);
  if (s.n >= 2) s.variance_sample = variance_sample(values);
  return s;
}

ColumnStats summarize(const Dataset& ds, std::string_view label) {
  return summarize(std::string(label), column(ds, label));
}

std::string export_csv(const Dataset& ds) {
  std::string out;
  for (std::size_t j = 0; j < ds.labels().size(); ++j) {
    if (j) out += ',';
    out += csv_escape(ds.labels()[j]);
  }
  out += '\n';
  const auto& v = ds.values();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (j) out += ',';
      out += format_shortest(v(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace corraudit

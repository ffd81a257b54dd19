#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace corraudit {

/// Immutable column-major numeric table with unique, non-empty labels and
/// finite values.
class Dataset {
public:
  Dataset(std::string name, std::vector<std::string> labels, Eigen::MatrixXd values,
          std::vector<std::string> skipped = {});

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Labels of non-numeric columns dropped at ingestion.
  const std::vector<std::string>& skipped() const { return skipped_; }
  const Eigen::MatrixXd& values() const { return values_; }

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  bool has(std::string_view label) const;
  Eigen::Index index_of(std::string_view label) const;

  /// Bitwise equality of labels and every cell; the name is ignored.
  bool same_contents(const Dataset& other) const;

private:
  std::string name_;
  std::vector<std::string> labels_;
  Eigen::MatrixXd values_;
  std::vector<std::string> skipped_;
};

struct ColumnStats {
  std::string label;
  double min;
  double mean;
  double max;
  double variance_pop;
  /// Absent for n < 2.
  std::optional<double> variance_sample;
  Eigen::Index n;
};

enum class NonNumeric {
  reject,  ///< any unparsable cell is a data error
  skip,    ///< drop columns in which no cell parses as a number
};

struct CsvOptions {
  NonNumeric non_numeric = NonNumeric::reject;
};

Dataset load_csv(std::string_view text, const std::string& name, const CsvOptions& options = {});
Dataset load_csv(std::istream& in, const std::string& name, const CsvOptions& options = {});
Dataset load_csv_file(const std::string& path, const CsvOptions& options = {});

Eigen::Ref<const Eigen::VectorXd> column(const Dataset& ds, std::string_view label);

ColumnStats summarize(const Dataset& ds, std::string_view label);
ColumnStats summarize(std::string label, Eigen::Ref<const Eigen::VectorXd> values);

/// Header plus one row per observation; numbers in shortest round-trip form.
std::string export_csv(const Dataset& ds);

/// Splits CSV text into rows of fields (RFC 4180 quoting, CRLF tolerant,
/// trailing blank lines ignored).
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

/// Quotes a field when it contains a delimiter, quote, or line break.
std::string csv_escape(std::string_view field);

}  // namespace corraudit

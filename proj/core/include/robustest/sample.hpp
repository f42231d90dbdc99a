#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace robustest {

/// Ordered list of finite reals, n >= 1. Validated once at construction.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  double mean() const noexcept;
  /// Unbiased variance (divisor n - 1); zero for n == 1.
  double variance() const noexcept;
  double min() const noexcept;
  double max() const noexcept;
  /// Midpoint convention for even sizes.
  double median() const;

  std::vector<double> sorted() const;

 private:
  std::vector<double> values_;
};

/// Bivariate observations (x_i, y_i), both margins of the same length n >= 2.
class PairedSample {
 public:
  PairedSample(Sample x, Sample y);
  PairedSample(std::vector<double> x, std::vector<double> y);

  std::size_t size() const noexcept { return x_.size(); }
  const Sample& x() const noexcept { return x_; }
  const Sample& y() const noexcept { return y_; }

  /// D_i = y_i - x_i.
  Sample differences() const;

 private:
  Sample x_;
  Sample y_;
};

/// Real values tagged with a categorical level. At least two levels, each
/// with at least two observations. Levels are kept in order of first
/// appearance.
class GroupedSample {
 public:
  GroupedSample(Sample values, std::vector<std::string> labels);
  GroupedSample(std::vector<double> values, std::vector<std::string> labels);
  /// Fixed-design form: one Sample per level, labelled "1", "2", ...
  static GroupedSample from_groups(const std::vector<std::vector<double>>& groups);

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t level_count() const noexcept { return levels_.size(); }
  const Sample& values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& levels() const noexcept { return levels_; }
  const std::vector<std::size_t>& group_counts() const noexcept { return counts_; }

  /// Index into levels() for every observation.
  const std::vector<std::size_t>& level_index() const noexcept { return level_index_; }

  /// Values split by level, in levels() order.
  std::vector<Sample> groups() const;

 private:
  Sample values_;
  std::vector<std::string> labels_;
  std::vector<std::string> levels_;
  std::vector<std::size_t> level_index_;
  std::vector<std::size_t> counts_;
};

}  // namespace robustest

#include "robustest/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "robustest/errors.hpp"
#include "robustest/outcome.hpp"

namespace robustest {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InsufficientData("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("sample value at position " + std::to_string(i + 1) +
                        " is not finite");
    }
  }
}

double Sample::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double Sample::variance() const noexcept {
  const std::size_t n = values_.size();
  if (n < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return ss / static_cast<double>(n - 1);
}

double Sample::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Sample::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double Sample::median() const {
  std::vector<double> s = sorted();
  const std::size_t n = s.size();
  if (n % 2 == 1) return s[n / 2];
  return 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

std::vector<double> Sample::sorted() const {
  std::vector<double> s = values_;
  std::sort(s.begin(), s.end());
  return s;
}

PairedSample::PairedSample(Sample x, Sample y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw DomainError("paired sample margins differ in length (" +
                      std::to_string(x_.size()) + " vs " + std::to_string(y_.size()) + ")");
  }
  if (x_.size() < 2) throw InsufficientData("paired sample needs at least 2 pairs");
}

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y)
    : PairedSample(Sample(std::move(x)), Sample(std::move(y))) {}

Sample PairedSample::differences() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < size(); ++i) d[i] = y_[i] - x_[i];
  return Sample(std::move(d));
}

GroupedSample::GroupedSample(Sample values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (labels_.size() != values_.size()) {
    throw DomainError("grouped sample has " + std::to_string(values_.size()) +
                      " values but " + std::to_string(labels_.size()) + " labels");
  }
  std::unordered_map<std::string, std::size_t> index;
  level_index_.reserve(labels_.size());
  for (const auto& label : labels_) {
    auto [it, inserted] = index.try_emplace(label, levels_.size());
    if (inserted) {
      levels_.push_back(label);
      counts_.push_back(0);
    }
    ++counts_[it->second];
    level_index_.push_back(it->second);
  }
  if (levels_.size() < 2) throw InsufficientData("grouped sample needs at least 2 levels");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (counts_[k] < 2) {
      throw InsufficientData("level '" + levels_[k] + "' has fewer than 2 observations");
    }
  }
}

GroupedSample::GroupedSample(std::vector<double> values, std::vector<std::string> labels)
    : GroupedSample(Sample(std::move(values)), std::move(labels)) {}

GroupedSample GroupedSample::from_groups(const std::vector<std::vector<double>>& groups) {
  std::vector<double> values;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (double v : groups[k]) {
      values.push_back(v);
      labels.push_back(std::to_string(k + 1));
    }
  }
  if (values.empty()) throw InsufficientData("grouped sample is empty");
  return GroupedSample(std::move(values), std::move(labels));
}

std::vector<Sample> GroupedSample::groups() const {
  std::vector<std::vector<double>> split(levels_.size());
  for (std::size_t k = 0; k < levels_.size(); ++k) split[k].reserve(counts_[k]);
  for (std::size_t i = 0; i < values_.size(); ++i) split[level_index_[i]].push_back(values_[i]);
  std::vector<Sample> out;
  out.reserve(split.size());
  for (auto& g : split) out.emplace_back(std::move(g));
  return out;
}

double clamp_probability(double p) noexcept {
  if (std::isnan(p)) return 1.0;
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace robustest

#include "slicedw/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicedw/error.hpp"
#include "slicedw/sorting.hpp"

namespace slicedw {

Samples1d::Samples1d(std::vector<double> values, bool sorted)
    : values_(std::move(values)), sorted_(sorted) {
  if (values_.empty()) throw Error(ErrorCode::EmptyInput, "Samples1d needs at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidSample, "non-finite value at index " + std::to_string(i));
    }
  }
  if (sorted_ && !std::is_sorted(values_.begin(), values_.end())) {
    throw Error(ErrorCode::InvalidArgument, "values flagged sorted are not non-decreasing");
  }
}

void Samples1d::sort() {
  if (!sorted_) sort_doubles(values_);
  sorted_ = true;
}

EmpiricalDistribution::EmpiricalDistribution(std::size_t n, std::size_t dim, std::vector<double> data)
    : n_(n), dim_(dim), data_(std::move(data)) {
  if (n_ == 0 || dim_ == 0) {
    throw Error(ErrorCode::EmptyInput, "empirical distribution needs n >= 1 and d >= 1");
  }
  if (data_.size() != n_ * dim_) {
    throw Error(ErrorCode::DimMismatch, "data has " + std::to_string(data_.size()) +
                                            " entries, expected " + std::to_string(n_ * dim_));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw Error(ErrorCode::InvalidSample, "non-finite entry at row " + std::to_string(k / dim_) +
                                                ", column " + std::to_string(k % dim_));
    }
  }
}

EmpiricalDistribution EmpiricalDistribution::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no rows");
  const std::size_t d = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw Error(ErrorCode::DimMismatch, "row " + std::to_string(i) + " has " +
                                              std::to_string(rows[i].size()) + " columns, expected " +
                                              std::to_string(d));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return EmpiricalDistribution(rows.size(), d, std::move(data));
}

}  // namespace slicedw

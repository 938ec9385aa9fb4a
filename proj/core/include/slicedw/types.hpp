#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slicedw {

// Real-valued samples on the line. Construction rejects NaN/Inf.
class Samples1d {
 public:
  Samples1d() = default;
  explicit Samples1d(std::vector<double> values, bool sorted = false);

  std::size_t size() const noexcept { return values_.size(); }
  bool sorted() const noexcept { return sorted_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Sorts ascending and sets the sorted flag.
  void sort();

 private:
  std::vector<double> values_;
  bool sorted_ = false;
};

struct Gaussian1d {
  double mean = 0.0;
  double variance = 0.0;
};

// N(mean, sigma^2 I_d). sigma is a standard deviation.
struct IsoGaussian {
  std::vector<double> mean;
  double sigma = 0.0;

  std::size_t dim() const noexcept { return mean.size(); }
};

/// n samples in R^d with uniform weights 1/n, stored row-major (one row per
/// sample). All entries are finite and n, d >= 1.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  EmpiricalDistribution(std::size_t n, std::size_t dim, std::vector<double> data);

  static EmpiricalDistribution from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return data_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

  bool operator==(const EmpiricalDistribution&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

}  // namespace slicedw

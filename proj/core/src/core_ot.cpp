#include "slicedw/core_ot.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "slicedw/error.hpp"
#include "slicedw/summation.hpp"

namespace slicedw::ot {

Samples1d sort_in_place(Samples1d xs) {
  xs.sort();
  return xs;
}

double wasserstein_1d_pp_sorted(std::span<const double> x, std::span<const double> y, double p) {
  std::vector<double> scratch(x.size());
  return wasserstein_1d_pp_sorted(x, y, p, scratch);
}

double wasserstein_1d_pp_sorted(std::span<const double> x, std::span<const double> y, double p,
                                std::span<double> scratch) {
  const std::size_t n = x.size();
  const std::span<double> terms = scratch.first(n);
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = x[i] - y[i];
      terms[i] = diff * diff;
    }
  } else if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) terms[i] = std::abs(x[i] - y[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) terms[i] = std::pow(std::abs(x[i] - y[i]), p);
  }
  return pairwise_sum(terms) / static_cast<double>(n);
}

double wasserstein_1d_pp(const Samples1d& x, const Samples1d& y, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidOrder, "order p must be >= 1, got " + std::to_string(p));
  }
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "sample counts differ: " + std::to_string(x.size()) +
                                               " vs " + std::to_string(y.size()));
  }
  if (x.sorted() && y.sorted()) return wasserstein_1d_pp_sorted(x.values(), y.values(), p);
  const Samples1d xs = sort_in_place(x);
  const Samples1d ys = sort_in_place(y);
  return wasserstein_1d_pp_sorted(xs.values(), ys.values(), p);
}

namespace {
void check_gaussian(double mean, double variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance) || variance < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "Gaussian needs finite mean and variance >= 0");
  }
}

void check_iso(const IsoGaussian& g) {
  if (g.dim() == 0) throw Error(ErrorCode::InvalidArgument, "isotropic Gaussian needs dim >= 1");
  if (!std::isfinite(g.sigma) || g.sigma < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be finite and >= 0");
  }
  for (double m : g.mean) {
    if (!std::isfinite(m)) throw Error(ErrorCode::InvalidArgument, "non-finite mean entry");
  }
}

double mean_gap_sq(const IsoGaussian& a, const IsoGaussian& b) {
  check_iso(a);
  check_iso(b);
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch, "dimensions differ: " + std::to_string(a.dim()) + " vs " +
                                            std::to_string(b.dim()));
  }
  std::vector<double> sq(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const double diff = a.mean[j] - b.mean[j];
    sq[j] = diff * diff;
  }
  return pairwise_sum(sq);
}
}  // namespace

double w2_gaussian_1d(const Gaussian1d& a, const Gaussian1d& b) {
  check_gaussian(a.mean, a.variance);
  check_gaussian(b.mean, b.variance);
  const double dm = a.mean - b.mean;
  const double ds = std::sqrt(a.variance) - std::sqrt(b.variance);
  return dm * dm + ds * ds;
}

double w2_gaussian_iso(const IsoGaussian& a, const IsoGaussian& b) {
  const double gap = mean_gap_sq(a, b);
  const double ds = a.sigma - b.sigma;
  return gap + static_cast<double>(a.dim()) * ds * ds;
}

double sw2_gaussian_iso_closed(const IsoGaussian& a, const IsoGaussian& b) {
  const double gap = mean_gap_sq(a, b);
  const double ds = a.sigma - b.sigma;
  return gap / static_cast<double>(a.dim()) + ds * ds;
}

}  // namespace slicedw::ot

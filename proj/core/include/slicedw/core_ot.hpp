#pragma once

#include <span>

#include "slicedw/types.hpp"

// Exact Wasserstein distances where closed forms exist.
namespace slicedw::ot {

Samples1d sort_in_place(Samples1d xs);

/// W_p^p between two equal-size empirical measures on the line,
/// n^{-1} sum_i |x_(i) - y_(i)|^p. Inputs need not be sorted.
/// Throws LengthMismatch for unequal sizes and InvalidOrder for p < 1.
double wasserstein_1d_pp(const Samples1d& x, const Samples1d& y, double p);

// Same as above on pre-sorted spans; no validation. Hot loop of the
// Monte Carlo estimators.
double wasserstein_1d_pp_sorted(std::span<const double> x, std::span<const double> y, double p);
// `scratch` must hold at least x.size() values.
double wasserstein_1d_pp_sorted(std::span<const double> x, std::span<const double> y, double p,
                                std::span<double> scratch);

double w2_gaussian_1d(const Gaussian1d& a, const Gaussian1d& b);

// ||m_a - m_b||^2 + d (sigma_a - sigma_b)^2
double w2_gaussian_iso(const IsoGaussian& a, const IsoGaussian& b);

// SW_2^2 between isotropic Gaussians: ||m_a - m_b||^2 / d + (sigma_a - sigma_b)^2
double sw2_gaussian_iso_closed(const IsoGaussian& a, const IsoGaussian& b);

}  // namespace slicedw::ot

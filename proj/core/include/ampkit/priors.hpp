#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>

#include "ampkit/xforms.hpp"

namespace ampkit {

/// Posterior mean and variance of one signal component.
template <class Scalar>
struct DenoiserOut {
  Scalar a{};
  double v = 0.0;
};

/// Gauss-Bernoulli prior: zero with probability 1-rho, otherwise Gaussian.
/// The complex variant has jointly sparse real/imaginary parts (same support,
/// independent values, each of variance sigma2), and its posterior variance
/// convention is per real component, i.e. half the total complex variance.
template <class Scalar>
struct GaussBernoulli {
  static_assert(std::is_same_v<Scalar, double> || std::is_same_v<Scalar, cplx>);
  using scalar_type = Scalar;
  static constexpr bool is_complex = std::is_same_v<Scalar, cplx>;

  double rho = 0.1;
  Scalar xbar{};
  double sigma2 = 1.0;

  Scalar init_mean() const { return Scalar{}; }
  /// Starting value for the per-component variance estimate.
  double init_variance() const {
    const double mean_sq = [&] {
      if constexpr (is_complex) return std::norm(xbar) / 2.0;
      else return xbar * xbar;
    }();
    return rho * sigma2 + rho * mean_sq;
  }

  DenoiserOut<Scalar> denoise_one(double Sigma2, Scalar R) const;
  void denoise(std::span<const double> Sigma2, std::span<const Scalar> R,
               std::span<Scalar> a, std::span<double> v) const;
};

using GaussBernoulliReal = GaussBernoulli<double>;
using GaussBernoulliComplex = GaussBernoulli<cplx>;

/// Section-support prior of superposition codes: the signal is L sections of
/// size B, each exactly one-hot.
struct SectionPrior {
  using scalar_type = double;
  static constexpr bool is_complex = false;

  std::size_t sections = 0;      // L
  std::size_t section_size = 0;  // B

  double init_mean() const {
    return 1.0 / static_cast<double>(section_size);
  }
  double init_variance() const {
    const double inv_b = 1.0 / static_cast<double>(section_size);
    return inv_b * (1.0 - inv_b);
  }

  void denoise(std::span<const double> Sigma2, std::span<const double> R,
               std::span<double> a, std::span<double> v) const;
};

}  // namespace ampkit

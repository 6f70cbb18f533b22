#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ampkit/priors.hpp"

namespace ampkit {

/// Recipe for a random Gauss-Bernoulli test signal.
template <class Scalar>
struct SignalSpec {
  std::size_t n = 0;
  GaussBernoulli<Scalar> prior;
  std::uint64_t seed = 0;
};

/// Draws the signal: each component is zero with probability 1-rho, else
/// Gaussian. Complex components have joint support with independent real and
/// imaginary parts, each of variance sigma2.
template <class Scalar>
std::vector<Scalar> generate_gb(const SignalSpec<Scalar>& spec);

/// Mean squared error E = (1/N) sum |a_i - x_i|^2.
double mse(std::span<const double> a, std::span<const double> x);
double mse(std::span<const cplx> a, std::span<const cplx> x);

/// Per-block MSE over L_c equal-width blocks; the mean over blocks equals
/// mse(a, x).
std::vector<double> blockwise_mse(std::span<const double> a,
                                  std::span<const double> x,
                                  std::size_t block_count);
std::vector<double> blockwise_mse(std::span<const cplx> a,
                                  std::span<const cplx> x,
                                  std::size_t block_count);

/// Signal file format: one JSON header line followed by raw little-endian
/// doubles (2 per component for complex signals).
void save_signal(const std::string& path, std::span<const double> x);
void save_signal(const std::string& path, std::span<const cplx> x);
std::vector<double> load_signal_real(const std::string& path);
std::vector<cplx> load_signal_complex(const std::string& path);

}  // namespace ampkit

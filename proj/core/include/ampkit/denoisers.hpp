#pragma once

#include <span>

#include "ampkit/priors.hpp"

namespace ampkit {

/// Posterior mean/variance for the real Gauss-Bernoulli prior.
DenoiserOut<double> gb_real(double Sigma2, double R,
                            const GaussBernoulliReal& prior);

/// Posterior mean/variance for the complex (jointly sparse) prior; the
/// returned variance is per real component (the printed factor-2 convention).
DenoiserOut<cplx> gb_complex(double Sigma2, cplx R,
                             const GaussBernoulliComplex& prior);

/// One section of the superposition-code denoiser:
///   a_i = exp(-(1-2 R_i)/(2 Sigma2_i)) / sum_j exp(-(1-2 R_j)/(2 Sigma2_j)),
///   v_i = a_i (1 - a_i).
/// Outputs are a probability vector over the B one-hot candidates.
void section_denoise(std::span<const double> Sigma2, std::span<const double> R,
                     std::span<double> a, std::span<double> v);

/// Brute-force posterior statistics, independent of the closed forms above:
/// adaptive numerical integration for Gauss-Bernoulli priors, exhaustive
/// enumeration of the B one-hot candidates for the section prior. Small
/// problems only; used for verification.
DenoiserOut<double> posterior_oracle(const GaussBernoulliReal& prior,
                                     double Sigma2, double R);
DenoiserOut<cplx> posterior_oracle(const GaussBernoulliComplex& prior,
                                   double Sigma2, cplx R);
void posterior_oracle_section(std::span<const double> Sigma2,
                              std::span<const double> R, std::span<double> a,
                              std::span<double> v);

}  // namespace ampkit

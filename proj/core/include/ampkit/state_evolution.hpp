#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ampkit/ensemble.hpp"
#include "ampkit/priors.hpp"

namespace ampkit {

/// Gauss-Hermite rule in physicists' convention: integral of exp(-x^2) f(x)
/// is approximated by sum w_i f(x_i). Rules are cached per node count.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite(int node_count);

/// Integration settings for the state-evolution expectations. Gaussian
/// dimensions use Gauss-Hermite (1-D for the real prior, a 2-D tensor grid
/// for the complex one); the B-dimensional section expectation is estimated
/// by fixed-seed Monte Carlo.
struct SeOptions {
  int quad_nodes = 61;
  std::size_t mc_samples = 200000;
  std::uint64_t mc_seed = 20140915;
};

/// Expected posterior variance (MMSE per component) of the denoiser at
/// effective noise Sigma2, with pseudo-data R = x + sqrt(Sigma2) z. For the
/// complex prior both E and Sigma2 follow the per-real-component convention.
/// Sigma2 = 0 returns 0 exactly.
double se_mmse(const GaussBernoulliReal& prior, double Sigma2,
               const SeOptions& opts = {});
double se_mmse(const GaussBernoulliComplex& prior, double Sigma2,
               const SeOptions& opts = {});
double se_mmse(const SectionPrior& prior, double Sigma2,
               const SeOptions& opts = {});

/// One step of the scalar recursion: E' = mmse((Delta + E)/alpha).
template <class Prior>
double se_step_scalar(double E, const Prior& prior, double delta, double alpha,
                      const SeOptions& opts = {}) {
  const double noise = delta + E;
  if (noise <= 0.0) return 0.0;
  return se_mmse(prior, noise / alpha, opts);
}

/// One step of the block-coupled recursion. With n_p = 1/L_c and alpha_q the
/// rate of block row q,
///   Sigma_p^2 = [ n_p sum_q alpha_q J_qp / (Delta + sum_r n_r J_qr E_r) ]^-1
/// and each block then takes a scalar MMSE step at its own Sigma_p^2.
/// Reduces exactly to se_step_scalar when L_c = L_r = 1.
template <class Prior>
std::vector<double> se_step_coupled(std::span<const double> E,
                                    const Prior& prior, double delta,
                                    const CouplingEnsemble& ensemble,
                                    const SeOptions& opts = {});

struct SeFixedPoint {
  double e_star = 0.0;            // max over blocks in the coupled case
  std::vector<double> e_blocks;   // empty for the scalar recursion
  int iterations = 0;
  bool converged = false;
};

/// Iterates the scalar recursion from E0 (default: the prior variance) until
/// the step change drops below tol. Non-convergence is reported, not thrown.
template <class Prior>
SeFixedPoint se_fixed_point(const Prior& prior, double delta, double alpha,
                            double e0 = -1.0, double tol = 1e-12,
                            int max_iter = 10000, const SeOptions& opts = {});

/// Coupled analogue; E0 applies to every block.
template <class Prior>
SeFixedPoint se_fixed_point_coupled(const Prior& prior, double delta,
                                    const CouplingEnsemble& ensemble,
                                    double e0 = -1.0, double tol = 1e-12,
                                    int max_iter = 10000,
                                    const SeOptions& opts = {});

/// Locates the uncoupled recovery transition by bisection on alpha. Success
/// means the fixed point falls below 1e-7. The bracket [alpha_lo, alpha_hi]
/// must straddle the transition (fail at lo, succeed at hi); the returned
/// value is the bracket midpoint once its width is below 1e-4.
template <class Prior>
double find_bp_threshold(const Prior& prior, double delta, double alpha_lo,
                         double alpha_hi, const SeOptions& opts = {});

}  // namespace ampkit

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ampkit {

/// Parameters of the spatially coupled block ensemble. The block grid is
/// L_r x L_c; block (r,c) carries element variance
///   J_rc = 1   for c <= r <= c+w   (diagonal plus w sub-diagonal blocks)
///   J_rc = J   for c == r+1        (the single super-diagonal block)
///   J_rc = 0   elsewhere.
/// Blocks whose indices fall outside the grid are dropped.
///
/// The overall measurement rate alpha = M/N splits into a seed rate
/// alpha_seed = alpha*beta_seed for the first block row and
/// alpha_rest = alpha*(L_c - beta_seed)/(L_r - 1) for the others.
struct CouplingEnsemble {
  std::uint32_t block_cols = 1;  // L_c
  std::uint32_t block_rows = 1;  // L_r
  std::uint32_t window = 0;      // w, count of sub-diagonal unit blocks
  double sqrt_j = 1.0;           // amplitude of the super-diagonal block
  double alpha = 1.0;            // M/N
  double beta_seed = 1.0;        // seed rate multiplier

  /// The trivial 1x1 ensemble of a full (uncoupled) operator.
  static CouplingEnsemble full(double alpha_) {
    CouplingEnsemble e;
    e.alpha = alpha_;
    return e;
  }

  bool is_coupled() const noexcept { return block_rows > 1 || block_cols > 1; }

  /// Element variance J_rc of block (r, c), zero-based indices.
  double block_variance(std::uint32_t r, std::uint32_t c) const noexcept {
    if (c <= r && r <= c + window) return 1.0;
    if (c == r + 1) return sqrt_j * sqrt_j;
    return 0.0;
  }
};

/// Rates and integer row counts for a signal of length n.
struct RatePlan {
  double alpha_seed = 0.0;
  double alpha_rest = 0.0;
  std::vector<std::size_t> row_counts;  // one entry per block row
  std::size_t total_rows = 0;           // M
};

/// Splits alpha into (alpha_seed, alpha_rest) and allocates integer row
/// counts: ceil for the seed row, floor for bulk rows, with the last bulk row
/// absorbing the remainder so that M = round(alpha*n) exactly.
/// Throws ConstructionError for infeasible parameters (alpha_rest <= 0,
/// alpha_seed > 1, row counts outside [1, n/L_c], ...).
RatePlan derive_rates(const CouplingEnsemble& ensemble, std::size_t n);

/// Just the (alpha_seed, alpha_rest) split, independent of the signal size.
std::pair<double, double> alpha_split(const CouplingEnsemble& ensemble);

/// Measurement rate of block row r: alpha_seed for r = 0, alpha_rest after.
double block_row_rate(const CouplingEnsemble& ensemble, std::uint32_t r);

}  // namespace ampkit

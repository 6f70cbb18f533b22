#include "ampkit/ensemble.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "ampkit/errors.hpp"

namespace ampkit {

namespace {

void validate(const CouplingEnsemble& e, std::size_t n) {
  if (e.block_cols < 1 || e.block_rows < 1) {
    throw ConstructionError("ensemble: L_c and L_r must be >= 1");
  }
  if (!(e.alpha > 0.0) || e.alpha > 1.0) {
    throw ConstructionError("ensemble: alpha must lie in (0, 1], got " +
                            std::to_string(e.alpha));
  }
  if (e.beta_seed < 1.0) {
    throw ConstructionError("ensemble: beta_seed must be >= 1");
  }
  if (!(e.sqrt_j > 0.0)) {
    throw ConstructionError("ensemble: sqrt(J) must be > 0");
  }
  if (n == 0 || n % e.block_cols != 0) {
    throw ConstructionError("ensemble: n = " + std::to_string(n) +
                            " is not divisible by L_c = " +
                            std::to_string(e.block_cols));
  }
  if (e.block_rows == 1 && e.beta_seed != 1.0) {
    throw ConstructionError("ensemble: L_r = 1 requires beta_seed = 1");
  }
}

}  // namespace

std::pair<double, double> alpha_split(const CouplingEnsemble& e) {
  if (e.block_rows == 1) {
    if (e.beta_seed != 1.0) {
      throw ConstructionError("ensemble: L_r = 1 requires beta_seed = 1");
    }
    return {e.alpha, e.alpha};
  }
  const double alpha_seed = e.alpha * e.beta_seed;
  const double alpha_rest =
      e.alpha * (e.block_cols - e.beta_seed) / (e.block_rows - 1);
  if (!(alpha_rest > 0.0)) {
    throw ConstructionError(
        "ensemble: alpha_rest = " + std::to_string(alpha_rest) +
        " <= 0 (beta_seed too large for this grid)");
  }
  return {alpha_seed, alpha_rest};
}

double block_row_rate(const CouplingEnsemble& e, std::uint32_t r) {
  const auto [seed, rest] = alpha_split(e);
  return r == 0 ? seed : rest;
}

RatePlan derive_rates(const CouplingEnsemble& e, std::size_t n) {
  validate(e, n);
  const double n_c = static_cast<double>(n) / e.block_cols;
  const auto total =
      static_cast<std::size_t>(std::llround(e.alpha * static_cast<double>(n)));

  RatePlan plan;
  std::tie(plan.alpha_seed, plan.alpha_rest) = alpha_split(e);
  if (e.block_rows == 1) {
    plan.row_counts.assign(1, total);
    plan.total_rows = total;
  } else {
    if (plan.alpha_seed > 1.0) {
      throw ConstructionError(
          "ensemble: alpha_seed = " + std::to_string(plan.alpha_seed) +
          " > 1, seed block would need more modes than columns");
    }
    const auto seed_rows =
        static_cast<std::size_t>(std::ceil(plan.alpha_seed * n_c));
    const auto bulk_rows =
        static_cast<std::size_t>(std::floor(plan.alpha_rest * n_c));
    plan.row_counts.assign(e.block_rows, bulk_rows);
    plan.row_counts.front() = seed_rows;
    const std::size_t allocated =
        seed_rows + (e.block_rows - 2) * bulk_rows;
    if (allocated >= total) {
      throw ConstructionError("ensemble: row rounding leaves no rows for the "
                              "final block row");
    }
    plan.row_counts.back() = total - allocated;
    plan.total_rows = total;
  }

  const auto n_c_int = static_cast<std::size_t>(n_c);
  for (std::size_t rows : plan.row_counts) {
    if (rows < 1 || rows > n_c_int) {
      throw ConstructionError(
          "ensemble: block row count " + std::to_string(rows) +
          " outside [1, " + std::to_string(n_c_int) + "]");
    }
  }
  return plan;
}

}  // namespace ampkit

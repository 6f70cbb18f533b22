#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ampkit/ensemble.hpp"
#include "ampkit/xforms.hpp"

namespace ampkit {

/// Explicit matrix produced by materialize(); row-major storage.
template <class Scalar>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  Scalar& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
};

/// Block-structured fast operator: an L_r x L_c grid of randomized
/// Hadamard/Fourier blocks following the coupling ensemble's variance
/// pattern. Every dense-equivalent entry of block (r,c) has squared
/// magnitude gain^2 * J_rc / N.
///
/// Exposes the four primitives the AMP recursion consumes: forward (O),
/// adjoint (O*), and their squared-magnitude counterparts (O~), which reduce
/// to per-block sums because |F_mu_i|^2 is constant inside a block.
///
/// Immutable after build; all apply methods are const and thread-safe.
template <class Scalar>
class StructuredOperator {
 public:
  using scalar_type = Scalar;
  static constexpr bool is_complex = !std::is_same_v<Scalar, double>;

  /// Deterministic construction from (ensemble, kind, n, master_seed).
  /// n must be divisible by L_c with a power-of-2 quotient. Hadamard pairs
  /// with real operators, Fourier with complex ones.
  static StructuredOperator build(const CouplingEnsemble& ensemble,
                                  TransformKind kind, std::size_t n,
                                  std::uint64_t master_seed, double gain = 1.0);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t block_cols() const noexcept { return ensemble_.block_cols; }
  std::size_t block_rows() const noexcept { return ensemble_.block_rows; }
  std::size_t block_width() const noexcept { return n_c_; }
  const CouplingEnsemble& ensemble() const noexcept { return ensemble_; }
  TransformKind kind() const noexcept { return kind_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }
  double gain() const noexcept { return gain_; }

  /// Measurement-row offsets per block row (size L_r + 1).
  std::span<const std::size_t> row_offsets() const noexcept {
    return row_offsets_;
  }

  /// out = F x
  void forward(std::span<const Scalar> x, std::span<Scalar> out) const;
  /// out = F^H f
  void adjoint(std::span<const Scalar> f, std::span<Scalar> out) const;
  /// out_mu = sum_i |F_mu_i|^2 v_i ; O(N + M), no transforms involved.
  void sq_forward(std::span<const double> v, std::span<double> out) const;
  /// out_i = sum_mu |F_mu_i|^2 u_mu
  void sq_adjoint(std::span<const double> u, std::span<double> out) const;

  std::vector<Scalar> forward(std::span<const Scalar> x) const;
  std::vector<Scalar> adjoint(std::span<const Scalar> f) const;
  std::vector<double> sq_forward(std::span<const double> v) const;
  std::vector<double> sq_adjoint(std::span<const double> u) const;

  /// Column-by-column application of forward to unit vectors. Guarded to
  /// rows*cols <= 2^26 entries.
  DenseMatrix<Scalar> materialize() const;

  /// JSON recipe (ensemble, kind, n, master_seed, gain); the operator itself
  /// is never serialized, reconstruction is deterministic.
  std::string descriptor_json() const;
  static StructuredOperator from_descriptor_json(const std::string& text);

 private:
  struct Block {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double coeff = 0.0;     // sqrt(J_rc) * global_scale
    double sq_coeff = 0.0;  // squared magnitude of one dense entry
    BlockRandomization rand;
  };

  CouplingEnsemble ensemble_;
  TransformKind kind_ = TransformKind::hadamard;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t n_c_ = 0;
  std::uint64_t master_seed_ = 0;
  double gain_ = 1.0;
  double global_scale_ = 1.0;  // gain / sqrt(L_c); entry^2 = J_rc*gs^2/n_c
  std::vector<std::size_t> row_offsets_;
  std::vector<Block> blocks_;
};

using RealOperator = StructuredOperator<double>;
using ComplexOperator = StructuredOperator<cplx>;

}  // namespace ampkit

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ampkit/structured_operator.hpp"

namespace ampkit {

/// Dense i.i.d. Gaussian measurement matrix with entry variance 1/n,
/// exposing the same four primitives as StructuredOperator. This is the
/// reference/benchmark path the fast operators are compared against; it is
/// not meant for production-size problems.
///
/// Entries are generated row by row from per-row seeds, so the matrix is a
/// pure function of (m, n, seed). Matrices up to `materialize_limit` entries
/// are stored in float32 (float storage is what defines the matrix in that
/// mode); larger ones are regenerated on every application ("streaming"),
/// which is slow but needs O(1) memory.
class DenseIidOperator {
 public:
  static constexpr std::size_t kDefaultMaterializeLimit = std::size_t{1} << 26;

  DenseIidOperator(std::size_t m, std::size_t n, std::uint64_t seed,
                   std::size_t materialize_limit = kDefaultMaterializeLimit,
                   unsigned threads = 1);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t block_cols() const noexcept { return 1; }
  bool streaming() const noexcept { return matrix_.empty(); }
  std::uint64_t seed() const noexcept { return seed_; }

  void forward(std::span<const double> x, std::span<double> out) const;
  void adjoint(std::span<const double> f, std::span<double> out) const;
  void sq_forward(std::span<const double> v, std::span<double> out) const;
  void sq_adjoint(std::span<const double> u, std::span<double> out) const;

  std::vector<double> forward(std::span<const double> x) const;
  std::vector<double> adjoint(std::span<const double> f) const;
  std::vector<double> sq_forward(std::span<const double> v) const;
  std::vector<double> sq_adjoint(std::span<const double> u) const;

  /// Entry (r, c) exactly as the apply paths see it.
  double entry(std::size_t r, std::size_t c) const;

 private:
  template <class RowFn>
  void for_each_row(RowFn&& fn) const;
  void fill_row(std::size_t row, std::span<double> buffer) const;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  unsigned threads_ = 1;
  std::vector<float> matrix_;  // row-major; empty in streaming mode
};

}  // namespace ampkit

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ampkit {

using cplx = std::complex<double>;

enum class TransformKind { hadamard, fourier };

/// In-place orthonormal Walsh-Hadamard transform. The dense equivalent has
/// entries +-1/sqrt(N), so the transform is its own inverse. Length must be
/// a power of two.
void fwht(std::span<double> x);

/// In-place unitary DFT (1/sqrt(N) on both directions). Power-of-two length.
void dft(std::span<cplx> x);

/// Inverse of dft; idft(dft(x)) == x.
void idft(std::span<cplx> x);

/// Per-block randomization of one transform block: a random subset of output
/// modes, plus random sign flips and a random permutation of input columns.
/// The dense equivalent is  S . T . diag(signs) . P  where T is the
/// orthonormal transform matrix, P permutes columns ((P e)_i = e[perm[i]]),
/// and S keeps the rows listed in `modes`.
struct BlockRandomization {
  std::vector<std::uint32_t> modes;        // distinct, size n_r, values < n_c
  std::vector<std::int8_t> signs;          // +-1 per column, size n_c
  std::vector<std::uint32_t> column_perm;  // bijection on [0, n_c)

  std::size_t n_c() const noexcept { return signs.size(); }
  std::size_t n_r() const noexcept { return modes.size(); }
};

/// Builds the randomization for block (row, col) of an operator grid with
/// l_c block columns. Fully determined by (master_seed, row, col): the RNG
/// stream id is row*l_c + col and the draw order is modes, signs, permutation.
BlockRandomization make_block_randomization(std::uint64_t master_seed,
                                            std::uint32_t block_row,
                                            std::uint32_t block_col,
                                            std::uint32_t l_c, std::size_t n_c,
                                            std::size_t n_r);

/// out = selected modes of FT(diag(signs) . P . e). `scratch` must have
/// length n_c; contents are clobbered. Hadamard blocks take real vectors,
/// Fourier blocks complex ones.
void subsample_apply(const BlockRandomization& rand, TransformKind kind,
                     std::span<const double> e, std::span<double> out,
                     std::span<double> scratch);
void subsample_apply(const BlockRandomization& rand, TransformKind kind,
                     std::span<const cplx> e, std::span<cplx> out,
                     std::span<cplx> scratch);

/// Conjugate-transpose of subsample_apply: scatter f onto the selected modes,
/// apply the inverse transform, then undo signs and permutation.
void subsample_adjoint(const BlockRandomization& rand, TransformKind kind,
                       std::span<const double> f, std::span<double> out,
                       std::span<double> scratch);
void subsample_adjoint(const BlockRandomization& rand, TransformKind kind,
                       std::span<const cplx> f, std::span<cplx> out,
                       std::span<cplx> scratch);

bool is_power_of_two(std::size_t n);

}  // namespace ampkit

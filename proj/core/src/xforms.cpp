#include "ampkit/xforms.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "ampkit/errors.hpp"
#include "ampkit/rng.hpp"

namespace ampkit {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

void require_pow2(std::size_t n, const char* who) {
  if (!is_power_of_two(n)) {
    throw SizeError(std::string(who) + ": length " + std::to_string(n) +
                    " is not a power of 2");
  }
}

// Unnormalized in-place butterfly pass, shared by both scalar types.
template <class T>
void wht_butterflies(std::span<T> x) {
  const std::size_t n = x.size();
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = x[j];
        const T b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
}

// Twiddle tables are shared per size; transforms of a given block size run
// many thousands of times inside one AMP solve.
const std::vector<cplx>& twiddles_for(std::size_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::size_t, std::unique_ptr<std::vector<cplx>>>
      cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    // Forward-direction roots exp(-2*pi*i*k/n) for k < n/2.
    auto table = std::make_unique<std::vector<cplx>>(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      (*table)[k] = cplx(std::cos(angle), std::sin(angle));
    }
    slot = std::move(table);
  }
  return *slot;
}

void bit_reverse_permute(std::span<cplx> x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
}

// Radix-2 Cooley-Tukey; conjugate=true runs the inverse direction.
// Applies no normalization.
void fft_radix2(std::span<cplx> x, bool conjugate) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  bit_reverse_permute(x);
  const auto& tw = twiddles_for(n);
  for (std::size_t len = 2; len <= n; len *= 2) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx w = tw[k * stride];
        if (conjugate) w = std::conj(w);
        const cplx u = x[i + k];
        const cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }
}

template <class T>
void scale_by(std::span<T> x, double s) {
  for (auto& v : x) v *= s;
}

}  // namespace

void fwht(std::span<double> x) {
  require_pow2(x.size(), "fwht");
  wht_butterflies(x);
  scale_by(x, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

void dft(std::span<cplx> x) {
  require_pow2(x.size(), "dft");
  fft_radix2(x, /*conjugate=*/false);
  scale_by(x, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

void idft(std::span<cplx> x) {
  require_pow2(x.size(), "idft");
  fft_radix2(x, /*conjugate=*/true);
  scale_by(x, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

BlockRandomization make_block_randomization(std::uint64_t master_seed,
                                            std::uint32_t block_row,
                                            std::uint32_t block_col,
                                            std::uint32_t l_c, std::size_t n_c,
                                            std::size_t n_r) {
  require_pow2(n_c, "make_block_randomization");
  if (n_r > n_c) {
    throw ConstructionError("block randomization: cannot select " +
                            std::to_string(n_r) + " distinct modes from " +
                            std::to_string(n_c));
  }
  const std::uint64_t stream_id =
      static_cast<std::uint64_t>(block_row) * l_c + block_col;
  Rng rng(derive_stream_seed(master_seed, stream_id));

  BlockRandomization rand;

  // Modes: partial Fisher-Yates over [0, n_c), keep the first n_r slots.
  std::vector<std::uint32_t> pool(n_c);
  for (std::size_t i = 0; i < n_c; ++i) pool[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n_r; ++i) {
    const std::size_t j = i + rng.uniform_below(n_c - i);
    std::swap(pool[i], pool[j]);
  }
  rand.modes.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_r));

  rand.signs.resize(n_c);
  for (std::size_t i = 0; i < n_c; ++i) rand.signs[i] = rng.coin() ? 1 : -1;

  // Column permutation: full Fisher-Yates shuffle of the identity.
  rand.column_perm.resize(n_c);
  for (std::size_t i = 0; i < n_c; ++i)
    rand.column_perm[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n_c; i > 1; --i) {
    const std::size_t j = rng.uniform_below(i);
    std::swap(rand.column_perm[i - 1], rand.column_perm[j]);
  }
  return rand;
}

namespace {

template <class T>
void apply_impl(const BlockRandomization& rand, TransformKind kind,
                std::span<const T> e, std::span<T> out, std::span<T> scratch) {
  const std::size_t n_c = rand.n_c();
  if (e.size() != n_c || scratch.size() != n_c || out.size() != rand.n_r()) {
    throw SizeError("subsample_apply: vector lengths do not match block");
  }
  for (std::size_t i = 0; i < n_c; ++i) {
    scratch[i] = e[rand.column_perm[i]] * static_cast<double>(rand.signs[i]);
  }
  if constexpr (std::is_same_v<T, double>) {
    (void)kind;
    fwht(scratch);
  } else {
    dft(scratch);
  }
  for (std::size_t g = 0; g < rand.n_r(); ++g) out[g] = scratch[rand.modes[g]];
}

template <class T>
void adjoint_impl(const BlockRandomization& rand, TransformKind kind,
                  std::span<const T> f, std::span<T> out,
                  std::span<T> scratch) {
  const std::size_t n_c = rand.n_c();
  if (f.size() != rand.n_r() || scratch.size() != n_c || out.size() != n_c) {
    throw SizeError("subsample_adjoint: vector lengths do not match block");
  }
  std::fill(scratch.begin(), scratch.end(), T{});
  for (std::size_t g = 0; g < rand.n_r(); ++g) scratch[rand.modes[g]] = f[g];
  if constexpr (std::is_same_v<T, double>) {
    (void)kind;
    fwht(scratch);
  } else {
    idft(scratch);
  }
  // column_perm is a bijection, so every output slot is written exactly once.
  for (std::size_t i = 0; i < n_c; ++i) {
    out[rand.column_perm[i]] = scratch[i] * static_cast<double>(rand.signs[i]);
  }
}

void require_kind(TransformKind kind, TransformKind expected, const char* who) {
  if (kind != expected) {
    throw DomainError(std::string(who) +
                      ": transform kind does not match the scalar type "
                      "(hadamard is real, fourier is complex)");
  }
}

}  // namespace

void subsample_apply(const BlockRandomization& rand, TransformKind kind,
                     std::span<const double> e, std::span<double> out,
                     std::span<double> scratch) {
  require_kind(kind, TransformKind::hadamard, "subsample_apply");
  apply_impl<double>(rand, kind, e, out, scratch);
}

void subsample_apply(const BlockRandomization& rand, TransformKind kind,
                     std::span<const cplx> e, std::span<cplx> out,
                     std::span<cplx> scratch) {
  require_kind(kind, TransformKind::fourier, "subsample_apply");
  apply_impl<cplx>(rand, kind, e, out, scratch);
}

void subsample_adjoint(const BlockRandomization& rand, TransformKind kind,
                       std::span<const double> f, std::span<double> out,
                       std::span<double> scratch) {
  require_kind(kind, TransformKind::hadamard, "subsample_adjoint");
  adjoint_impl<double>(rand, kind, f, out, scratch);
}

void subsample_adjoint(const BlockRandomization& rand, TransformKind kind,
                       std::span<const cplx> f, std::span<cplx> out,
                       std::span<cplx> scratch) {
  require_kind(kind, TransformKind::fourier, "subsample_adjoint");
  adjoint_impl<cplx>(rand, kind, f, out, scratch);
}

}  // namespace ampkit

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ampkit/errors.hpp"
#include "ampkit/xforms.hpp"
#include "test_helpers.hpp"

using namespace ampkit;
using testutil::dense_block;
using testutil::dense_fourier;
using testutil::dense_hadamard;

TEST_SUITE("xforms") {

TEST_CASE("fwht maps a delta to the constant row") {
  std::vector<double> x{1.0, 0.0, 0.0, 0.0};
  fwht(x);
  for (double v : x) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("fwht is involutive") {
  auto x = testutil::random_real_vector(32, 11);
  auto original = x;
  fwht(x);
  fwht(x);
  CHECK(testutil::max_abs_diff(x, original) < 1e-12);
}

TEST_CASE("fwht matches the explicit +-1/sqrt(N) matrix") {
  const std::size_t n = 8;
  const auto h = dense_hadamard(n);
  const auto x = testutil::random_real_vector(n, 22);
  std::vector<double> expected(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) expected[i] += h[i][j] * x[j];
  }
  auto fast = x;
  fwht(fast);
  CHECK(testutil::max_abs_diff(fast, expected) < 1e-12);
}

TEST_CASE("fwht rejects non-power-of-2 lengths") {
  std::vector<double> x(6, 0.0);
  CHECK_THROWS_AS(fwht(x), SizeError);
}

TEST_CASE("dft maps a delta to the constant vector") {
  std::vector<cplx> x{1.0, 0.0, 0.0, 0.0};
  dft(x);
  for (const cplx& v : x) {
    CHECK(std::abs(v - cplx(0.5, 0.0)) < 1e-14);
  }
}

TEST_CASE("idft inverts dft") {
  auto x = testutil::random_complex_vector(64, 33);
  auto original = x;
  dft(x);
  idft(x);
  CHECK(testutil::max_abs_diff(x, original) < 1e-12);
}

TEST_CASE("dft matches the dense unitary DFT matrix") {
  const std::size_t n = 16;
  const auto w = dense_fourier(n);
  const auto x = testutil::random_complex_vector(n, 44);
  std::vector<cplx> expected(n, cplx{});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) expected[k] += w[k][j] * x[j];
  }
  auto fast = x;
  dft(fast);
  CHECK(testutil::max_abs_diff(fast, expected) < 1e-12);
}

TEST_CASE("block randomization is deterministic and well formed") {
  const auto a = make_block_randomization(123, 2, 3, 8, 64, 20);
  const auto b = make_block_randomization(123, 2, 3, 8, 64, 20);
  CHECK(a.modes == b.modes);
  CHECK(a.signs == b.signs);
  CHECK(a.column_perm == b.column_perm);

  const auto other = make_block_randomization(123, 2, 4, 8, 64, 20);
  CHECK(a.modes != other.modes);

  std::vector<bool> seen(64, false);
  for (auto m : a.modes) {
    CHECK(m < 64);
    CHECK(!seen[m]);
    seen[m] = true;
  }
  std::vector<bool> hit(64, false);
  for (auto p : a.column_perm) hit[p] = true;
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }));
  for (auto s : a.signs) CHECK((s == 1 || s == -1));
}

TEST_CASE("identity randomization reproduces the full transform") {
  const std::size_t n = 16;
  BlockRandomization rand;
  rand.modes.resize(n);
  std::iota(rand.modes.begin(), rand.modes.end(), 0);
  rand.signs.assign(n, 1);
  rand.column_perm.resize(n);
  std::iota(rand.column_perm.begin(), rand.column_perm.end(), 0);

  const auto e = testutil::random_real_vector(n, 5);
  std::vector<double> out(n), scratch(n);
  subsample_apply(rand, TransformKind::hadamard, e, out, scratch);
  auto direct = e;
  fwht(direct);
  CHECK(testutil::max_abs_diff(out, direct) < 1e-14);
}

TEST_CASE("subsample_apply of zero is zero") {
  const auto rand = make_block_randomization(9, 0, 0, 1, 32, 12);
  std::vector<double> e(32, 0.0), out(12, 1.0), scratch(32);
  subsample_apply(rand, TransformKind::hadamard, e, out, scratch);
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("subsample_apply matches the materialized dense block") {
  const std::size_t n_c = 64, n_r = 24;
  const auto rand = make_block_randomization(77, 1, 2, 4, n_c, n_r);

  SUBCASE("hadamard") {
    const auto block = dense_block(rand, dense_hadamard(n_c));
    const auto e = testutil::random_real_vector(n_c, 6);
    std::vector<double> expected(n_r, 0.0);
    for (std::size_t g = 0; g < n_r; ++g) {
      for (std::size_t i = 0; i < n_c; ++i) expected[g] += block[g][i] * e[i];
    }
    std::vector<double> out(n_r), scratch(n_c);
    subsample_apply(rand, TransformKind::hadamard, e, out, scratch);
    CHECK(testutil::max_abs_diff(out, expected) < 1e-12);
  }

  SUBCASE("fourier") {
    const auto block = dense_block(rand, dense_fourier(n_c));
    const auto e = testutil::random_complex_vector(n_c, 7);
    std::vector<cplx> expected(n_r, cplx{});
    for (std::size_t g = 0; g < n_r; ++g) {
      for (std::size_t i = 0; i < n_c; ++i) expected[g] += block[g][i] * e[i];
    }
    std::vector<cplx> out(n_r), scratch(n_c);
    subsample_apply(rand, TransformKind::fourier, e, out, scratch);
    CHECK(testutil::max_abs_diff(out, expected) < 1e-12);
  }
}

TEST_CASE("subsample_adjoint matches the dense conjugate transpose") {
  const std::size_t n_c = 64, n_r = 17;
  const auto rand = make_block_randomization(31, 0, 3, 8, n_c, n_r);

  SUBCASE("hadamard") {
    const auto block = dense_block(rand, dense_hadamard(n_c));
    const auto f = testutil::random_real_vector(n_r, 8);
    std::vector<double> expected(n_c, 0.0);
    for (std::size_t g = 0; g < n_r; ++g) {
      for (std::size_t i = 0; i < n_c; ++i) expected[i] += block[g][i] * f[g];
    }
    std::vector<double> out(n_c), scratch(n_c);
    subsample_adjoint(rand, TransformKind::hadamard, f, out, scratch);
    CHECK(testutil::max_abs_diff(out, expected) < 1e-12);
  }

  SUBCASE("fourier") {
    const auto block = dense_block(rand, dense_fourier(n_c));
    const auto f = testutil::random_complex_vector(n_r, 9);
    std::vector<cplx> expected(n_c, cplx{});
    for (std::size_t g = 0; g < n_r; ++g) {
      for (std::size_t i = 0; i < n_c; ++i) {
        expected[i] += std::conj(block[g][i]) * f[g];
      }
    }
    std::vector<cplx> out(n_c), scratch(n_c);
    subsample_adjoint(rand, TransformKind::fourier, f, out, scratch);
    CHECK(testutil::max_abs_diff(out, expected) < 1e-12);
  }
}

TEST_CASE("adjoint of zero is zero") {
  const auto rand = make_block_randomization(4, 0, 0, 1, 16, 5);
  std::vector<double> f(5, 0.0), out(16, 3.0), scratch(16);
  subsample_adjoint(rand, TransformKind::hadamard, f, out, scratch);
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("adjoint identity holds for randomized blocks") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const std::size_t n_c = 32, n_r = 11;
    const auto rand = make_block_randomization(trial, 0, 1, 2, n_c, n_r);
    const auto e = testutil::random_complex_vector(n_c, 100 + trial);
    const auto f = testutil::random_complex_vector(n_r, 200 + trial);
    std::vector<cplx> ae(n_r), atf(n_c), scratch(n_c);
    subsample_apply(rand, TransformKind::fourier, e, ae, scratch);
    subsample_adjoint(rand, TransformKind::fourier, f, atf, scratch);
    cplx lhs{}, rhs{};
    for (std::size_t g = 0; g < n_r; ++g) lhs += ae[g] * std::conj(f[g]);
    for (std::size_t i = 0; i < n_c; ++i) rhs += e[i] * std::conj(atf[i]);
    double norm_e = 0.0, norm_f = 0.0;
    for (const auto& v : e) norm_e += std::norm(v);
    for (const auto& v : f) norm_f += std::norm(v);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::sqrt(norm_e * norm_f));
  }
}

TEST_CASE("full blocks are isometries") {
  const std::size_t n_c = 64;
  const auto rand = make_block_randomization(3, 1, 1, 2, n_c, n_c);
  const auto e = testutil::random_real_vector(n_c, 10);
  std::vector<double> out(n_c), scratch(n_c);
  subsample_apply(rand, TransformKind::hadamard, e, out, scratch);
  double norm_in = 0.0, norm_out = 0.0;
  for (double v : e) norm_in += v * v;
  for (double v : out) norm_out += v * v;
  CHECK(std::sqrt(norm_out) ==
        doctest::Approx(std::sqrt(norm_in)).epsilon(1e-10));
}

TEST_CASE("kind and scalar type must agree") {
  const auto rand = make_block_randomization(1, 0, 0, 1, 8, 4);
  std::vector<double> e(8), out(4), scratch(8);
  CHECK_THROWS_AS(
      subsample_apply(rand, TransformKind::fourier, e, out, scratch),
      DomainError);
}

}  // TEST_SUITE

#include "ampkit/structured_operator.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "ampkit/errors.hpp"

namespace ampkit {

namespace {

void require_length(std::size_t got, std::size_t want, const char* who) {
  if (got != want) {
    throw SizeError(std::string(who) + ": expected length " +
                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

template <class Scalar>
StructuredOperator<Scalar> StructuredOperator<Scalar>::build(
    const CouplingEnsemble& ensemble, TransformKind kind, std::size_t n,
    std::uint64_t master_seed, double gain) {
  if constexpr (is_complex) {
    if (kind != TransformKind::fourier) {
      throw ConstructionError("complex operators require the Fourier kind");
    }
  } else {
    if (kind != TransformKind::hadamard) {
      throw ConstructionError("real operators require the Hadamard kind");
    }
  }
  RatePlan plan = derive_rates(ensemble, n);
  const std::size_t n_c = n / ensemble.block_cols;
  if (!is_power_of_two(n_c)) {
    throw ConstructionError("operator build: block width " +
                            std::to_string(n_c) + " is not a power of 2");
  }

  StructuredOperator op;
  op.ensemble_ = ensemble;
  op.kind_ = kind;
  op.n_ = n;
  op.m_ = plan.total_rows;
  op.n_c_ = n_c;
  op.master_seed_ = master_seed;
  op.gain_ = gain;
  // Blocks are orthonormal (entry^2 = 1/n_c); dividing by sqrt(L_c) pins the
  // dense-equivalent entry variance to J_rc/N, the convention under which the
  // uncoupled state evolution reads Sigma^2 = (Delta + E)/alpha.
  op.global_scale_ = gain / std::sqrt(static_cast<double>(ensemble.block_cols));

  op.row_offsets_.resize(ensemble.block_rows + 1);
  op.row_offsets_[0] = 0;
  for (std::uint32_t r = 0; r < ensemble.block_rows; ++r) {
    op.row_offsets_[r + 1] = op.row_offsets_[r] + plan.row_counts[r];
  }

  for (std::uint32_t c = 0; c < ensemble.block_cols; ++c) {
    bool measured = false;
    for (std::uint32_t r = 0; r < ensemble.block_rows; ++r) {
      measured = measured || ensemble.block_variance(r, c) != 0.0;
    }
    if (!measured) {
      throw ConstructionError("operator build: block column " +
                              std::to_string(c) +
                              " is touched by no nonzero block");
    }
  }

  for (std::uint32_t r = 0; r < ensemble.block_rows; ++r) {
    for (std::uint32_t c = 0; c < ensemble.block_cols; ++c) {
      const double j_rc = ensemble.block_variance(r, c);
      if (j_rc == 0.0) continue;
      Block block;
      block.row = r;
      block.col = c;
      block.coeff = std::sqrt(j_rc) * op.global_scale_;
      block.sq_coeff = j_rc * op.global_scale_ * op.global_scale_ /
                       static_cast<double>(n_c);
      block.rand = make_block_randomization(master_seed, r, c,
                                            ensemble.block_cols, n_c,
                                            plan.row_counts[r]);
      op.blocks_.push_back(std::move(block));
    }
  }
  return op;
}

template <class Scalar>
void StructuredOperator<Scalar>::forward(std::span<const Scalar> x,
                                         std::span<Scalar> out) const {
  require_length(x.size(), n_, "forward(x)");
  require_length(out.size(), m_, "forward(out)");
  std::fill(out.begin(), out.end(), Scalar{});
  std::vector<Scalar> scratch(n_c_);
  std::vector<Scalar> block_out(n_c_);
  for (const Block& b : blocks_) {
    const std::size_t n_r = b.rand.n_r();
    auto in = x.subspan(b.col * n_c_, n_c_);
    auto dst = out.subspan(row_offsets_[b.row], n_r);
    subsample_apply(b.rand, kind_, in,
                    std::span<Scalar>(block_out.data(), n_r),
                    std::span<Scalar>(scratch));
    for (std::size_t g = 0; g < n_r; ++g) dst[g] += b.coeff * block_out[g];
  }
}

template <class Scalar>
void StructuredOperator<Scalar>::adjoint(std::span<const Scalar> f,
                                         std::span<Scalar> out) const {
  require_length(f.size(), m_, "adjoint(f)");
  require_length(out.size(), n_, "adjoint(out)");
  std::fill(out.begin(), out.end(), Scalar{});
  std::vector<Scalar> scratch(n_c_);
  std::vector<Scalar> block_out(n_c_);
  for (const Block& b : blocks_) {
    const std::size_t n_r = b.rand.n_r();
    auto src = f.subspan(row_offsets_[b.row], n_r);
    auto dst = out.subspan(b.col * n_c_, n_c_);
    subsample_adjoint(b.rand, kind_, src, std::span<Scalar>(block_out),
                      std::span<Scalar>(scratch));
    for (std::size_t i = 0; i < n_c_; ++i) dst[i] += b.coeff * block_out[i];
  }
}

template <class Scalar>
void StructuredOperator<Scalar>::sq_forward(std::span<const double> v,
                                            std::span<double> out) const {
  require_length(v.size(), n_, "sq_forward(v)");
  require_length(out.size(), m_, "sq_forward(out)");
  // |F_mu_i|^2 is constant within a block, so each block contributes
  // sq_coeff * (sum of its input slice) to every row of its block row.
  std::fill(out.begin(), out.end(), 0.0);
  for (const Block& b : blocks_) {
    double sum = 0.0;
    auto in = v.subspan(b.col * n_c_, n_c_);
    for (double value : in) sum += value;
    const double add = b.sq_coeff * sum;
    auto dst = out.subspan(row_offsets_[b.row],
                           row_offsets_[b.row + 1] - row_offsets_[b.row]);
    for (double& value : dst) value += add;
  }
}

template <class Scalar>
void StructuredOperator<Scalar>::sq_adjoint(std::span<const double> u,
                                            std::span<double> out) const {
  require_length(u.size(), m_, "sq_adjoint(u)");
  require_length(out.size(), n_, "sq_adjoint(out)");
  std::fill(out.begin(), out.end(), 0.0);
  for (const Block& b : blocks_) {
    double sum = 0.0;
    auto src = u.subspan(row_offsets_[b.row],
                         row_offsets_[b.row + 1] - row_offsets_[b.row]);
    for (double value : src) sum += value;
    const double add = b.sq_coeff * sum;
    auto dst = out.subspan(b.col * n_c_, n_c_);
    for (double& value : dst) value += add;
  }
}

template <class Scalar>
std::vector<Scalar> StructuredOperator<Scalar>::forward(
    std::span<const Scalar> x) const {
  std::vector<Scalar> out(m_);
  forward(x, out);
  return out;
}

template <class Scalar>
std::vector<Scalar> StructuredOperator<Scalar>::adjoint(
    std::span<const Scalar> f) const {
  std::vector<Scalar> out(n_);
  adjoint(f, out);
  return out;
}

template <class Scalar>
std::vector<double> StructuredOperator<Scalar>::sq_forward(
    std::span<const double> v) const {
  std::vector<double> out(m_);
  sq_forward(v, out);
  return out;
}

template <class Scalar>
std::vector<double> StructuredOperator<Scalar>::sq_adjoint(
    std::span<const double> u) const {
  std::vector<double> out(n_);
  sq_adjoint(u, out);
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> StructuredOperator<Scalar>::materialize() const {
  if (m_ * n_ > (std::size_t{1} << 26)) {
    throw SizeError("materialize: " + std::to_string(m_ * n_) +
                    " entries exceed the 2^26 guard");
  }
  DenseMatrix<Scalar> dense;
  dense.rows = m_;
  dense.cols = n_;
  dense.data.resize(m_ * n_);
  std::vector<Scalar> unit(n_, Scalar{});
  std::vector<Scalar> column(m_);
  for (std::size_t j = 0; j < n_; ++j) {
    unit[j] = Scalar{1};
    forward(unit, column);
    unit[j] = Scalar{};
    for (std::size_t i = 0; i < m_; ++i) dense.at(i, j) = column[i];
  }
  return dense;
}

template <class Scalar>
std::string StructuredOperator<Scalar>::descriptor_json() const {
  nlohmann::json j{
      {"kind", kind_ == TransformKind::hadamard ? "hadamard" : "fourier"},
      {"n", n_},
      {"master_seed", master_seed_},
      {"gain", gain_},
      {"ensemble",
       {{"l_c", ensemble_.block_cols},
        {"l_r", ensemble_.block_rows},
        {"w", ensemble_.window},
        {"sqrt_j", ensemble_.sqrt_j},
        {"alpha", ensemble_.alpha},
        {"beta_seed", ensemble_.beta_seed}}}};
  return j.dump();
}

template <class Scalar>
StructuredOperator<Scalar> StructuredOperator<Scalar>::from_descriptor_json(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CouplingEnsemble ensemble;
  const auto& je = j.at("ensemble");
  ensemble.block_cols = je.at("l_c").get<std::uint32_t>();
  ensemble.block_rows = je.at("l_r").get<std::uint32_t>();
  ensemble.window = je.at("w").get<std::uint32_t>();
  ensemble.sqrt_j = je.at("sqrt_j").get<double>();
  ensemble.alpha = je.at("alpha").get<double>();
  ensemble.beta_seed = je.at("beta_seed").get<double>();
  const std::string kind_name = j.at("kind").get<std::string>();
  const TransformKind kind = kind_name == "hadamard" ? TransformKind::hadamard
                                                     : TransformKind::fourier;
  return build(ensemble, kind, j.at("n").get<std::size_t>(),
               j.at("master_seed").get<std::uint64_t>(),
               j.at("gain").get<double>());
}

template class StructuredOperator<double>;
template class StructuredOperator<cplx>;

}  // namespace ampkit

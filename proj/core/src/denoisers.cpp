#include "ampkit/denoisers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ampkit/errors.hpp"

namespace ampkit {

namespace {

void require_sigma2(double Sigma2) {
  if (!(Sigma2 > 0.0)) {
    throw DomainError("denoiser: Sigma2 must be > 0, got " +
                      std::to_string(Sigma2));
  }
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

// Shifted evaluation of the printed thresholding functions. With
//   M = (sigma^2 R + Sigma^2 xbar)/(Sigma^2 + sigma^2),
//   chi^2 = Sigma^2 sigma^2 / (Sigma^2 + sigma^2),
// the Gaussian-branch posterior weight w = rho chi g / Z reduces to a
// logistic in t = log(rho chi/((1-rho) sigma)) + (M^2/chi^2 - xbar^2/sigma^2)/2;
// the R^2/Sigma^2 terms of g and Z cancel exactly, which is what keeps the
// evaluation finite for Sigma2 -> 0.
DenoiserOut<double> gb_real(double Sigma2, double R,
                            const GaussBernoulliReal& prior) {
  require_sigma2(Sigma2);
  const double s2 = prior.sigma2;
  const double denom = Sigma2 + s2;
  const double m = (s2 * R + Sigma2 * prior.xbar) / denom;
  const double chi2 = Sigma2 * s2 / denom;

  double w = 1.0;
  if (prior.rho < 1.0) {
    const double t = std::log(prior.rho / (1.0 - prior.rho)) +
                     0.5 * std::log(Sigma2 / denom) +
                     0.5 * (m * m / chi2 - prior.xbar * prior.xbar / s2);
    w = sigmoid(t);
  }
  DenoiserOut<double> out;
  out.a = w * m;
  out.v = w * chi2 + w * (1.0 - w) * m * m;
  return out;
}

DenoiserOut<cplx> gb_complex(double Sigma2, cplx R,
                             const GaussBernoulliComplex& prior) {
  require_sigma2(Sigma2);
  const double s2 = prior.sigma2;
  const double denom = Sigma2 + s2;
  const cplx m = (s2 * R + Sigma2 * prior.xbar) / denom;
  const double chi2 = Sigma2 * s2 / denom;
  const double m_sq = std::norm(m);

  double w = 1.0;
  if (prior.rho < 1.0) {
    const double t = std::log(prior.rho / (1.0 - prior.rho)) +
                     std::log(Sigma2 / denom) +
                     0.5 * (m_sq / chi2 - std::norm(prior.xbar) / s2);
    w = sigmoid(t);
  }
  DenoiserOut<cplx> out;
  out.a = w * m;
  // Halved: the complex convention reports variance per real component.
  out.v = w * chi2 + 0.5 * w * (1.0 - w) * m_sq;
  return out;
}

void section_denoise(std::span<const double> Sigma2,
                     std::span<const double> R, std::span<double> a,
                     std::span<double> v) {
  const std::size_t b = Sigma2.size();
  if (R.size() != b || a.size() != b || v.size() != b || b == 0) {
    throw SizeError("section_denoise: all vectors must share the section size");
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b; ++i) {
    require_sigma2(Sigma2[i]);
    a[i] = (2.0 * R[i] - 1.0) / (2.0 * Sigma2[i]);
    shift = std::max(shift, a[i]);
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    a[i] = std::exp(a[i] - shift);
    norm += a[i];
  }
  for (std::size_t i = 0; i < b; ++i) {
    a[i] /= norm;
    v[i] = a[i] * (1.0 - a[i]);
  }
}

template <class Scalar>
DenoiserOut<Scalar> GaussBernoulli<Scalar>::denoise_one(double Sigma2,
                                                        Scalar R) const {
  if constexpr (is_complex) {
    return gb_complex(Sigma2, R, *this);
  } else {
    return gb_real(Sigma2, R, *this);
  }
}

template <class Scalar>
void GaussBernoulli<Scalar>::denoise(std::span<const double> Sigma2,
                                     std::span<const Scalar> R,
                                     std::span<Scalar> a,
                                     std::span<double> v) const {
  const std::size_t n = Sigma2.size();
  if (R.size() != n || a.size() != n || v.size() != n) {
    throw SizeError("gb denoise: length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto out = denoise_one(Sigma2[i], R[i]);
    a[i] = out.a;
    v[i] = out.v;
  }
}

template struct GaussBernoulli<double>;
template struct GaussBernoulli<cplx>;

void SectionPrior::denoise(std::span<const double> Sigma2,
                           std::span<const double> R, std::span<double> a,
                           std::span<double> v) const {
  const std::size_t n = sections * section_size;
  if (Sigma2.size() != n || R.size() != n || a.size() != n || v.size() != n) {
    throw SizeError("section denoise: length mismatch");
  }
  for (std::size_t l = 0; l < sections; ++l) {
    const std::size_t off = l * section_size;
    section_denoise(Sigma2.subspan(off, section_size),
                    R.subspan(off, section_size), a.subspan(off, section_size),
                    v.subspan(off, section_size));
  }
}

}  // namespace ampkit

#include "tave/circulant.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tave/kernels.hpp"

namespace tave {

namespace {

CVec omega_vec(std::size_t n) {
  CVec w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = -std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
    w[j] = cxd(std::cos(theta), std::sin(theta));
  }
  return w;
}

void check_shift(double sigma, const CVec& lambdas) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("shifted inverse: sigma must be positive");
  for (const cxd& l : lambdas)
    if (std::abs(sigma + l) <= kShiftSingularTol)
      throw std::runtime_error(
          "shifted inverse: near-singular shifted spectrum (|sigma+lambda| ~ 0)");
}

}  // namespace

CirculantSpectrum circulant_spectrum(const CVec& first_col) {
  if (first_col.empty())
    throw std::invalid_argument("circulant_spectrum: empty first column");
  CirculantSpectrum spec;
  spec.n = first_col.size();
  spec.lambdas.resize(spec.n);
  Dft dft(spec.n);
  dft.forward(first_col.data(), spec.lambdas.data());
  return spec;
}

SkewCirculantSpectrum skew_circulant_spectrum(const CVec& first_col) {
  if (first_col.empty())
    throw std::invalid_argument("skew_circulant_spectrum: empty first column");
  SkewCirculantSpectrum spec;
  spec.n = first_col.size();
  spec.omega = omega_vec(spec.n);
  CVec scaled(spec.n);
  kernels::cmul(scaled.data(), spec.omega.data(), first_col.data(), spec.n);
  spec.lambdas.resize(spec.n);
  Dft dft(spec.n);
  dft.forward(scaled.data(), spec.lambdas.data());
  return spec;
}

CVec apply_shifted_circulant_inverse(double sigma, const CirculantSpectrum& spec,
                                     const CVec& y) {
  if (y.size() != spec.n)
    throw std::invalid_argument("apply_shifted_circulant_inverse: size mismatch");
  check_shift(sigma, spec.lambdas);
  const std::size_t n = spec.n;
  Dft dft(n);
  CVec hat(n), x(n);
  dft.forward(y.data(), hat.data());
  for (std::size_t k = 0; k < n; ++k) hat[k] /= sigma + spec.lambdas[k];
  dft.inverse(hat.data(), x.data());
  return x;
}

CVec apply_shifted_skew_inverse(double sigma, const SkewCirculantSpectrum& spec,
                                const CVec& y) {
  if (y.size() != spec.n)
    throw std::invalid_argument("apply_shifted_skew_inverse: size mismatch");
  check_shift(sigma, spec.lambdas);
  const std::size_t n = spec.n;
  Dft dft(n);
  CVec t(n), hat(n);
  kernels::cmul(t.data(), spec.omega.data(), y.data(), n);
  dft.forward(t.data(), hat.data());
  for (std::size_t k = 0; k < n; ++k) hat[k] /= sigma + spec.lambdas[k];
  dft.inverse(hat.data(), t.data());
  CVec x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::conj(spec.omega[j]) * t[j];
  return x;
}

double min_real(const CVec& lambdas) {
  double m = std::numeric_limits<double>::infinity();
  for (const cxd& l : lambdas) m = std::min(m, l.real());
  return m;
}

}  // namespace tave

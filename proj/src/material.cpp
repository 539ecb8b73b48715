#include "magcas/material.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "magcas/errors.hpp"

namespace magcas {

namespace {
constexpr cdouble kImag{0.0, 1.0};

double norm3(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}
}  // namespace

Material::Material(double eps_l_, double omega_c_, double gamma_)
    : eps_l(eps_l_), omega_c(omega_c_), gamma(gamma_) {
  if (!(eps_l >= 1.0))
    throw std::invalid_argument("Material: eps_l must be >= 1, got " + std::to_string(eps_l_));
  if (!(omega_c >= 0.0))
    throw std::invalid_argument("Material: omega_c must be >= 0, got " + std::to_string(omega_c_));
  if (!(gamma >= 0.0))
    throw std::invalid_argument("Material: gamma must be >= 0, got " + std::to_string(gamma_));
}

Tensor3 Tensor3::identity() {
  Tensor3 t;
  t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
  return t;
}

Tensor3 Tensor3::axial(const Vec3& v) {
  Tensor3 t;
  t(0, 1) = v[2];
  t(1, 0) = -v[2];
  t(1, 2) = v[0];
  t(2, 1) = -v[0];
  t(2, 0) = v[1];
  t(0, 2) = -v[1];
  return t;
}

Tensor3 Tensor3::outer(const Vec3& a, const Vec3& b) {
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a[i] * b[j];
  return t;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (int k = 0; k < 9; ++k) e_[k] += o.e_[k];
  return *this;
}

Tensor3& Tensor3::operator*=(cdouble s) {
  for (auto& x : e_) x *= s;
  return *this;
}

Tensor3 conductivity_tensor(cdouble omega, const Vec3& b_direction, const Material& m) {
  if (omega == 0.0) throw std::domain_error("conductivity_tensor: omega must be nonzero");
  const double bnorm = norm3(b_direction);
  if (m.omega_c > 0.0 && std::abs(bnorm - 1.0) > 1e-9)
    throw std::domain_error("conductivity_tensor: b_direction must be a unit vector when omega_c > 0");

  // tau* = tau/(1 - i omega tau), in units of 1/omega_p.
  const cdouble tau_star = 1.0 / (m.gamma - kImag * omega);
  const cdouble g = m.omega_c * tau_star;
  const cdouble denom = 1.0 + g * g;
  if (denom == 0.0)
    throw SingularityError("conductivity_tensor: cyclotron resonance at omega = " +
                           std::to_string(omega.real()) + " with gamma = 0");

  // Carrier sign fixed so that b = +x reproduces the Voigt closed forms.
  Tensor3 t = Tensor3::identity();
  t += cdouble(-1.0) * g * Tensor3::axial(b_direction);
  t += g * g * Tensor3::outer(b_direction, b_direction);

  // 4 pi n q^2 / m = eps_l omega_p^2, so the dielectric assembly closes
  // with no free constants.
  const cdouble prefactor = m.eps_l / (4.0 * std::numbers::pi) * tau_star / denom;
  return prefactor * t;
}

Tensor3 dielectric_tensor(cdouble omega, const Vec3& b_direction, const Material& m) {
  Tensor3 t = conductivity_tensor(omega, b_direction, m);
  t *= 4.0 * std::numbers::pi * kImag / omega;
  t += cdouble(m.eps_l) * Tensor3::identity();
  return t;
}

VoigtPermittivity voigt_components(double zeta, const Material& m) {
  if (!(zeta > 0.0))
    throw std::domain_error("voigt_components: zeta must be > 0, got " + std::to_string(zeta));
  if (m.gamma != 0.0)
    throw std::domain_error(
        "voigt_components: closed forms require gamma == 0; use imaginary_axis_components");
  const double z2 = zeta * zeta;
  const double d = z2 + m.omega_c * m.omega_c;
  return {m.eps_l * (1.0 + 1.0 / z2), m.eps_l * (1.0 + 1.0 / d),
          -m.eps_l * m.omega_c / (zeta * d)};
}

VoigtPermittivity real_axis_components(double omega, const Material& m) {
  if (!(omega > 0.0))
    throw std::domain_error("real_axis_components: omega must be > 0, got " + std::to_string(omega));
  if (m.gamma == 0.0) {
    if (omega == m.omega_c)
      throw std::domain_error(
          "real_axis_components: cyclotron resonance (omega == Omega_c) is a pole when gamma == 0");
    const double w2 = omega * omega;
    const double d = w2 - m.omega_c * m.omega_c;
    return {m.eps_l * (1.0 - 1.0 / w2), m.eps_l * (1.0 - 1.0 / d),
            kImag * m.eps_l * m.omega_c / (omega * d)};
  }
  Tensor3 e = dielectric_tensor(cdouble(omega, 0.0), {1.0, 0.0, 0.0}, m);
  return {e(0, 0), e(1, 1), e(1, 2)};
}

VoigtPermittivity imaginary_axis_components(double zeta, const Material& m) {
  if (m.gamma == 0.0) return voigt_components(zeta, m);
  if (!(zeta > 0.0))
    throw std::domain_error("imaginary_axis_components: zeta must be > 0");
  Tensor3 e = dielectric_tensor(cdouble(0.0, zeta), {1.0, 0.0, 0.0}, m);
  return {e(0, 0), e(1, 1), e(1, 2)};
}

Tensor3 voigt_tensor(const VoigtPermittivity& eps) {
  Tensor3 t;
  t(0, 0) = eps.eps_xx;
  t(1, 1) = eps.eps_yy;
  t(2, 2) = eps.eps_zz();
  t(1, 2) = eps.eps_yz;
  t(2, 1) = eps.eps_zy();
  return t;
}

}  // namespace magcas

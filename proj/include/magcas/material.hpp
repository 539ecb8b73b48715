#pragma once

#include <array>
#include <complex>

namespace magcas {

using cdouble = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Unit system: frequencies in units of the plasma frequency, lengths in
// units of c over the plasma frequency. The plasma frequency itself never
// appears as a stored number.

/// Magneto-Drude slab material.
struct Material {
  double eps_l;    ///< background permittivity, >= 1
  double omega_c;  ///< cyclotron frequency / plasma frequency, >= 0
  double gamma;    ///< damping rate / plasma frequency, >= 0

  explicit Material(double eps_l, double omega_c = 0.0, double gamma = 0.0);
};

/// The three independent dielectric components in the Voigt geometry
/// (static field along x, propagation along z, decay along y).
/// eps_zz = eps_yy and eps_zy = -eps_yz are implied, not stored.
struct VoigtPermittivity {
  cdouble eps_xx;
  cdouble eps_yy;
  cdouble eps_yz;

  cdouble eps_zz() const { return eps_yy; }
  cdouble eps_zy() const { return -eps_yz; }
};

/// Dense 3x3 complex tensor, indices 0,1,2 = x,y,z.
class Tensor3 {
 public:
  Tensor3() : e_{} {}

  static Tensor3 identity();
  /// Levi-Civita contraction: T_ij = e_ijk v_k.
  static Tensor3 axial(const Vec3& v);
  /// Dyadic product: T_ij = a_i b_j.
  static Tensor3 outer(const Vec3& a, const Vec3& b);

  cdouble& operator()(int i, int j) { return e_[3 * i + j]; }
  const cdouble& operator()(int i, int j) const { return e_[3 * i + j]; }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator*=(cdouble s);
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator*(cdouble s, Tensor3 t) { return t *= s; }

 private:
  std::array<cdouble, 9> e_;
};

/// Magneto-Drude conductivity tensor at complex frequency omega, static
/// field along the unit vector b_direction. Dimensionless: the prefactor
/// is fixed so that the dielectric tensor below closes onto the Voigt
/// closed forms with no free constants.
Tensor3 conductivity_tensor(cdouble omega, const Vec3& b_direction, const Material& m);

/// eps_ij = eps_l delta_ij + (4 pi i / omega) sigma_ij.
Tensor3 dielectric_tensor(cdouble omega, const Vec3& b_direction, const Material& m);

/// Closed-form Voigt components on the imaginary frequency axis
/// (omega = i zeta, zeta > 0). Requires gamma == 0; all components are
/// real there: eps_xx = eps_l (1 + 1/zeta^2),
/// eps_yy = eps_l (1 + 1/(zeta^2 + Omega_c^2)),
/// eps_yz = -eps_l Omega_c / (zeta (zeta^2 + Omega_c^2)).
VoigtPermittivity voigt_components(double zeta, const Material& m);

/// Voigt components on the real frequency axis. With gamma == 0 these are
/// the printed closed forms (cyclotron pole at omega == Omega_c rejected);
/// with gamma > 0 the general tensor route is used.
VoigtPermittivity real_axis_components(double omega, const Material& m);

/// Imaginary-axis components for any damping: dispatches to the closed
/// forms when gamma == 0 and to the full tensor otherwise.
VoigtPermittivity imaginary_axis_components(double zeta, const Material& m);

/// Assembles the full 3x3 tensor a VoigtPermittivity stands for.
Tensor3 voigt_tensor(const VoigtPermittivity& eps);

}  // namespace magcas

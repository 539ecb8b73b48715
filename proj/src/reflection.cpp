#include "magcas/reflection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "magcas/errors.hpp"

namespace magcas {

namespace {
constexpr cdouble kImag{0.0, 1.0};

// Principal square root; the branch with Re >= 0 is the one that decays
// away from the interface.
cdouble decay_root(cdouble z) {
  cdouble r = std::sqrt(z);
  if (r.real() < 0.0) r = -r;
  return r;
}
}  // namespace

SlabGeometry SlabGeometry::slab(double thickness) {
  if (!(thickness > 0.0)) throw std::invalid_argument("SlabGeometry: thickness must be > 0");
  return SlabGeometry{thickness};
}

cdouble voigt_effective_permittivity(const VoigtPermittivity& eps) {
  if (eps.eps_yy == 0.0)
    throw SingularityError("voigt_effective_permittivity: eps_yy == 0");
  return eps.eps_yy + eps.eps_yz * eps.eps_yz / eps.eps_yy;
}

Kinematics kinematics(double zeta, double q_z, const VoigtPermittivity& eps) {
  if (!(zeta > 0.0)) throw std::domain_error("kinematics: zeta must be > 0");
  Kinematics k;
  k.zeta = zeta;
  k.q_z = q_z;
  k.alpha = std::hypot(q_z, zeta);
  k.beta = decay_root(q_z * q_z + zeta * zeta * voigt_effective_permittivity(eps));
  return k;
}

cdouble reflection_te(const Kinematics& kin, const VoigtPermittivity& eps) {
  const cdouble beta_x = decay_root(kin.q_z * kin.q_z + kin.zeta * kin.zeta * eps.eps_xx);
  return (kin.alpha - beta_x) / (kin.alpha + beta_x);
}

cdouble reflection_te_slab(const Kinematics& kin, const VoigtPermittivity& eps,
                           const SlabGeometry& geom) {
  if (geom.is_half_space()) return reflection_te(kin, eps);
  const cdouble beta_x = decay_root(kin.q_z * kin.q_z + kin.zeta * kin.zeta * eps.eps_xx);
  const cdouble r = (kin.alpha - beta_x) / (kin.alpha + beta_x);
  const cdouble x = std::exp(-2.0 * beta_x * geom.thickness);
  return r * (1.0 - x) / (1.0 - r * r * x);
}

cdouble reflection_tm_halfspace(const Kinematics& kin, const VoigtPermittivity& eps) {
  const cdouble eps_v = voigt_effective_permittivity(eps);
  const cdouble det = eps.eps_yy * eps_v;
  if (det == 0.0) throw SingularityError("reflection_tm_halfspace: eps_yy * eps_v == 0");
  const cdouble lambda = (kin.beta * eps.eps_yy - kImag * kin.q_z * eps.eps_yz) / det;
  return (kin.alpha - lambda) / (kin.alpha + lambda);
}

cdouble reflection_tm_slab(const Kinematics& kin, const VoigtPermittivity& eps,
                           const SlabGeometry& geom) {
  if (geom.is_half_space()) return reflection_tm_halfspace(kin, eps);

  const cdouble eps_v = voigt_effective_permittivity(eps);
  const cdouble det = eps.eps_yy * eps_v;
  if (det == 0.0) throw SingularityError("reflection_tm_slab: eps_yy * eps_v == 0");

  // Interior amplitudes are referenced at the face where each wave is
  // largest, so every matrix entry stays bounded by exp(-Re(beta) d); the
  // E_z rows are expressed through the normalized surface admittances,
  // which keeps all entries O(1) even where eps_v blows up.
  const cdouble E = std::exp(-kin.beta * geom.thickness);
  const cdouble lp = (kin.beta * eps.eps_yy - kImag * kin.q_z * eps.eps_yz) / (kin.alpha * det);
  const cdouble lm = (kin.beta * eps.eps_yy + kImag * kin.q_z * eps.eps_yz) / (kin.alpha * det);

  // Unknowns x = (r, a, b, t): field continuity of B_x and E_z at both faces.
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  M << -1.0, 1.0, E, 0.0,
       1.0, lp, -lm * E, 0.0,
       0.0, E, 1.0, -1.0,
       0.0, lp * E, -lm, -1.0;
  rhs << 1.0, 1.0, 0.0, 0.0;

  Eigen::PartialPivLU<Eigen::Matrix4cd> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 1e-13)) {
    std::ostringstream msg;
    msg << "reflection_tm_slab: matching system ill-conditioned (rcond=" << rc
        << ") at zeta=" << kin.zeta << " q_z=" << kin.q_z << " thickness=" << geom.thickness;
    throw ConditioningError(msg.str());
  }
  return lu.solve(rhs)(0);
}

ReflectionPair reflection_pair(const Kinematics& kin, const VoigtPermittivity& eps,
                               const SlabGeometry& geom) {
  return {reflection_te_slab(kin, eps, geom), reflection_tm_slab(kin, eps, geom)};
}

}  // namespace magcas

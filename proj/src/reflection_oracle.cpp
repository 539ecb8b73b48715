#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "magcas/errors.hpp"
#include "magcas/reflection.hpp"

// Boundary-value oracle for the reflection amplitudes. The medium fills
// y < 0 (half-space) or -d < y < 0 (slab), vacuum elsewhere; fields carry
// exp(i q_z z) and are evaluated at omega = i zeta. The tangential state
// psi = (E_x, E_z, B_x, B_z) obeys d(psi)/dy = M psi with the normal
// components eliminated through the constitutive relations. The medium
// decay constants are never formed in closed form: half-spaces use the
// numerically computed decaying eigenmode pair of M, slabs are integrated
// across a fine y-grid (RK4 propagator, grid-halving check).

namespace magcas {

namespace {

using Eigen::Matrix4cd;
using Eigen::Vector4cd;

constexpr cdouble kImag{0.0, 1.0};

Matrix4cd field_matrix(const Tensor3& e, double zeta, double q_z) {
  const cdouble q0 = kImag * zeta;
  const cdouble iq0 = kImag * q0;
  if (e(1, 1) == 0.0) throw OracleError("field_matrix: eps_yy == 0");

  // E_y = ey_ex E_x + ey_ez E_z + ey_bx B_x
  const cdouble ey_ex = -e(1, 0) / e(1, 1);
  const cdouble ey_ez = -e(1, 2) / e(1, 1);
  const cdouble ey_bx = -(q_z / q0) / e(1, 1);

  Matrix4cd m = Matrix4cd::Zero();
  m(0, 3) = -iq0;
  m(1, 0) = kImag * q_z * ey_ex;
  m(1, 1) = kImag * q_z * ey_ez;
  m(1, 2) = iq0 + kImag * q_z * ey_bx;
  m(2, 0) = iq0 * (e(2, 0) + e(2, 1) * ey_ex);
  m(2, 1) = iq0 * (e(2, 2) + e(2, 1) * ey_ez);
  m(2, 2) = iq0 * e(2, 1) * ey_bx;
  m(3, 0) = kImag * q_z * q_z / q0 - iq0 * (e(0, 0) + e(0, 1) * ey_ex);
  m(3, 1) = -iq0 * (e(0, 2) + e(0, 1) * ey_ez);
  m(3, 2) = -iq0 * e(0, 1) * ey_bx;
  return m;
}

// Vacuum solutions proportional to exp(s * alpha * y); s = +1 is the wave
// incident from (or transmitted into) y -> -infinity side, s = -1 the one
// reflected back toward y -> +infinity.
Vector4cd vacuum_tm(double s, double alpha, double zeta) {
  return Vector4cd(0.0, -s * alpha / zeta, 1.0, 0.0);
}
Vector4cd vacuum_te(double s, double alpha, double zeta) {
  return Vector4cd(1.0, 0.0, 0.0, s * alpha / zeta);
}

// RK4 propagator for a constant coefficient matrix: (I + hM + ... )^n.
Matrix4cd propagate(const Matrix4cd& m, double distance, long steps) {
  const double h = distance / static_cast<double>(steps);
  const Matrix4cd hm = h * m;
  Matrix4cd step = Matrix4cd::Identity() + hm + hm * hm / 2.0 + hm * hm * hm / 6.0 +
                   hm * hm * hm * hm / 24.0;
  Matrix4cd out = Matrix4cd::Identity();
  for (long i = 0; i < steps; ++i) out = step * out;
  return out;
}

struct OracleSolve {
  cdouble r_p;
  cdouble r_s;
};

// Solve the 4x4 interface matching for both incident polarizations.
// Columns: reflected TM, reflected TE, minus the two interior solutions.
OracleSolve match(const Matrix4cd& system, const Vector4cd& inc_tm, const Vector4cd& inc_te) {
  Eigen::PartialPivLU<Matrix4cd> lu(system);
  const Vector4cd x_tm = lu.solve(-inc_tm);
  const Vector4cd x_te = lu.solve(-inc_te);
  const double conv = std::max(std::abs(x_tm(1)), std::abs(x_te(0)));
  if (conv > 1e-9) {
    std::ostringstream msg;
    msg << "reflection_numeric_oracle: polarization conversion leak " << conv
        << " in a configuration that must not convert";
    throw OracleError(msg.str());
  }
  return {x_tm(0), x_te(1)};
}

OracleSolve halfspace_oracle(const Matrix4cd& m_med, double alpha, double zeta) {
  Eigen::ComplexEigenSolver<Matrix4cd> es(m_med);
  if (es.info() != Eigen::Success)
    throw OracleError("reflection_numeric_oracle: eigensolver failed");

  std::vector<int> decaying;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i).real() > 0.0) decaying.push_back(i);
  if (decaying.size() != 2)
    throw OracleError("reflection_numeric_oracle: expected exactly 2 decaying medium modes, got " +
                      std::to_string(decaying.size()));

  Matrix4cd system;
  system.col(0) = vacuum_tm(-1.0, alpha, zeta);
  system.col(1) = vacuum_te(-1.0, alpha, zeta);
  system.col(2) = -es.eigenvectors().col(decaying[0]);
  system.col(3) = -es.eigenvectors().col(decaying[1]);
  return match(system, vacuum_tm(+1.0, alpha, zeta), vacuum_te(+1.0, alpha, zeta));
}

OracleSolve slab_oracle_at(const Matrix4cd& m_med, double alpha, double zeta, double d,
                           long steps_per_half) {
  // Integrate from both faces to the midplane so each propagator only
  // spans half the optical thickness.
  const Matrix4cd t_top = propagate(m_med, -d / 2.0, steps_per_half);
  const Matrix4cd t_bot = propagate(m_med, +d / 2.0, steps_per_half);

  Matrix4cd system;
  system.col(0) = t_top * vacuum_tm(-1.0, alpha, zeta);
  system.col(1) = t_top * vacuum_te(-1.0, alpha, zeta);
  system.col(2) = -(t_bot * vacuum_tm(+1.0, alpha, zeta));
  system.col(3) = -(t_bot * vacuum_te(+1.0, alpha, zeta));
  return match(system, t_top * vacuum_tm(+1.0, alpha, zeta),
               t_top * vacuum_te(+1.0, alpha, zeta));
}

}  // namespace

ReflectionPair reflection_numeric_oracle(const Kinematics& kin, const VoigtPermittivity& eps,
                                         const SlabGeometry& geom) {
  const Matrix4cd m_med = field_matrix(voigt_tensor(eps), kin.zeta, kin.q_z);

  if (geom.is_half_space()) {
    OracleSolve s = halfspace_oracle(m_med, kin.alpha, kin.zeta);
    return {s.r_s, s.r_p};
  }

  const double d = geom.thickness;
  Eigen::ComplexEigenSolver<Matrix4cd> es(m_med, false);
  double max_rate = 0.0;
  for (int i = 0; i < 4; ++i) max_rate = std::max(max_rate, std::abs(es.eigenvalues()(i).real()));
  if (max_rate * d > 30.0)
    throw OracleError(
        "reflection_numeric_oracle: slab optically too thick for grid propagation "
        "(opacity " +
        std::to_string(max_rate * d) + "); compare against the half-space oracle instead");

  const long steps = std::max<long>(500, static_cast<long>(std::ceil(900.0 * max_rate * d / 2.0)));
  OracleSolve coarse = slab_oracle_at(m_med, kin.alpha, kin.zeta, d, steps);
  OracleSolve fine = slab_oracle_at(m_med, kin.alpha, kin.zeta, d, 2 * steps);
  const double drift =
      std::max(std::abs(fine.r_p - coarse.r_p), std::abs(fine.r_s - coarse.r_s));
  if (drift > 1e-9) {
    std::ostringstream msg;
    msg << "reflection_numeric_oracle: grid refinement not converged (drift " << drift
        << " at zeta=" << kin.zeta << " q_z=" << kin.q_z << " thickness=" << d << ")";
    throw OracleError(msg.str());
  }
  return {fine.r_s, fine.r_p};
}

}  // namespace magcas

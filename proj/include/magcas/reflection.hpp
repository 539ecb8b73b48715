#pragma once

#include <cmath>
#include <limits>

#include "magcas/material.hpp"

namespace magcas {

/// Imaginary-axis kinematics for one (zeta, q_z) pair: the vacuum decay
/// constant alpha and the TM decay constant beta inside the magnetized
/// medium (principal branch, Re(beta) > 0).
struct Kinematics {
  double zeta;
  double q_z;
  double alpha;  ///< sqrt(q_z^2 + zeta^2)
  cdouble beta;  ///< sqrt(q_z^2 + zeta^2 * eps_v)
};

/// TE and TM reflection amplitudes for one (zeta, q_z).
struct ReflectionPair {
  cdouble r_s;
  cdouble r_p;
};

/// Slab thickness in units of c/omega_p; infinite means half-space.
struct SlabGeometry {
  double thickness = std::numeric_limits<double>::infinity();

  static SlabGeometry half_space() { return {}; }
  static SlabGeometry slab(double thickness);
  bool is_half_space() const { return std::isinf(thickness); }
};

/// Voigt effective permittivity eps_v = eps_yy + eps_yz^2 / eps_yy, the
/// combination governing TM decay in the magnetized medium.
cdouble voigt_effective_permittivity(const VoigtPermittivity& eps);

Kinematics kinematics(double zeta, double q_z, const VoigtPermittivity& eps);

/// TE amplitude for a half-space. Samples only eps_xx, so it carries no
/// magnetic-field dependence at all.
cdouble reflection_te(const Kinematics& kin, const VoigtPermittivity& eps);

/// TE amplitude for a finite slab (two-interface composition; exact, since
/// a TE field sees the scalar eps_xx).
cdouble reflection_te_slab(const Kinematics& kin, const VoigtPermittivity& eps,
                           const SlabGeometry& geom);

/// TM amplitude for a half-space: r_p = (alpha - Lambda)/(alpha + Lambda)
/// with surface admittance
/// Lambda = (beta eps_yy - i q_z eps_yz) / (eps_yy eps_v).
cdouble reflection_tm_halfspace(const Kinematics& kin, const VoigtPermittivity& eps);

/// TM amplitude for a finite slab, from the 4-unknown tangential matching
/// system across both faces.
cdouble reflection_tm_slab(const Kinematics& kin, const VoigtPermittivity& eps,
                           const SlabGeometry& geom);

/// Both amplitudes for the given geometry.
ReflectionPair reflection_pair(const Kinematics& kin, const VoigtPermittivity& eps,
                               const SlabGeometry& geom);

/// Boundary-value oracle: propagates the full tangential field state
/// (E_x, E_z, B_x, B_z) with numerically determined medium modes — no
/// closed-form decay constants — and matches at the interfaces. Slabs are
/// integrated on a fine y-grid with a grid-halving convergence check;
/// half-spaces use the numerically computed decaying mode pair. Intended
/// for tests and `validate` only.
ReflectionPair reflection_numeric_oracle(const Kinematics& kin, const VoigtPermittivity& eps,
                                         const SlabGeometry& geom);

}  // namespace magcas

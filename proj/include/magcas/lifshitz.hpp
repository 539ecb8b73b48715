#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magcas/material.hpp"
#include "magcas/reflection.hpp"

namespace magcas {

/// Dimensionless temperature theta = 2 pi k_B T / (hbar omega_p).
struct ThermalState {
  double theta = 0.0;
  bool zero_temperature = true;

  static ThermalState zero() { return {}; }
  static ThermalState finite(double theta);
};

/// One Casimir pressure evaluation. Pressures are in units of
/// hbar omega_p^4 / c^3; negative means attractive. On the
/// zero-temperature path matsubara_terms_used reports the number of
/// kernel evaluations instead (there are no discrete terms).
struct ForceResult {
  double pressure;
  double ideal_pressure;
  double ratio;
  long matsubara_terms_used;
  double quadrature_error_estimate;
};

/// Tuning knobs for the sum/quadrature machinery. Defaults reproduce the
/// library's reference accuracy; tests tighten them to probe convergence.
struct LifshitzOptions {
  bool ideal_mirrors = false;       ///< force both reflectances to 1
  double kappa_rel_tol = 1e-10;     ///< inner quadrature relative tolerance
  double zeta_rel_tol = 1e-9;       ///< outer quadrature relative tolerance (zero-T)
  double matsubara_rel_cut = 1e-10; ///< term-to-sum ratio that ends the sum
  long max_matsubara_terms = 1000000;
  long min_matsubara_terms = 0;     ///< suppress truncation below this count
  double kappa_cutoff = 40.0;       ///< drop the integrand once kappa * L exceeds this
};

/// Cartesian (omega_c, separation) grid driven by force_sweep.
struct SweepSpec {
  std::vector<double> separations;
  std::vector<double> omega_c_values;
  Material material;
  ThermalState thermal;
  SlabGeometry geometry;
};

struct SweepRow {
  double omega_c;
  double separation;
  bool ok;
  ForceResult result;
  std::string error;
};

/// zeta_n = n * theta.
double matsubara_frequency(long n, const ThermalState& thermal);

/// The two polarization kernels R e^{-2 kappa L} / (1 - R e^{-2 kappa L})
/// at one (zeta, kappa), with R_s = r_s^2 and R_p = |r_p|^2 (the
/// mirror-pair product r_p(q_z) r_p(-q_z)). kappa >= zeta is required;
/// zeta == 0 is evaluated in the zeta -> 0+ limit.
std::pair<double, double> polarization_kernel(double zeta, double kappa, double separation,
                                              const Material& m, const SlabGeometry& geom);

/// Same kernel with both reflectances forced to 1.
std::pair<double, double> ideal_polarization_kernel(double kappa, double separation);

/// Ideal-conductor pressure -pi^2 / (240 L^4).
double ideal_pressure(double separation);

ForceResult pressure_finite_t(double separation, const Material& m, const ThermalState& thermal,
                              const SlabGeometry& geom, const LifshitzOptions& opt = {});

ForceResult pressure_zero_t(double separation, const Material& m, const SlabGeometry& geom,
                            const LifshitzOptions& opt = {});

/// Dispatches on thermal.zero_temperature.
ForceResult pressure(double separation, const Material& m, const ThermalState& thermal,
                     const SlabGeometry& geom, const LifshitzOptions& opt = {});

/// Evaluates the grid in deterministic row order (omega_c ascending, then
/// separation ascending). Grid points may be computed concurrently; each
/// row is produced by an independent, internally sequential evaluation, so
/// the output does not depend on the worker count. Per-point failures are
/// captured in the row, not thrown.
std::vector<SweepRow> force_sweep(const SweepSpec& spec, const LifshitzOptions& opt = {});

/// Worker cap from MAGNETO_CASIMIR_THREADS (unset or 0 means automatic).
unsigned worker_count();

}  // namespace magcas

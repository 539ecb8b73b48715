#include "magcas/validate.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "magcas/isotropic_oracle.hpp"
#include "magcas/lifshitz.hpp"
#include "magcas/material.hpp"
#include "magcas/reflection.hpp"

namespace magcas {

namespace {

constexpr cdouble kImag{0.0, 1.0};

struct Deviation {
  double value = 0.0;
  std::string where;
  void track(double dev, const std::string& loc) {
    if (dev > value) {
      value = dev;
      where = loc;
    }
  }
};

CheckResult finish(const std::string& name, const Deviation& dev, double tol) {
  CheckResult r;
  r.name = name;
  r.max_deviation = dev.value;
  r.tolerance = tol;
  r.passed = dev.value <= tol && std::isfinite(dev.value);
  r.detail = dev.where.empty() ? "" : ("worst at " + dev.where);
  return r;
}

double rel_dev(cdouble got, cdouble want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

CheckResult check_tensor_reduction(double tol) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> log_zeta(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> omega_c(0.0, 2.0);
  Deviation dev;
  for (int i = 0; i < 200; ++i) {
    const double zeta = std::exp(log_zeta(rng));
    const Material m(15.4, omega_c(rng));
    const Tensor3 full = dielectric_tensor(kImag * zeta, {1.0, 0.0, 0.0}, m);
    const Tensor3 closed = voigt_tensor(voigt_components(zeta, m));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::ostringstream loc;
        loc << "zeta=" << zeta << " Omega_c=" << m.omega_c << " entry(" << a << "," << b << ")";
        dev.track(rel_dev(full(a, b), closed(a, b)), loc.str());
      }
  }
  return finish("tensor-reduction", dev, tol);
}

CheckResult check_fresnel_limit(double tol) {
  const Material m(15.4, 0.0);
  Deviation dev;
  for (double zeta : {0.02, 0.1, 1.0, 5.0})
    for (double q_z : {0.0, 0.3, 1.0, 3.0}) {
      const VoigtPermittivity eps = voigt_components(zeta, m);
      const Kinematics kin = kinematics(zeta, q_z, eps);
      const double e = eps.eps_xx.real();
      const double beta = std::sqrt(q_z * q_z + zeta * zeta * e);
      const double fresnel_s = (kin.alpha - beta) / (kin.alpha + beta);
      const double fresnel_p = (e * kin.alpha - beta) / (e * kin.alpha + beta);
      std::ostringstream loc;
      loc << "zeta=" << zeta << " q_z=" << q_z;
      dev.track(std::abs(reflection_te(kin, eps) - fresnel_s), loc.str());
      dev.track(std::abs(reflection_tm_halfspace(kin, eps) - fresnel_p), loc.str());
    }
  return finish("fresnel-limit", dev, tol);
}

CheckResult check_reflection_oracle(double tol, FaultInjection fault) {
  Deviation dev;
  for (double zeta : {0.1, 1.0})
    for (double q_z : {0.2, 1.0})
      for (double omega_c : {0.0, 0.2, 0.5})
        for (bool halfspace : {true, false}) {
          const Material m(15.4, omega_c);
          const VoigtPermittivity eps = voigt_components(zeta, m);
          VoigtPermittivity closed_eps = eps;
          if (fault == FaultInjection::eps_v_sign) closed_eps.eps_yz *= kImag;
          const SlabGeometry geom =
              halfspace ? SlabGeometry::half_space() : SlabGeometry::slab(1.0);
          const ReflectionPair closed =
              reflection_pair(kinematics(zeta, q_z, closed_eps), closed_eps, geom);
          const ReflectionPair oracle =
              reflection_numeric_oracle(kinematics(zeta, q_z, eps), eps, geom);
          std::ostringstream loc;
          loc << "zeta=" << zeta << " q_z=" << q_z << " Omega_c=" << omega_c
              << (halfspace ? " half-space" : " slab d=1");
          dev.track(std::abs(closed.r_s - oracle.r_s), loc.str());
          dev.track(std::abs(closed.r_p - oracle.r_p), loc.str());
        }
  return finish("reflection-oracle", dev, tol);
}

CheckResult check_ideal_mirror_calibration(double tol) {
  LifshitzOptions opt;
  opt.ideal_mirrors = true;
  const Material m(15.4);
  const ForceResult f = pressure_zero_t(1.0, m, SlabGeometry::half_space(), opt);
  Deviation dev;
  dev.track(std::abs(f.ratio - 1.0), "L=1");
  return finish("ideal-mirror-calibration", dev, tol);
}

CheckResult check_isotropic_lifshitz_oracle(double tol) {
  const Material m(15.4, 0.0);
  Deviation dev;
  {
    const ForceResult f = pressure_zero_t(1.0, m, SlabGeometry::half_space());
    const double ref = oracle::isotropic_plasma_pressure_zero_t(1.0, m.eps_l);
    dev.track(std::abs(f.pressure - ref) / std::abs(ref), "zero-T L=1");
  }
  {
    const ForceResult f =
        pressure_finite_t(0.5, m, ThermalState::finite(0.01), SlabGeometry::half_space());
    const double ref = oracle::isotropic_plasma_pressure_finite_t(0.5, m.eps_l, 0.01);
    dev.track(std::abs(f.pressure - ref) / std::abs(ref), "theta=0.01 L=0.5");
  }
  return finish("isotropic-lifshitz-oracle", dev, tol);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateConfig& config) {
  auto tol = [&](double fallback) { return config.tolerance > 0.0 ? config.tolerance : fallback; };
  std::vector<CheckResult> results;
  results.push_back(check_tensor_reduction(tol(1e-12)));
  results.push_back(check_fresnel_limit(tol(1e-12)));
  results.push_back(check_reflection_oracle(tol(1e-8), config.fault));
  results.push_back(check_ideal_mirror_calibration(tol(1e-6)));
  results.push_back(check_isotropic_lifshitz_oracle(tol(1e-8)));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace magcas

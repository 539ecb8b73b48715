#include "magcas/lifshitz.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "magcas/errors.hpp"

namespace magcas {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = std::numbers::pi;

// Two-plate reflectances at one imaginary-axis point. R_s = r_s^2 (r_s is
// real there) and R_p = r_p(q_z) r_p(-q_z) = |r_p|^2: the mirror plate sees
// the reversed in-plane wavevector.
struct Reflectances {
  double R_s;
  double R_p;
};

Reflectances reflectances(double zeta, double kappa, const Material& m,
                          const SlabGeometry& geom) {
  const double qz2 = std::max(kappa * kappa - zeta * zeta, 0.0);
  const VoigtPermittivity eps = imaginary_axis_components(zeta, m);
  const Kinematics kin = kinematics(zeta, std::sqrt(qz2), eps);
  const ReflectionPair r = reflection_pair(kin, eps, geom);
  return {std::norm(r.r_s), std::norm(r.r_p)};
}

// R e^{-2 kappa L} / (1 - R e^{-2 kappa L}), written as
// R / (expm1(2 kappa L) + (1 - R)) so the near-unity-reflectance corner
// at small kappa is free of cancellation.
double clamped_kernel(double reflectance, double kappa, double separation) {
  const double denom = std::expm1(2.0 * kappa * separation) + (1.0 - reflectance);
  if (!(denom > 0.0))
    throw std::domain_error(
        "polarization_kernel: R e^{-2 kappa L} >= 1 (bound-state pole); reflectances must be "
        "passive on the imaginary axis");
  return reflectance / denom;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

ThermalState ThermalState::finite(double theta) {
  if (!(theta >= 0.0)) throw std::invalid_argument("ThermalState: theta must be >= 0");
  if (theta == 0.0) return zero();
  return {theta, false};
}

double matsubara_frequency(long n, const ThermalState& thermal) {
  if (n < 0) throw std::domain_error("matsubara_frequency: n must be >= 0");
  if (thermal.zero_temperature || !(thermal.theta > 0.0))
    throw std::domain_error(
        "matsubara_frequency: zero-temperature state has no discrete frequencies; use the "
        "integral path");
  return static_cast<double>(n) * thermal.theta;
}

std::pair<double, double> polarization_kernel(double zeta, double kappa, double separation,
                                              const Material& m, const SlabGeometry& geom) {
  if (!(kappa > 0.0)) throw std::domain_error("polarization_kernel: kappa must be > 0");
  if (!(separation > 0.0)) throw std::domain_error("polarization_kernel: separation must be > 0");
  if (kappa < zeta) throw std::domain_error("polarization_kernel: kappa >= zeta required");

  Reflectances R;
  if (zeta == 0.0) {
    // zeta -> 0+ limit, evaluated numerically just off the axis with a
    // step-halving consistency check. With damping the limit is reached
    // on scales involving gamma as well, so the probe walks down until
    // the check settles.
    const double scale = m.gamma > 0.0 ? std::min(kappa, m.gamma) : kappa;
    bool settled = false;
    for (double z1 = scale * 1e-8; z1 >= scale * 1e-15; z1 *= 1e-2) {
      R = reflectances(z1, kappa, m, geom);
      const Reflectances check = reflectances(2.0 * z1, kappa, m, geom);
      if (std::abs(R.R_s - check.R_s) <= 1e-9 && std::abs(R.R_p - check.R_p) <= 1e-9) {
        settled = true;
        break;
      }
    }
    if (!settled)
      throw ConvergenceError("polarization_kernel: zero-frequency reflectance limit not settled");
  } else {
    R = reflectances(zeta, kappa, m, geom);
  }

  return {clamped_kernel(R.R_s, kappa, separation), clamped_kernel(R.R_p, kappa, separation)};
}

std::pair<double, double> ideal_polarization_kernel(double kappa, double separation) {
  if (!(kappa > 0.0)) throw std::domain_error("ideal_polarization_kernel: kappa must be > 0");
  if (!(separation > 0.0))
    throw std::domain_error("ideal_polarization_kernel: separation must be > 0");
  const double k = clamped_kernel(1.0, kappa, separation);
  return {k, k};
}

double ideal_pressure(double separation) {
  if (!(separation > 0.0)) throw std::domain_error("ideal_pressure: separation must be > 0");
  const double l2 = separation * separation;
  return -kPi * kPi / (240.0 * l2 * l2);
}

namespace {

// kappa^2 * (TE kernel + TM kernel) integrated over [zeta, cutoff/L].
// Returns the integral and its quadrature error estimate.
struct KappaIntegral {
  double value;
  double error;
  long evaluations;
};

KappaIntegral kappa_integral(double zeta, double separation, const Material& m,
                             const SlabGeometry& geom, const LifshitzOptions& opt) {
  const double kappa_max = opt.kappa_cutoff / separation;
  if (zeta >= kappa_max) return {0.0, 0.0, 0};

  long evals = 0;
  auto integrand = [&](double kappa) {
    ++evals;
    const auto k = opt.ideal_mirrors ? ideal_polarization_kernel(kappa, separation)
                                     : polarization_kernel(zeta, kappa, separation, m, geom);
    return kappa * kappa * (k.first + k.second);
  };

  double err = 0.0;
  const double v = gauss_kronrod<double, 15>::integrate(integrand, zeta, kappa_max, 15,
                                                        opt.kappa_rel_tol, &err);
  return {v, err, evals};
}

}  // namespace

ForceResult pressure_finite_t(double separation, const Material& m, const ThermalState& thermal,
                              const SlabGeometry& geom, const LifshitzOptions& opt) {
  if (!(separation > 0.0)) throw std::domain_error("pressure_finite_t: separation must be > 0");
  if (thermal.zero_temperature || !(thermal.theta > 0.0))
    throw std::invalid_argument("pressure_finite_t: needs theta > 0; use pressure_zero_t");

  const double theta = thermal.theta;
  const double kappa_max = opt.kappa_cutoff / separation;

  KahanSum sum;
  double err_acc = 0.0;
  long used = 0;
  int consecutive_small = 0;
  long safety_target = -1;  // once truncation triggers at n = N, run on to 2N

  for (long n = 0;; ++n) {
    if (n > opt.max_matsubara_terms) {
      std::ostringstream msg;
      msg << "pressure_finite_t: Matsubara sum not converged after " << opt.max_matsubara_terms
          << " terms (L=" << separation << ", theta=" << theta << ", partial sum=" << sum.sum
          << ")";
      throw ConvergenceError(msg.str());
    }

    const double zeta_n = matsubara_frequency(n, thermal);
    const KappaIntegral term = kappa_integral(zeta_n, separation, m, geom, opt);
    const double weight = (n == 0) ? 0.5 : 1.0;
    sum.add(weight * term.value);
    err_acc += weight * term.error;
    used = n + 1;

    if (zeta_n >= kappa_max) break;  // every later term is identically zero

    if (n >= 1) {
      const double scale = std::max(std::abs(sum.sum), 1e-300);
      const bool small = std::abs(weight * term.value) <= opt.matsubara_rel_cut * scale;
      consecutive_small = small ? consecutive_small + 1 : 0;
      if (!small) safety_target = -1;
      if (safety_target < 0 && consecutive_small >= 3) safety_target = 2 * n;
      if (safety_target >= 0 && n >= safety_target && used >= opt.min_matsubara_terms) break;
    }
  }

  const double prefactor = theta / (2.0 * kPi * kPi);
  ForceResult out;
  out.pressure = -prefactor * sum.sum;
  out.ideal_pressure = ideal_pressure(separation);
  out.ratio = out.pressure / out.ideal_pressure;
  out.matsubara_terms_used = used;
  out.quadrature_error_estimate = prefactor * err_acc;
  return out;
}

ForceResult pressure_zero_t(double separation, const Material& m, const SlabGeometry& geom,
                            const LifshitzOptions& opt) {
  if (!(separation > 0.0)) throw std::domain_error("pressure_zero_t: separation must be > 0");

  const double zeta_max = opt.kappa_cutoff / separation;
  long kernel_evals = 0;

  auto outer = [&](double zeta) {
    const KappaIntegral inner = kappa_integral(zeta, separation, m, geom, opt);
    kernel_evals += inner.evaluations;
    return inner.value;
  };

  double outer_err = 0.0;
  const double integral = gauss_kronrod<double, 15>::integrate(outer, 0.0, zeta_max, 15,
                                                               opt.zeta_rel_tol, &outer_err);

  const double prefactor = 1.0 / (2.0 * kPi * kPi);
  ForceResult out;
  out.pressure = -prefactor * integral;
  out.ideal_pressure = ideal_pressure(separation);
  out.ratio = out.pressure / out.ideal_pressure;
  out.matsubara_terms_used = kernel_evals;
  out.quadrature_error_estimate = prefactor * outer_err;
  return out;
}

ForceResult pressure(double separation, const Material& m, const ThermalState& thermal,
                     const SlabGeometry& geom, const LifshitzOptions& opt) {
  return thermal.zero_temperature ? pressure_zero_t(separation, m, geom, opt)
                                  : pressure_finite_t(separation, m, thermal, geom, opt);
}

unsigned worker_count() {
  const char* env = std::getenv("MAGNETO_CASIMIR_THREADS");
  long requested = 0;
  if (env && *env) {
    char* end = nullptr;
    requested = std::strtol(env, &end, 10);
    if (end == env || requested < 0) requested = 0;
  }
  if (requested == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }
  return static_cast<unsigned>(requested);
}

std::vector<SweepRow> force_sweep(const SweepSpec& spec, const LifshitzOptions& opt) {
  if (spec.separations.empty() || spec.omega_c_values.empty())
    throw std::invalid_argument("force_sweep: separations and omega_c_values must be nonempty");
  for (double l : spec.separations)
    if (!(l > 0.0)) throw std::invalid_argument("force_sweep: separations must be > 0");
  for (double w : spec.omega_c_values)
    if (!(w >= 0.0)) throw std::invalid_argument("force_sweep: omega_c values must be >= 0");

  std::vector<double> omegas = spec.omega_c_values;
  std::vector<double> seps = spec.separations;
  std::sort(omegas.begin(), omegas.end());
  std::sort(seps.begin(), seps.end());

  std::vector<SweepRow> rows(omegas.size() * seps.size());
  auto evaluate = [&](std::size_t idx) {
    const double omega_c = omegas[idx / seps.size()];
    const double L = seps[idx % seps.size()];
    SweepRow& row = rows[idx];
    row.omega_c = omega_c;
    row.separation = L;
    try {
      const Material point_material(spec.material.eps_l, omega_c, spec.material.gamma);
      row.result = pressure(L, point_material, spec.thermal, spec.geometry, opt);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.result = {};
      std::ostringstream msg;
      msg << "(omega_c=" << omega_c << ", L=" << L << ") " << e.what();
      row.error = msg.str();
    }
  };

  const std::size_t count = rows.size();
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) evaluate(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace magcas

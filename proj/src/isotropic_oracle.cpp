#include "magcas/isotropic_oracle.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "magcas/errors.hpp"

namespace magcas::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// kappa^2-weighted TE+TM kernel of the isotropic plasma model at
// (zeta, kappa). beta^2 = kappa^2 - zeta^2 + eps_l (1 + zeta^2) stays
// finite as zeta -> 0, and r_p is formed from beta/eps (which -> 0
// there), so the expression is valid on the whole closed half-line
// zeta >= 0. The kernel R e^{-2 kappa L} / (1 - R e^{-2 kappa L}) is
// written as R / (expm1(2 kappa L) + (1 - R)) with 1 - R factored
// exactly, and kappa/denominator (bounded by 1/(2L)) is formed first:
// exp_sinh probes kappa all the way into the denormal range, where the
// naive ordering turns the integrable corner into 0 * inf.
double integrand(double zeta, double kappa, double separation, double eps_l) {
  // Below 1e-150 the contribution is bounded by kappa/L and the products
  // underflow into 0/0; above the cutoff the kernel has long vanished.
  if (kappa < 1e-150 || kappa > 1e100 || kappa * separation > 400.0) return 0.0;
  const double z2 = zeta * zeta;
  const double beta = std::sqrt(kappa * kappa - z2 + eps_l * (1.0 + z2));
  const double r_s = (kappa - beta) / (kappa + beta);
  const double beta_over_eps = beta * z2 / (eps_l * (1.0 + z2));
  const double r_p = (kappa - beta_over_eps) / (kappa + beta_over_eps);
  const double grow = std::expm1(2.0 * kappa * separation);
  const double one_minus_Rs = 4.0 * kappa * beta / ((kappa + beta) * (kappa + beta));
  const double one_minus_Rp =
      4.0 * kappa * beta_over_eps / ((kappa + beta_over_eps) * (kappa + beta_over_eps));
  return (kappa / (grow + one_minus_Rs)) * (kappa * r_s * r_s) +
         (kappa / (grow + one_minus_Rp)) * (kappa * r_p * r_p);
}

double kappa_integral(double zeta, double separation, double eps_l) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double u) { return integrand(zeta, zeta + u, separation, eps_l); };
  double err = 0.0;
  const double v = integrator.integrate(f, 1e-11, &err);
  if (!(err < 1e-6))
    throw OracleError("isotropic oracle: kappa quadrature did not converge");
  return v;
}

}  // namespace

double isotropic_plasma_pressure_zero_t(double separation, double eps_l) {
  if (!(separation > 0.0) || !(eps_l >= 1.0))
    throw std::invalid_argument("isotropic oracle: bad separation or eps_l");
  boost::math::quadrature::exp_sinh<double> integrator;
  auto outer = [&](double zeta) { return kappa_integral(zeta, separation, eps_l); };
  double err = 0.0;
  const double integral = integrator.integrate(outer, 1e-11, &err);
  if (!(err < 1e-6))
    throw OracleError("isotropic oracle: zeta quadrature did not converge");
  return -integral / (2.0 * kPi * kPi);
}

double isotropic_plasma_pressure_finite_t(double separation, double eps_l, double theta) {
  if (!(separation > 0.0) || !(eps_l >= 1.0) || !(theta > 0.0))
    throw std::invalid_argument("isotropic oracle: bad separation, eps_l or theta");

  double sum = 0.0;
  int consecutive_small = 0;
  for (long n = 0; n <= 2000000; ++n) {
    const double weight = (n == 0) ? 0.5 : 1.0;
    const double term = weight * kappa_integral(n * theta, separation, eps_l);
    sum += term;
    if (n >= 1) {
      consecutive_small = (std::abs(term) <= 1e-12 * std::abs(sum)) ? consecutive_small + 1 : 0;
      if (consecutive_small >= 2) return -(theta / (2.0 * kPi * kPi)) * sum;
    }
  }
  throw OracleError("isotropic oracle: Matsubara sum did not converge");
}

}  // namespace magcas::oracle

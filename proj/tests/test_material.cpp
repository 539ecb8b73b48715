#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "magcas/errors.hpp"
#include "magcas/material.hpp"

using namespace magcas;

namespace {
constexpr cdouble kImag{0.0, 1.0};

double entry_dev(const Tensor3& a, const Tensor3& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(std::abs(b(i, j)), 1.0));
  return worst;
}
}  // namespace

TEST_CASE("material invariants are enforced at construction") {
  CHECK_THROWS_AS(Material(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Material(15.4, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(Material(15.4, 0.2, -1e-3), std::invalid_argument);
  const Material m(15.4, 0.2);
  CHECK(m.gamma == 0.0);
}

TEST_CASE("conductivity tensor is diagonal without a magnetic field") {
  const Material m(15.4, 0.0);
  const Tensor3 s = conductivity_tensor({0.5, 0.0}, {0.0, 0.0, 1.0}, m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        CHECK(std::abs(s(i, j)) > 0.0);
      else
        CHECK(s(i, j) == cdouble(0.0));
    }
  CHECK(s(0, 0) == s(1, 1));
  CHECK(s(1, 1) == s(2, 2));
}

TEST_CASE("conductivity along the field direction ignores omega_c") {
  const cdouble omega{0.0, 0.7};
  const Tensor3 with_field = conductivity_tensor(omega, {1.0, 0.0, 0.0}, Material(15.4, 0.2));
  const Tensor3 without = conductivity_tensor(omega, {1.0, 0.0, 0.0}, Material(15.4, 0.0));
  CHECK(with_field(0, 0) == without(0, 0));
}

TEST_CASE("conductivity rejects bad inputs") {
  const Material m(15.4, 0.2);
  CHECK_THROWS_AS(conductivity_tensor(cdouble(0.0), {1.0, 0.0, 0.0}, m), std::domain_error);
  CHECK_THROWS_AS(conductivity_tensor({0.5, 0.0}, {0.0, 0.0, 0.0}, m), std::domain_error);
  // the zero vector is fine when there is no field to point along
  CHECK_NOTHROW(conductivity_tensor({0.5, 0.0}, {0.0, 0.0, 0.0}, Material(15.4, 0.0)));
  // cyclotron pole on the real axis with no damping
  CHECK_THROWS_AS(conductivity_tensor({0.2, 0.0}, {1.0, 0.0, 0.0}, m), SingularityError);
}

TEST_CASE("dielectric tensor reduces to the isotropic Drude form at zero field") {
  const Material m(15.4, 0.0);
  for (double w : {0.3, 0.9, 2.5}) {
    const Tensor3 e = dielectric_tensor(cdouble(w, 0.0), {0.0, 0.0, 1.0}, m);
    const double expected = 15.4 * (1.0 - 1.0 / (w * w));
    for (int i = 0; i < 3; ++i) {
      CHECK(e(i, i).real() == doctest::Approx(expected).epsilon(1e-14));
      CHECK(e(i, i).imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
    CHECK(std::abs(e(0, 1)) == 0.0);
    CHECK(std::abs(e(1, 2)) == 0.0);
  }
}

TEST_CASE("damped diagonal matches the Drude closed form") {
  const double w = 0.8, g = 0.05;
  const Tensor3 e = dielectric_tensor(cdouble(w, 0.0), {1.0, 0.0, 0.0}, Material(15.4, 0.0, g));
  const cdouble expected = 15.4 * (1.0 - 1.0 / (w * cdouble(w, g)));
  CHECK(std::abs(e(0, 0) - expected) < 1e-13 * std::abs(expected));
  CHECK(std::abs(e(1, 1) - expected) < 1e-13 * std::abs(expected));
}

TEST_CASE("tensor route reproduces the closed Voigt forms on the imaginary axis") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> log_zeta(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> omega_c(0.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const Material m(15.4, omega_c(rng));
    const double zeta = std::exp(log_zeta(rng));
    const Tensor3 full = dielectric_tensor(kImag * zeta, {1.0, 0.0, 0.0}, m);
    const Tensor3 closed = voigt_tensor(voigt_components(zeta, m));
    CHECK(entry_dev(full, closed) < 1e-12);
  }
}

TEST_CASE("damping regularizes the cyclotron pole") {
  const Tensor3 e = dielectric_tensor(cdouble(1.0, 0.0), {1.0, 0.0, 0.0}, Material(15.4, 0.2, 0.05));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::isfinite(std::abs(e(i, j))));
  // and even at omega == Omega_c
  const Tensor3 at_pole =
      dielectric_tensor(cdouble(0.2, 0.0), {1.0, 0.0, 0.0}, Material(15.4, 0.2, 0.05));
  CHECK(std::isfinite(std::abs(at_pole(1, 1))));
}

TEST_CASE("Onsager antisymmetry at every frequency") {
  const Material m(15.4, 0.7);
  for (cdouble w : {cdouble(0.9, 0.0), cdouble(0.0, 1.3), cdouble(0.4, 0.2)}) {
    const Tensor3 eb = dielectric_tensor(w, {1.0, 0.0, 0.0}, m);
    const Tensor3 erev = dielectric_tensor(w, {-1.0, 0.0, 0.0}, m);
    // eps_ij(B) = eps_ji(-B)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(eb(i, j) - erev(j, i)) <= 1e-13 * std::max(std::abs(eb(i, j)), 1.0));
    CHECK(std::abs(eb(1, 2) + eb(2, 1)) <= 1e-13 * std::max(std::abs(eb(1, 2)), 1.0));
    CHECK(std::abs(eb(1, 2) + erev(1, 2)) <= 1e-13 * std::max(std::abs(eb(1, 2)), 1.0));
  }
}

TEST_CASE("voigt components at the reference point") {
  SUBCASE("no field: isotropic pair") {
    const VoigtPermittivity e = voigt_components(1.0, Material(15.4, 0.0));
    CHECK(e.eps_xx.real() == doctest::Approx(30.8).epsilon(1e-14));
    CHECK(e.eps_yy.real() == doctest::Approx(30.8).epsilon(1e-14));
    CHECK(e.eps_yz == cdouble(0.0));
  }
  SUBCASE("Omega_c = 0.2 reference triple") {
    const VoigtPermittivity e = voigt_components(1.0, Material(15.4, 0.2));
    CHECK(e.eps_xx.real() == doctest::Approx(30.8).epsilon(1e-14));
    CHECK(e.eps_yy.real() == doctest::Approx(30.207692307692308).epsilon(1e-14));
    CHECK(e.eps_yz.real() == doctest::Approx(-2.9615384615384615).epsilon(1e-14));
    CHECK(e.eps_xx.imag() == 0.0);
    CHECK(e.eps_yy.imag() == 0.0);
    CHECK(e.eps_yz.imag() == 0.0);
  }
}

TEST_CASE("anisotropy ordering over the sweep range") {
  const Material m(15.4, 0.2);
  double prev_xx = 1e308, prev_yy = 1e308;
  for (int i = 0; i < 200; ++i) {
    const double zeta = 0.02 * std::pow(3.0 / 0.02, i / 199.0);
    const VoigtPermittivity e = voigt_components(zeta, m);
    CHECK(e.eps_xx.real() > e.eps_yy.real());
    CHECK(e.eps_yy.real() > m.eps_l);
    CHECK(e.eps_yz.real() < 0.0);
    CHECK(e.eps_xx.real() < prev_xx);
    CHECK(e.eps_yy.real() < prev_yy);
    prev_xx = e.eps_xx.real();
    prev_yy = e.eps_yy.real();
  }
}

TEST_CASE("imaginary-axis bounds and transparency") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> log_zeta(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> omega_c(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double zeta = std::exp(log_zeta(rng));
    const double oc = omega_c(rng);
    const Material m(15.4, oc);
    const VoigtPermittivity e = voigt_components(zeta, m);
    CHECK(e.eps_xx.real() >= m.eps_l);
    CHECK(e.eps_yy.real() >= m.eps_l);
    CHECK(e.eps_yz.real() <= 0.0);
    if (oc == 0.0)
      CHECK(e.eps_yz.real() == 0.0);
    else
      CHECK(e.eps_yz.real() < 0.0);
    CHECK(std::abs(e.eps_xx.real() - m.eps_l) <= m.eps_l / (zeta * zeta) * (1.0 + 1e-12));
    CHECK(std::abs(e.eps_yy.real() - m.eps_l) <= m.eps_l / (zeta * zeta) * (1.0 + 1e-12));
  }
}

TEST_CASE("eps_yy decreases strictly with omega_c") {
  for (double zeta : {0.05, 0.3, 1.0, 4.0}) {
    double prev = 1e308;
    for (double oc : {0.0, 0.2, 0.5, 1.0, 2.0}) {
      const double yy = voigt_components(zeta, Material(15.4, oc)).eps_yy.real();
      CHECK(yy < prev);
      prev = yy;
    }
  }
}

TEST_CASE("voigt components reject bad input") {
  CHECK_THROWS_AS(voigt_components(0.0, Material(15.4, 0.2)), std::domain_error);
  CHECK_THROWS_AS(voigt_components(-1.0, Material(15.4, 0.2)), std::domain_error);
  CHECK_THROWS_AS(voigt_components(1.0, Material(15.4, 0.2, 0.1)), std::domain_error);
}

TEST_CASE("real-axis components") {
  SUBCASE("epsilon vanishes at the plasma frequency for the lossless model") {
    const VoigtPermittivity e = real_axis_components(1.0, Material(15.4, 0.0));
    CHECK(std::abs(e.eps_xx) < 1e-14);
    CHECK(std::abs(e.eps_yy) < 1e-14);
    CHECK(std::abs(e.eps_yz) == 0.0);
  }
  SUBCASE("gyrotropic entry is positive imaginary above the resonance") {
    const VoigtPermittivity e = real_axis_components(2.0, Material(15.4, 0.2));
    CHECK(e.eps_yz.real() == 0.0);
    CHECK(e.eps_yz.imag() == doctest::Approx(0.3888888888888889).epsilon(1e-14));
  }
  SUBCASE("eps_yy is negative below the plasma frequency") {
    const VoigtPermittivity e = real_axis_components(0.5, Material(15.4, 0.2));
    CHECK(e.eps_yy.imag() == 0.0);
    CHECK(e.eps_yy.real() < 0.0);
  }
  SUBCASE("cyclotron pole is rejected when undamped, finite when damped") {
    CHECK_THROWS_AS(real_axis_components(0.2, Material(15.4, 0.2)), std::domain_error);
    const VoigtPermittivity e = real_axis_components(0.2, Material(15.4, 0.2, 0.05));
    CHECK(std::isfinite(std::abs(e.eps_yy)));
  }
  SUBCASE("bad frequency") {
    CHECK_THROWS_AS(real_axis_components(0.0, Material(15.4)), std::domain_error);
  }
}

TEST_CASE("general imaginary-axis components stay real with damping") {
  const Material damped(15.4, 0.3, 0.02);
  for (double zeta : {0.05, 0.5, 2.0}) {
    const VoigtPermittivity e = imaginary_axis_components(zeta, damped);
    CHECK(std::abs(e.eps_xx.imag()) < 1e-13 * std::abs(e.eps_xx.real()));
    CHECK(std::abs(e.eps_yy.imag()) < 1e-13 * std::abs(e.eps_yy.real()));
    CHECK(e.eps_xx.real() > damped.eps_l);
  }
  // continuity toward the undamped closed forms
  const VoigtPermittivity nearly = imaginary_axis_components(1.0, Material(15.4, 0.2, 1e-9));
  const VoigtPermittivity exact = voigt_components(1.0, Material(15.4, 0.2));
  CHECK(std::abs(nearly.eps_yy - exact.eps_yy) < 1e-6);
  CHECK(std::abs(nearly.eps_yz - exact.eps_yz) < 1e-6);
}

TEST_CASE("voigt tensor carries the implied entries") {
  const VoigtPermittivity e = voigt_components(0.7, Material(15.4, 0.5));
  const Tensor3 t = voigt_tensor(e);
  CHECK(t(2, 2) == e.eps_yy);
  CHECK(t(2, 1) == -e.eps_yz);
  CHECK(t(0, 1) == cdouble(0.0));
  CHECK(t(1, 0) == cdouble(0.0));
  CHECK(t(0, 2) == cdouble(0.0));
  CHECK(t(2, 0) == cdouble(0.0));
}

#pragma once

namespace magcas::oracle {

// Self-contained isotropic plasma-model Lifshitz pressure, written as a
// single code path with its own closed-form reflectances, its own
// zeta -> 0 handling and a different quadrature rule than the engine.
// Used by tests and `validate` to cross-check the tensor pipeline at
// omega_c = 0. Units match the engine (hbar omega_p^4 / c^3).

double isotropic_plasma_pressure_zero_t(double separation, double eps_l);
double isotropic_plasma_pressure_finite_t(double separation, double eps_l, double theta);

}  // namespace magcas::oracle

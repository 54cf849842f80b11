#pragma once

#include <functional>
#include <stdexcept>

namespace dihedral4::quad {

// Antiderivative of sqrt(a/x + b) for a >= 0, b > 0:
//   sqrt(x(a+bx)) + a/(2 sqrt b) * log(2 sqrt b sqrt(x(a+bx)) + 2bx + a).
double sqrt_affine_antiderivative(double a, double b, double x);

// Definite integral of sqrt(a/x + b) over [0, x1] by the closed form.
double sqrt_affine_integral(double a, double b, double x1);

// Adaptive Gauss-Kronrod 7/15 to absolute tolerance.
double adaptive_gauss_kronrod(const std::function<double(double)>& f,
                              double a, double b, double abs_tol = 1e-10,
                              int max_depth = 60);

// int_0^X sqrt(c Phi^{-2 beta} + d) dPhi, the recurring appendix integrand
// (integrable endpoint singularity; d may be negative provided the radicand
// stays nonnegative on (0, X]). Uses the substitution xi = Phi^{1-beta}.
double sqrt_power_integral(double c, double d, double beta, double X,
                           double abs_tol = 1e-10);

struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dihedral4::quad

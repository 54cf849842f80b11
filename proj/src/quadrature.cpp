#include "dihedral4/quadrature.hpp"

#include <cmath>

namespace dihedral4::quad {

namespace {

// Kronrod 15 abscissae/weights on [-1,1] and the embedded Gauss-7 weights.
constexpr double xk[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double wk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
constexpr double wg[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct GK {
  double integral;
  double error;
};

GK gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + hl * xk[i]);
    resk += wk[i] * v;
    if (i % 2 == 1) resg += wg[i / 2] * v;
  }
  GK r;
  r.integral = resk * hl;
  r.error = std::fabs((resk - resg) * hl);
  return r;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth) {
  const GK whole = gk15(f, a, b);
  if (whole.error <= tol || depth <= 0) {
    if (depth <= 0 && whole.error > 100.0 * tol)
      throw quadrature_error("adaptive_gauss_kronrod: subdivision limit reached");
    return whole.integral;
  }
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth - 1) +
         adapt(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace

double sqrt_affine_antiderivative(double a, double b, double x) {
  if (b <= 0.0)
    throw std::domain_error("sqrt_affine_antiderivative: requires b > 0");
  if (a < 0.0)
    throw std::domain_error("sqrt_affine_antiderivative: requires a >= 0");
  if (x < 0.0)
    throw std::domain_error("sqrt_affine_antiderivative: requires x >= 0");
  if (x == 0.0) {
    return a > 0.0 ? a / (2.0 * std::sqrt(b)) * std::log(a) : 0.0;
  }
  const double root = std::sqrt(x * (a + b * x));
  double r = root;
  if (a > 0.0)
    r += a / (2.0 * std::sqrt(b)) *
         std::log(2.0 * std::sqrt(b) * root + 2.0 * b * x + a);
  return r;
}

double sqrt_affine_integral(double a, double b, double x1) {
  return sqrt_affine_antiderivative(a, b, x1) -
         sqrt_affine_antiderivative(a, b, 0.0);
}

double adaptive_gauss_kronrod(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, max_depth);
}

double sqrt_power_integral(double c, double d, double beta, double X,
                           double abs_tol) {
  if (X <= 0.0) return 0.0;
  if (c < 0.0) throw quadrature_error("sqrt_power_integral: c must be >= 0");
  // Phi = xi^{1/(1-beta)}:  integrand dPhi = sqrt(c + d xi^{2beta/(1-beta)})
  //                                           / (1-beta) dxi.
  const double ex = 2.0 * beta / (1.0 - beta);
  auto g = [&](double xi) {
    const double rad = c + d * std::pow(xi, ex);
    if (rad < 0.0) {
      if (rad < -1e-9)
        throw quadrature_error("sqrt_power_integral: negative radicand");
      return 0.0;
    }
    return std::sqrt(rad) / (1.0 - beta);
  };
  return adaptive_gauss_kronrod(g, 0.0, std::pow(X, 1.0 - beta), abs_tol);
}

}  // namespace dihedral4::quad

#include "dihedral4/central_configs.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dihedral4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bracketed bisection + Newton polish on f over [lo, hi]; f(lo), f(hi) must
// bracket a simple root. Tolerance 1e-12 in the argument.
double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& fprime, double lo,
                 double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::runtime_error("central_configs: root not bracketed");
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double fp = fprime(x);
    if (fp == 0.0) break;
    const double step = f(x) / fp;
    x -= step;
    if (std::fabs(step) < 1e-15) break;
  }
  return x;
}

}  // namespace

std::vector<CentralConfiguration> enumerate_ccs(const Homogeneity& h) {
  // Planar section angle (theta = pi/4 by the h'_theta symmetry).
  const double th_pl = find_root(
      [&](double x) { return section_potential_derivative(Section::planar, h, x, 1); },
      [&](double x) { return section_potential_derivative(Section::planar, h, x, 2); },
      0.3, kPi / 2.0 - 0.3);
  // Tetrahedral angle (sin^2 = 1/3 for every alpha).
  const double ph_te = find_root(
      [&](double x) { return section_potential_derivative(Section::tetra, h, x, 1); },
      [&](double x) { return section_potential_derivative(Section::tetra, h, x, 2); },
      0.2, kPi / 2.0 - 0.2);

  std::vector<CentralConfiguration> ccs;
  ccs.reserve(20);
  auto push = [&](CcKind kind, std::string label, double theta, double phi) {
    const double u = potential_sphere(h, {theta, phi});
    ccs.push_back({kind, std::move(label), {theta, phi}, u,
                   std::sqrt(2.0 * u)});
  };
  // 4 equatorial rectangles p_{1k} at theta = (2k-1) pi/4, phi = 0.
  for (int k = 1; k <= 4; ++k)
    push(CcKind::rectangular, "p1" + std::to_string(k),
         th_pl + (k - 1) * kPi / 2.0, 0.0);
  // 8 prism rectangles: p_{2k} on phi = +pi/4, p_{3k} on phi = -pi/4,
  // theta = k pi/2 (p21 = (pi/2, pi/4) and p31 = (0, pi/4) per the
  // connection diagram; the p3 ring starts at theta = 0).
  for (int k = 1; k <= 4; ++k)
    push(CcKind::rectangular, "p2" + std::to_string(k),
         std::fmod(k * kPi / 2.0, 2.0 * kPi), kPi / 4.0);
  for (int k = 1; k <= 4; ++k)
    push(CcKind::rectangular, "p3" + std::to_string(k), (k - 1) * kPi / 2.0,
         -kPi / 4.0);
  // 8 tetrahedra e_{k1}/e_{k2} at theta = (2k-1) pi/4, phi = +-phi_te.
  for (int k = 1; k <= 4; ++k)
    push(CcKind::tetrahedral, "e" + std::to_string(k) + "1",
         (2.0 * k - 1.0) * kPi / 4.0, ph_te);
  for (int k = 1; k <= 4; ++k)
    push(CcKind::tetrahedral, "e" + std::to_string(k) + "2",
         (2.0 * k - 1.0) * kPi / 4.0, -ph_te);
  return ccs;
}

double vbar_planar_closed(double alpha) {
  return std::sqrt(std::pow(2.0, 1.0 - alpha) +
                   std::pow(2.0, 2.0 - alpha / 2.0));
}

double vbar_tetra_closed(double alpha) {
  return std::sqrt(std::pow(2.0, 1.0 - alpha) * std::pow(3.0, alpha) *
                       std::pow(6.0, -alpha / 2.0) +
                   std::pow(4.0, 1.0 - alpha) * std::pow(3.0, alpha / 2.0) *
                       std::pow(2.0, alpha / 2.0));
}

VbarPair vbar(const Homogeneity& h, const CentralConfiguration& cc) {
  const double v = cc.kind == CcKind::rectangular
                       ? vbar_planar_closed(h.alpha)
                       : vbar_tetra_closed(h.alpha);
  return {v, -v};
}

double vl_gap(double alpha) {
  if (alpha < 0.0 || alpha >= 2.0)
    throw std::domain_error("vl_gap: alpha must lie in [0,2)");
  return std::sqrt(std::pow(2.0, 1.0 - alpha) +
                   std::pow(2.0, 2.0 - alpha / 2.0)) -
         vbar_tetra_closed(alpha);
}

std::pair<std::complex<double>, std::complex<double>> characteristic_exponents(
    const Homogeneity& h, double lambda, double vbar) {
  const double p = (h.beta - 1.0) * vbar;
  const double disc = p * p + 4.0 * lambda;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return {std::complex<double>((p + r) / 2.0, 0.0),
            std::complex<double>((p - r) / 2.0, 0.0)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {std::complex<double>(p / 2.0, im),
          std::complex<double>(p / 2.0, -im)};
}

ManifoldDims manifold_dimensions(CcKind kind, int sign_vbar) {
  // Table of stable/unstable dimensions and their parabolic intersections;
  // the table's parabolic column is taken as authoritative (the proposition's
  // codimension phrasing maps onto it after the v -> -v duality).
  if (kind == CcKind::rectangular)
    return sign_vbar > 0 ? ManifoldDims{3, 2, 3, 1} : ManifoldDims{2, 3, 1, 3};
  return sign_vbar > 0 ? ManifoldDims{2, 3, 2, 2} : ManifoldDims{3, 2, 2, 2};
}

Section cc_section(const CentralConfiguration& cc) {
  return cc.kind == CcKind::tetrahedral ? Section::tetra : Section::planar;
}

LinearizationReport linearize(const Homogeneity& h,
                              const CentralConfiguration& cc, int sign_vbar) {
  // All rectangular CCs share the planar-section second derivative at pi/4
  // (their own symmetric circles are potential-isometric copies); the
  // tetrahedral ones use the tetra section at the CC angle.
  const Section sec = cc_section(cc);
  const double x = sec == Section::planar ? kPi / 4.0
                                          : std::fabs(cc.angles.phi);
  const double lambda = section_potential_derivative(sec, h, x, 2);
  const double vb = sign_vbar > 0 ? cc.vbar_pos : -cc.vbar_pos;
  auto [m1, m2] = characteristic_exponents(h, lambda, vb);
  return {lambda, m1, m2, manifold_dimensions(cc.kind, sign_vbar)};
}

}  // namespace dihedral4

#include "dihedral4/flows.hpp"

#include <cmath>

#include "dihedral4/quadrature.hpp"

namespace dihedral4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sqrt_pos(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

}  // namespace

FullState vf_full(const Homogeneity& h, const FullState& st) {
  const double u = potential_cartesian(h, st.s);
  const Vec3 grad = sphere_gradient(h, st.s);
  const double w2 = dot(st.w, st.w);
  FullState d;
  d.rho = st.rho * st.v;
  d.v = w2 + h.beta * st.v * st.v - h.alpha * u;
  d.s = st.w;
  for (int i = 0; i < 3; ++i)
    d.w[i] = -w2 * st.s[i] + (h.beta - 1.0) * st.v * st.w[i] + grad[i];
  return d;
}

double full_energy_residual(const Homogeneity& h, const FullState& st,
                            double energy_h) {
  const double u = potential_cartesian(h, st.s);
  return dot(st.w, st.w) + st.v * st.v - 2.0 * u -
         2.0 * std::pow(st.rho, h.alpha) * energy_h;
}

std::pair<double, double> vf_projected(Section sec, const SectionDynamics& dyn,
                                       double x, double v, int u_sign) {
  const double g = 2.0 * section_potential(sec, dyn.h, x) - v * v;
  if (g < 0.0)
    throw std::domain_error("vf_projected: v^2 >= 2U (outside the graph)");
  return {u_sign * std::sqrt(g), (1.0 - dyn.beta_dyn) * g};
}

double one_form_dvdx(Section sec, const SectionDynamics& dyn, double x,
                     double v, int u_sign) {
  const double g = 2.0 * section_potential(sec, dyn.h, x) - v * v;
  return u_sign * (1.0 - dyn.beta_dyn) * sqrt_pos(g);
}

double regularized_energy_residual(Section sec, const Homogeneity& h,
                                   const SectionState& st, double rho,
                                   double energy) {
  const double R = section_regularizer(sec, h, st.x);
  const double W = section_regularized_potential(sec, h, st.x);
  const double rho_a = rho > 0.0 ? std::pow(rho, h.alpha) : 0.0;
  return st.u * st.u +
         (st.v * st.v - 2.0 * rho_a * energy) * R * R / W - 2.0 * R;
}

std::array<double, 4> vf_regularized(Section sec, const SectionDynamics& dyn,
                                     const SectionState& st, double rho,
                                     double energy, double residual_guard) {
  const Homogeneity& h = dyn.h;
  if (residual_guard > 0.0 &&
      std::fabs(regularized_energy_residual(sec, h, st, rho, energy)) >
          residual_guard)
    throw constraint_violation_error(
        "vf_regularized: energy-relation residual exceeds guard");
  const double R = section_regularizer(sec, h, st.x);
  const double Rp = section_regularizer_derivative(sec, h, st.x);
  const double W = section_regularized_potential(sec, h, st.x);
  const double Wp = section_regularized_potential_derivative(sec, h, st.x);
  const double sW = std::sqrt(W);
  const double u2_over_R = st.u * st.u / R;

  std::array<double, 4> d;
  d[0] = R * rho * st.v / sW;
  d[1] = sW * u2_over_R +
         dyn.beta_dyn * (R * st.v * st.v - 2.0 * W) / sW;
  d[2] = st.u;
  // u' = (beta_dyn - 1) v u R / sqrt(W) + W'/(2W) (2R - u^2)
  //      - R' (1 - u^2/R)    [chain-rule form of the regularized equation]
  d[3] = (dyn.beta_dyn - 1.0) * st.v * st.u * R / sW +
         0.5 * Wp / W * (2.0 * R - st.u * st.u) - Rp * (1.0 - u2_over_R);
  return d;
}

std::array<double, 4> vf_regularized_substituted(Section sec,
                                                 const SectionDynamics& dyn,
                                                 const SectionState& st,
                                                 double rho, double energy) {
  // v' and u' with u^2 eliminated through the energy relation; valid only on
  // the energy shell. Relative to the printed substituted display the last
  // u' term carries the regularizer factor R (see the derivative of R/R).
  const Homogeneity& h = dyn.h;
  const double R = section_regularizer(sec, h, st.x);
  const double Rp = section_regularizer_derivative(sec, h, st.x);
  const double W = section_regularized_potential(sec, h, st.x);
  const double Wp = section_regularized_potential_derivative(sec, h, st.x);
  const double sW = std::sqrt(W);
  const double rho_a = rho > 0.0 ? std::pow(rho, h.alpha) : 0.0;
  const double bd = dyn.beta_dyn;

  std::array<double, 4> d;
  d[0] = R * rho * st.v / sW;
  d[1] = sW * (2.0 * (1.0 - bd) +
               ((bd - 1.0) * st.v * st.v + 2.0 * rho_a * energy) * R / W);
  d[2] = st.u;
  d[3] = (bd - 1.0) * st.v * st.u * R / sW +
         0.5 * Wp / W * (2.0 * R - st.u * st.u) +
         Rp * (1.0 + (2.0 * rho_a * energy - st.v * st.v) * R / W);
  return d;
}

double manifold_residual(Section sec, const Homogeneity& h,
                         const SectionState& st) {
  const double R = section_regularizer(sec, h, st.x);
  const double W = section_regularized_potential(sec, h, st.x);
  return st.u * st.u + st.v * st.v * R * R / W - 2.0 * R;
}

double manifold_constraint_derivative(Section sec, const SectionDynamics& dyn,
                                      const SectionState& st) {
  const Homogeneity& h = dyn.h;
  const double R = section_regularizer(sec, h, st.x);
  const double Rp = section_regularizer_derivative(sec, h, st.x);
  const double W = section_regularized_potential(sec, h, st.x);
  const double Wp = section_regularized_potential_derivative(sec, h, st.x);
  const auto d = vf_regularized(sec, dyn, st, 0.0, 0.0, 0.0);
  const double dC_dx =
      st.v * st.v * (2.0 * R * Rp * W - R * R * Wp) / (W * W) - 2.0 * Rp;
  const double dC_dv = 2.0 * st.v * R * R / W;
  const double dC_du = 2.0 * st.u;
  return dC_dx * d[2] + dC_dv * d[1] + dC_du * d[3];
}

double manifold_u(Section sec, const Homogeneity& h, double x, double v,
                  int u_sign) {
  const double R = section_regularizer(sec, h, x);
  const double W = section_regularized_potential(sec, h, x);
  const double u2 = 2.0 * R - v * v * R * R / W;
  return u_sign * sqrt_pos(u2);
}

double kepler_transit_angle(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("kepler_transit_angle: beta must lie in (0,1)");
  return kPi / (1.0 - beta);
}

double kepler_transit_measured(double beta, double u_const, double eps) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("kepler_transit_measured: beta must lie in (0,1)");
  const double vmax = std::sqrt(2.0 * u_const);
  ode::DormandPrince<2> dp(
      [&](double, const ode::State<2>& y, ode::State<2>& dy) {
        const double g = 2.0 * u_const - y[1] * y[1];
        dy[0] = sqrt_pos(g);
        dy[1] = (1.0 - beta) * g;
      });
  std::vector<ode::Event<2>> evs;
  evs.push_back({[&](double, const ode::State<2>& y) {
                   return y[1] - (vmax - eps);
                 },
                 +1, true, 0});
  ode::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  auto res = dp.integrate(0.0, {0.0, -vmax + eps}, 1e6, opt, evs);
  if (!res.terminated_by_event)
    throw std::runtime_error("kepler_transit_measured: no transit");
  const double theta_span = res.terminal_event.y[0];
  // analytic tails: Delta theta = (pi/2 - arcsin(|v|/vmax)) / (1 - beta)
  const double v0 = -vmax + eps, v1 = res.terminal_event.y[1];
  const double tail0 =
      (kPi / 2.0 - std::asin(std::fabs(v0) / vmax)) / (1.0 - beta);
  const double tail1 = (kPi / 2.0 - std::asin(v1 / vmax)) / (1.0 - beta);
  return theta_span + tail0 + tail1;
}

double arm_hop(Section sec, const Homogeneity& h, double arm, double v_at,
               double delta, double fac) {
  // One-sided increment: int_0^delta fac sqrt(2U - v^2) d eps with the
  // substitution xi = eps^{1-beta}; the radicand is evaluated through the
  // arm-scaled form 2U eps^alpha, finite down to the arm itself.
  const double b = h.beta;
  auto one_sided = [&](double v) {
    const double ex = 2.0 * b / (1.0 - b);
    auto g = [&](double xi) {
      const double eps_a = std::pow(xi, ex);  // eps^alpha
      const double eps = std::pow(xi, 1.0 / (1.0 - b));
      const double rad = section_arm_scaled_2u(sec, h, arm, eps) -
                         v * v * eps_a;
      return fac / (1.0 - b) * sqrt_pos(rad);
    };
    return quad::adaptive_gauss_kronrod(g, 0.0, std::pow(delta, 1.0 - b),
                                        1e-14, 40);
  };
  const double d1 = one_sided(v_at);
  const double d2 = one_sided(v_at + d1);
  return d1 + d2;
}

ArmZonePassage arm_zone_passage(Section sec, const SectionDynamics& dyn,
                                double arm, double v_in, double delta,
                                bool reflect_out, const IntegratorConfig& cfg) {
  // Traverse [arm - delta, arm] (and back when reflecting) in the
  // substituted chart xi = eps^{1-beta}, which is smooth up to the arm:
  //   dv/dxi      = -+ fac/(1-b) sqrt(armU(eps) - v^2 eps^alpha)
  //   dsigma/dxi  = 1 / ((1-b) sqrt((2W/armU) (2 - 2 v^2 eps^alpha/armU)))
  // where armU = 2 U eps^alpha stays finite at eps = 0. Driving the sigma
  // field closer to the arm is hopeless instead: the energy-relation
  // direction is unstable leaving an arm by a factor ~ (R_in/R_arm)^2.
  const Homogeneity& h = dyn.h;
  const double b = h.beta;
  const double fac = 1.0 - dyn.beta_dyn;
  const double ex = 2.0 * b / (1.0 - b);
  ode::Options opt;
  opt.rel_tol = std::fmin(cfg.rel_tol, 1e-11);
  opt.abs_tol = std::fmin(cfg.abs_tol, 1e-13);

  auto field = [&](int dv_sign) {
    return [&, dv_sign](double xi, const ode::State<2>& y, ode::State<2>& dy) {
      const double eps = std::pow(xi, 1.0 / (1.0 - b));
      const double eps_a = std::pow(xi, ex);
      const double au = section_arm_scaled_2u(sec, h, arm, eps);
      const double rad = au - y[0] * y[0] * eps_a;
      dy[0] = dv_sign * fac / (1.0 - b) * sqrt_pos(rad);
      const double inward = arm > 0.0 ? arm - eps : arm + eps;
      const double W = section_regularized_potential(sec, h, inward);
      const double q = (2.0 * W / au) * 2.0 * (1.0 - y[0] * y[0] * eps_a / au);
      dy[1] = 1.0 / ((1.0 - b) * std::sqrt(std::fmax(q, 1e-30)));
    };
  };
  const double xi0 = std::pow(delta, 1.0 - b);
  ArmZonePassage out;
  {
    ode::DormandPrince<2> in(field(-1));
    auto r = in.integrate(xi0, {v_in, 0.0}, 0.0, opt);
    out.v_at_arm = r.y.back()[0];
    out.sigma_elapsed = r.y.back()[1];
  }
  if (!reflect_out) {
    out.v_out = out.v_at_arm;
    return out;
  }
  ode::DormandPrince<2> outward(field(+1));
  auto r = outward.integrate(0.0, {out.v_at_arm, out.sigma_elapsed}, xi0, opt);
  out.v_out = r.y.back()[0];
  out.sigma_elapsed = r.y.back()[1];
  return out;
}

Trajectory integrate_regularized(Section sec, const SectionDynamics& dyn,
                                 const SectionState& st0, double sigma_end,
                                 const IntegratorConfig& cfg,
                                 double arm_delta) {
  const Homogeneity& h = dyn.h;
  const double lo = section_lower_arm(sec), hi = section_upper_arm(sec);
  Trajectory traj;
  double sigma = 0.0;
  SectionState st = st0;

  ode::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_step = cfg.max_step;
  opt.max_steps = cfg.max_steps;

  auto record = [&](double s, const ode::State<3>& y) {
    traj.sigma.push_back(s);
    traj.state.push_back({y[0], y[1], y[2]});
    traj.energy_residual.push_back(
        manifold_residual(sec, h, {y[0], y[1], y[2]}));
  };

  while (sigma < sigma_end) {
    ode::DormandPrince<3> stepper(
        [&](double, const ode::State<3>& y, ode::State<3>& dy) {
          const auto d =
              vf_regularized(sec, dyn, {y[0], y[1], y[2]}, 0.0, 0.0, 0.0);
          dy = {d[2], d[1], d[3]};
        });
    std::vector<ode::Event<3>> evs;
    // hand off to the substituted chart at the arm-zone edge
    evs.push_back({[&](double, const ode::State<3>& y) {
                     return (hi - y[0]) - arm_delta;
                   },
                   -1, true, 0});
    evs.push_back({[&](double, const ode::State<3>& y) {
                     return (y[0] - lo) - arm_delta;
                   },
                   -1, true, 1});
    evs.push_back({[&](double, const ode::State<3>& y) { return y[1]; }, 0,
                   false, 2});
    auto res = stepper.integrate(sigma, {st.x, st.v, st.u}, sigma_end, opt,
                                 evs);
    for (std::size_t i = (sigma == 0.0 ? 0 : 1); i < res.t.size(); ++i)
      record(res.t[i], res.y[i]);
    for (const auto& e : res.events)
      if (e.id == 2)
        traj.events.push_back(
            {e.t, EventKind::v_zero, {e.y[0], e.y[1], e.y[2]}});
    if (!res.terminated_by_event) break;

    // Arm passage: cross the zone in the substituted (x, v) chart (the
    // sigma field stays away from the arm, where the energy-relation
    // direction is violently unstable), re-enter reflected with u from
    // the constraint.
    const auto& hit = res.terminal_event;
    const double arm = hit.id == 0 ? hi : lo;
    const double eps_here = std::fabs(arm - hit.y[0]);
    const auto pass =
        arm_zone_passage(sec, dyn, arm, hit.y[1], eps_here, true, cfg);
    traj.events.push_back({hit.t + pass.sigma_elapsed / 2.0,
                           EventKind::arm_proximity,
                           {arm, pass.v_at_arm, 0.0}});
    sigma = hit.t + pass.sigma_elapsed;
    st.x = hit.y[0];
    st.v = pass.v_out;
    st.u = manifold_u(sec, h, st.x, st.v, arm == hi ? -1 : +1);
    if (sigma < sigma_end) record(sigma, {st.x, st.v, st.u});
  }
  return traj;
}

Trajectory integrate_full(const Homogeneity& h, const FullState& st0,
                          double tau_end, const IntegratorConfig& cfg) {
  ode::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_step = cfg.max_step;
  opt.max_steps = cfg.max_steps;

  ode::DormandPrince<8> stepper(
      [&](double, const ode::State<8>& y, ode::State<8>& dy) {
        FullState st{y[0], y[1], {y[2], y[3], y[4]}, {y[5], y[6], y[7]}};
        const FullState d = vf_full(h, st);
        dy = {d.rho,  d.v,    d.s[0], d.s[1],
              d.s[2], d.w[0], d.w[1], d.w[2]};
      });
  auto res = stepper.integrate(
      0.0, {st0.rho, st0.v, st0.s[0], st0.s[1], st0.s[2], st0.w[0], st0.w[1],
            st0.w[2]},
      tau_end, opt);
  Trajectory traj;
  const double h0 = full_energy_residual(h, st0, 0.0) / 2.0 /
                    (st0.rho > 0.0 ? std::pow(st0.rho, h.alpha) : 1.0);
  for (std::size_t i = 0; i < res.t.size(); ++i) {
    traj.sigma.push_back(res.t[i]);
    const auto& y = res.y[i];
    traj.state.push_back({y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7]});
    FullState st{y[0], y[1], {y[2], y[3], y[4]}, {y[5], y[6], y[7]}};
    traj.energy_residual.push_back(full_energy_residual(h, st, h0));
  }
  return traj;
}

FullState full_state_at(const Trajectory& t, std::size_t i) {
  const auto& y = t.state.at(i);
  return {y[0], y[1], {y[2], y[3], y[4]}, {y[5], y[6], y[7]}};
}

NewtonTrajectory reduced_newton_oracle(const Homogeneity& h, const Vec3& q0,
                                       const Vec3& p0, double t_end,
                                       const IntegratorConfig& cfg) {
  ode::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_steps = cfg.max_steps;

  // y = (q, qdot, tau); abort on close encounter via a terminal event.
  ode::DormandPrince<7> stepper(
      [&](double, const ode::State<7>& y, ode::State<7>& dy) {
        const Vec3 q{y[0], y[1], y[2]};
        const Vec3 g = potential_cartesian_gradient(h, q);
        const double rho = norm(q);
        dy = {y[3], y[4], y[5], g[0], g[1], g[2],
              std::pow(rho, -(1.0 + h.beta))};
      });
  std::vector<ode::Event<7>> evs;
  evs.push_back({[&](double, const ode::State<7>& y) {
                   const Vec3 q{y[0], y[1], y[2]};
                   const double d = std::fmin(
                       std::hypot(q[0], q[1]),
                       std::fmin(std::hypot(q[1], q[2]),
                                 std::hypot(q[0], q[2])));
                   return d - 1e-6;
                 },
                 -1, true, 0});
  auto res = stepper.integrate(0.0, {q0[0], q0[1], q0[2], p0[0], p0[1], p0[2],
                                     0.0},
                               t_end, opt, evs);
  if (res.terminated_by_event)
    throw std::runtime_error("reduced_newton_oracle: close encounter");
  NewtonTrajectory out;
  out.energy = 0.5 * dot(p0, p0) - potential_cartesian(h, q0);
  for (std::size_t i = 0; i < res.t.size(); ++i) {
    const auto& y = res.y[i];
    out.samples.push_back(
        {res.t[i], y[6], {y[0], y[1], y[2]}, {y[3], y[4], y[5]}});
  }
  return out;
}

FullState mcgehee_transform(const Homogeneity& h, const Vec3& q,
                            const Vec3& qdot) {
  const double rho = norm(q);
  const Vec3 s{q[0] / rho, q[1] / rho, q[2] / rho};
  const double scale = std::pow(rho, h.beta);
  const double vr = dot(qdot, s);
  FullState st;
  st.rho = rho;
  st.v = scale * vr;
  st.s = s;
  for (int i = 0; i < 3; ++i) st.w[i] = scale * (qdot[i] - vr * s[i]);
  return st;
}

}  // namespace dihedral4

#include <doctest.h>

#include <cmath>
#include <random>

#include "dihedral4/central_configs.hpp"
#include "dihedral4/connections.hpp"
#include "dihedral4/flows.hpp"

using namespace dihedral4;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kPhi1 = std::atan(1.0 / std::sqrt(2.0));

FullState restpoint_state(const Homogeneity& h, const SphereAngles& a,
                          int sign) {
  const Vec3 s = sphere_point(a);
  const double vb = std::sqrt(2.0 * potential_cartesian(h, s));
  return {0.0, sign * vb, s, {0.0, 0.0, 0.0}};
}

// random admissible collision-manifold state away from arms
SectionState random_manifold_state(Section sec, const Homogeneity& h,
                                   std::mt19937_64& rng) {
  const double lo = section_lower_arm(sec) + 0.15;
  const double hi = section_upper_arm(sec) - 0.15;
  std::uniform_real_distribution<double> xd(lo, hi);
  std::uniform_real_distribution<double> fd(-0.95, 0.95);
  std::uniform_int_distribution<int> sd(0, 1);
  const double x = xd(rng);
  const double v = fd(rng) * std::sqrt(2.0 * section_potential(sec, h, x));
  return {x, v, manifold_u(sec, h, x, v, sd(rng) ? +1 : -1)};
}

}  // namespace

TEST_CASE("full field vanishes at restpoints") {
  const auto h = Homogeneity::of(1.0);
  for (const auto& cc : enumerate_ccs(h)) {
    for (int sign : {+1, -1}) {
      const FullState st = restpoint_state(h, cc.angles, sign);
      const FullState d = vf_full(h, st);
      CHECK(std::fabs(d.rho) < 1e-12);
      CHECK(std::fabs(d.v) < 1e-10);
      CHECK(norm(d.s) < 1e-12);
      CHECK(norm(d.w) < 1e-10);
    }
  }
}

TEST_CASE("parabolic-constraint derivative along the full field is 2 beta v C") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.2, 1.2), ph(-0.7, 0.7),
      vd(-1.5, 1.5), wd(-0.5, 0.5);
  for (double alpha : {0.6, 1.0, 1.5}) {
    const auto h = Homogeneity::of(alpha);
    for (int i = 0; i < 40; ++i) {
      const SphereAngles a{th(rng), ph(rng)};
      const Vec3 s = sphere_point(a);
      // random tangent w
      Vec3 w{wd(rng), wd(rng), wd(rng)};
      const double wn = dot(w, s);
      for (int k = 0; k < 3; ++k) w[k] -= wn * s[k];
      FullState st{0.0, vd(rng), s, w};
      auto C = [&](const FullState& q) {
        return q.v * q.v + dot(q.w, q.w) - 2.0 * potential_cartesian(h, q.s);
      };
      // numeric directional derivative of C along the field
      const FullState d = vf_full(h, st);
      const double delta = 1e-7;
      FullState stp = st, stm = st;
      stp.v += delta * d.v;
      stm.v -= delta * d.v;
      for (int k = 0; k < 3; ++k) {
        stp.s[k] += delta * d.s[k];
        stm.s[k] -= delta * d.s[k];
        stp.w[k] += delta * d.w[k];
        stm.w[k] -= delta * d.w[k];
      }
      const double dC = (C(stp) - C(stm)) / (2.0 * delta);
      CHECK(dC == doctest::Approx(2.0 * h.beta * st.v * C(st))
                      .epsilon(1e-5)
                      .scale(1.0));
    }
  }
}

TEST_CASE("constraint tangency at admissible states") {
  std::mt19937_64 rng(23);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto h = Homogeneity::of(alpha);
    const SectionDynamics dyn = SectionDynamics::true_flow(h);
    for (Section sec : {Section::planar, Section::tetra}) {
      for (int i = 0; i < 100; ++i) {
        const SectionState st = random_manifold_state(sec, h, rng);
        CHECK(std::fabs(manifold_residual(sec, h, st)) < 1e-12);
        CHECK(std::fabs(manifold_constraint_derivative(sec, dyn, st)) < 1e-10);
      }
    }
    // full field: on-constraint states
    std::uniform_real_distribution<double> th(0.3, 1.2), ph(-0.6, 0.6),
        fr(-0.9, 0.9), wd(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const Vec3 s = sphere_point({th(rng), ph(rng)});
      const double u = potential_cartesian(h, s);
      const double v = fr(rng) * std::sqrt(2.0 * u);
      Vec3 w{wd(rng), wd(rng), wd(rng)};
      const double wn = dot(w, s);
      for (int k = 0; k < 3; ++k) w[k] -= wn * s[k];
      const double scale = std::sqrt((2.0 * u - v * v) / dot(w, w));
      for (int k = 0; k < 3; ++k) w[k] *= scale;
      FullState st{0.0, v, s, w};
      CHECK(std::fabs(full_energy_residual(h, st, 0.0)) < 1e-10);
      // analytic tangency: d/dtau C = 2 beta v C = 0 on C = 0
      const FullState d = vf_full(h, st);
      const double dC =
          2.0 * st.v * d.v + 2.0 * dot(st.w, d.w) -
          2.0 * dot(potential_cartesian_gradient(h, st.s), d.s);
      CHECK(std::fabs(dC) < 1e-10);
    }
  }
}

TEST_CASE("projected flow boundary behavior") {
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  const double x = 0.9;
  const double vmax = std::sqrt(2.0 * potential_planar(h, x));
  const auto [dx, dv] = vf_projected(Section::planar, dyn, x, vmax, +1);
  CHECK(std::fabs(dx) < 1e-7);
  CHECK(std::fabs(dv) < 1e-13);
  CHECK_THROWS_AS(vf_projected(Section::planar, dyn, x, vmax + 0.01, +1),
                  std::domain_error);
}

TEST_CASE("kepler transit angle") {
  CHECK(kepler_transit_angle(0.5) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(kepler_transit_angle(0.75) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(kepler_transit_angle(1e-9) == doctest::Approx(kPi).epsilon(1e-8));
  for (double beta : {0.25, 0.5, 0.75}) {
    CHECK(std::fabs(kepler_transit_measured(beta) -
                    kepler_transit_angle(beta)) < 1e-6);
  }
  // constant-U transit independent of the potential level
  CHECK(std::fabs(kepler_transit_measured(0.5, 3.7) - 2.0 * kPi) < 1e-6);
}

TEST_CASE("regularized field: unsubstituted and substituted forms agree on shell") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rho_d(0.0, 0.8), h_d(-0.4, 0.4);
  for (double alpha : {0.7, 1.0, 1.4}) {
    const auto h = Homogeneity::of(alpha);
    const SectionDynamics dyn = SectionDynamics::true_flow(h);
    for (Section sec : {Section::planar, Section::tetra}) {
      int done = 0;
      while (done < 100) {
        SectionState st = random_manifold_state(sec, h, rng);
        const double rho = rho_d(rng), energy = h_d(rng);
        // move u onto the (rho, H) energy shell
        const double R = section_regularizer(sec, h, st.x);
        const double W = section_regularized_potential(sec, h, st.x);
        const double rho_a = rho > 0.0 ? std::pow(rho, alpha) : 0.0;
        const double u2 =
            2.0 * R - (st.v * st.v - 2.0 * rho_a * energy) * R * R / W;
        if (u2 <= 0.0) continue;
        st.u = (st.u >= 0.0 ? 1.0 : -1.0) * std::sqrt(u2);
        ++done;
        CHECK(std::fabs(regularized_energy_residual(sec, h, st, rho, energy)) <
              1e-12);
        const auto a = vf_regularized(sec, dyn, st, rho, energy);
        const auto b = vf_regularized_substituted(sec, dyn, st, rho, energy);
        for (int k = 0; k < 4; ++k)
          CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("constraint guard fires on violated states") {
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  SectionState st{0.8, 0.3, 0.0};
  st.u = manifold_u(Section::planar, h, st.x, st.v, +1) + 0.1;
  CHECK_THROWS_AS(vf_regularized(Section::planar, dyn, st, 0.0, 0.0),
                  constraint_violation_error);
}

TEST_CASE("v is a Lyapunov function on the collision manifold") {
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  std::mt19937_64 rng(41);
  for (Section sec : {Section::planar, Section::tetra}) {
    for (int i = 0; i < 50; ++i) {
      const SectionState st = random_manifold_state(sec, h, rng);
      const auto d = vf_regularized(sec, dyn, st, 0.0, 0.0, 0.0);
      CHECK(d[1] >= -1e-12);
    }
    // along a run, v never decreases
    Branch br{sec, sec == Section::planar ? "p11" : "e11", -1,
              Stability::unstable, BranchSide::right};
    const SectionState seed = seed_branch(h, br, 1e-6);
    const Trajectory t = integrate_regularized(sec, dyn, seed, 15.0);
    for (std::size_t k = 1; k < t.sigma.size(); ++k)
      CHECK(t.state[k][1] >= t.state[k - 1][1] - 1e-9);
  }
}

TEST_CASE("energy relation holds along long regularized runs") {
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  for (Section sec : {Section::planar, Section::tetra}) {
    Branch br{sec, sec == Section::planar ? "p11" : "e11", -1,
              Stability::unstable, BranchSide::right};
    const SectionState seed = seed_branch(h, br, 1e-6);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    const Trajectory t = integrate_regularized(sec, dyn, seed, 50.0, cfg);
    REQUIRE(t.sigma.size() > 10);
    CHECK(t.sigma.back() >= 50.0 - 1e-9);
    for (double r : t.energy_residual) CHECK(std::fabs(r) < 1e-8);
  }
}

TEST_CASE("symmetry equivariance of the regularized section flows") {
  // R1/S1: (x, v, u, sigma) -> (x, -v, -u, -sigma);
  // R2: (theta, v, u) -> (pi/2 - theta, v, -u); S2: (phi, v, u) -> (-phi, v, -u)
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  const double span = 1.5;
  for (Section sec : {Section::planar, Section::tetra}) {
    Branch br{sec, sec == Section::planar ? "p11" : "e11", -1,
              Stability::unstable, BranchSide::right};
    const SectionState a = seed_branch(h, br, 1e-4);
    const Trajectory t = integrate_regularized(sec, dyn, a, span);
    const auto& yb = t.state.back();
    const SectionState b{yb[0], yb[1], yb[2]};

    // reversal symmetry: integrate from the image of b, land on image of a
    const SectionState rb{b.x, -b.v, -b.u};
    const Trajectory tr = integrate_regularized(sec, dyn, rb, span);
    const auto& ra = tr.state.back();
    CHECK(ra[0] == doctest::Approx(a.x).epsilon(1e-9).scale(1.0));
    CHECK(ra[1] == doctest::Approx(-a.v).epsilon(1e-9).scale(1.0));
    CHECK(ra[2] == doctest::Approx(-a.u).epsilon(1e-9).scale(1.0));

    // reflection symmetry
    const double refl_a_x = sec == Section::planar ? kPi / 2 - a.x : -a.x;
    const double refl_b_x = sec == Section::planar ? kPi / 2 - b.x : -b.x;
    const Trajectory ts =
        integrate_regularized(sec, dyn, {refl_a_x, a.v, -a.u}, span);
    const auto& sb = ts.state.back();
    CHECK(sb[0] == doctest::Approx(refl_b_x).epsilon(1e-9).scale(1.0));
    CHECK(sb[1] == doctest::Approx(b.v).epsilon(1e-9).scale(1.0));
    CHECK(sb[2] == doctest::Approx(-b.u).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("projected and regularized runs agree after reparameterization") {
  // d tau / d sigma = R / sqrt(W); the projected (x, v) path must coincide
  const auto h = Homogeneity::of(1.0);
  const SectionDynamics dyn = SectionDynamics::true_flow(h);
  Branch br{Section::planar, "p11", -1, Stability::unstable, BranchSide::right};
  const SectionState seed = seed_branch(h, br, 1e-5);
  const Trajectory t = integrate_regularized(Section::planar, dyn, seed, 2.0);
  // integrate the projected tau-system between the same v endpoints, compare
  // x as a function of v (both strictly monotone here)
  ode::DormandPrince<2> dp(
      [&](double, const ode::State<2>& y, ode::State<2>& dy) {
        const auto d = vf_projected(Section::planar, dyn, y[0], y[1], +1);
        dy = {d.first, d.second};
      });
  std::vector<ode::Event<2>> evs;
  const double v_end = t.state.back()[1];
  evs.push_back(
      {[&](double, const ode::State<2>& y) { return y[1] - v_end; }, +1, true,
       0});
  auto res = dp.integrate(0.0, {seed.x, seed.v}, 1e4, {}, evs);
  REQUIRE(res.terminated_by_event);
  CHECK(res.terminal_event.y[0] ==
        doctest::Approx(t.state.back()[0]).epsilon(1e-7));
}

TEST_CASE("homothetic Newton orbit maps to a constant-shape McGehee ray") {
  const auto h = Homogeneity::of(1.0);
  const Vec3 s = sphere_point({kPi / 4, 0.0});
  const Vec3 q0{2.0 * s[0], 2.0 * s[1], 2.0 * s[2]};
  const Vec3 p0{0.3 * s[0], 0.3 * s[1], 0.3 * s[2]};
  const auto traj = reduced_newton_oracle(h, q0, p0, 1.0);
  for (const auto& smp : traj.samples) {
    const FullState st = mcgehee_transform(h, smp.q, smp.qdot);
    CHECK(norm(st.w) < 1e-9);
    for (int k = 0; k < 3; ++k)
      CHECK(st.s[k] == doctest::Approx(s[k]).epsilon(1e-10));
  }
}

TEST_CASE("energy relation in transformed variables") {
  const auto h = Homogeneity::of(1.0);
  const Vec3 q0{1.1, 0.7, 0.4};
  const Vec3 p0{0.1, -0.2, 0.15};
  const auto traj = reduced_newton_oracle(h, q0, p0, 2.0);
  for (const auto& smp : traj.samples) {
    const FullState st = mcgehee_transform(h, smp.q, smp.qdot);
    // 2 rho^alpha H = |w|^2 + v^2 - 2U(s)
    const double lhs = 2.0 * std::pow(st.rho, h.alpha) * traj.energy;
    const double rhs = dot(st.w, st.w) + st.v * st.v -
                       2.0 * potential_cartesian(h, st.s);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("oracle equivalence: Newton vs the full McGehee field") {
  const auto h = Homogeneity::of(1.0);
  const Vec3 q0{1.1, 0.7, 0.4};
  const Vec3 p0{0.1, -0.2, 0.15};
  const auto newt = reduced_newton_oracle(h, q0, p0, 1.5);
  const FullState st0 = mcgehee_transform(h, q0, p0);
  const double tau_end = newt.samples.back().tau;
  const Trajectory full = integrate_full(h, st0, tau_end);
  const FullState end_full = full_state_at(full, full.sigma.size() - 1);
  const FullState end_newt = mcgehee_transform(h, newt.samples.back().q,
                                               newt.samples.back().qdot);
  CHECK(end_full.rho == doctest::Approx(end_newt.rho).epsilon(1e-6));
  CHECK(end_full.v == doctest::Approx(end_newt.v).epsilon(1e-6).scale(1.0));
  for (int k = 0; k < 3; ++k) {
    CHECK(end_full.s[k] ==
          doctest::Approx(end_newt.s[k]).epsilon(1e-6).scale(1.0));
    CHECK(end_full.w[k] ==
          doctest::Approx(end_newt.w[k]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("planar-section restriction of the full field matches the 1-DOF flow") {
  const auto h = Homogeneity::of(1.0);
  // equator start: s on phi = 0, w tangent along the equator
  const double th0 = 0.6, w0 = 0.4;
  const Vec3 s0{std::cos(th0), std::sin(th0), 0.0};
  const Vec3 t0{-std::sin(th0), std::cos(th0), 0.0};
  const double v0 = 0.2;
  FullState st0{0.0, v0, s0, {w0 * t0[0], w0 * t0[1], w0 * t0[2]}};
  const double tau_end = 0.8;
  const Trajectory full = integrate_full(h, st0, tau_end);
  const FullState fe = full_state_at(full, full.sigma.size() - 1);
  CHECK(std::fabs(fe.s[2]) < 1e-10);  // stays on the invariant equator

  // 1-DOF tau-time system: theta' = w, v' = w^2 + beta(v^2 - 2U),
  // w' = (beta-1) v w + U'(theta)
  ode::DormandPrince<3> dp(
      [&](double, const ode::State<3>& y, ode::State<3>& dy) {
        const double U = potential_planar(h, y[0]);
        const double Up =
            section_potential_derivative(Section::planar, h, y[0], 1);
        dy[0] = y[2];
        dy[1] = y[2] * y[2] + h.beta * (y[1] * y[1] - 2.0 * U);
        dy[2] = (h.beta - 1.0) * y[1] * y[2] + Up;
      });
  auto res = dp.integrate(0.0, {th0, v0, w0}, tau_end);
  const double th_end = std::atan2(fe.s[1], fe.s[0]);
  CHECK(th_end == doctest::Approx(res.y.back()[0]).epsilon(1e-6));
  CHECK(fe.v == doctest::Approx(res.y.back()[1]).epsilon(1e-6));
  const Vec3 te{-std::sin(th_end), std::cos(th_end), 0.0};
  CHECK(dot(fe.w, te) == doctest::Approx(res.y.back()[2]).epsilon(1e-6));
}

TEST_CASE("close-encounter abort of the Newton oracle") {
  const auto h = Homogeneity::of(1.0);
  // aim straight at the s3 collision ray (z -> 0)
  const Vec3 q0{0.05, 0.05, 1.0};
  const Vec3 p0{-0.6, -0.6, 0.0};
  CHECK_THROWS_AS(reduced_newton_oracle(h, q0, p0, 50.0), std::runtime_error);
}

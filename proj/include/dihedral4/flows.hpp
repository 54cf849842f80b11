#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dihedral4/ode.hpp"
#include "dihedral4/potentials.hpp"

namespace dihedral4 {

// Point on a 1-DOF regularized collision manifold: x is theta (planar) or
// phi (tetra), v the Sundman velocity, u the regularized tangential velocity.
struct SectionState {
  double x, v, u;
};

// McGehee state of the full reduced problem (M = I).
struct FullState {
  double rho, v;
  Vec3 s, w;
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;
  std::size_t max_steps = 2'000'000;
};

enum class EventKind { arm_proximity, v_zero, section_crossing, custom };

struct TrajectoryEvent {
  double sigma;
  EventKind kind;
  std::vector<double> state;
};

struct Trajectory {
  std::vector<double> sigma;
  std::vector<std::vector<double>> state;   // per-sample state components
  std::vector<double> energy_residual;
  std::vector<TrajectoryEvent> events;
};

// Dynamics parameters of the section flows. The true flow has
// beta_dyn = h.beta; the paper's saddle-exponent IVP family keeps the
// Newtonian value beta_dyn = 1/2 with the alpha-potential.
struct SectionDynamics {
  Homogeneity h;
  double beta_dyn;
  static SectionDynamics true_flow(const Homogeneity& h) {
    return {h, h.beta};
  }
  static SectionDynamics model_family(const Homogeneity& h) {
    return {h, 0.5};
  }
};

// --- vector fields ---------------------------------------------------------

// Full McGehee field (tau time): rho' = rho v, v' = |w|^2 + beta v^2 - a U,
// s' = w, w' = -|w|^2 s + (beta-1) v w + grad_s U.
FullState vf_full(const Homogeneity& h, const FullState& st);

// 2 rho^alpha H = |w|^2 + v^2 - 2U(s); the parabolic residual at rho = 0.
double full_energy_residual(const Homogeneity& h, const FullState& st,
                            double energy_h);

// Projected section flow on the u_sign half (tau time):
//   x' = u_sign sqrt(2U - v^2), v' = (1 - beta_dyn)(2U - v^2).
std::pair<double, double> vf_projected(Section sec, const SectionDynamics& dyn,
                                       double x, double v, int u_sign);

// dv/dx along the projected flow.
double one_form_dvdx(Section sec, const SectionDynamics& dyn, double x,
                     double v, int u_sign);

struct constraint_violation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Off-manifold energy-relation residual:
//   u^2 + (v^2 - 2 rho^alpha H) R^2 / W - 2R.
double regularized_energy_residual(Section sec, const Homogeneity& h,
                                   const SectionState& st, double rho,
                                   double energy);

// Regularized field in sigma time; with rho = 0 it restricts to the
// collision-manifold system. Returns (rho', v', x', u'). Throws
// constraint_violation_error when the energy-relation residual exceeds
// residual_guard (pass 0 to skip the check).
std::array<double, 4> vf_regularized(Section sec, const SectionDynamics& dyn,
                                     const SectionState& st, double rho,
                                     double energy,
                                     double residual_guard = 1e-6);

// Energy-substituted variant (u^2 eliminated); agrees with vf_regularized on
// the energy shell.
std::array<double, 4> vf_regularized_substituted(Section sec,
                                                 const SectionDynamics& dyn,
                                                 const SectionState& st,
                                                 double rho, double energy);

// Collision-manifold (rho = 0) energy-relation residual:
//   u^2 + v^2 R^2 / W - 2R.
double manifold_residual(Section sec, const Homogeneity& h,
                         const SectionState& st);

// Analytic directional derivative of the manifold constraint along the
// regularized rho=0 field (vanishes on the constraint set).
double manifold_constraint_derivative(Section sec, const SectionDynamics& dyn,
                                      const SectionState& st);

// Completes u from the constraint given (x, v); sign taken from u_sign.
double manifold_u(Section sec, const Homogeneity& h, double x, double v,
                  int u_sign);

// --- integration -----------------------------------------------------------

// Regularized sigma-time run on the collision manifold. Within arm_delta of
// an arm the run switches to the substituted (x, v) chart (see
// arm_zone_passage) and re-enters reflected, on the manifold exactly.
Trajectory integrate_regularized(Section sec, const SectionDynamics& dyn,
                                 const SectionState& st0, double sigma_end,
                                 const IntegratorConfig& cfg = {},
                                 double arm_delta = 0.02);

// Full-field run in tau time.
Trajectory integrate_full(const Homogeneity& h, const FullState& st0,
                          double tau_end, const IntegratorConfig& cfg = {});

FullState full_state_at(const Trajectory& t, std::size_t i);

// Transit angle of the constant-potential projected flow: pi / (1 - beta).
double kepler_transit_angle(double beta);

// Numeric transit of the constant-U projected system between the restpoint
// lines, measured by integration from a seed at offset eps with analytic
// endpoint corrections. Should match kepler_transit_angle to ~1e-7.
double kepler_transit_measured(double beta, double u_const = 1.0,
                               double eps = 1e-14);

// v increment of the one-form across [arm - delta, arm] and back
// (closed near-arm quadrature in the substituted variable, two Picard
// sweeps; fac is the dv/dx prefactor, 1 - beta_dyn).
double arm_hop(Section sec, const Homogeneity& h, double arm, double v_at,
               double delta, double fac);

// Result of carrying a collision-manifold state through the near-arm zone
// in the substituted (x, v) chart: v at the arm, v back at the zone edge
// (when reflecting) and the sigma time spent inside the zone.
struct ArmZonePassage {
  double v_at_arm;
  double v_out;
  double sigma_elapsed;
};

ArmZonePassage arm_zone_passage(Section sec, const SectionDynamics& dyn,
                                double arm, double v_in, double delta,
                                bool reflect_out,
                                const IntegratorConfig& cfg = {});

// --- direct reduced-Newton oracle ------------------------------------------

struct NewtonSample {
  double t;     // physical time
  double tau;   // accumulated McGehee time, dt = rho^{1+beta} dtau
  Vec3 q, qdot;
};

struct NewtonTrajectory {
  std::vector<NewtonSample> samples;
  double energy;  // H = |p|^2/2 - U(q)
};

NewtonTrajectory reduced_newton_oracle(const Homogeneity& h, const Vec3& q0,
                                       const Vec3& p0, double t_end,
                                       const IntegratorConfig& cfg = {});

// McGehee transform of a Newton sample: rho = |q|, s = q/rho,
// v = rho^beta <qdot, s>, w = rho^beta (qdot - <qdot,s> s).
FullState mcgehee_transform(const Homogeneity& h, const Vec3& q,
                            const Vec3& qdot);

}  // namespace dihedral4

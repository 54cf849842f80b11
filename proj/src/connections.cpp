#include "dihedral4/connections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>

#include "dihedral4/quadrature.hpp"

namespace dihedral4 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sqrt_pos(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

struct SectionRestpoint {
  std::string label;
  double x;
  double vbar;    // +sqrt(2U)
  double lambda;  // U'' at the point
};

// Restpoints living on the section's own circle (capture targets and seeds).
std::vector<SectionRestpoint> section_restpoints(Section sec,
                                                 const Homogeneity& h) {
  std::vector<SectionRestpoint> out;
  if (sec == Section::planar) {
    const double x = kPi / 4.0;
    out.push_back({"p11", x, std::sqrt(2.0 * potential_planar(h, x)),
                   section_potential_derivative(sec, h, x, 2)});
  } else {
    const double xc = section_cc_angle(Section::tetra);
    const double vb = std::sqrt(2.0 * potential_tetra(h, xc));
    const double lam = section_potential_derivative(sec, h, xc, 2);
    out.push_back({"e11", xc, vb, lam});
    out.push_back({"e12", -xc, vb, lam});
    out.push_back({"p11", 0.0, std::sqrt(2.0 * potential_tetra(h, 0.0)),
                   section_potential_derivative(sec, h, 0.0, 2)});
  }
  return out;
}

const SectionRestpoint& restpoint_by_label(
    const std::vector<SectionRestpoint>& rps, const std::string& label) {
  for (const auto& r : rps)
    if (r.label == label) return r;
  throw std::invalid_argument("unknown restpoint label: " + label);
}

struct TraceInternals {
  int max_arm_crossings = 0;  // 0: unlimited
  bool stop_when_probes_filled = false;
};

// Seed along the eigendirection of the flow actually being traced; the
// model family replaces the dynamics exponent but keeps the alpha-potential.
SectionState seed_for_dynamics(const Homogeneity& h, const Branch& br,
                               double eps, double beta_dyn) {
  const auto rps = section_restpoints(br.section, h);
  const auto& rp = restpoint_by_label(rps, br.cc_label);
  const double vbar = br.vbar_sign > 0 ? rp.vbar : -rp.vbar;
  if (eps == 0.0) return {rp.x, vbar, 0.0};
  Homogeneity hd = h;
  hd.beta = beta_dyn;  // only the (beta-1) vbar coefficient of the exponents
  const auto mus = characteristic_exponents(hd, rp.lambda, vbar);
  if (mus.first.imag() != 0.0)
    throw std::runtime_error("seed_branch: restpoint is a spiral on this section");
  const double mu = br.stability == Stability::unstable
                        ? std::max(mus.first.real(), mus.second.real())
                        : std::min(mus.first.real(), mus.second.real());
  const double nn = std::sqrt(1.0 + mu * mu);
  const double side = br.side == BranchSide::right ? 1.0 : -1.0;
  const double x = rp.x + side * eps / nn;
  const double w = side * eps * mu / nn;
  const double R = section_regularizer(br.section, h, x);
  const double W = section_regularized_potential(br.section, h, x);
  const double u = R / std::sqrt(W) * w;
  const double v2 = (2.0 * R - u * u) * W / (R * R);
  return {x, (vbar >= 0.0 ? 1.0 : -1.0) * std::sqrt(v2), u};
}

// One-form branch tracer in the projected (x, v) chart. Arms are crossed by
// switching to the substituted variable xi = eps^{1-beta}, which is smooth
// up to the arm itself; interior graph-boundary tangencies reverse the
// running direction toward increasing U.
BranchOutcome trace_one_form(const Homogeneity& h, const Branch& br,
                             const TraceOptions& opts,
                             const TraceInternals& internals) {
  const Section sec = br.section;
  const double beta_dyn = opts.beta_dyn.value_or(h.beta);
  const double fac = 1.0 - beta_dyn;
  const double lo = section_lower_arm(sec), hi = section_upper_arm(sec);
  const auto rps = section_restpoints(sec, h);
  const double v_threshold =
      (sec == Section::planar
           ? std::sqrt(2.0 * potential_planar(h, kPi / 4.0))
           : std::sqrt(2.0 * potential_tetra(h, section_cc_angle(sec)))) +
      1.0;

  BranchOutcome out;
  out.probes.assign(opts.probes.size(), std::nullopt);
  std::vector<int> probe_spans(opts.probes.size(), 0);

  // stable-branch seeds move toward the restpoint; tracing is for unstable
  if (br.stability == Stability::stable)
    throw std::invalid_argument("trace_branch: only unstable branches are traced");
  const SectionState seed = seed_for_dynamics(h, br, opts.eps, beta_dyn);
  double x = seed.x, v = seed.v;
  int u_sign = seed.u >= 0.0 ? +1 : -1;

  ode::Options oopt;
  oopt.rel_tol = opts.rel_tol;
  oopt.abs_tol = opts.abs_tol;

  auto probes_filled = [&]() {
    return std::all_of(out.probes.begin(), out.probes.end(),
                       [](const auto& p) { return p.has_value(); });
  };
  auto check_capture = [&](double xq, double vq) -> bool {
    for (const auto& r : rps) {
      if (std::fabs(xq - r.x) < opts.capture_radius &&
          std::fabs(vq - r.vbar) < opts.capture_radius) {
        out.kind = OutcomeKind::restpoint_capture;
        out.capture_label = r.label + "+";
        out.v_terminal = vq;
        return true;
      }
    }
    return false;
  };
  // Spiral-type restpoints (potential maxima on the section) attract
  // window-trapped trajectories. Once v crosses vbar - gate while x sits in
  // the same component of {2U > v^2} as the restpoint, the window can only
  // shrink onto it, so capture is certain.
  const double capture_gate = 1e-4;
  std::vector<const SectionRestpoint*> spiral_targets;
  for (const auto& r : rps)
    if (r.lambda < 0.0) spiral_targets.push_back(&r);
  auto window_trapped = [&](double xq, double vq,
                            const SectionRestpoint& r) -> bool {
    const double a = std::fmin(xq, r.x), b = std::fmax(xq, r.x);
    if (a - lo < 1e-6 || hi - b < 1e-6) return false;
    for (int k = 0; k <= 200; ++k) {
      const double xk = a + (b - a) * k / 200.0;
      if (2.0 * section_potential(sec, h, xk) - vq * vq <= 0.0) return false;
    }
    return true;
  };

  for (int leg = 0; leg < opts.max_legs; ++leg) {
    const double arm = u_sign > 0 ? hi : lo;
    const double x_switch = arm - u_sign * opts.arm_switch;

    if ((arm - x) * u_sign > opts.arm_switch) {
      // main chart up to the hand-off point
      ode::DormandPrince<1> stepper(
          [&](double t, const ode::State<1>& y, ode::State<1>& dy) {
            dy[0] = u_sign * fac *
                    sqrt_pos(2.0 * section_potential(sec, h, t) - y[0] * y[0]);
          });
      stepper.on_step = [&](const ode::DenseSegment<1>& seg) {
        for (std::size_t p = 0; p < opts.probes.size(); ++p) {
          const double ang = opts.probes[p].first;
          const double a = seg.t0, b = seg.t0 + seg.h;
          if ((ang - a) * (ang - b) <= 0.0 && ang != a) {
            if (probe_spans[p] == opts.probes[p].second && !out.probes[p])
              out.probes[p] = seg.eval(ang)[0];
            ++probe_spans[p];
          }
        }
      };
      std::vector<ode::Event<1>> evs;
      evs.push_back({[&](double t, const ode::State<1>& y) {
                       return 2.0 * section_potential(sec, h, t) -
                              y[0] * y[0] - 1e-13;
                     },
                     -1, true, 0});
      evs.push_back({[](double, const ode::State<1>& y) { return y[0]; }, 0,
                     false, 1});
      for (std::size_t k = 0; k < spiral_targets.size(); ++k)
        evs.push_back({[&, k](double, const ode::State<1>& y) {
                         return y[0] - (spiral_targets[k]->vbar - capture_gate);
                       },
                       +1, true, 2 + static_cast<int>(k)});
      ode::Options leg_opt = oopt;
      leg_opt.max_step = 0.02;
      auto res = stepper.integrate(x, {v}, x_switch, leg_opt, evs);
      for (const auto& e : res.events)
        if (e.id == 1) out.v_zero_angles.push_back(e.t);
      if (internals.stop_when_probes_filled && probes_filled()) {
        out.kind = OutcomeKind::undecided;
        return out;
      }
      if (res.terminated_by_event && res.terminal_event.id >= 2) {
        // v crossed a spiral target's gate level
        const auto& r = *spiral_targets[res.terminal_event.id - 2];
        const double xt = res.terminal_event.t;
        const double vt = res.terminal_event.y[0];
        if (window_trapped(xt, vt, r)) {
          out.kind = OutcomeKind::restpoint_capture;
          out.capture_label = r.label + "+";
          out.v_terminal = r.vbar;
          return out;
        }
        x = xt;  // not trapped: keep tracing from the gate crossing
        v = vt;
        continue;
      }
      if (res.terminated_by_event) {
        // graph-boundary tangency: reverse toward increasing potential
        const double xt = res.terminal_event.t;
        const double vt = res.terminal_event.y[0];
        if (check_capture(xt, vt)) return out;
        const double up = section_potential_derivative(sec, h, xt, 1);
        u_sign = up >= 0.0 ? +1 : -1;
        x = xt + u_sign * 1e-11;
        v = vt;
        continue;
      }
      x = res.t.back();
      v = res.y.back()[0];
    }

    // substituted chart into the arm and back out
    const double b = h.beta;
    const double ex = 2.0 * b / (1.0 - b);
    auto xi_field = [&](int dv_sign) {
      return [&, dv_sign](double xi, const ode::State<1>& y,
                          ode::State<1>& dy) {
        const double eps_a = std::pow(xi, ex);
        const double eps = std::pow(xi, 1.0 / (1.0 - b));
        const double rad =
            section_arm_scaled_2u(sec, h, arm, eps) - y[0] * y[0] * eps_a;
        dy[0] = dv_sign * fac / (1.0 - b) * sqrt_pos(rad);
      };
    };
    const double xi0 = std::pow(std::fabs(arm - x), 1.0 - b);
    {
      ode::DormandPrince<1> in_stepper(xi_field(-1));
      auto res = in_stepper.integrate(xi0, {v}, 0.0, oopt);
      v = res.y.back()[0];
    }
    out.arm_crossings.push_back({arm, v});
    if (v > v_threshold) {
      out.kind = OutcomeKind::arm_escape;
      auto [axis, sign] = arm_escape_index(sec, arm);
      out.escape_arm_index = axis;
      out.escape_arm_sign = sign;
      out.v_terminal = v;
      return out;
    }
    if (internals.max_arm_crossings > 0 &&
        static_cast<int>(out.arm_crossings.size()) >=
            internals.max_arm_crossings &&
        !internals.stop_when_probes_filled) {
      out.kind = OutcomeKind::undecided;
      return out;
    }
    u_sign = -u_sign;
    {
      ode::DormandPrince<1> out_stepper(xi_field(+1));
      auto res = out_stepper.integrate(0.0, {v}, xi0, oopt);
      v = res.y.back()[0];
    }
    x = arm + u_sign * opts.arm_switch;
  }
  out.kind = OutcomeKind::undecided;
  return out;
}

// sigma-time route: the regularized (x, v, u) field away from arms, the
// substituted chart through the arm zones; turnings are interior and need
// no handling.
BranchOutcome trace_sigma(const Homogeneity& h, const Branch& br,
                          const TraceOptions& opts,
                          const TraceInternals& internals) {
  const Section sec = br.section;
  SectionDynamics dyn{h, opts.beta_dyn.value_or(h.beta)};
  const double lo = section_lower_arm(sec), hi = section_upper_arm(sec);
  const auto rps = section_restpoints(sec, h);
  const double v_threshold =
      restpoint_by_label(rps, sec == Section::planar ? "p11" : "e11").vbar +
      1.0;
  const double arm_delta = 0.02;
  IntegratorConfig zone_cfg;
  zone_cfg.rel_tol = opts.rel_tol;
  zone_cfg.abs_tol = opts.abs_tol;

  BranchOutcome out;
  out.probes.assign(opts.probes.size(), std::nullopt);
  std::vector<int> probe_hits(opts.probes.size(), 0);

  SectionState st = seed_for_dynamics(h, br, opts.eps, dyn.beta_dyn);
  double sigma = 0.0;

  ode::Options oopt;
  oopt.rel_tol = opts.rel_tol;
  oopt.abs_tol = opts.abs_tol;

  for (int leg = 0; leg < opts.max_legs; ++leg) {
    ode::DormandPrince<3> stepper(
        [&](double, const ode::State<3>& y, ode::State<3>& dy) {
          const auto d =
              vf_regularized(sec, dyn, {y[0], y[1], y[2]}, 0.0, 0.0, 0.0);
          dy = {d[2], d[1], d[3]};
        });
    std::vector<ode::Event<3>> evs;
    evs.push_back({[&](double, const ode::State<3>& y) {
                     return (hi - y[0]) - arm_delta;
                   },
                   -1, true, 0});
    evs.push_back({[&](double, const ode::State<3>& y) {
                     return (y[0] - lo) - arm_delta;
                   },
                   -1, true, 1});
    evs.push_back({[](double, const ode::State<3>& y) { return y[1]; }, 0,
                   false, 2});
    evs.push_back({[&](double, const ode::State<3>& y) {
                     return y[1] - v_threshold;
                   },
                   +1, true, 3});
    for (std::size_t p = 0; p < opts.probes.size(); ++p)
      evs.push_back({[&, p](double, const ode::State<3>& y) {
                       return y[0] - opts.probes[p].first;
                     },
                     0, false, 4 + static_cast<int>(p)});
    auto res = stepper.integrate(sigma, {st.x, st.v, st.u}, sigma + 500.0,
                                 oopt, evs);
    for (const auto& e : res.events) {
      if (e.id == 2) out.v_zero_angles.push_back(e.y[0]);
      if (e.id >= 4) {
        const std::size_t p = static_cast<std::size_t>(e.id - 4);
        if (probe_hits[p] == opts.probes[p].second && !out.probes[p])
          out.probes[p] = e.y[1];
        ++probe_hits[p];
      }
    }
    auto probes_filled = [&]() {
      return std::all_of(out.probes.begin(), out.probes.end(),
                         [](const auto& q) { return q.has_value(); });
    };
    if (internals.stop_when_probes_filled && probes_filled()) {
      out.kind = OutcomeKind::undecided;
      return out;
    }
    // capture: converged inside (long sigma leg without events)
    if (!res.terminated_by_event) {
      const auto& y = res.y.back();
      for (const auto& r : rps) {
        if (std::fabs(y[0] - r.x) < 1e-4 && std::fabs(y[1] - r.vbar) < 1e-4) {
          out.kind = OutcomeKind::restpoint_capture;
          out.capture_label = r.label + "+";
          out.v_terminal = y[1];
          return out;
        }
      }
      out.kind = OutcomeKind::undecided;
      return out;
    }
    const auto& hit = res.terminal_event;
    sigma = hit.t;
    if (hit.id == 3) {
      out.kind = OutcomeKind::arm_escape;
      const double arm = hit.y[0] > 0.5 * (lo + hi) ? hi : lo;
      auto [axis, sign] = arm_escape_index(sec, arm);
      out.escape_arm_index = axis;
      out.escape_arm_sign = sign;
      out.v_terminal = hit.y[1];
      return out;
    }
    // arm passage through the substituted chart
    const double arm = hit.id == 0 ? hi : lo;
    const double eps_here = std::fabs(arm - hit.y[0]);
    const auto pass =
        arm_zone_passage(sec, dyn, arm, hit.y[1], eps_here, true, zone_cfg);
    out.arm_crossings.push_back({arm, pass.v_at_arm});
    if (pass.v_out > v_threshold) {
      out.kind = OutcomeKind::arm_escape;
      auto [axis, sign] = arm_escape_index(sec, arm);
      out.escape_arm_index = axis;
      out.escape_arm_sign = sign;
      out.v_terminal = pass.v_out;
      return out;
    }
    if (internals.max_arm_crossings > 0 &&
        static_cast<int>(out.arm_crossings.size()) >=
            internals.max_arm_crossings &&
        !internals.stop_when_probes_filled) {
      out.kind = OutcomeKind::undecided;
      return out;
    }
    sigma += pass.sigma_elapsed;
    st.x = hit.y[0];
    st.v = pass.v_out;
    st.u = manifold_u(sec, h, st.x, st.v, arm == hi ? -1 : +1);
  }
  out.kind = OutcomeKind::undecided;
  return out;
}

std::string dual_label(const std::string& l) {
  if (l.size() == 4 && l[0] == 'B') {
    std::string d = l;
    d[2] = l[2] == 's' ? 'u' : 's';
    return d;
  }
  std::string d = l;
  d.back() = l.back() == '+' ? '-' : '+';
  return d;
}

// Cyclic axis permutation (s1,s2,s3) -> (s3,s1,s2): p11 -> p21 -> p31,
// B1 -> B2 -> B3, e11 fixed; everything else leaves the fundamental set.
std::optional<std::string> permute_label(const std::string& l) {
  auto rot = [](char c) -> char {
    if (c == '1') return '2';
    if (c == '2') return '3';
    return '1';
  };
  if (l.size() == 4 && l[0] == 'B') {
    std::string d = l;
    d[1] = rot(l[1]);
    return d;
  }
  if (l.rfind("e11", 0) == 0) return l;
  if (l[0] == 'p' && l.size() == 4 && l[2] == '1') {
    std::string d = l;
    d[1] = rot(l[1]);  // p11 -> p21 -> p31 -> p11
    return d;
  }
  return std::nullopt;
}

}  // namespace

std::pair<int, int> arm_escape_index(Section sec, double arm) {
  // Cartesian axis whose coordinate tends to +-1 along the arm.
  if (sec == Section::planar)
    return arm < kPi / 4.0 ? std::make_pair(1, +1) : std::make_pair(2, +1);
  return arm > 0.0 ? std::make_pair(3, +1) : std::make_pair(3, -1);
}

SectionState seed_branch(const Homogeneity& h, const Branch& br, double eps) {
  if (eps < 0.0 || eps > 1e-4)
    throw std::domain_error("seed_branch: eps must lie in [0, 1e-4]");
  return seed_for_dynamics(h, br, eps, h.beta);
}

double seed_eigen_residual(const Homogeneity& h, const Branch& br) {
  const auto rps = section_restpoints(br.section, h);
  const auto& rp = restpoint_by_label(rps, br.cc_label);
  const double vbar = br.vbar_sign > 0 ? rp.vbar : -rp.vbar;
  const auto mus = characteristic_exponents(h, rp.lambda, vbar);
  const double mu = br.stability == Stability::unstable
                        ? std::max(mus.first.real(), mus.second.real())
                        : std::min(mus.first.real(), mus.second.real());
  // B (1, mu)^T - mu (1, mu)^T with B = [[0, 1], [lambda, (beta-1) vbar]]
  const double r1 = mu - mu;
  const double r2 = rp.lambda + (h.beta - 1.0) * vbar * mu - mu * mu;
  return std::hypot(r1, r2) / std::sqrt(1.0 + mu * mu);
}

BranchOutcome trace_branch(const Homogeneity& h, const Branch& br,
                           const TraceOptions& opts) {
  return trace_one_form(h, br, opts, {});
}

BranchOutcome trace_branch_sigma(const Homogeneity& h, const Branch& br,
                                 const TraceOptions& opts) {
  return trace_sigma(h, br, opts, {});
}

double saddle_functional(Section sec, double alpha, SaddleFunctional which,
                         TraceRoute route) {
  const Homogeneity h = Homogeneity::of(alpha);
  Branch br{sec, sec == Section::planar ? "p11" : "e11", -1,
            Stability::unstable, BranchSide::right};
  TraceOptions opts;
  opts.eps = 1e-8;
  opts.beta_dyn = 0.5;  // the paper's (P_alpha) family
  TraceInternals internals;
  if (which == SaddleFunctional::first_arm_v) {
    internals.max_arm_crossings = 1;
  } else {
    opts.probes = {{sec == Section::planar ? kPi / 4.0 : 0.0, 0}};
    internals.stop_when_probes_filled = true;
    opts.max_legs = 8;
  }
  const BranchOutcome out = route == TraceRoute::one_form
                                ? trace_one_form(h, br, opts, internals)
                                : trace_sigma(h, br, opts, internals);
  if (which == SaddleFunctional::first_arm_v) {
    if (out.arm_crossings.empty())
      throw std::runtime_error("saddle_functional: branch did not reach the arm");
    return out.arm_crossings.front().v;
  }
  if (!out.probes.empty() && out.probes[0]) return *out.probes[0];
  throw std::runtime_error("saddle_functional: return section not reached");
}

AlphaStarReport find_alpha_star(Section sec, SaddleFunctional which,
                                std::pair<double, double> bracket,
                                TraceRoute route, int grid_points) {
  auto V = [&](double a) { return saddle_functional(sec, a, which, route); };
  double lo = bracket.first, hi = bracket.second;
  double flo = V(lo), fhi = V(hi);
  if (!(flo < 0.0 && fhi > 0.0))
    throw bracket_error("find_alpha_star: no sign change in bracket");

  AlphaStarReport rep;
  rep.section = sec;
  rep.which = which;
  rep.bracket = bracket;
  rep.monotone = true;
  double prev = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double a = bracket.first + (bracket.second - bracket.first) * i /
                                         (grid_points - 1.0);
    const double val = i == 0 ? flo : (i == grid_points - 1 ? fhi : V(a));
    rep.v_samples.emplace_back(a, val);
    if (i > 0 && val <= prev) rep.monotone = false;
    prev = val;
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const double fm = V(mid);
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  rep.alpha_root = 0.5 * (lo + hi);
  return rep;
}

ConnectionEdge dual_edge(const ConnectionEdge& e) {
  ConnectionEdge d;
  d.from = dual_label(e.to);
  d.to = dual_label(e.from);
  d.witness = "dual(" + e.witness + ")";
  d.alpha = e.alpha;
  d.v_at_arms = e.v_at_arms;
  for (auto& v : d.v_at_arms) v = -v;
  std::reverse(d.v_at_arms.begin(), d.v_at_arms.end());
  return d;
}

std::vector<ConnectionEdge> classify_connections(const Homogeneity& h) {
  std::vector<ConnectionEdge> edges;
  auto escape_label = [](const BranchOutcome& o) {
    return "B" + std::to_string(o.escape_arm_index) + "s" +
           (o.escape_arm_sign > 0 ? "+" : "-");
  };
  auto trace_and_record = [&](Section sec, const std::string& label,
                              int sign, BranchSide side) {
    Branch br{sec, label, sign, Stability::unstable, side};
    const BranchOutcome out = trace_branch(h, br);
    const std::string from = label + (sign > 0 ? "+" : "-");
    const std::string witness =
        std::string(sec == Section::planar ? "planar:" : "tetra:") + from +
        (side == BranchSide::right ? ":right" : ":left");
    if (out.kind == OutcomeKind::undecided) {
      std::fprintf(stderr, "warning: branch %s undecided, no edge recorded\n",
                   witness.c_str());
      return;
    }
    ConnectionEdge e;
    e.from = from;
    e.witness = witness;
    e.alpha = h.alpha;
    for (const auto& c : out.arm_crossings) e.v_at_arms.push_back(c.v);
    e.to = out.kind == OutcomeKind::arm_escape ? escape_label(out)
                                               : out.capture_label;
    edges.push_back(e);
  };

  for (int sign : {-1, +1})
    for (BranchSide side : {BranchSide::left, BranchSide::right})
      trace_and_record(Section::planar, "p11", sign, side);
  for (const char* label : {"e11", "e12"})
    for (int sign : {-1, +1})
      for (BranchSide side : {BranchSide::left, BranchSide::right})
        trace_and_record(Section::tetra, label, sign, side);

  // duality closure
  const std::size_t traced = edges.size();
  for (std::size_t i = 0; i < traced; ++i) edges.push_back(dual_edge(edges[i]));

  // axis-permutation images (the two nontrivial cyclic relabelings)
  std::vector<ConnectionEdge> extra;
  for (const auto& e : edges) {
    ConnectionEdge cur = e;
    for (int rot = 0; rot < 2; ++rot) {
      auto f = permute_label(cur.from);
      auto t = permute_label(cur.to);
      if (!f || !t) break;
      cur.from = *f;
      cur.to = *t;
      cur.witness = "perm(" + cur.witness + ")";
      if (cur.from != e.from || cur.to != e.to) extra.push_back(cur);
    }
  }
  edges.insert(edges.end(), extra.begin(), extra.end());

  // dedupe on (from, to)
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<ConnectionEdge> unique_edges;
  for (const auto& e : edges)
    if (seen.emplace(e.from, e.to).second) unique_edges.push_back(e);
  return unique_edges;
}

namespace {

// Model-family critical exponents, located once per section (used by the
// saddle-tolerance tie-break rule).
const std::vector<double>& critical_exponents(Section sec) {
  static std::map<Section, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(sec);
  if (it != cache.end()) return it->second;
  std::vector<double> roots;
  try {
    roots.push_back(find_alpha_star(sec, SaddleFunctional::return_v,
                                    {1.02, 1.2})
                        .alpha_root);
  } catch (const bracket_error&) {
  }
  try {
    roots.push_back(find_alpha_star(sec, SaddleFunctional::first_arm_v,
                                    {1.05, 1.95})
                        .alpha_root);
  } catch (const bracket_error&) {
  }
  return cache.emplace(sec, std::move(roots)).first->second;
}

}  // namespace

ConnectionGraph connection_graph(const Homogeneity& h) {
  ConnectionGraph g;
  g.alpha = h.alpha;
  g.edges = classify_connections(h);
  std::set<std::string> nodes{"p11+", "p11-", "p21+", "p21-", "p31+",
                              "p31-", "e11+", "e11-", "e12+", "e12-"};
  for (const auto& e : g.edges) {
    nodes.insert(e.from);
    nodes.insert(e.to);
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  if (h.alpha > 1.0 && h.alpha < 2.0) {
    for (Section sec : {Section::planar, Section::tetra})
      for (double root : critical_exponents(sec))
        if (std::fabs(h.alpha - root) < 1e-8) g.saddle_within_tolerance = true;
  }
  return g;
}

}  // namespace dihedral4

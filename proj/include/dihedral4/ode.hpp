#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dihedral4::ode {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;       // 0: no cap
  double initial_step = 0.0;   // 0: auto
  std::size_t max_steps = 2'000'000;
  double event_tol = 1e-10;    // bisection tolerance in the independent variable
};

struct step_underflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct max_steps_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <std::size_t N>
using State = std::array<double, N>;

// Dense-output polynomial of one accepted Dormand-Prince step
// (Hairer's order-4 continuous extension, quartic in the step fraction).
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0, h = 0.0;
  std::array<State<N>, 5> rcont{};

  State<N> eval(double t) const {
    const double th = (t - t0) / h, th1 = 1.0 - th;
    State<N> y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = rcont[0][i] +
             th * (rcont[1][i] +
                   th1 * (rcont[2][i] +
                          th * (rcont[3][i] + th1 * rcont[4][i])));
    return y;
  }
  bool covers(double t) const {
    const double a = t0, b = t0 + h;
    return (t >= std::fmin(a, b) - 1e-300) && (t <= std::fmax(a, b) + 1e-300);
  }
};

template <std::size_t N>
struct Event {
  std::function<double(double, const State<N>&)> value;
  int direction = 0;     // -1: down-crossings, +1: up, 0: both
  bool terminal = false;
  int id = 0;
};

template <std::size_t N>
struct EventHit {
  int id = 0;
  double t = 0.0;
  State<N> y{};
};

template <std::size_t N>
struct Result {
  std::vector<double> t;
  std::vector<State<N>> y;
  std::vector<EventHit<N>> events;
  bool terminated_by_event = false;
  EventHit<N> terminal_event{};
};

// Embedded Dormand-Prince 5(4) with PI step control.
template <std::size_t N>
class DormandPrince {
 public:
  using Field = std::function<void(double, const State<N>&, State<N>&)>;

  explicit DormandPrince(Field f) : f_(std::move(f)) {}

  Result<N> integrate(double t0, const State<N>& y0, double t_end,
                      const Options& opt = {},
                      const std::vector<Event<N>>& events = {}) {
    Result<N> out;
    if (t0 == t_end) {
      out.t = {t0};
      out.y = {y0};
      return out;
    }
    const double dir = t_end > t0 ? 1.0 : -1.0;
    double t = t0;
    State<N> y = y0, k1;
    f_(t, y, k1);
    double h = opt.initial_step != 0.0 ? std::fabs(opt.initial_step)
                                       : guess_step(t, y, k1, t_end, opt);
    double err_prev = 1.0;
    std::vector<double> gprev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e)
      gprev[e] = events[e].value(t, y);
    out.t.push_back(t);
    out.y.push_back(y);

    for (std::size_t step = 0; step < opt.max_steps; ++step) {
      if (opt.max_step > 0.0) h = std::fmin(h, opt.max_step);
      bool last = false;
      if ((t + dir * h - t_end) * dir >= 0.0) {
        h = std::fabs(t_end - t);
        last = true;
      }
      if (h <= std::fabs(t) * 1e-16 + 1e-300)
        throw step_underflow("ode: step size underflow");

      State<N> y_new, k_last;
      DenseSegment<N> seg;
      const double err = attempt(t, y, k1, dir * h, y_new, k_last, seg, opt);
      if (err <= 1.0) {
        // accepted; events are checked on interior dense samples as well so
        // that short-lived sign excursions inside one step are not missed
        double t_new = t + dir * h;
        bool stop = false;
        constexpr int kSub = 8;
        for (std::size_t e = 0; e < events.size() && !stop; ++e) {
          double ga = gprev[e];
          double ta = t;
          for (int sub = 1; sub <= kSub; ++sub) {
            const double tb =
                sub == kSub ? t_new : t + (t_new - t) * sub / kSub;
            const double gb =
                sub == kSub ? events[e].value(t_new, y_new)
                            : events[e].value(tb, seg.eval(tb));
            const bool crossed =
                (ga < 0.0 && gb >= 0.0 && events[e].direction >= 0) ||
                (ga > 0.0 && gb <= 0.0 && events[e].direction <= 0);
            if (crossed) {
              EventHit<N> hit = locate(events[e], seg, ta, tb, opt);
              out.events.push_back(hit);
              if (events[e].terminal) {
                out.terminated_by_event = true;
                out.terminal_event = hit;
                out.t.push_back(hit.t);
                out.y.push_back(hit.y);
                stop = true;
                break;
              }
            }
            ga = gb;
            ta = tb;
          }
          gprev[e] = ga;
        }
        if (stop) return out;
        t = t_new;
        y = y_new;
        k1 = k_last;  // FSAL
        out.t.push_back(t);
        out.y.push_back(y);
        if (on_step) on_step(seg);
        if (last) return out;
        const double fac =
            0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        h *= std::fmin(5.0, std::fmax(0.2, fac));
        err_prev = std::fmax(err, 1e-10);
      } else {
        h *= std::fmax(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
      }
    }
    throw max_steps_exceeded("ode: max step count exceeded");
  }

  // optional accepted-step observer (dense segment per step)
  std::function<void(const DenseSegment<N>&)> on_step;

 private:
  Field f_;

  double guess_step(double t, const State<N>& y, const State<N>& k1,
                    double t_end, const Options& opt) const {
    double dn = 0.0, yn = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      dn = std::fmax(dn, std::fabs(k1[i]));
      yn = std::fmax(yn, std::fabs(y[i]));
    }
    double h = dn > 0.0 ? 0.01 * (yn * opt.rel_tol + opt.abs_tol) / dn /
                              (opt.rel_tol + 1e-30) * opt.rel_tol
                        : 1e-6;
    h = std::fmax(h, 1e-12);
    (void)t;
    return std::fmin(h, std::fabs(t_end - t) );
  }

  double attempt(double t, const State<N>& y, const State<N>& k1, double h,
                 State<N>& y_new, State<N>& k_last, DenseSegment<N>& seg,
                 const Options& opt) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0,
                            d7 = 69997945.0 / 29380423.0;

    State<N> k2, k3, k4, k5, k6, k7, tmp;
    auto axpy = [&](const auto&... terms) {
      for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        ((s += terms.first * terms.second[i]), ...);
        tmp[i] = y[i] + h * s;
      }
    };
    using P = std::pair<double, const State<N>&>;
    axpy(P{a21, k1});
    f_(t + c2 * h, tmp, k2);
    axpy(P{a31, k1}, P{a32, k2});
    f_(t + c3 * h, tmp, k3);
    axpy(P{a41, k1}, P{a42, k2}, P{a43, k3});
    f_(t + c4 * h, tmp, k4);
    axpy(P{a51, k1}, P{a52, k2}, P{a53, k3}, P{a54, k4});
    f_(t + c5 * h, tmp, k5);
    axpy(P{a61, k1}, P{a62, k2}, P{a63, k3}, P{a64, k4}, P{a65, k5});
    f_(t + h, tmp, k6);
    axpy(P{b1, k1}, P{b3, k3}, P{b4, k4}, P{b5, k5}, P{b6, k6});
    y_new = tmp;
    f_(t + h, y_new, k7);
    k_last = k7;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.abs_tol +
                        opt.rel_tol * std::fmax(std::fabs(y[i]), std::fabs(y_new[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    seg.t0 = t;
    seg.h = h;
    for (std::size_t i = 0; i < N; ++i) {
      const double dy = y_new[i] - y[i];
      const double bspl = h * k1[i] - dy;
      seg.rcont[0][i] = y[i];
      seg.rcont[1][i] = dy;
      seg.rcont[2][i] = bspl;
      seg.rcont[3][i] = dy - h * k7[i] - bspl;
      seg.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    return err;
  }

  EventHit<N> locate(const Event<N>& ev, const DenseSegment<N>& seg,
                     double ta, double tb, const Options& opt) const {
    double ga = ev.value(ta, seg.eval(ta));
    double lo = ta, hi = tb;
    for (int it = 0; it < 200 && std::fabs(hi - lo) > opt.event_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = ev.value(mid, seg.eval(mid));
      if ((ga <= 0.0 && gm <= 0.0) || (ga >= 0.0 && gm >= 0.0)) {
        lo = mid;
        ga = gm;
      } else {
        hi = mid;
      }
    }
    EventHit<N> hit;
    hit.id = ev.id;
    hit.t = hi;
    hit.y = seg.eval(hi);
    return hit;
  }
};

}  // namespace dihedral4::ode

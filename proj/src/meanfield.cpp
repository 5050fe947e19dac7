#include "dwbec/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dwbec/numerics.hpp"

namespace dwbec {

void MeanFieldParams::validate() const {
  model.validate();
  if (!(n_total_a > 0.0) || !std::isfinite(n_total_a))
    throw std::invalid_argument("MeanFieldParams: N_A must be positive");
  if (!(n_total_b > 0.0) || !std::isfinite(n_total_b))
    throw std::invalid_argument("MeanFieldParams: N_B must be positive");
}

namespace {

double imbalance_root(double n_total, double n, const char* who) {
  const double arg = n_total * n_total - 4.0 * n * n;
  if (arg < 0.0) {
    std::ostringstream os;
    os << who << ": |2n| = " << std::abs(2.0 * n) << " exceeds N = " << n_total;
    throw std::domain_error(os.str());
  }
  return std::sqrt(arg);
}

void check_interior(double n_total, double n, double t, char label) {
  if (std::abs(2.0 * n) >= n_total - kSingularityMargin * n_total || !std::isfinite(n)) {
    std::ostringstream os;
    os.precision(17);
    os << "mean-field state hit full imbalance for component " << label << " at t=" << t
       << " (|2n|=" << std::abs(2.0 * n) << ", N=" << n_total << ")";
    throw SingularityError(os.str(), t);
  }
}

}  // namespace

double classical_energy(const MeanFieldParams& p, const MeanFieldState& s) {
  const auto& m = p.model;
  const double na = p.n_total_a, nb = p.n_total_b;
  const double ra = imbalance_root(na, s.n_a, "classical_energy");
  const double rb = imbalance_root(nb, s.n_b, "classical_energy");
  return m.omega / 2 * (ra * std::cos(s.theta_a) + rb * std::cos(s.theta_b)) +
         m.kappa / 2 * na * nb + m.kappa_a / 4 * na * na + m.kappa_b / 4 * nb * nb +
         m.kappa_a * s.n_a * s.n_a + m.kappa_b * s.n_b * s.n_b + 2.0 * m.kappa * s.n_a * s.n_b;
}

MeanFieldDerivative equations_of_motion(const MeanFieldParams& p, const MeanFieldState& s) {
  check_interior(p.n_total_a, s.n_a, s.t, 'A');
  check_interior(p.n_total_b, s.n_b, s.t, 'B');
  const auto& m = p.model;
  const double ra = std::sqrt(p.n_total_a * p.n_total_a - 4.0 * s.n_a * s.n_a);
  const double rb = std::sqrt(p.n_total_b * p.n_total_b - 4.0 * s.n_b * s.n_b);
  return {
      m.omega / 2 * ra * std::sin(s.theta_a),
      m.omega / 2 * rb * std::sin(s.theta_b),
      -2.0 * m.omega * s.n_a * std::cos(s.theta_a) / ra + 2.0 * m.kappa_a * s.n_a +
          2.0 * m.kappa * s.n_b,
      -2.0 * m.omega * s.n_b * std::cos(s.theta_b) / rb + 2.0 * m.kappa_b * s.n_b +
          2.0 * m.kappa * s.n_a,
  };
}

MeanFieldState default_initial_state(const MeanFieldParams& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("default_initial_state: eps must lie in (0, 1)");
  return {p.n_total_a / 2 * (1.0 - eps), -p.n_total_b / 2 * (1.0 - eps), 0.0, 0.0, 0.0};
}

Trajectory integrate(const MeanFieldParams& p, const MeanFieldState& s0, double t_end, double dt,
                     const IntegrateOptions& opts) {
  p.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(t_end >= s0.t)) throw std::invalid_argument("integrate: t_end precedes the start time");
  if (opts.record_every == 0) throw std::invalid_argument("integrate: record_every must be >= 1");

  check_interior(p.n_total_a, s0.n_a, s0.t, 'A');
  check_interior(p.n_total_b, s0.n_b, s0.t, 'B');

  Trajectory traj;
  traj.energy0 = classical_energy(p, s0);
  traj.samples.push_back(s0);

  auto rhs = [&p](double t, const std::array<double, 4>& y) {
    return equations_of_motion(p, {y[0], y[1], y[2], y[3], t});
  };

  const auto steps = static_cast<std::size_t>(std::llround(std::ceil((t_end - s0.t) / dt - 1e-9)));
  std::array<double, 4> y{s0.n_a, s0.n_b, s0.theta_a, s0.theta_b};
  bool warned = false;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = s0.t + static_cast<double>(i - 1) * dt;
    const double h = std::min(dt, t_end - t);
    if (!(h > 0.0)) break;

    if (!warned) {
      const auto d = rhs(t, y);
      const double phase_step = h * std::max(std::abs(d[2]), std::abs(d[3]));
      if (phase_step > kPhaseStepWarn) {
        std::ostringstream os;
        os << "dt*max|theta'| = " << phase_step << " rad exceeds " << kPhaseStepWarn
           << "; consider a smaller dt";
        traj.warnings.push_back({t, os.str()});
        warned = true;
      }
    }

    try {
      y = rk4_step(rhs, y, t, h);
    } catch (const IntegrationError& e) {
      throw SingularityError(e.what(), e.time());
    }
    const double t_next = (i == steps) ? t_end : s0.t + static_cast<double>(i) * dt;
    check_interior(p.n_total_a, y[0], t_next, 'A');
    check_interior(p.n_total_b, y[1], t_next, 'B');

    if (i % opts.record_every == 0 || i == steps)
      traj.samples.push_back({y[0], y[1], y[2], y[3], t_next});
  }
  return traj;
}

double oscillation_period(const Trajectory& traj, Component c) {
  const auto& s = traj.samples;
  auto pod = [&](std::size_t i) { return c == Component::A ? s[i].n_a : s[i].n_b; };

  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < s.size() && maxima.size() < 2; ++i) {
    const double y0 = pod(i - 1), y1 = pod(i), y2 = pod(i + 1);
    if (y1 > y0 && y1 >= y2) {
      const double denom = y0 - 2.0 * y1 + y2;
      const double h = s[i + 1].t - s[i].t;
      const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      maxima.push_back(s[i].t + shift * h);
    }
  }
  return maxima.size() < 2 ? 0.0 : maxima[1] - maxima[0];
}

}  // namespace dwbec

#include "dwbec/kernels.hpp"

#include <exception>
#include <stdexcept>

#include <omp.h>

#include "dwbec/entanglement.hpp"

namespace dwbec {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  out.back() = hi;
  return out;
}

namespace {

std::vector<ConcurrenceEvaluator> make_evaluators(const ModelParams& base,
                                                  const std::vector<double>& omegas) {
  std::vector<ConcurrenceEvaluator> evals;
  evals.reserve(omegas.size());
  for (double w : omegas) {
    ModelParams p = base;
    p.omega = w;
    evals.emplace_back(p);
  }
  return evals;
}

}  // namespace

ConcurrenceGrid sweep_concurrence_serial(const ModelParams& base,
                                         const std::vector<double>& omegas,
                                         const std::vector<double>& times) {
  const auto evals = make_evaluators(base, omegas);
  ConcurrenceGrid g{omegas, times, std::vector<double>(omegas.size() * times.size())};
  for (std::size_t i = 0; i < omegas.size(); ++i)
    for (std::size_t j = 0; j < times.size(); ++j)
      g.values[i * times.size() + j] = evals[i](times[j]);
  return g;
}

ConcurrenceGrid sweep_concurrence_parallel(const ModelParams& base,
                                           const std::vector<double>& omegas,
                                           const std::vector<double>& times, int threads) {
  const auto evals = make_evaluators(base, omegas);
  ConcurrenceGrid g{omegas, times, std::vector<double>(omegas.size() * times.size())};
  const std::size_t nt = times.size();
  const auto cells = static_cast<long long>(omegas.size() * nt);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 256) num_threads(nthreads)
  for (long long cell = 0; cell < cells; ++cell) {
    const auto c = static_cast<std::size_t>(cell);
    g.values[c] = evals[c / nt](times[c % nt]);
  }
  return g;
}

std::vector<Trajectory> integrate_batch_serial(const MeanFieldParams& p,
                                               const std::vector<MeanFieldState>& starts,
                                               double t_end, double dt,
                                               const IntegrateOptions& opts) {
  std::vector<Trajectory> out;
  out.reserve(starts.size());
  for (const auto& s0 : starts) out.push_back(integrate(p, s0, t_end, dt, opts));
  return out;
}

std::vector<Trajectory> integrate_batch_parallel(const MeanFieldParams& p,
                                                 const std::vector<MeanFieldState>& starts,
                                                 double t_end, double dt,
                                                 const IntegrateOptions& opts, int threads) {
  std::vector<Trajectory> out(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
  const auto n = static_cast<long long>(starts.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = integrate(p, starts[k], t_end, dt, opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dwbec

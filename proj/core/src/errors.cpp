#include "porohho/errors.hpp"

#include <cmath>

namespace porohho {

ErrorAccumulator::ErrorAccumulator(const HhoSpace& U, const PressureSpace& P, const ManufacturedCase& mc,
                                   const TimeGrid& grid, int time_points)
    : m_U(&U), m_P(&P), m_case(&mc), m_grid(grid), m_time_points(time_points) {
  if (!mc.data.exact_u || !mc.data.exact_p) {
    throw std::runtime_error("ErrorAccumulator: case has no exact solution");
  }
}

void ErrorAccumulator::accept(const SystemState& state) {
  if (state.step < 1) return;
  const double tau = m_grid.tau();
  const TimeAverage avg = time_average_rule(m_grid.time(state.step - 1), m_grid.time(state.step), m_time_points);

  const auto& exact_u = m_case->data.exact_u;
  const Eigen::VectorXd iu = m_U->interpolate([&](const Eigen::Vector2d& x) {
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    for (size_t g = 0; g < avg.times.size(); ++g) acc += avg.weights[g] * exact_u(x, avg.times[g]);
    return acc;
  });
  m_sum_u2 += tau * m_U->strain_seminorm_squared(state.u - iu);

  const auto& exact_p = m_case->data.exact_p;
  const Eigen::VectorXd pp = m_P->project([&](const Eigen::Vector2d& x) {
    double acc = 0.;
    for (size_t g = 0; g < avg.times.size(); ++g) acc += avg.weights[g] * exact_p(x, avg.times[g]);
    return acc;
  });
  const double ep = m_P->l2_norm(state.p - pp);
  m_sum_p2 += tau * ep * ep;
}

double ErrorAccumulator::displacement_error() const { return std::sqrt(std::max(0., m_sum_u2)); }
double ErrorAccumulator::pressure_error() const { return std::sqrt(std::max(0., m_sum_p2)); }

CaseErrors error_norms(TransientSolver& solver, const HhoSpace& U, const PressureSpace& P,
                       const ManufacturedCase& mc, const TimeGrid& grid) {
  ErrorAccumulator acc(U, P, mc, grid, solver.config().time_quadrature);
  RunResult result =
      solver.run_transient(mc.data, grid, false, [&](const SystemState& state) { acc.accept(state); });
  CaseErrors errors;
  errors.e_u = acc.displacement_error();
  errors.e_p = acc.pressure_error();
  errors.diagnostics = std::move(result.diagnostics);
  return errors;
}

}  // namespace porohho

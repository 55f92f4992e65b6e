#ifndef POROHHO_ERRORS_HPP
#define POROHHO_ERRORS_HPP

#include "porohho/manufactured.hpp"
#include "porohho/solver.hpp"

namespace porohho {

/// Space-time error measures against a manufactured case:
///   E_u = (sum_n tau |u_h^n - I_h ubar^n|_{eps,h}^2)^{1/2}
///   E_p = (sum_n tau |p_h^n - pi_h pbar^n|_Omega^2)^{1/2}
/// where ubar^n, pbar^n are the exact fields averaged over (t^{n-1}, t^n)
/// with the same Gauss rule as the loads. Feed states step by step (as a
/// run_transient observer) to avoid storing trajectories.
class ErrorAccumulator {
public:
  ErrorAccumulator(const HhoSpace& U, const PressureSpace& P, const ManufacturedCase& mc, const TimeGrid& grid,
                   int time_points = 2);

  void accept(const SystemState& state);

  double displacement_error() const;
  double pressure_error() const;

private:
  const HhoSpace* m_U;
  const PressureSpace* m_P;
  const ManufacturedCase* m_case;
  TimeGrid m_grid;
  int m_time_points;
  double m_sum_u2 = 0.;
  double m_sum_p2 = 0.;
};

/// Convenience wrapper: runs the transient and returns (E_u, E_p, diagnostics).
struct CaseErrors {
  double e_u = 0.;
  double e_p = 0.;
  RunDiagnostics diagnostics;
};
CaseErrors error_norms(TransientSolver& solver, const HhoSpace& U, const PressureSpace& P,
                       const ManufacturedCase& mc, const TimeGrid& grid);

}  // namespace porohho

#endif

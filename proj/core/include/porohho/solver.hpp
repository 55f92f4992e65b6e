#ifndef POROHHO_SOLVER_HPP
#define POROHHO_SOLVER_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "porohho/dof_map.hpp"
#include "porohho/forms.hpp"

namespace porohho {

/// Uniform time mesh on (0, t_final).
struct TimeGrid {
  double t_final = 1.;
  int n_steps = 1;

  double tau() const { return t_final / n_steps; }
  double time(int n) const { return n * tau(); }
};

/// Backward difference of a sampled trajectory slot.
inline double backward_difference(double current, double previous, double tau) { return (current - previous) / tau; }

enum class InitMode {
  project,  ///< store the L2 projection of the initial fluid content
  solve     ///< solve the stationary coupled problem for (u0, p0)
};

struct SolverConfig {
  double c0 = 0.;
  double gamma = -1.;     ///< <= 0: law-recommended value
  double varsigma = -1.;  ///< <= 0: 6 k^2 max(1, N_faces / 2)
  double newton_tol = 1e-10;
  int newton_max = 25;
  bool condense = true;
  InitMode init = InitMode::project;
  int time_quadrature = 2;
  bool use_threads = true;
};

/// Problem data. Absent functions mean zero; exact_* are optional references
/// for error measures.
struct CaseData {
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, double)> load;
  std::function<double(const Eigen::Vector2d&, double)> source;
  /// Prescribed Darcy flux (kappa grad p) . n on the boundary.
  std::function<double(const Eigen::Vector2d&, const Eigen::Vector2d&, double)> boundary_flux;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, double)> dirichlet;
  ScalarField initial_fluid_content;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, double)> exact_u;
  std::function<double(const Eigen::Vector2d&, double)> exact_p;
};

struct SystemState {
  Eigen::VectorXd u;  ///< full displacement layout (boundary faces hold data)
  Eigen::VectorXd p;
  double multiplier = 0.;
  /// Dual vector q -> C0 (p, q) - b_h(u, q), the discrete fluid content; at
  /// step 0 it comes straight from phi0.
  Eigen::VectorXd fluid_content;
  int step = 0;
  double time = 0.;
  int newton_iterations = 0;
  std::vector<double> residual_history;
};

struct RunDiagnostics {
  double sum_tau_strain2 = 0.;     ///< sum_n tau |u^n|_{eps,h}^2
  double sum_tau_pressure2 = 0.;   ///< sum_n tau |p^n - mean|_Omega^2
  double ch_norm_s = 0.;           ///< |sum_n tau p^n|_{c,h}
  double multiplier_max = 0.;      ///< largest zero-mean multiplier magnitude
  int newton_total = 0;
  int newton_max_per_step = 0;
  double newton_avg = 0.;
  std::vector<std::string> warnings;
};

struct RunResult {
  SystemState final_state;
  RunDiagnostics diagnostics;
  std::vector<SystemState> trajectory;  ///< filled only when requested
};

/// Thrown when the Newton loop fails; carries the residual history.
class NewtonFailure : public std::runtime_error {
public:
  NewtonFailure(std::string what, std::vector<double> history)
      : std::runtime_error(std::move(what)), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/// Backward-Euler driver for the coupled problem: per-step monolithic Newton
/// on the tau-scaled system, optional per-cell static condensation of the
/// displacement cell unknowns, and a scalar zero-mean multiplier when C0 = 0.
class TransientSolver {
public:
  TransientSolver(const HhoSpace& U, const PressureSpace& P, const Forms& forms, const StressLaw& law,
                  SolverConfig config);
  ~TransientSolver();

  double gamma() const { return m_gamma; }
  double varsigma() const { return m_forms->varsigma(); }
  const SolverConfig& config() const { return m_config; }
  const GlobalDofMap& dof_map() const { return m_map; }

  /// State at t = 0 (see InitMode).
  SystemState initialize(const CaseData& data);

  /// Advances one step of the given grid; prev.step identifies t^{n-1}.
  SystemState advance(const SystemState& prev, const CaseData& data, const TimeGrid& grid);

  RunResult run_transient(const CaseData& data, const TimeGrid& grid, bool keep_trajectory = false,
                          const std::function<void(const SystemState&)>& observer = nullptr);

  /// Default SWIP penalty for this mesh/degree.
  static double default_varsigma(const PolyMesh& mesh, int degree);

private:
  struct Workspace;

  /// One Newton solve of the theta-weighted system
  ///   a_h(u, v) + b_h(v, p) = rhs_u(v)
  ///   c0 (p, q) - b_h(u, q) + theta c_h(p, q) [+ lambda (1,q)] = rhs_p(q)
  /// used by both the time step (theta = tau) and the stationary
  /// initialization (theta = 0).
  void newton_solve(SystemState& state, double theta, const Eigen::VectorXd& rhs_u, const Eigen::VectorXd& rhs_p);

  void apply_dirichlet(SystemState& state, const CaseData& data, double t) const;
  Eigen::VectorXd fluid_content_of(const SystemState& state) const;

  const HhoSpace* m_U;
  const PressureSpace* m_P;
  const Forms* m_forms;
  const StressLaw* m_law;
  SolverConfig m_config;
  double m_gamma;
  GlobalDofMap m_map;
  std::unique_ptr<Workspace> m_work;
};

}  // namespace porohho

#endif

#ifndef POROHHO_CONVERGENCE_HPP
#define POROHHO_CONVERGENCE_HPP

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "porohho/manufactured.hpp"

namespace porohho {

struct ConvergenceRow {
  double h = 0.;
  double e_u = 0., ocv_u = std::numeric_limits<double>::quiet_NaN();
  double e_p = 0., ocv_p = std::numeric_limits<double>::quiet_NaN();
  double newton_avg = 0.;
  double seconds = 0.;
  int n_steps = 0;
  int n_cells = 0;
};

struct StudyOptions {
  int degree = 1;
  /// Coarsest-level time step; <= 0 means the 0.2 / 2^{k+1} convention.
  double tau0 = -1.;
  SolverConfig solver;
  int time_points = 2;
  bool verbose = false;
  std::ostream* log = nullptr;
};

struct StudyResult {
  std::vector<ConvergenceRow> rows;
  /// Metadata echoed into every output (resolved gamma/varsigma, tolerances,
  /// mesh size convention, law name).
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Runs the manufactured case over a mesh family with the coupled space-time
/// refinement tau_l / tau_{l+1} = 2^k h_l / h_{l+1} and tabulates errors and
/// observed convergence rates. Any level failure aborts with the partial
/// table embedded in the exception message.
StudyResult convergence_study(const ManufacturedCase& mc, const std::vector<const PolyMesh*>& meshes,
                              const StudyOptions& options);

/// Observed order between consecutive levels.
double observed_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

void write_csv(std::ostream& out, const StudyResult& result);
void write_table(std::ostream& out, const StudyResult& result);

}  // namespace porohho

#endif

#include "porohho/convergence.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "porohho/errors.hpp"

namespace porohho {

double observed_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

StudyResult convergence_study(const ManufacturedCase& mc, const std::vector<const PolyMesh*>& meshes,
                              const StudyOptions& options) {
  if (meshes.empty()) throw std::invalid_argument("convergence_study: no meshes");
  const int k = options.degree;
  const double tau0 = options.tau0 > 0. ? options.tau0 : 0.2 / std::pow(2., k + 1);

  StudyResult result;
  double tau = tau0;
  double gamma_used = 0., varsigma_used = 0.;

  for (size_t l = 0; l < meshes.size(); ++l) {
    const PolyMesh& mesh = *meshes[l];
    if (l > 0) {
      // tau_l / tau_{l+1} = 2^k h_l / h_{l+1}
      tau *= meshes[l]->mesh_size() / (std::pow(2., k) * meshes[l - 1]->mesh_size());
    }
    const int n_steps = std::max(1, static_cast<int>(std::lround(mc.t_final / tau)));
    const TimeGrid grid{mc.t_final, n_steps};

    const auto start = std::chrono::steady_clock::now();
    HhoSpace U(mesh, {k, false, -1, options.solver.use_threads});
    PressureSpace P(mesh, k, -1, false, options.solver.use_threads);
    SolverConfig config = options.solver;
    config.c0 = mc.c0;
    const double varsigma =
        config.varsigma > 0. ? config.varsigma : TransientSolver::default_varsigma(mesh, k);
    Forms forms(U, P, mc.kappa, varsigma, config.use_threads);
    TransientSolver solver(U, P, forms, mc.law, config);
    gamma_used = solver.gamma();
    varsigma_used = varsigma;

    const CaseErrors errors = error_norms(solver, U, P, mc, grid);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ConvergenceRow row;
    row.h = mesh.mesh_size();
    row.e_u = errors.e_u;
    row.e_p = errors.e_p;
    row.newton_avg = errors.diagnostics.newton_avg;
    row.seconds = seconds;
    row.n_steps = n_steps;
    row.n_cells = mesh.n_cells();
    if (l > 0) {
      const ConvergenceRow& prev = result.rows.back();
      row.ocv_u = observed_rate(prev.e_u, row.e_u, prev.h, row.h);
      row.ocv_p = observed_rate(prev.e_p, row.e_p, prev.h, row.h);
    }
    result.rows.push_back(row);
    if (options.log) {
      *options.log << "# level " << l << ": h=" << row.h << " cells=" << row.n_cells << " steps=" << n_steps
                   << " E_u=" << row.e_u << " E_p=" << row.e_p << " (" << seconds << " s)\n";
    }
  }

  std::ostringstream gamma_str, sigma_str, tau_str, tol_str;
  gamma_str << gamma_used;
  sigma_str << varsigma_used;
  tau_str << tau0;
  tol_str << options.solver.newton_tol;
  result.metadata = {
      {"case", mc.name},
      {"law", mc.law.name()},
      {"degree", std::to_string(k)},
      {"c0", std::to_string(mc.c0)},
      {"gamma", gamma_str.str()},
      {"varsigma", sigma_str.str()},
      {"newton_tol", tol_str.str()},
      {"tau0", tau_str.str()},
      {"time_refinement", "tau_l/tau_{l+1} = 2^k h_l/h_{l+1}"},
      {"mesh_size_convention", "h = max cell diameter"},
      {"condense", options.solver.condense ? "on" : "off"},
  };
  return result;
}

void write_csv(std::ostream& out, const StudyResult& result) {
  for (const auto& [key, value] : result.metadata) out << "# " << key << " = " << value << "\n";
  out << "h,E_u,OCV_u,E_p,OCV_p,newton_avg,seconds\n";
  out << std::setprecision(17);
  for (const ConvergenceRow& row : result.rows) {
    out << row.h << "," << row.e_u << ",";
    if (std::isfinite(row.ocv_u)) out << row.ocv_u;
    out << "," << row.e_p << ",";
    if (std::isfinite(row.ocv_p)) out << row.ocv_p;
    out << "," << row.newton_avg << "," << row.seconds << "\n";
  }
}

void write_table(std::ostream& out, const StudyResult& result) {
  for (const auto& [key, value] : result.metadata) out << "# " << key << " = " << value << "\n";
  out << std::setw(12) << "h" << std::setw(14) << "E_u" << std::setw(8) << "OCV" << std::setw(14) << "E_p"
      << std::setw(8) << "OCV" << std::setw(12) << "newton_avg" << std::setw(12) << "seconds" << "\n";
  for (const ConvergenceRow& row : result.rows) {
    out << std::setw(12) << std::scientific << std::setprecision(2) << row.h;
    out << std::setw(14) << std::setprecision(3) << row.e_u;
    if (std::isfinite(row.ocv_u)) {
      out << std::setw(8) << std::fixed << std::setprecision(2) << row.ocv_u;
    } else {
      out << std::setw(8) << "---";
    }
    out << std::setw(14) << std::scientific << std::setprecision(3) << row.e_p;
    if (std::isfinite(row.ocv_p)) {
      out << std::setw(8) << std::fixed << std::setprecision(2) << row.ocv_p;
    } else {
      out << std::setw(8) << "---";
    }
    out << std::setw(12) << std::fixed << std::setprecision(2) << row.newton_avg;
    out << std::setw(12) << std::setprecision(2) << row.seconds << "\n";
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace porohho

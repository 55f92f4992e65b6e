#include "porohho/solver.hpp"

#include <cmath>

#include "porohho/parallel.hpp"

namespace porohho {

namespace {

// Position of (row, col) in the compressed column-major value array.
int value_index(const Eigen::SparseMatrix<double>& M, int row, int col) {
  for (int idx = M.outerIndexPtr()[col]; idx < M.outerIndexPtr()[col + 1]; ++idx) {
    if (M.innerIndexPtr()[idx] == row) return idx;
  }
  throw std::logic_error("solver: entry outside the assembled pattern");
}

}  // namespace

//------------------------------------------------------------------------------
// Workspace: sparsity pattern, constant value components, per-cell scratch
//------------------------------------------------------------------------------

struct TransientSolver::Workspace {
  // Per cell: local positions of the displacement dofs kept in the global
  // block (cell block only in the uncondensed path, interior faces always),
  // and the matrix indices of [kept displacement | cell pressure] slots.
  std::vector<std::vector<int>> keep_local;
  std::vector<std::vector<int>> block_index;
  std::vector<std::vector<int>> value_idx;  // (i, j) -> compressed value position

  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd base_static;  // C0 mass + multiplier entries
  Eigen::VectorXd base_darcy;   // Darcy/SWIP entries, scaled by theta at runtime

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  // Per-iteration cell scratch (written in the parallel phase, read serially).
  std::vector<Eigen::MatrixXd> cell_block;     // variable Jacobian block
  std::vector<Eigen::VectorXd> cell_residual;  // full local mechanics residual
  std::vector<Eigen::VectorXd> corr_face;      // condensation RHS correction, face rows
  std::vector<Eigen::VectorXd> corr_p;         // condensation RHS correction, pressure rows
  // Recovery: delta_c = -(rec_r + rec_A delta_f + rec_B delta_p)
  std::vector<Eigen::MatrixXd> rec_A, rec_B;
  std::vector<Eigen::VectorXd> rec_r;
};

TransientSolver::TransientSolver(const HhoSpace& U, const PressureSpace& P, const Forms& forms,
                                 const StressLaw& law, SolverConfig config)
    : m_U(&U),
      m_P(&P),
      m_forms(&forms),
      m_law(&law),
      m_config(config),
      m_gamma(config.gamma > 0. ? config.gamma : law.recommended_gamma()),
      m_map(U, P, config.c0 == 0.),
      m_work(std::make_unique<Workspace>()) {
  const PolyMesh& mesh = U.mesh();
  const int n_cells = mesh.n_cells();
  const int np = P.block();
  const bool condense = m_config.condense;
  const int n = condense ? m_map.n_reduced() : m_map.n_unknowns();

  if (m_config.c0 < 0.) throw std::invalid_argument("solver: C0 must be nonnegative");

  Workspace& ws = *m_work;
  ws.keep_local.resize(n_cells);
  ws.block_index.resize(n_cells);
  ws.value_idx.resize(n_cells);
  ws.cell_block.resize(n_cells);
  ws.cell_residual.resize(n_cells);
  if (condense) {
    ws.corr_face.resize(n_cells);
    ws.corr_p.resize(n_cells);
    ws.rec_A.resize(n_cells);
    ws.rec_B.resize(n_cells);
    ws.rec_r.resize(n_cells);
  }

  auto pressure_pos = [&](int iT) {
    return condense ? m_map.reduced_pressure_offset(iT) : m_map.pressure_offset(iT);
  };
  const int mult = condense ? m_map.reduced_multiplier_index() : m_map.multiplier_index();

  for (int iT = 0; iT < n_cells; ++iT) {
    const Cell& T = mesh.cell(iT);
    const LocalLayout layout{U.degree(), static_cast<int>(T.faces.size())};
    std::vector<int>& keep = ws.keep_local[iT];
    std::vector<int>& block = ws.block_index[iT];
    if (!condense) {
      for (int i = 0; i < layout.cell_block(); ++i) {
        keep.push_back(i);
        block.push_back(m_map.cell_offset(iT) + i);
      }
    }
    for (size_t f = 0; f < T.faces.size(); ++f) {
      const int iF = T.faces[f];
      const int offset = condense ? m_map.reduced_face_offset(iF) : m_map.face_offset(iF);
      if (offset < 0) continue;  // Dirichlet face
      for (int i = 0; i < layout.face_block(); ++i) {
        keep.push_back(layout.face_offset(static_cast<int>(f), 0) + i);
        block.push_back(offset + i);
      }
    }
    for (int i = 0; i < np; ++i) block.push_back(pressure_pos(iT) + i);
  }

  // Sparsity pattern.
  std::vector<Eigen::Triplet<double>> pattern;
  for (int iT = 0; iT < n_cells; ++iT) {
    const auto& block = ws.block_index[iT];
    for (int i : block) {
      for (int j : block) pattern.emplace_back(i, j, 0.);
    }
  }
  for (int iF : mesh.interior_faces()) {
    const Face& F = mesh.face(iF);
    for (int a = 0; a < np; ++a) {
      for (int b = 0; b < np; ++b) {
        pattern.emplace_back(pressure_pos(F.cell[0]) + a, pressure_pos(F.cell[1]) + b, 0.);
        pattern.emplace_back(pressure_pos(F.cell[1]) + a, pressure_pos(F.cell[0]) + b, 0.);
      }
    }
  }
  if (mult >= 0) {
    for (int iT = 0; iT < n_cells; ++iT) {
      for (int i = 0; i < np; ++i) {
        pattern.emplace_back(pressure_pos(iT) + i, mult, 0.);
        pattern.emplace_back(mult, pressure_pos(iT) + i, 0.);
      }
    }
    pattern.emplace_back(mult, mult, 0.);
  }
  ws.matrix.resize(n, n);
  ws.matrix.setFromTriplets(pattern.begin(), pattern.end());
  ws.matrix.makeCompressed();
  pattern.clear();
  pattern.shrink_to_fit();

  // Value-position maps for the per-cell variable blocks.
  parallel_for(
      n_cells,
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          const auto& block = ws.block_index[iT];
          const int nb = static_cast<int>(block.size());
          ws.value_idx[iT].resize(nb * nb);
          for (int i = 0; i < nb; ++i) {
            for (int j = 0; j < nb; ++j) {
              ws.value_idx[iT][i * nb + j] = value_index(ws.matrix, block[i], block[j]);
            }
          }
        }
      },
      m_config.use_threads);

  // Constant value components.
  const int nnz = static_cast<int>(ws.matrix.nonZeros());
  ws.base_static = Eigen::VectorXd::Zero(nnz);
  ws.base_darcy = Eigen::VectorXd::Zero(nnz);
  for (int iT = 0; iT < n_cells; ++iT) {
    const Eigen::MatrixXd& mass = P.mass(iT);
    const Eigen::MatrixXd& vol = forms.darcy_volume(iT);
    const int o = pressure_pos(iT);
    for (int a = 0; a < np; ++a) {
      for (int b = 0; b < np; ++b) {
        const int idx = value_index(ws.matrix, o + a, o + b);
        ws.base_static[idx] += m_config.c0 * mass(a, b);
        ws.base_darcy[idx] += vol(a, b);
      }
    }
  }
  const auto& interior = mesh.interior_faces();
  for (size_t pos = 0; pos < interior.size(); ++pos) {
    const Face& F = mesh.face(interior[pos]);
    const Eigen::MatrixXd& S = forms.swip_face(static_cast<int>(pos));
    const int o1 = pressure_pos(F.cell[0]);
    const int o2 = pressure_pos(F.cell[1]);
    for (int a = 0; a < np; ++a) {
      for (int b = 0; b < np; ++b) {
        ws.base_darcy[value_index(ws.matrix, o1 + a, o1 + b)] += S(a, b);
        ws.base_darcy[value_index(ws.matrix, o1 + a, o2 + b)] += S(a, np + b);
        ws.base_darcy[value_index(ws.matrix, o2 + a, o1 + b)] += S(np + a, b);
        ws.base_darcy[value_index(ws.matrix, o2 + a, o2 + b)] += S(np + a, np + b);
      }
    }
  }
  if (mult >= 0) {
    for (int iT = 0; iT < n_cells; ++iT) {
      const Eigen::VectorXd& mom = P.moments(iT);
      const int o = pressure_pos(iT);
      for (int i = 0; i < np; ++i) {
        ws.base_static[value_index(ws.matrix, o + i, mult)] += mom(i);
        ws.base_static[value_index(ws.matrix, mult, o + i)] += mom(i);
      }
    }
  }

  ws.lu.analyzePattern(ws.matrix);
}

TransientSolver::~TransientSolver() = default;

double TransientSolver::default_varsigma(const PolyMesh& mesh, int degree) {
  const RegularityReport report = validate_regularity(mesh);
  return 6. * degree * degree * std::max(1., report.max_faces_per_cell / 2.);
}

//------------------------------------------------------------------------------
// Newton solve of the theta-weighted coupled system
//------------------------------------------------------------------------------

void TransientSolver::newton_solve(SystemState& state, double theta, const Eigen::VectorXd& rhs_u,
                                   const Eigen::VectorXd& rhs_p) {
  const PolyMesh& mesh = m_U->mesh();
  Workspace& ws = *m_work;
  const int n_cells = mesh.n_cells();
  const int np = m_P->block();
  const bool condense = m_config.condense;
  const int n = condense ? m_map.n_reduced() : m_map.n_unknowns();
  const int mult = condense ? m_map.reduced_multiplier_index() : m_map.multiplier_index();
  const int pressure_base = condense ? m_map.reduced_pressure_offset(0) : m_map.pressure_offset(0);
  const int nc = m_U->cell_block();

  state.residual_history.clear();
  state.newton_iterations = 0;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  // Phase 1: per-cell mechanics residual, variable Jacobian block, and (in the
  // condensed path) the Schur pieces and RHS corrections.
  auto assemble_cells = [&]() {
    parallel_for(
        n_cells,
        [&](int begin, int end) {
          for (int iT = begin; iT < end; ++iT) {
            const Eigen::VectorXd u_loc = m_U->gather(iT, state.u);
            const auto p_loc = state.p.segment(m_P->offset(iT), np);
            CellElasticity ce = assemble_cell_elasticity(*m_U, *m_law, m_gamma, iT, u_loc, true);
            const Eigen::MatrixXd& B = m_forms->coupling_block(iT);
            Eigen::VectorXd res = ce.residual + B.transpose() * p_loc;
            res.head(nc) -= rhs_u.segment(m_U->cell_offset(iT), nc);
            ws.cell_residual[iT] = res;

            const auto& keep = ws.keep_local[iT];
            const int nkeep = static_cast<int>(keep.size());
            Eigen::MatrixXd block(nkeep + np, nkeep + np);
            if (!condense) {
              for (int i = 0; i < nkeep; ++i) {
                for (int j = 0; j < nkeep; ++j) block(i, j) = ce.jacobian(keep[i], keep[j]);
                for (int j = 0; j < np; ++j) {
                  block(i, nkeep + j) = B(j, keep[i]);
                  block(nkeep + j, i) = -B(j, keep[i]);
                }
              }
              block.bottomRightCorner(np, np).setZero();
            } else {
              Eigen::MatrixXd A_cf(nc, nkeep), A_fc(nkeep, nc), A_ff(nkeep, nkeep), B_f(np, nkeep);
              for (int i = 0; i < nkeep; ++i) {
                for (int j = 0; j < nc; ++j) {
                  A_fc(i, j) = ce.jacobian(keep[i], j);
                  A_cf(j, i) = ce.jacobian(j, keep[i]);
                }
                for (int j = 0; j < nkeep; ++j) A_ff(i, j) = ce.jacobian(keep[i], keep[j]);
                for (int j = 0; j < np; ++j) B_f(j, i) = B(j, keep[i]);
              }
              const Eigen::MatrixXd B_c = B.leftCols(nc);
              Eigen::LDLT<Eigen::MatrixXd> ldlt(ce.jacobian.topLeftCorner(nc, nc));
              if (ldlt.info() != Eigen::Success) {
                throw std::runtime_error("static condensation: singular cell block in cell " + std::to_string(iT));
              }
              ws.rec_A[iT] = ldlt.solve(A_cf);
              ws.rec_B[iT] = ldlt.solve(B_c.transpose());
              ws.rec_r[iT] = ldlt.solve(res.head(nc));
              block.topLeftCorner(nkeep, nkeep) = A_ff - A_fc * ws.rec_A[iT];
              block.topRightCorner(nkeep, np) = B_f.transpose() - A_fc * ws.rec_B[iT];
              block.bottomLeftCorner(np, nkeep) = -B_f + B_c * ws.rec_A[iT];
              block.bottomRightCorner(np, np) = B_c * ws.rec_B[iT];
              ws.corr_face[iT] = -A_fc * ws.rec_r[iT];
              ws.corr_p[iT] = B_c * ws.rec_r[iT];
            }
            ws.cell_block[iT] = std::move(block);
          }
        },
        m_config.use_threads);
  };

  // Phase 2: global residual (true norm) and reduced RHS.
  auto build_rhs = [&]() {
    Eigen::VectorXd Fp = theta * m_forms->ch_applied(state.p) - m_forms->bh_applied_to_displacement(state.u) - rhs_p;
    for (int iT = 0; iT < n_cells; ++iT) {
      Fp.segment(m_P->offset(iT), np).noalias() +=
          m_config.c0 * (m_P->mass(iT) * state.p.segment(m_P->offset(iT), np));
    }
    double Fl = 0.;
    if (mult >= 0) {
      Fp += state.multiplier * m_P->integral_functional();
      Fl = m_P->integral(state.p);
    }

    rhs.setZero();
    double cell_rows2 = 0.;
    for (int iT = 0; iT < n_cells; ++iT) {
      const Cell& T = mesh.cell(iT);
      const LocalLayout layout{m_U->degree(), static_cast<int>(T.faces.size())};
      const Eigen::VectorXd& res = ws.cell_residual[iT];
      if (!condense) {
        rhs.segment(m_map.cell_offset(iT), nc) += res.head(nc);
      } else {
        cell_rows2 += res.head(nc).squaredNorm();
      }
      for (size_t f = 0; f < T.faces.size(); ++f) {
        const int offset = condense ? m_map.reduced_face_offset(T.faces[f]) : m_map.face_offset(T.faces[f]);
        if (offset < 0) continue;
        rhs.segment(offset, layout.face_block()) +=
            res.segment(layout.face_offset(static_cast<int>(f), 0), layout.face_block());
      }
    }
    rhs.segment(pressure_base, m_P->total_dofs()) += Fp;
    if (mult >= 0) rhs[mult] = Fl;
    const double true_norm = std::sqrt(rhs.squaredNorm() + cell_rows2);

    if (condense) {
      for (int iT = 0; iT < n_cells; ++iT) {
        const auto& keep = ws.keep_local[iT];
        const Eigen::VectorXd& cf = ws.corr_face[iT];
        for (size_t i = 0; i < keep.size(); ++i) {
          // keep/block alignment: displacement slots precede the pressure ones
          rhs[ws.block_index[iT][i]] += cf[static_cast<int>(i)];
        }
        rhs.segment(pressure_base + m_P->offset(iT), np) += ws.corr_p[iT];
      }
    }
    return true_norm;
  };

  assemble_cells();
  double norm = build_rhs();
  const double norm0 = norm;
  state.residual_history.push_back(norm);
  const double tol = std::max(m_config.newton_tol * norm0, 1e-14 * std::max(1., norm0));

  while (norm > tol) {
    if (state.newton_iterations >= m_config.newton_max || !std::isfinite(norm) || norm > 1e8 * (1. + norm0)) {
      throw NewtonFailure("Newton did not converge after " + std::to_string(state.newton_iterations) +
                              " iterations (residual " + std::to_string(norm) + ")",
                          state.residual_history);
    }

    // Matrix values: constant parts plus the per-cell variable blocks.
    Eigen::Map<Eigen::VectorXd> values(ws.matrix.valuePtr(), ws.matrix.nonZeros());
    values = ws.base_static + theta * ws.base_darcy;
    for (int iT = 0; iT < n_cells; ++iT) {
      const Eigen::MatrixXd& block = ws.cell_block[iT];
      const auto& idx = ws.value_idx[iT];
      const int nb = static_cast<int>(block.rows());
      for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) values[idx[i * nb + j]] += block(i, j);
      }
    }

    ws.lu.factorize(ws.matrix);
    if (ws.lu.info() != Eigen::Success) {
      throw NewtonFailure("singular linear system in Newton iteration", state.residual_history);
    }
    const Eigen::VectorXd delta = ws.lu.solve(-rhs);

    // Update the state: interior faces and pressure from the solve, cell
    // displacement blocks either directly or through the local recovery.
    for (int iF = 0; iF < mesh.n_faces(); ++iF) {
      const int offset = condense ? m_map.reduced_face_offset(iF) : m_map.face_offset(iF);
      if (offset < 0) continue;
      state.u.segment(m_U->face_offset(iF), m_U->face_block()) += delta.segment(offset, m_U->face_block());
    }
    if (condense) {
      for (int iT = 0; iT < n_cells; ++iT) {
        const auto& keep = ws.keep_local[iT];
        const auto& block = ws.block_index[iT];
        Eigen::VectorXd df(static_cast<int>(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i) df[static_cast<int>(i)] = delta[block[i]];
        const Eigen::VectorXd dp = delta.segment(pressure_base + m_P->offset(iT), np);
        state.u.segment(m_U->cell_offset(iT), nc) -= ws.rec_r[iT] + ws.rec_A[iT] * df + ws.rec_B[iT] * dp;
      }
    } else {
      for (int iT = 0; iT < n_cells; ++iT) {
        state.u.segment(m_U->cell_offset(iT), nc) += delta.segment(m_map.cell_offset(iT), nc);
      }
    }
    state.p += delta.segment(pressure_base, m_P->total_dofs());
    if (mult >= 0) state.multiplier += delta[mult];
    ++state.newton_iterations;

    assemble_cells();
    norm = build_rhs();
    state.residual_history.push_back(norm);
  }
}

//------------------------------------------------------------------------------
// Initialization, stepping, transient driver
//------------------------------------------------------------------------------

void TransientSolver::apply_dirichlet(SystemState& state, const CaseData& data, double t) const {
  if (!data.dirichlet) return;
  const PolyMesh& mesh = m_U->mesh();
  for (int iF : mesh.boundary_faces()) {
    state.u.segment(m_U->face_offset(iF), m_U->face_block()) =
        m_U->project_on_face(iF, [&](const Eigen::Vector2d& x) { return data.dirichlet(x, t); });
  }
}

Eigen::VectorXd TransientSolver::fluid_content_of(const SystemState& state) const {
  Eigen::VectorXd chi = -m_forms->bh_applied_to_displacement(state.u);
  if (m_config.c0 > 0.) {
    for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
      chi.segment(m_P->offset(iT), m_P->block()).noalias() +=
          m_config.c0 * (m_P->mass(iT) * state.p.segment(m_P->offset(iT), m_P->block()));
    }
  }
  return chi;
}

SystemState TransientSolver::initialize(const CaseData& data) {
  SystemState state;
  state.u = Eigen::VectorXd::Zero(m_U->total_dofs());
  state.p = Eigen::VectorXd::Zero(m_P->total_dofs());
  state.step = 0;
  state.time = 0.;
  apply_dirichlet(state, data, 0.);

  Eigen::VectorXd phi0 = Eigen::VectorXd::Zero(m_P->total_dofs());
  if (data.initial_fluid_content) {
    phi0 = assemble_pressure_load(*m_P, data.initial_fluid_content, -1, m_config.use_threads);
    if (m_config.c0 == 0.) {
      // int_Omega pi phi0, from the projection coefficients
      double total = 0.;
      for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
        const Eigen::VectorXd c = m_P->mass(iT).llt().solve(phi0.segment(m_P->offset(iT), m_P->block()));
        total += m_P->moments(iT).dot(c);
      }
      if (std::abs(total) > 1e-8 * std::max(1., phi0.norm())) {
        throw std::runtime_error("initialize_state: initial fluid content incompatible with C0 = 0 (nonzero mean)");
      }
    }
  }

  if (m_config.init == InitMode::project || (!data.load && !data.initial_fluid_content)) {
    state.fluid_content = phi0;
    return state;
  }

  // Stationary solve of the coupled problem at t = 0 (theta = 0).
  Eigen::VectorXd rhs_u = Eigen::VectorXd::Zero(m_U->total_dofs());
  if (data.load) {
    rhs_u = assemble_displacement_load(
        *m_U, [&](const Eigen::Vector2d& x) { return data.load(x, 0.); }, m_config.use_threads);
  }
  newton_solve(state, 0., rhs_u, phi0);
  state.fluid_content = fluid_content_of(state);
  return state;
}

SystemState TransientSolver::advance(const SystemState& prev, const CaseData& data, const TimeGrid& grid) {
  const double tau = grid.tau();
  const int n = prev.step + 1;
  const double t0 = grid.time(n - 1);
  const double t1 = grid.time(n);
  const TimeAverage avg = time_average_rule(t0, t1, m_config.time_quadrature);

  SystemState state = prev;
  state.step = n;
  state.time = t1;
  apply_dirichlet(state, data, t1);

  // Time-averaged loads.
  Eigen::VectorXd rhs_u = Eigen::VectorXd::Zero(m_U->total_dofs());
  if (data.load) {
    rhs_u = assemble_displacement_load(
        *m_U,
        [&](const Eigen::Vector2d& x) {
          Eigen::Vector2d acc = Eigen::Vector2d::Zero();
          for (size_t g = 0; g < avg.times.size(); ++g) acc += avg.weights[g] * data.load(x, avg.times[g]);
          return acc;
        },
        m_config.use_threads);
  }
  Eigen::VectorXd rhs_p = prev.fluid_content;
  if (data.source) {
    rhs_p += tau * assemble_pressure_load(
                       *m_P,
                       [&](const Eigen::Vector2d& x) {
                         double acc = 0.;
                         for (size_t g = 0; g < avg.times.size(); ++g) acc += avg.weights[g] * data.source(x, avg.times[g]);
                         return acc;
                       },
                       -1, m_config.use_threads);
  }
  if (data.boundary_flux) {
    rhs_p += tau * assemble_boundary_flux_load(*m_P, [&](const Eigen::Vector2d& x, const Eigen::Vector2d& nrm) {
      double acc = 0.;
      for (size_t g = 0; g < avg.times.size(); ++g) acc += avg.weights[g] * data.boundary_flux(x, nrm, avg.times[g]);
      return acc;
    });
  }

  newton_solve(state, tau, rhs_u, rhs_p);
  state.fluid_content = fluid_content_of(state);
  return state;
}

RunResult TransientSolver::run_transient(const CaseData& data, const TimeGrid& grid, bool keep_trajectory,
                                         const std::function<void(const SystemState&)>& observer) {
  RunResult result;
  RunDiagnostics& diag = result.diagnostics;
  SystemState state = initialize(data);
  Eigen::VectorXd s_accum = Eigen::VectorXd::Zero(m_P->total_dofs());
  const double tau = grid.tau();
  const double domain = m_U->mesh().domain_measure();

  if (keep_trajectory) result.trajectory.push_back(state);
  for (int n = 1; n <= grid.n_steps; ++n) {
    state = advance(state, data, grid);
    diag.newton_total += state.newton_iterations;
    diag.newton_max_per_step = std::max(diag.newton_max_per_step, state.newton_iterations);
    diag.multiplier_max = std::max(diag.multiplier_max, std::abs(state.multiplier));
    diag.sum_tau_strain2 += tau * m_U->strain_seminorm_squared(state.u);
    const double l2 = m_P->l2_norm(state.p);
    const double mean = m_P->integral(state.p) / domain;
    diag.sum_tau_pressure2 += tau * std::max(0., l2 * l2 - mean * mean * domain);
    s_accum += tau * state.p;
    if (keep_trajectory) result.trajectory.push_back(state);
    if (observer) observer(state);
  }
  diag.ch_norm_s = m_forms->ch_norm(s_accum);
  diag.newton_avg = grid.n_steps > 0 ? static_cast<double>(diag.newton_total) / grid.n_steps : 0.;
  if (!std::isfinite(diag.sum_tau_strain2) || !std::isfinite(diag.sum_tau_pressure2) ||
      !std::isfinite(diag.ch_norm_s)) {
    diag.warnings.push_back("energy diagnostics are not finite, the run is unstable");
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace porohho

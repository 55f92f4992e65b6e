#include "porohho/forms.hpp"

#include <cmath>
#include <stdexcept>

#include "porohho/parallel.hpp"
#include "porohho/quadrature.hpp"

namespace porohho {

//------------------------------------------------------------------------------
// Permeability
//------------------------------------------------------------------------------

Permeability Permeability::isotropic(double kappa) {
  return per_region({Eigen::Matrix2d(kappa * Eigen::Matrix2d::Identity())});
}

Permeability Permeability::per_region(std::vector<Eigen::Matrix2d> tensors) {
  if (tensors.empty()) throw std::invalid_argument("Permeability: empty tensor list");
  Permeability k;
  k.m_min_eig = std::numeric_limits<double>::max();
  for (auto& t : tensors) {
    t = 0.5 * (t + t.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(t);
    if (!(es.eigenvalues().minCoeff() > 0.)) {
      throw std::invalid_argument("Permeability: tensor is not positive definite");
    }
    k.m_min_eig = std::min(k.m_min_eig, es.eigenvalues().minCoeff());
    k.m_max_eig = std::max(k.m_max_eig, es.eigenvalues().maxCoeff());
  }
  k.m_tensors = std::move(tensors);
  return k;
}

const Eigen::Matrix2d& Permeability::of_region(int region) const {
  if (m_tensors.size() == 1) return m_tensors[0];
  if (region < 0 || region >= n_regions()) {
    throw std::out_of_range("Permeability: no tensor for region " + std::to_string(region));
  }
  return m_tensors[region];
}

//------------------------------------------------------------------------------
// Forms: constant blocks
//------------------------------------------------------------------------------

Forms::Forms(const HhoSpace& U, const PressureSpace& P, Permeability kappa, double varsigma, bool use_threads)
    : m_U(&U), m_P(&P), m_kappa(std::move(kappa)), m_varsigma(varsigma) {
  if (!(varsigma > 0.)) throw std::invalid_argument("Forms: varsigma must be positive");
  const PolyMesh& mesh = U.mesh();
  const int k = U.degree();
  const int np = P.block();
  const int nk = U.cell_scalar_dim();
  const int nfd = U.face_scalar_dim();

  m_coupling.resize(mesh.n_cells());
  m_darcy_volume.resize(mesh.n_cells());
  parallel_for(
      mesh.n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          const Cell& T = mesh.cell(iT);
          const Eigen::Matrix2d& kap = m_kappa.of_region(T.region);
          const LocalLayout layout{k, static_cast<int>(T.faces.size())};
          Eigen::MatrixXd B = Eigen::MatrixXd::Zero(np, layout.total());
          Eigen::MatrixXd C = Eigen::MatrixXd::Zero(np, np);

          // Volume terms: (v_T, grad q)_T and (kappa grad q, grad r)_T.
          const QuadratureRule qT = cell_quadrature(mesh, iT, 2 * k);
          for (int q = 0; q < qT.size(); ++q) {
            const double w = qT.weights[q];
            const Eigen::VectorXd phi = U.cell_basis(iT).eval(qT.points[q]).head(nk);
            const Eigen::MatrixXd gq = P.basis(iT).eval_grad(qT.points[q]);  // np x 2
            for (int c = 0; c < 2; ++c) {
              B.middleCols(layout.cell_offset(c), nk).noalias() += w * gq.col(c) * phi.transpose();
            }
            C.noalias() += w * gq * kap * gq.transpose();
          }
          // Face terms: -(v_F . n_TF, q)_F.
          for (size_t f = 0; f < T.faces.size(); ++f) {
            const int iF = T.faces[f];
            const Eigen::Vector2d n = mesh.outward_normal(iT, iF);
            const QuadratureRule qF = face_quadrature(mesh, iF, 2 * k);
            for (int q = 0; q < qF.size(); ++q) {
              const double w = qF.weights[q];
              const Eigen::VectorXd psi = U.face_basis(iF).eval(qF.points[q]);
              const Eigen::VectorXd pq = P.basis(iT).eval(qF.points[q]);
              for (int c = 0; c < 2; ++c) {
                B.middleCols(layout.face_offset(static_cast<int>(f), c), nfd).noalias() -=
                    (w * n[c]) * pq * psi.transpose();
              }
            }
          }
          m_coupling[iT] = std::move(B);
          m_darcy_volume[iT] = std::move(C);
        }
      },
      use_threads);

  const auto& interior = mesh.interior_faces();
  m_swip_face.resize(interior.size());
  m_jump_gram.resize(interior.size());
  m_lambda_F.resize(interior.size());
  parallel_for(
      static_cast<int>(interior.size()),
      [&](int begin, int end) {
        for (int pos = begin; pos < end; ++pos) {
          const int iF = interior[pos];
          const Face& F = mesh.face(iF);
          const int T1 = F.cell[0], T2 = F.cell[1];
          const Eigen::Vector2d n = F.normal;  // out of T1
          const Eigen::Matrix2d& k1 = m_kappa.of_region(mesh.cell(T1).region);
          const Eigen::Matrix2d& k2 = m_kappa.of_region(mesh.cell(T2).region);
          const double l1 = n.dot(k1 * n);
          const double l2 = n.dot(k2 * n);
          const double lF = 2. * l1 * l2 / (l1 + l2);
          const double w1 = std::sqrt(l2) / (std::sqrt(l1) + std::sqrt(l2));
          const double w2 = std::sqrt(l1) / (std::sqrt(l1) + std::sqrt(l2));
          m_lambda_F[pos] = lF;

          Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * np, 2 * np);
          Eigen::MatrixXd Jg = Eigen::MatrixXd::Zero(2 * np, 2 * np);
          const double pen = m_varsigma * lF / F.diameter();
          const double pen_seminorm = lF / F.diameter();
          const QuadratureRule qF = face_quadrature(mesh, iF, 2 * k);
          Eigen::VectorXd jump(2 * np);
          Eigen::VectorXd avg(2 * np);
          for (int q = 0; q < qF.size(); ++q) {
            const double w = qF.weights[q];
            jump.head(np) = m_P->basis(T1).eval(qF.points[q]);
            jump.tail(np) = -m_P->basis(T2).eval(qF.points[q]);
            avg.head(np) = w1 * (m_P->basis(T1).eval_grad(qF.points[q]) * (k1 * n));
            avg.tail(np) = w2 * (m_P->basis(T2).eval_grad(qF.points[q]) * (k2 * n));
            S.noalias() += (w * pen) * jump * jump.transpose();
            S.noalias() -= w * (jump * avg.transpose() + avg * jump.transpose());
            Jg.noalias() += (w * pen_seminorm) * jump * jump.transpose();
          }
          m_swip_face[pos] = std::move(S);
          m_jump_gram[pos] = std::move(Jg);
        }
      },
      use_threads);
}

//------------------------------------------------------------------------------
// Form actions
//------------------------------------------------------------------------------

Eigen::VectorXd Forms::bh_applied_to_displacement(const Eigen::VectorXd& u_full) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m_P->total_dofs());
  for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
    out.segment(m_P->offset(iT), m_P->block()).noalias() += m_coupling[iT] * m_U->gather(iT, u_full);
  }
  return out;
}

Eigen::VectorXd Forms::bh_applied_to_pressure(const Eigen::VectorXd& p) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m_U->total_dofs());
  for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
    const Eigen::VectorXd local = m_coupling[iT].transpose() * p.segment(m_P->offset(iT), m_P->block());
    m_U->scatter_add(iT, local, out);
  }
  return out;
}

double Forms::bh(const Eigen::VectorXd& u_full, const Eigen::VectorXd& p) const {
  return bh_applied_to_displacement(u_full).dot(p);
}

Eigen::VectorXd Forms::ch_applied(const Eigen::VectorXd& p) const {
  const int np = m_P->block();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m_P->total_dofs());
  for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
    out.segment(m_P->offset(iT), np).noalias() += m_darcy_volume[iT] * p.segment(m_P->offset(iT), np);
  }
  const auto& interior = m_U->mesh().interior_faces();
  Eigen::VectorXd stacked(2 * np);
  for (size_t pos = 0; pos < interior.size(); ++pos) {
    const Face& F = m_U->mesh().face(interior[pos]);
    stacked.head(np) = p.segment(m_P->offset(F.cell[0]), np);
    stacked.tail(np) = p.segment(m_P->offset(F.cell[1]), np);
    const Eigen::VectorXd r = m_swip_face[pos] * stacked;
    out.segment(m_P->offset(F.cell[0]), np) += r.head(np);
    out.segment(m_P->offset(F.cell[1]), np) += r.tail(np);
  }
  return out;
}

double Forms::ch(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const { return ch_applied(p).dot(q); }

double Forms::ch_norm(const Eigen::VectorXd& p) const { return std::sqrt(std::max(0., ch(p, p))); }

double Forms::pressure_seminorm(const Eigen::VectorXd& p) const {
  const int np = m_P->block();
  double acc = 0.;
  for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
    const auto c = p.segment(m_P->offset(iT), np);
    acc += c.dot(m_darcy_volume[iT] * c);
  }
  const auto& interior = m_U->mesh().interior_faces();
  Eigen::VectorXd stacked(2 * np);
  for (size_t pos = 0; pos < interior.size(); ++pos) {
    const Face& F = m_U->mesh().face(interior[pos]);
    stacked.head(np) = p.segment(m_P->offset(F.cell[0]), np);
    stacked.tail(np) = p.segment(m_P->offset(F.cell[1]), np);
    acc += stacked.dot(m_jump_gram[pos] * stacked);
  }
  return std::sqrt(std::max(0., acc));
}

//------------------------------------------------------------------------------
// Global sparse matrices (diagnostics)
//------------------------------------------------------------------------------

namespace {

void add_block(std::vector<Eigen::Triplet<double>>& triplets, int row0, int col0, const Eigen::MatrixXd& block) {
  for (int i = 0; i < block.rows(); ++i) {
    for (int j = 0; j < block.cols(); ++j) {
      if (block(i, j) != 0.) triplets.emplace_back(row0 + i, col0 + j, block(i, j));
    }
  }
}

}  // namespace

Eigen::SparseMatrix<double> Forms::coupling_matrix() const {
  const PolyMesh& mesh = m_U->mesh();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    const Cell& T = mesh.cell(iT);
    const LocalLayout layout{m_U->degree(), static_cast<int>(T.faces.size())};
    const Eigen::MatrixXd& B = m_coupling[iT];
    add_block(triplets, m_P->offset(iT), m_U->cell_offset(iT), B.leftCols(layout.cell_block()));
    for (size_t f = 0; f < T.faces.size(); ++f) {
      add_block(triplets, m_P->offset(iT), m_U->face_offset(T.faces[f]),
                B.middleCols(layout.face_offset(static_cast<int>(f), 0), layout.face_block()));
    }
  }
  Eigen::SparseMatrix<double> M(m_P->total_dofs(), m_U->total_dofs());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::SparseMatrix<double> Forms::swip_matrix() const {
  const PolyMesh& mesh = m_U->mesh();
  const int np = m_P->block();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    add_block(triplets, m_P->offset(iT), m_P->offset(iT), m_darcy_volume[iT]);
  }
  const auto& interior = mesh.interior_faces();
  for (size_t pos = 0; pos < interior.size(); ++pos) {
    const Face& F = mesh.face(interior[pos]);
    const int o1 = m_P->offset(F.cell[0]), o2 = m_P->offset(F.cell[1]);
    const Eigen::MatrixXd& S = m_swip_face[pos];
    add_block(triplets, o1, o1, S.topLeftCorner(np, np));
    add_block(triplets, o1, o2, S.topRightCorner(np, np));
    add_block(triplets, o2, o1, S.bottomLeftCorner(np, np));
    add_block(triplets, o2, o2, S.bottomRightCorner(np, np));
  }
  Eigen::SparseMatrix<double> M(m_P->total_dofs(), m_P->total_dofs());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::SparseMatrix<double> Forms::pressure_seminorm_matrix() const {
  const PolyMesh& mesh = m_U->mesh();
  const int np = m_P->block();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    add_block(triplets, m_P->offset(iT), m_P->offset(iT), m_darcy_volume[iT]);
  }
  const auto& interior = mesh.interior_faces();
  for (size_t pos = 0; pos < interior.size(); ++pos) {
    const Face& F = mesh.face(interior[pos]);
    const int o1 = m_P->offset(F.cell[0]), o2 = m_P->offset(F.cell[1]);
    const Eigen::MatrixXd& S = m_jump_gram[pos];
    add_block(triplets, o1, o1, S.topLeftCorner(np, np));
    add_block(triplets, o1, o2, S.topRightCorner(np, np));
    add_block(triplets, o2, o1, S.bottomLeftCorner(np, np));
    add_block(triplets, o2, o2, S.bottomRightCorner(np, np));
  }
  Eigen::SparseMatrix<double> M(m_P->total_dofs(), m_P->total_dofs());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::SparseMatrix<double> Forms::pressure_mass_matrix() const {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iT = 0; iT < m_U->mesh().n_cells(); ++iT) {
    add_block(triplets, m_P->offset(iT), m_P->offset(iT), m_P->mass(iT));
  }
  Eigen::SparseMatrix<double> M(m_P->total_dofs(), m_P->total_dofs());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

Eigen::SparseMatrix<double> Forms::strain_gram_matrix() const {
  const PolyMesh& mesh = m_U->mesh();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    const Cell& T = mesh.cell(iT);
    const LocalLayout& layout = m_U->local_operators(iT).layout;
    const Eigen::MatrixXd& S = m_U->local_operators(iT).strain_gram;
    std::vector<int> global(layout.total());
    for (int i = 0; i < layout.cell_block(); ++i) global[i] = m_U->cell_offset(iT) + i;
    for (size_t f = 0; f < T.faces.size(); ++f) {
      for (int i = 0; i < layout.face_block(); ++i) {
        global[layout.face_offset(static_cast<int>(f), 0) + i] = m_U->face_offset(T.faces[f]) + i;
      }
    }
    for (int i = 0; i < layout.total(); ++i) {
      for (int j = 0; j < layout.total(); ++j) {
        if (S(i, j) != 0.) triplets.emplace_back(global[i], global[j], S(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> M(m_U->total_dofs(), m_U->total_dofs());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

//------------------------------------------------------------------------------
// Nonlinear elasticity assembly
//------------------------------------------------------------------------------

CellElasticity assemble_cell_elasticity(const HhoSpace& U, const StressLaw& law, double gamma, int iT,
                                        const Eigen::VectorXd& u_loc, bool want_jacobian) {
  const int nk = U.cell_scalar_dim();
  const int region = U.mesh().cell(iT).region;
  const LocalOperators& ops = U.local_operators(iT);
  const auto& cache = U.quad_cache(iT);
  const int nq = static_cast<int>(cache.points.size());

  const Eigen::VectorXd gu = ops.gradient * u_loc;  // tensor coefficients of G u

  // Stress moments t_a = int sigma : (E_a m) and the structural tangent.
  Eigen::VectorXd t = Eigen::VectorXd::Zero(3 * nk);
  Eigen::MatrixXd K;
  if (want_jacobian) K = Eigen::MatrixXd::Zero(3 * nk, 3 * nk);
  for (int q = 0; q < nq; ++q) {
    const double w = cache.weights[q];
    const Eigen::VectorXd m = cache.values.row(q).transpose();
    const Eigen::Matrix2d Gq = gradient_value(gu, m);
    const Eigen::Matrix2d sig = law.stress(Gq, region);
    t.segment(0, nk).noalias() += (w * sig(0, 0)) * m;
    t.segment(nk, nk).noalias() += (w * sig(1, 1)) * m;
    t.segment(2 * nk, nk).noalias() += (2. * w * sig(0, 1)) * m;
    if (want_jacobian) {
      const Eigen::Matrix3d T3 = law.tangent_matrix(Gq, region);
      const Eigen::MatrixXd mm = m * m.transpose();
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const double coeff = (a == 2 ? 2. : 1.) * T3(a, b);
          if (coeff != 0.) K.block(a * nk, b * nk, nk, nk).noalias() += (w * coeff) * mm;
        }
      }
    }
  }

  CellElasticity out;
  out.residual = ops.gradient.transpose() * t + gamma * (ops.stab_gram * u_loc);
  if (want_jacobian) {
    out.jacobian = ops.gradient.transpose() * K * ops.gradient + gamma * ops.stab_gram;
  }
  return out;
}

Eigen::VectorXd ah_applied(const HhoSpace& U, const StressLaw& law, double gamma, const Eigen::VectorXd& u_full,
                           bool use_threads) {
  const int n_cells = U.mesh().n_cells();
  std::vector<Eigen::VectorXd> locals(n_cells);
  parallel_for(
      n_cells,
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          locals[iT] = assemble_cell_elasticity(U, law, gamma, iT, U.gather(iT, u_full), false).residual;
        }
      },
      use_threads);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(U.total_dofs());
  for (int iT = 0; iT < n_cells; ++iT) U.scatter_add(iT, locals[iT], out);
  return out;
}

//------------------------------------------------------------------------------
// Loads
//------------------------------------------------------------------------------

Eigen::VectorXd assemble_displacement_load(const HhoSpace& U, const VectorField& f, bool use_threads) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(U.total_dofs());
  const int nk = U.cell_scalar_dim();
  parallel_for(
      U.mesh().n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          const auto& cache = U.quad_cache(iT);
          Eigen::VectorXd local = Eigen::VectorXd::Zero(2 * nk);
          for (size_t q = 0; q < cache.points.size(); ++q) {
            const Eigen::Vector2d val = f(cache.points[q]);
            const double w = cache.weights[q];
            local.head(nk).noalias() += (w * val.x()) * cache.values.row(q).transpose();
            local.tail(nk).noalias() += (w * val.y()) * cache.values.row(q).transpose();
          }
          load.segment(U.cell_offset(iT), 2 * nk) = local;
        }
      },
      use_threads);
  return load;
}

Eigen::VectorXd assemble_pressure_load(const PressureSpace& P, const ScalarField& g, int order, bool use_threads) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(P.total_dofs());
  const int np = P.block();
  const int rule_order = order > 0 ? order : 2 * P.degree() + 2;
  parallel_for(
      P.mesh().n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          const QuadratureRule rule = cell_quadrature(P.mesh(), iT, rule_order);
          Eigen::VectorXd local = Eigen::VectorXd::Zero(np);
          for (int q = 0; q < rule.size(); ++q) {
            local.noalias() += rule.weights[q] * g(rule.points[q]) * P.basis(iT).eval(rule.points[q]);
          }
          load.segment(P.offset(iT), np) = local;
        }
      },
      use_threads);
  return load;
}

Eigen::VectorXd assemble_boundary_flux_load(const PressureSpace& P, const BoundaryFlux& flux, int order) {
  const PolyMesh& mesh = P.mesh();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(P.total_dofs());
  const int rule_order = order > 0 ? order : 2 * P.degree() + 2;
  for (int iF : mesh.boundary_faces()) {
    const Face& F = mesh.face(iF);
    const int iT = F.cell[0];
    const QuadratureRule rule = face_quadrature(mesh, iF, rule_order);
    for (int q = 0; q < rule.size(); ++q) {
      load.segment(P.offset(iT), P.block()).noalias() +=
          rule.weights[q] * flux(rule.points[q], F.normal) * P.basis(iT).eval(rule.points[q]);
    }
  }
  return load;
}

TimeAverage time_average_rule(double t_begin, double t_end, int n_points) {
  const auto& [nodes, weights] = gauss_legendre(n_points);
  TimeAverage avg;
  avg.times.resize(n_points);
  avg.weights.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    avg.times[i] = 0.5 * (t_begin + t_end) + 0.5 * (t_end - t_begin) * nodes[i];
    avg.weights[i] = 0.5 * weights[i];  // divided by the interval length
  }
  return avg;
}

}  // namespace porohho

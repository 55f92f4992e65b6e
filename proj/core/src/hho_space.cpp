#include "porohho/hho_space.hpp"

#include <cmath>

#include "porohho/parallel.hpp"
#include "porohho/quadrature.hpp"

namespace porohho {

HhoSpace::HhoSpace(const PolyMesh& mesh, HhoOptions options)
    : m_mesh(&mesh),
      m_options(options),
      m_degree_p1(options.degree + 1),
      m_nk(scalar_space_dim(options.degree)),
      m_sampling_order(options.sampling_order > 0 ? options.sampling_order : 2 * options.degree + 2) {
  if (options.degree < 1) throw std::runtime_error("HhoSpace: degree must be >= 1");
  const int k = options.degree;

  m_cell_bases.resize(mesh.n_cells());
  m_face_bases.resize(mesh.n_faces());
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    m_cell_bases[iT] = CellBasis(mesh.cell(iT), k + 1);
    if (m_options.orthonormalize) {
      m_cell_bases[iT].orthonormalize(cell_quadrature(mesh, iT, 2 * (k + 1)));
    }
  }
  for (int iF = 0; iF < mesh.n_faces(); ++iF) {
    m_face_bases[iF] = FaceBasis(mesh.face(iF), k);
    if (m_options.orthonormalize) {
      m_face_bases[iF].orthonormalize(face_quadrature(mesh, iF, 2 * k));
    }
  }

  m_ops.resize(mesh.n_cells());
  m_quad.resize(mesh.n_cells());
  parallel_for(
      mesh.n_cells(),
      [this, &mesh](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          LocalOperators full = build_local_operators(mesh, iT, m_options.degree, m_cell_bases[iT], m_face_bases);
          // Keep what the time loop reuses; reconstruction and residuals can
          // be rebuilt on demand.
          LocalOperators& slim = m_ops[iT];
          slim.layout = full.layout;
          slim.gradient = std::move(full.gradient);
          slim.stab_gram = std::move(full.stab_gram);
          slim.strain_gram = std::move(full.strain_gram);
          slim.cell_mass = std::move(full.cell_mass);

          CellQuadCache& cache = m_quad[iT];
          const QuadratureRule rule = cell_quadrature(mesh, iT, m_sampling_order);
          cache.points = rule.points;
          cache.weights = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
          cache.values.resize(rule.size(), m_nk);
          for (int q = 0; q < rule.size(); ++q) {
            cache.values.row(q) = m_cell_bases[iT].eval(rule.points[q]).head(m_nk).transpose();
          }
        }
      },
      m_options.use_threads);
}

LocalOperators HhoSpace::build_full_operators(int iT) const {
  return build_local_operators(*m_mesh, iT, m_options.degree, m_cell_bases[iT], m_face_bases);
}

Eigen::VectorXd HhoSpace::gather(int iT, const Eigen::VectorXd& global) const {
  const Cell& T = m_mesh->cell(iT);
  const int nf = static_cast<int>(T.faces.size());
  Eigen::VectorXd local(cell_block() + nf * face_block());
  local.head(cell_block()) = global.segment(cell_offset(iT), cell_block());
  for (int f = 0; f < nf; ++f) {
    local.segment(cell_block() + f * face_block(), face_block()) =
        global.segment(face_offset(T.faces[f]), face_block());
  }
  return local;
}

void HhoSpace::scatter_add(int iT, const Eigen::VectorXd& local, Eigen::VectorXd& global) const {
  const Cell& T = m_mesh->cell(iT);
  global.segment(cell_offset(iT), cell_block()) += local.head(cell_block());
  for (size_t f = 0; f < T.faces.size(); ++f) {
    global.segment(face_offset(T.faces[f]), face_block()) +=
        local.segment(cell_block() + f * face_block(), face_block());
  }
}

Eigen::VectorXd HhoSpace::project_on_face(int iF, const VectorField& v, int order) const {
  const QuadratureRule rule = face_quadrature(*m_mesh, iF, order > 0 ? order : m_sampling_order + degree());
  const FaceBasis& basis = m_face_bases[iF];
  Eigen::VectorXd block(face_block());
  for (int c = 0; c < 2; ++c) {
    block.segment(c * face_scalar_dim(), face_scalar_dim()) =
        l2_project([&](const Eigen::Vector2d& x) { return v(x)[c]; }, basis, rule);
  }
  return block;
}

Eigen::VectorXd HhoSpace::interpolate(const VectorField& v, int order) const {
  Eigen::VectorXd global = Eigen::VectorXd::Zero(total_dofs());
  const int cell_order = order > 0 ? order : m_sampling_order + degree();
  parallel_for(
      m_mesh->n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          const QuadratureRule rule = cell_quadrature(*m_mesh, iT, cell_order);
          const CellBasis& basis = m_cell_bases[iT];
          // Gram solve restricted to the P^k head of the degree-(k+1) basis.
          Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m_nk, m_nk);
          Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_nk, 2);
          for (int q = 0; q < rule.size(); ++q) {
            const Eigen::VectorXd phi = basis.eval(rule.points[q]).head(m_nk);
            const Eigen::Vector2d val = v(rule.points[q]);
            M.noalias() += rule.weights[q] * phi * phi.transpose();
            b.noalias() += rule.weights[q] * phi * val.transpose();
          }
          const Eigen::MatrixXd coeffs = M.llt().solve(b);
          global.segment(cell_offset(iT), m_nk) = coeffs.col(0);
          global.segment(cell_offset(iT) + m_nk, m_nk) = coeffs.col(1);
        }
      },
      m_options.use_threads);
  parallel_for(
      m_mesh->n_faces(),
      [&](int begin, int end) {
        for (int iF = begin; iF < end; ++iF) {
          global.segment(face_offset(iF), face_block()) = project_on_face(iF, v, order);
        }
      },
      m_options.use_threads);
  return global;
}

double HhoSpace::strain_seminorm_squared(const Eigen::VectorXd& global) const {
  double acc = 0.;
  for (int iT = 0; iT < m_mesh->n_cells(); ++iT) {
    const Eigen::VectorXd local = gather(iT, global);
    acc += local.dot(m_ops[iT].strain_gram * local);
  }
  return acc;
}

double HhoSpace::strain_seminorm(const Eigen::VectorXd& global) const {
  return std::sqrt(std::max(0., strain_seminorm_squared(global)));
}

double HhoSpace::cell_l2_norm(const Eigen::VectorXd& global) const {
  double acc = 0.;
  for (int iT = 0; iT < m_mesh->n_cells(); ++iT) {
    const auto Mk = m_ops[iT].cell_mass.topLeftCorner(m_nk, m_nk);
    for (int c = 0; c < 2; ++c) {
      const auto coeffs = global.segment(cell_offset(iT) + c * m_nk, m_nk);
      acc += coeffs.dot(Mk * coeffs);
    }
  }
  return std::sqrt(std::max(0., acc));
}

}  // namespace porohho

#include "porohho/pressure_space.hpp"

#include <cmath>

#include "porohho/parallel.hpp"
#include "porohho/quadrature.hpp"

namespace porohho {

PressureSpace::PressureSpace(const PolyMesh& mesh, int degree, int sampling_order, bool orthonormalize,
                             bool use_threads)
    : m_mesh(&mesh),
      m_degree(degree),
      m_nk(scalar_space_dim(degree)),
      m_sampling_order(sampling_order > 0 ? sampling_order : 2 * degree + 2),
      m_use_threads(use_threads) {
  m_bases.resize(mesh.n_cells());
  m_mass.resize(mesh.n_cells());
  m_moments.resize(mesh.n_cells());
  parallel_for(
      mesh.n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          m_bases[iT] = CellBasis(mesh.cell(iT), m_degree);
          const QuadratureRule rule = cell_quadrature(mesh, iT, 2 * m_degree);
          if (orthonormalize) m_bases[iT].orthonormalize(rule);
          m_mass[iT] = mass_matrix(m_bases[iT], rule);
          Eigen::VectorXd mom = Eigen::VectorXd::Zero(m_nk);
          for (int q = 0; q < rule.size(); ++q) mom += rule.weights[q] * m_bases[iT].eval(rule.points[q]);
          m_moments[iT] = mom;
        }
      },
      use_threads);
}

Eigen::VectorXd PressureSpace::project(const ScalarField& f, int order) const {
  Eigen::VectorXd coeffs(total_dofs());
  const int rule_order = order > 0 ? order : m_sampling_order + m_degree;
  parallel_for(
      m_mesh->n_cells(),
      [&](int begin, int end) {
        for (int iT = begin; iT < end; ++iT) {
          coeffs.segment(offset(iT), m_nk) = l2_project(f, m_bases[iT], cell_quadrature(*m_mesh, iT, rule_order));
        }
      },
      m_use_threads);
  return coeffs;
}

double PressureSpace::l2_norm(const Eigen::VectorXd& coeffs) const {
  double acc = 0.;
  for (int iT = 0; iT < m_mesh->n_cells(); ++iT) {
    const auto c = coeffs.segment(offset(iT), m_nk);
    acc += c.dot(m_mass[iT] * c);
  }
  return std::sqrt(std::max(0., acc));
}

double PressureSpace::integral(const Eigen::VectorXd& coeffs) const {
  double acc = 0.;
  for (int iT = 0; iT < m_mesh->n_cells(); ++iT) acc += m_moments[iT].dot(coeffs.segment(offset(iT), m_nk));
  return acc;
}

Eigen::VectorXd PressureSpace::integral_functional() const {
  Eigen::VectorXd m(total_dofs());
  for (int iT = 0; iT < m_mesh->n_cells(); ++iT) m.segment(offset(iT), m_nk) = m_moments[iT];
  return m;
}

}  // namespace porohho

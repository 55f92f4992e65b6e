#ifndef POROHHO_PRESSURE_SPACE_HPP
#define POROHHO_PRESSURE_SPACE_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "porohho/basis.hpp"
#include "porohho/mesh.hpp"

namespace porohho {

using ScalarField = std::function<double(const Eigen::Vector2d&)>;

/// Broken polynomial space P^k(T_h) for the pore pressure: one scalar
/// polynomial of degree k per cell, no continuity.
class PressureSpace {
public:
  PressureSpace(const PolyMesh& mesh, int degree, int sampling_order = -1, bool orthonormalize = false,
                bool use_threads = true);

  const PolyMesh& mesh() const { return *m_mesh; }
  int degree() const { return m_degree; }
  int block() const { return m_nk; }
  int total_dofs() const { return m_mesh->n_cells() * m_nk; }
  int offset(int iT) const { return iT * m_nk; }

  const CellBasis& basis(int iT) const { return m_bases[iT]; }
  const Eigen::MatrixXd& mass(int iT) const { return m_mass[iT]; }
  /// Moments of the basis functions, i.e. the coefficients of q -> int_T q.
  const Eigen::VectorXd& moments(int iT) const { return m_moments[iT]; }

  /// Broken L2 projection of a scalar field.
  Eigen::VectorXd project(const ScalarField& f, int order = -1) const;

  double l2_norm(const Eigen::VectorXd& coeffs) const;
  /// Integral over the domain; divide by the domain measure for the mean.
  double integral(const Eigen::VectorXd& coeffs) const;
  /// Global vector m with m^T coeffs = integral(coeffs).
  Eigen::VectorXd integral_functional() const;

private:
  const PolyMesh* m_mesh;
  int m_degree;
  int m_nk;
  int m_sampling_order;
  bool m_use_threads;
  std::vector<CellBasis> m_bases;
  std::vector<Eigen::MatrixXd> m_mass;
  std::vector<Eigen::VectorXd> m_moments;
};

}  // namespace porohho

#endif

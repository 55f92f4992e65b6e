#ifndef POROHHO_LOCAL_OPERATORS_HPP
#define POROHHO_LOCAL_OPERATORS_HPP

#include <vector>

#include <Eigen/Dense>

#include "porohho/basis.hpp"
#include "porohho/mesh.hpp"

namespace porohho {

/// Layout of the local displacement unknowns of one cell: the cell polynomial
/// block (2 components x dim P^k, component-major) followed by one block per
/// face in the cell's face order (2 components x (k+1)).
struct LocalLayout {
  int degree = 1;
  int n_faces = 0;

  int cell_scalar_dim() const { return scalar_space_dim(degree); }
  int face_scalar_dim() const { return degree + 1; }
  int cell_block() const { return 2 * cell_scalar_dim(); }
  int face_block() const { return 2 * face_scalar_dim(); }
  int total() const { return cell_block() + n_faces * face_block(); }

  int cell_offset(int component) const { return component * cell_scalar_dim(); }
  int face_offset(int local_face, int component) const {
    return cell_block() + local_face * face_block() + component * face_scalar_dim();
  }
};

/// Per-cell operator matrices acting on the local dof vector.
/// Row conventions:
///  - gradient: coefficients of the symmetric tensor polynomial in the
///    component basis (E11, E22, E12) x scalar P^k, i.e. 3*dim P^k rows;
///  - reconstruction: P^{k+1} vector coefficients, component-major;
///  - stab_residual[f]: P^k(F)^2 coefficients on face f, component-major.
struct LocalOperators {
  LocalLayout layout;
  Eigen::MatrixXd gradient;
  Eigen::MatrixXd reconstruction;
  std::vector<Eigen::MatrixXd> stab_residual;
  /// sum_F h_F^{-1} (Delta_F v, Delta_F w)_F, the gamma-independent part of
  /// the stabilization bilinear form.
  Eigen::MatrixXd stab_gram;
  /// Local strain seminorm Gram: |grad_s v_T|_T^2 + sum_F h_F^{-1} |v_F - v_T|_F^2.
  Eigen::MatrixXd strain_gram;
  /// Scalar mass matrix of the degree-(k+1) cell basis.
  Eigen::MatrixXd cell_mass;
};

/// Builds all local operators of one cell. face_bases is indexed by global
/// face id. Throws on rank-deficient local systems (degenerate geometry).
LocalOperators build_local_operators(const PolyMesh& mesh, int cell_index, int degree,
                                     const CellBasis& cell_basis, const std::vector<FaceBasis>& face_bases);

/// Evaluates the symmetric 2x2 tensor of a gradient-space coefficient vector
/// (3*dim P^k entries) at a point, given the scalar basis values there.
inline Eigen::Matrix2d gradient_value(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& scalar_values) {
  const int nk = static_cast<int>(scalar_values.size());
  const double s00 = coeffs.segment(0, nk).dot(scalar_values);
  const double s11 = coeffs.segment(nk, nk).dot(scalar_values);
  const double s01 = coeffs.segment(2 * nk, nk).dot(scalar_values);
  Eigen::Matrix2d g;
  g << s00, s01, s01, s11;
  return g;
}

}  // namespace porohho

#endif

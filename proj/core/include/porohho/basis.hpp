#ifndef POROHHO_BASIS_HPP
#define POROHHO_BASIS_HPP

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "porohho/mesh.hpp"
#include "porohho/quadrature.hpp"

namespace porohho {

/// Dimension of the scalar polynomial space P^k in 2D.
inline int scalar_space_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Monomial exponents of P^k in 2D, ordered by total degree so the leading
/// scalar_space_dim(l) entries span P^l for every l <= k.
const std::vector<std::array<int, 2>>& monomial_exponents(int degree);

/// Scaled monomial basis on a cell: ((x-x_T)/h_T)^alpha, |alpha| <= degree.
/// An optional change of basis (triangular, degree-nested) supports Cholesky
/// orthonormalization for conditioning at higher degrees.
class CellBasis {
public:
  CellBasis() = default;
  CellBasis(const Cell& T, int degree) : m_center(T.centroid), m_h(T.diameter), m_degree(degree) {}

  int degree() const { return m_degree; }
  int dim() const { return scalar_space_dim(m_degree); }

  Eigen::VectorXd eval(const Eigen::Vector2d& x) const;
  /// Gradients as a dim x 2 matrix.
  Eigen::MatrixXd eval_grad(const Eigen::Vector2d& x) const;

  /// Replaces the basis by transform * monomials; transform must be lower
  /// triangular in the degree ordering to keep the nesting property.
  void set_transform(const Eigen::MatrixXd& transform) { m_transform = transform; }
  /// Cholesky orthonormalization against the given quadrature rule.
  void orthonormalize(const QuadratureRule& rule);

private:
  Eigen::Vector2d m_center = Eigen::Vector2d::Zero();
  double m_h = 1.;
  int m_degree = 0;
  Eigen::MatrixXd m_transform;  // empty means identity
};

/// Scaled monomial basis on a face segment in the arc-length parameter:
/// ((s - s_mid)/h_F)^j, j <= degree, with s the tangential coordinate.
class FaceBasis {
public:
  FaceBasis() = default;
  FaceBasis(const Face& F, int degree)
      : m_midpoint(F.midpoint), m_tangent(F.tangent), m_h(F.measure), m_degree(degree) {}

  int degree() const { return m_degree; }
  int dim() const { return m_degree + 1; }

  Eigen::VectorXd eval(const Eigen::Vector2d& x) const;

  void set_transform(const Eigen::MatrixXd& transform) { m_transform = transform; }
  void orthonormalize(const QuadratureRule& rule);

private:
  Eigen::Vector2d m_midpoint = Eigen::Vector2d::Zero();
  Eigen::Vector2d m_tangent = Eigen::Vector2d::UnitX();
  double m_h = 1.;
  int m_degree = 0;
  Eigen::MatrixXd m_transform;
};

//------------------------------------------------------------------------------
// Gram matrices and L2 projections
//------------------------------------------------------------------------------

template <typename Basis>
Eigen::MatrixXd mass_matrix(const Basis& basis, const QuadratureRule& rule) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = basis.eval(rule.points[q]);
    M.noalias() += rule.weights[q] * phi * phi.transpose();
  }
  return M;
}

/// L2 projection of a scalar function, solving the Gram system by Cholesky.
/// Throws on a singular Gram matrix (degenerate geometry).
template <typename Basis>
Eigen::VectorXd l2_project(const std::function<double(const Eigen::Vector2d&)>& f, const Basis& basis,
                           const QuadratureRule& rule) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(basis.dim());
  for (int q = 0; q < rule.size(); ++q) {
    b.noalias() += rule.weights[q] * f(rule.points[q]) * basis.eval(rule.points[q]);
  }
  const Eigen::MatrixXd M = mass_matrix(basis, rule);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("l2_project: singular Gram matrix");
  return llt.solve(b);
}

/// Spectral condition number of the basis Gram matrix.
template <typename Basis>
double gram_condition(const Basis& basis, const QuadratureRule& rule) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mass_matrix(basis, rule));
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

//------------------------------------------------------------------------------
// Approximation-order diagnostic
//------------------------------------------------------------------------------

struct RateCheck {
  std::vector<double> mesh_sizes;
  std::vector<double> errors;
  std::vector<double> rates;  ///< log(e_l/e_{l+1}) / log(h_l/h_{l+1})
};

/// Observed L2 decay of v - pi^k v on a refinement sequence. The projections
/// and the error integrals use the given sampling order.
RateCheck approximation_order_check(const std::function<double(const Eigen::Vector2d&)>& v,
                                    const std::vector<const PolyMesh*>& meshes, int degree, int sampling_order);

}  // namespace porohho

#endif

#ifndef POROHHO_HHO_SPACE_HPP
#define POROHHO_HHO_SPACE_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "porohho/local_operators.hpp"
#include "porohho/mesh.hpp"

namespace porohho {

using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

struct HhoOptions {
  int degree = 1;
  /// Cholesky orthonormalization of the scaled monomial bases (conditioning
  /// aid at degree >= 3).
  bool orthonormalize = false;
  /// Quadrature order for non-polynomial integrands (data, nonlinear stress);
  /// -1 means the 2k+2 default.
  int sampling_order = -1;
  bool use_threads = true;
};

/// Global HHO displacement space: one vector-valued polynomial of degree k per
/// cell and per face. The global coefficient vector stores all cell blocks
/// first, then all face blocks (boundary faces included; whether they are
/// unknowns or Dirichlet data is the dof map's business).
///
/// Construction precomputes the per-cell operators (symmetric gradient,
/// stabilization and strain Grams) in parallel; everything is immutable
/// afterwards and safe for concurrent reads.
class HhoSpace {
public:
  HhoSpace(const PolyMesh& mesh, HhoOptions options);

  const PolyMesh& mesh() const { return *m_mesh; }
  int degree() const { return m_options.degree; }
  int sampling_order() const { return m_sampling_order; }

  int cell_scalar_dim() const { return m_nk; }       ///< dim P^k per component
  int face_scalar_dim() const { return m_degree_p1; }  ///< k+1 per component
  int cell_block() const { return 2 * m_nk; }
  int face_block() const { return 2 * m_degree_p1; }

  int n_cell_dofs() const { return m_mesh->n_cells() * cell_block(); }
  int n_face_dofs() const { return m_mesh->n_faces() * face_block(); }
  int total_dofs() const { return n_cell_dofs() + n_face_dofs(); }
  int cell_offset(int iT) const { return iT * cell_block(); }
  int face_offset(int iF) const { return n_cell_dofs() + iF * face_block(); }

  const CellBasis& cell_basis(int iT) const { return m_cell_bases[iT]; }
  const FaceBasis& face_basis(int iF) const { return m_face_bases[iF]; }
  const LocalOperators& local_operators(int iT) const { return m_ops[iT]; }

  /// Quadrature cache for assembly: points, weights, and the degree-k scalar
  /// basis values at the sampling order.
  struct CellQuadCache {
    std::vector<Eigen::Vector2d> points;
    Eigen::VectorXd weights;
    Eigen::MatrixXd values;  ///< size() x dim P^k
  };
  const CellQuadCache& quad_cache(int iT) const { return m_quad[iT]; }

  /// Local dof vector of one cell gathered from a global vector.
  Eigen::VectorXd gather(int iT, const Eigen::VectorXd& global) const;
  void scatter_add(int iT, const Eigen::VectorXd& local, Eigen::VectorXd& global) const;

  /// Interpolator: cell and face L2 projections of an exactly evaluable field.
  /// A negative order falls back to the space sampling order.
  Eigen::VectorXd interpolate(const VectorField& v, int order = -1) const;
  /// Face projection alone (used for Dirichlet data).
  Eigen::VectorXd project_on_face(int iF, const VectorField& v, int order = -1) const;

  /// Discrete strain seminorm of a global dof vector.
  double strain_seminorm(const Eigen::VectorXd& global) const;
  double strain_seminorm_squared(const Eigen::VectorXd& global) const;
  /// Broken L2 norm of the cell polynomial part.
  double cell_l2_norm(const Eigen::VectorXd& global) const;

  /// Recomputes the full operator set of one cell (reconstruction and face
  /// residuals included), mostly for tests and diagnostics.
  LocalOperators build_full_operators(int iT) const;

private:
  const PolyMesh* m_mesh;
  HhoOptions m_options;
  int m_degree_p1;  // k+1
  int m_nk;
  int m_sampling_order;
  std::vector<CellBasis> m_cell_bases;  // degree k+1
  std::vector<FaceBasis> m_face_bases;  // degree k
  std::vector<LocalOperators> m_ops;    // gradient, stab_gram, strain_gram, cell_mass
  std::vector<CellQuadCache> m_quad;
};

}  // namespace porohho

#endif

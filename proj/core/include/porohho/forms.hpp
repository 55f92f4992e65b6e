#ifndef POROHHO_FORMS_HPP
#define POROHHO_FORMS_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "porohho/hho_space.hpp"
#include "porohho/pressure_space.hpp"
#include "porohho/stress_law.hpp"

namespace porohho {

/// Uniformly elliptic permeability, piecewise constant per mesh region.
class Permeability {
public:
  static Permeability isotropic(double kappa);
  static Permeability per_region(std::vector<Eigen::Matrix2d> tensors);

  const Eigen::Matrix2d& of_region(int region) const;
  int n_regions() const { return static_cast<int>(m_tensors.size()); }
  double min_eigenvalue() const { return m_min_eig; }
  double max_eigenvalue() const { return m_max_eig; }

private:
  std::vector<Eigen::Matrix2d> m_tensors;
  double m_min_eig = 0., m_max_eig = 0.;
};

/// State-independent pieces of the coupled bilinear forms, precomputed once:
/// per-cell hydro-mechanical coupling blocks, per-cell Darcy volume stiffness,
/// per-interior-face SWIP blocks (weighted averages and penalty), pressure
/// jump Grams for the kappa-weighted seminorm.
class Forms {
public:
  Forms(const HhoSpace& U, const PressureSpace& P, Permeability kappa, double varsigma, bool use_threads = true);

  const HhoSpace& displacement_space() const { return *m_U; }
  const PressureSpace& pressure_space() const { return *m_P; }
  const Permeability& kappa() const { return m_kappa; }
  double varsigma() const { return m_varsigma; }

  /// b_h restricted to one cell: rows = cell pressure dofs, cols = local
  /// displacement dofs; b_h(v, q) = sum_T q_T^T coupling_block(T) v_T.
  const Eigen::MatrixXd& coupling_block(int iT) const { return m_coupling[iT]; }
  /// (kappa grad q, grad r)_T in the cell pressure basis.
  const Eigen::MatrixXd& darcy_volume(int iT) const { return m_darcy_volume[iT]; }
  /// SWIP face block over the stacked (T1, T2) pressure dofs of the interior
  /// face with the given position in mesh.interior_faces(): penalty plus
  /// symmetric consistency terms.
  const Eigen::MatrixXd& swip_face(int interior_face_pos) const { return m_swip_face[interior_face_pos]; }
  /// Jump Gram (lambda_F / h_F) [r][q] of the same face (for the seminorm).
  const Eigen::MatrixXd& jump_gram(int interior_face_pos) const { return m_jump_gram[interior_face_pos]; }
  /// Harmonic-mean diffusion lambda_F of the same face.
  double lambda_F(int interior_face_pos) const { return m_lambda_F[interior_face_pos]; }

  //--------------------------------------------------------------------------
  // Form actions (full-layout displacement vectors, pressure coefficient
  // vectors); used for residuals and by the tests.
  //--------------------------------------------------------------------------

  /// q-representation of b_h(u, .): returns w with w^T q = b_h(u, q).
  Eigen::VectorXd bh_applied_to_displacement(const Eigen::VectorXd& u_full) const;
  /// v-representation of b_h(., p) in the full displacement layout.
  Eigen::VectorXd bh_applied_to_pressure(const Eigen::VectorXd& p) const;
  double bh(const Eigen::VectorXd& u_full, const Eigen::VectorXd& p) const;

  /// q-representation of c_h(p, .).
  Eigen::VectorXd ch_applied(const Eigen::VectorXd& p) const;
  double ch(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const;
  /// Energy norm |q|_{c,h} = c_h(q, q)^{1/2}.
  double ch_norm(const Eigen::VectorXd& p) const;

  /// Kappa-weighted pressure seminorm (gradients plus interface jumps).
  double pressure_seminorm(const Eigen::VectorXd& p) const;

  //--------------------------------------------------------------------------
  // Global sparse matrices in the "natural" layouts (full displacement /
  // pressure coefficients), for diagnostics and tests.
  //--------------------------------------------------------------------------

  Eigen::SparseMatrix<double> coupling_matrix() const;          // P.total x U.total
  Eigen::SparseMatrix<double> swip_matrix() const;              // P.total square
  Eigen::SparseMatrix<double> pressure_seminorm_matrix() const; // P.total square
  Eigen::SparseMatrix<double> pressure_mass_matrix() const;     // P.total square
  Eigen::SparseMatrix<double> strain_gram_matrix() const;       // U.total square

private:
  const HhoSpace* m_U;
  const PressureSpace* m_P;
  Permeability m_kappa;
  double m_varsigma;
  std::vector<Eigen::MatrixXd> m_coupling;
  std::vector<Eigen::MatrixXd> m_darcy_volume;
  std::vector<Eigen::MatrixXd> m_swip_face;
  std::vector<Eigen::MatrixXd> m_jump_gram;
  std::vector<double> m_lambda_F;
};

//------------------------------------------------------------------------------
// Nonlinear elasticity assembly
//------------------------------------------------------------------------------

/// Residual (and optionally the tangent) of a_h restricted to one cell at the
/// local state u_loc: residual_i = a_h(u, phi_i)|_T, jacobian_ij the
/// linearization. The stabilization parameter gamma multiplies the cached
/// face-residual Gram.
struct CellElasticity {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;  // empty unless requested
};
CellElasticity assemble_cell_elasticity(const HhoSpace& U, const StressLaw& law, double gamma, int iT,
                                        const Eigen::VectorXd& u_loc, bool want_jacobian);

/// Full a_h(u, .) action over the mesh (full displacement layout).
Eigen::VectorXd ah_applied(const HhoSpace& U, const StressLaw& law, double gamma, const Eigen::VectorXd& u_full,
                           bool use_threads = true);

//------------------------------------------------------------------------------
// Load vectors
//------------------------------------------------------------------------------

/// (f, v_h)_Omega against the broken cell polynomials (full layout, face
/// blocks zero), integrated with the space sampling rule.
Eigen::VectorXd assemble_displacement_load(const HhoSpace& U, const VectorField& f, bool use_threads = true);

/// (g, q)_Omega against the pressure basis.
Eigen::VectorXd assemble_pressure_load(const PressureSpace& P, const ScalarField& g, int order = -1,
                                       bool use_threads = true);

/// Boundary flux functional int_{dOmega} j q with j = j(x, outward normal).
using BoundaryFlux = std::function<double(const Eigen::Vector2d&, const Eigen::Vector2d&)>;
Eigen::VectorXd assemble_boundary_flux_load(const PressureSpace& P, const BoundaryFlux& flux, int order = -1);

//------------------------------------------------------------------------------
// Time averages
//------------------------------------------------------------------------------

/// Gauss rule for interval averages: weights sum to one, exact for
/// polynomials in time of degree <= 2 n_points - 1.
struct TimeAverage {
  std::vector<double> times;
  std::vector<double> weights;
};
TimeAverage time_average_rule(double t_begin, double t_end, int n_points = 2);

}  // namespace porohho

#endif

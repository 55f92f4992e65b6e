#ifndef POROHHO_DIAGNOSTICS_HPP
#define POROHHO_DIAGNOSTICS_HPP

#include <utility>

#include "porohho/forms.hpp"

namespace porohho {

/// Random element of the Dirichlet displacement space (boundary face blocks
/// zero), entries uniform in [-1, 1].
Eigen::VectorXd random_dirichlet_field(const HhoSpace& U, unsigned seed);

/// Largest ratio |v_h|_Omega / |v_h|_{eps,h} over random Dirichlet fields: a
/// numerical probe of the discrete Korn inequality.
double korn_ratio(const HhoSpace& U, int n_samples, unsigned seed);

/// Smallest nonzero generalized singular value of the coupling block, i.e.
/// the discrete inf-sup constant of b_h with the strain-seminorm / L2
/// normalizations (dense computation, small meshes only).
double inf_sup_constant(const HhoSpace& U, const PressureSpace& P, const Forms& forms);

/// Range over cells of the generalized eigenvalues of the stabilized local
/// block |G v|^2 + sum_F h_F^{-1} |Delta v|^2 against the strain seminorm,
/// restricted to the complement of the common (rigid body) kernel.
std::pair<double, double> equivalence_spectrum(const HhoSpace& U);

/// Dual-norm residual of the Darcy consistency identity for a smooth field
/// with vanishing co-normal flux: sup over q_h of
/// [c_h(r, q_h) + (div(kappa grad r), q_h)] / |q_h|_{kappa,h}.
double swip_consistency_residual(const Forms& forms, const ScalarField& r,
                                 const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& grad_r,
                                 const ScalarField& div_kappa_grad_r, int order);

}  // namespace porohho

#endif

#include "porohho/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "porohho/quadrature.hpp"

namespace porohho {

Eigen::VectorXd random_dirichlet_field(const HhoSpace& U, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1., 1.);
  Eigen::VectorXd v(U.total_dofs());
  for (int i = 0; i < U.total_dofs(); ++i) v[i] = dist(gen);
  for (int iF : U.mesh().boundary_faces()) {
    v.segment(U.face_offset(iF), U.face_block()).setZero();
  }
  return v;
}

double korn_ratio(const HhoSpace& U, int n_samples, unsigned seed) {
  double worst = 0.;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd v = random_dirichlet_field(U, seed + static_cast<unsigned>(s));
    const double strain = U.strain_seminorm(v);
    if (strain > 0.) worst = std::max(worst, U.cell_l2_norm(v) / strain);
  }
  return worst;
}

double inf_sup_constant(const HhoSpace& U, const PressureSpace& P, const Forms& forms) {
  const PolyMesh& mesh = U.mesh();
  // Unknown displacement dofs: all cell blocks plus interior-face blocks.
  std::vector<int> keep;
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    for (int i = 0; i < U.cell_block(); ++i) keep.push_back(U.cell_offset(iT) + i);
  }
  for (int iF : mesh.interior_faces()) {
    for (int i = 0; i < U.face_block(); ++i) keep.push_back(U.face_offset(iF) + i);
  }
  const int nd = static_cast<int>(keep.size());
  const int np = P.total_dofs();

  const Eigen::SparseMatrix<double> S_full = forms.strain_gram_matrix();
  const Eigen::SparseMatrix<double> B_full = forms.coupling_matrix();
  Eigen::MatrixXd S(nd, nd);
  Eigen::MatrixXd B(np, nd);
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < nd; ++j) S(i, j) = S_full.coeff(keep[i], keep[j]);
    for (int r = 0; r < np; ++r) B(r, i) = B_full.coeff(r, keep[i]);
  }
  Eigen::MatrixXd Mp = Eigen::MatrixXd(forms.pressure_mass_matrix());

  const Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) throw std::runtime_error("inf_sup_constant: strain Gram not SPD");
  const Eigen::MatrixXd X = B * llt.solve(B.transpose());

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(X, Mp);
  const Eigen::VectorXd eig = ges.eigenvalues();
  const double cutoff = 1e-10 * std::max(1., eig.maxCoeff());
  for (int i = 0; i < eig.size(); ++i) {
    if (eig[i] > cutoff) return std::sqrt(eig[i]);
  }
  return 0.;
}

std::pair<double, double> equivalence_spectrum(const HhoSpace& U) {
  const int nk = U.cell_scalar_dim();
  double lo = std::numeric_limits<double>::max(), hi = 0.;
  for (int iT = 0; iT < U.mesh().n_cells(); ++iT) {
    const LocalOperators& ops = U.local_operators(iT);
    const Eigen::MatrixXd Mk = ops.cell_mass.topLeftCorner(nk, nk);
    const int nloc = static_cast<int>(ops.gradient.cols());
    Eigen::MatrixXd Mtau = Eigen::MatrixXd::Zero(3 * nk, 3 * nk);
    Mtau.block(0, 0, nk, nk) = Mk;
    Mtau.block(nk, nk, nk, nk) = Mk;
    Mtau.block(2 * nk, 2 * nk, nk, nk) = 2. * Mk;
    const Eigen::MatrixXd A = ops.gradient.transpose() * Mtau * ops.gradient + ops.stab_gram;
    const Eigen::MatrixXd& Bm = ops.strain_gram;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Bm);
    const double tol = 1e-12 * es.eigenvalues().maxCoeff();
    std::vector<int> range;
    for (int i = 0; i < nloc; ++i) {
      if (es.eigenvalues()[i] > tol) range.push_back(i);
    }
    Eigen::MatrixXd W(nloc, static_cast<int>(range.size()));
    for (size_t c = 0; c < range.size(); ++c) {
      W.col(static_cast<int>(c)) = es.eigenvectors().col(range[c]) / std::sqrt(es.eigenvalues()[range[c]]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pencil(W.transpose() * A * W);
    lo = std::min(lo, pencil.eigenvalues().minCoeff());
    hi = std::max(hi, pencil.eigenvalues().maxCoeff());
  }
  return {lo, hi};
}

double swip_consistency_residual(const Forms& forms, const ScalarField& r,
                                 const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& grad_r,
                                 const ScalarField& div_kappa_grad_r, int order) {
  const PressureSpace& P = forms.pressure_space();
  const PolyMesh& mesh = P.mesh();
  const Permeability& kappa = forms.kappa();
  const int np = P.block();

  Eigen::VectorXd R = Eigen::VectorXd::Zero(P.total_dofs());
  // Volume terms (kappa grad r, grad q)_T + (div(kappa grad r), q)_T.
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    const Eigen::Matrix2d& kap = kappa.of_region(mesh.cell(iT).region);
    const QuadratureRule rule = cell_quadrature(mesh, iT, order);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q];
      const Eigen::Vector2d kgr = kap * grad_r(rule.points[q]);
      R.segment(P.offset(iT), np) += w * (P.basis(iT).eval_grad(rule.points[q]) * kgr);
      R.segment(P.offset(iT), np) += w * div_kappa_grad_r(rule.points[q]) * P.basis(iT).eval(rule.points[q]);
    }
  }
  // Interface terms -( [q] {kappa grad r}_omega . n ).
  for (int iF : mesh.interior_faces()) {
    const Face& F = mesh.face(iF);
    const int T1 = F.cell[0], T2 = F.cell[1];
    const Eigen::Matrix2d& k1 = kappa.of_region(mesh.cell(T1).region);
    const Eigen::Matrix2d& k2 = kappa.of_region(mesh.cell(T2).region);
    const double l1 = F.normal.dot(k1 * F.normal);
    const double l2 = F.normal.dot(k2 * F.normal);
    const double w1 = std::sqrt(l2) / (std::sqrt(l1) + std::sqrt(l2));
    const double w2 = std::sqrt(l1) / (std::sqrt(l1) + std::sqrt(l2));
    const QuadratureRule rule = face_quadrature(mesh, iF, order);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q];
      const double avg_flux = grad_r(rule.points[q]).dot((w1 * k1 + w2 * k2) * F.normal);
      R.segment(P.offset(T1), np) -= w * avg_flux * P.basis(T1).eval(rule.points[q]);
      R.segment(P.offset(T2), np) += w * avg_flux * P.basis(T2).eval(rule.points[q]);
    }
  }

  // Dual norm against the kappa-weighted seminorm; the constant-mode kernel is
  // pinned with a rank-one mean regularization (R is mean-free for zero-flux r).
  Eigen::MatrixXd S = Eigen::MatrixXd(forms.pressure_seminorm_matrix());
  const Eigen::VectorXd m = P.integral_functional();
  S += m * m.transpose() / mesh.domain_measure();
  const Eigen::VectorXd z = S.ldlt().solve(R);
  return std::sqrt(std::max(0., z.dot(R)));
}

}  // namespace porohho

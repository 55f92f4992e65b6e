#include "porohho/local_operators.hpp"

#include <stdexcept>

#include "porohho/quadrature.hpp"

namespace porohho {

LocalOperators build_local_operators(const PolyMesh& mesh, int cell_index, int degree,
                                     const CellBasis& cell_basis, const std::vector<FaceBasis>& face_bases) {
  const Cell& T = mesh.cell(cell_index);
  const int k = degree;
  const int nk = scalar_space_dim(k);
  const int nk1 = scalar_space_dim(k + 1);
  const int nfd = k + 1;
  const int n_faces = static_cast<int>(T.faces.size());

  LocalOperators ops;
  ops.layout = {k, n_faces};
  const LocalLayout& L = ops.layout;
  const int nloc = L.total();

  //------------------------------------------------------------------------
  // Cell integrals on the degree-(k+1) basis
  //------------------------------------------------------------------------
  const QuadratureRule qT = cell_quadrature(mesh, cell_index, 2 * (k + 1));
  Eigen::MatrixXd M1 = Eigen::MatrixXd::Zero(nk1, nk1);   // (m_i, m_j)
  Eigen::MatrixXd DX = Eigen::MatrixXd::Zero(nk1, nk1);   // (dx m_i, m_j)
  Eigen::MatrixXd DY = Eigen::MatrixXd::Zero(nk1, nk1);
  Eigen::MatrixXd KXX = Eigen::MatrixXd::Zero(nk1, nk1);  // (dx m_i, dx m_j)
  Eigen::MatrixXd KXY = Eigen::MatrixXd::Zero(nk1, nk1);  // (dx m_i, dy m_j)
  Eigen::MatrixXd KYY = Eigen::MatrixXd::Zero(nk1, nk1);
  Eigen::VectorXd int_m = Eigen::VectorXd::Zero(nk1);
  Eigen::VectorXd int_dx = Eigen::VectorXd::Zero(nk1);
  Eigen::VectorXd int_dy = Eigen::VectorXd::Zero(nk1);
  for (int q = 0; q < qT.size(); ++q) {
    const double w = qT.weights[q];
    const Eigen::VectorXd phi = cell_basis.eval(qT.points[q]);
    const Eigen::MatrixXd grad = cell_basis.eval_grad(qT.points[q]);
    M1.noalias() += w * phi * phi.transpose();
    DX.noalias() += w * grad.col(0) * phi.transpose();
    DY.noalias() += w * grad.col(1) * phi.transpose();
    KXX.noalias() += w * grad.col(0) * grad.col(0).transpose();
    KXY.noalias() += w * grad.col(0) * grad.col(1).transpose();
    KYY.noalias() += w * grad.col(1) * grad.col(1).transpose();
    int_m.noalias() += w * phi;
    int_dx.noalias() += w * grad.col(0);
    int_dy.noalias() += w * grad.col(1);
  }
  ops.cell_mass = M1;
  const Eigen::MatrixXd Mk = M1.topLeftCorner(nk, nk);
  Eigen::LLT<Eigen::MatrixXd> llt_Mk(Mk);
  if (llt_Mk.info() != Eigen::Success) {
    throw std::runtime_error("local operators: singular cell mass matrix in cell " + std::to_string(cell_index));
  }

  //------------------------------------------------------------------------
  // Face integrals
  //------------------------------------------------------------------------
  std::vector<Eigen::MatrixXd> Mf(n_faces), Tf(n_faces), Qf(n_faces);
  std::vector<Eigen::VectorXd> int_f(n_faces);
  std::vector<Eigen::Vector2d> normal(n_faces);
  std::vector<double> inv_hF(n_faces);
  for (int f = 0; f < n_faces; ++f) {
    const int iF = T.faces[f];
    const FaceBasis& fb = face_bases[iF];
    normal[f] = mesh.outward_normal(cell_index, iF);
    inv_hF[f] = 1. / mesh.face(iF).diameter();
    const QuadratureRule qF = face_quadrature(mesh, iF, 2 * k + 2);
    Mf[f] = Eigen::MatrixXd::Zero(nfd, nfd);
    Tf[f] = Eigen::MatrixXd::Zero(nfd, nk1);
    Qf[f] = Eigen::MatrixXd::Zero(nk, nk);
    int_f[f] = Eigen::VectorXd::Zero(nfd);
    for (int q = 0; q < qF.size(); ++q) {
      const double w = qF.weights[q];
      const Eigen::VectorXd psi = fb.eval(qF.points[q]);
      const Eigen::VectorXd phi = cell_basis.eval(qF.points[q]);
      Mf[f].noalias() += w * psi * psi.transpose();
      Tf[f].noalias() += w * psi * phi.transpose();
      Qf[f].noalias() += w * phi.head(nk) * phi.head(nk).transpose();
      int_f[f].noalias() += w * psi;
    }
  }

  //------------------------------------------------------------------------
  // Symmetric gradient reconstruction: (G v, tau)_T = -(v_T, div tau)_T
  //                                     + sum_F (v_F, tau n_TF)_F
  //------------------------------------------------------------------------
  Eigen::MatrixXd BG = Eigen::MatrixXd::Zero(3 * nk, nloc);
  for (int i = 0; i < nk; ++i) {
    for (int j = 0; j < nk; ++j) {
      // div(E11 m) = (dx m, 0), div(E22 m) = (0, dy m), div(E12 m) = (dy m, dx m)
      BG(i, L.cell_offset(0) + j) = -DX(i, j);
      BG(nk + i, L.cell_offset(1) + j) = -DY(i, j);
      BG(2 * nk + i, L.cell_offset(0) + j) = -DY(i, j);
      BG(2 * nk + i, L.cell_offset(1) + j) = -DX(i, j);
    }
  }
  for (int f = 0; f < n_faces; ++f) {
    const Eigen::Vector2d& n = normal[f];
    for (int j = 0; j < nfd; ++j) {
      for (int i = 0; i < nk; ++i) {
        const double t = Tf[f](j, i);
        // (E11 m) n = (n1 m, 0), (E22 m) n = (0, n2 m), (E12 m) n = (n2 m, n1 m)
        BG(i, L.face_offset(f, 0) + j) += n.x() * t;
        BG(nk + i, L.face_offset(f, 1) + j) += n.y() * t;
        BG(2 * nk + i, L.face_offset(f, 0) + j) += n.y() * t;
        BG(2 * nk + i, L.face_offset(f, 1) + j) += n.x() * t;
      }
    }
  }
  ops.gradient.resize(3 * nk, nloc);
  ops.gradient.middleRows(0, nk) = llt_Mk.solve(BG.middleRows(0, nk));
  ops.gradient.middleRows(nk, nk) = llt_Mk.solve(BG.middleRows(nk, nk));
  // The E12 block of the tensor mass matrix is 2 M_k (|E12|^2 = 2).
  ops.gradient.middleRows(2 * nk, nk) = 0.5 * llt_Mk.solve(BG.middleRows(2 * nk, nk));

  //------------------------------------------------------------------------
  // Displacement reconstruction: consistent overdetermined system stacking
  // the grad_s orthogonality rows with the mean-value and rotation closures.
  //------------------------------------------------------------------------
  const int n_rows = 2 * nk1 + 3;
  Eigen::MatrixXd AR = Eigen::MatrixXd::Zero(n_rows, 2 * nk1);
  Eigen::MatrixXd BR = Eigen::MatrixXd::Zero(n_rows, nloc);

  // (grad_s r, grad_s w)_T rows, test function w = m_j e_c on row c*nk1+j
  AR.block(0, 0, nk1, nk1) = KXX + 0.5 * KYY;
  AR.block(0, nk1, nk1, nk1) = 0.5 * KXY.transpose();
  AR.block(nk1, 0, nk1, nk1) = 0.5 * KXY;
  AR.block(nk1, nk1, nk1, nk1) = KYY + 0.5 * KXX;
  // (G v, grad_s w)_T via the gradient matrix: grad_s(m e_0) = dx m E11 + (dy m / 2) E12
  const auto G0 = ops.gradient.middleRows(0, nk);
  const auto G1 = ops.gradient.middleRows(nk, nk);
  const auto G2 = ops.gradient.middleRows(2 * nk, nk);
  BR.middleRows(0, nk1) = DX.leftCols(nk) * G0 + DY.leftCols(nk) * G2;
  BR.middleRows(nk1, nk1) = DY.leftCols(nk) * G1 + DX.leftCols(nk) * G2;

  // Mean-value rows, scaled to O(1)
  const double mean_scale = 1. / T.measure;
  for (int c = 0; c < 2; ++c) {
    AR.block(2 * nk1 + c, c * nk1, 1, nk1) = mean_scale * int_m.transpose();
    BR.block(2 * nk1 + c, L.cell_offset(c), 1, nk).noalias() = mean_scale * int_m.head(nk).transpose();
  }
  // Rotation row: int_T (d1 r_2 - d2 r_1) = sum_F int_F (n1 v_{F,2} - n2 v_{F,1})
  const double rot_scale = T.diameter / T.measure;
  AR.block(2 * nk1 + 2, nk1, 1, nk1) = rot_scale * int_dx.transpose();
  AR.block(2 * nk1 + 2, 0, 1, nk1) = -rot_scale * int_dy.transpose();
  for (int f = 0; f < n_faces; ++f) {
    const Eigen::Vector2d& n = normal[f];
    BR.block(2 * nk1 + 2, L.face_offset(f, 1), 1, nfd) += rot_scale * n.x() * int_f[f].transpose();
    BR.block(2 * nk1 + 2, L.face_offset(f, 0), 1, nfd) -= rot_scale * n.y() * int_f[f].transpose();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(AR);
  if (qr.rank() < 2 * nk1) {
    throw std::runtime_error("local operators: rank-deficient reconstruction system in cell " +
                             std::to_string(cell_index));
  }
  ops.reconstruction = qr.solve(BR);

  //------------------------------------------------------------------------
  // Face residuals Delta_TF = pi_F(r v - v_F) - pi_T(r v - v_T) and Grams
  //------------------------------------------------------------------------
  const Eigen::MatrixXd PT = llt_Mk.solve(M1.topRows(nk));  // P^{k+1} -> P^k cell projection
  ops.stab_gram = Eigen::MatrixXd::Zero(nloc, nloc);
  ops.stab_residual.resize(n_faces);
  for (int f = 0; f < n_faces; ++f) {
    Eigen::LLT<Eigen::MatrixXd> llt_Mf(Mf[f]);
    if (llt_Mf.info() != Eigen::Success) {
      throw std::runtime_error("local operators: singular face mass matrix");
    }
    const Eigen::MatrixXd Wk1 = llt_Mf.solve(Tf[f]);                // face proj of P^{k+1} traces
    const Eigen::MatrixXd Wk = llt_Mf.solve(Tf[f].leftCols(nk));    // face proj of P^k traces
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(2 * nfd, nloc);
    for (int c = 0; c < 2; ++c) {
      const auto Rc = ops.reconstruction.middleRows(c * nk1, nk1);
      Eigen::MatrixXd block = Wk1 * Rc - Wk * (PT * Rc);
      block.middleCols(L.face_offset(f, c), nfd) -= Eigen::MatrixXd::Identity(nfd, nfd);
      block.middleCols(L.cell_offset(c), nk) += Wk;
      delta.middleRows(c * nfd, nfd) = block;
    }
    ops.stab_residual[f] = delta;
    for (int c = 0; c < 2; ++c) {
      const auto Dc = delta.middleRows(c * nfd, nfd);
      ops.stab_gram.noalias() += inv_hF[f] * Dc.transpose() * Mf[f] * Dc;
    }
  }

  //------------------------------------------------------------------------
  // Strain seminorm Gram
  //------------------------------------------------------------------------
  ops.strain_gram = Eigen::MatrixXd::Zero(nloc, nloc);
  ops.strain_gram.block(L.cell_offset(0), L.cell_offset(0), nk, nk) =
      (KXX + 0.5 * KYY).topLeftCorner(nk, nk);
  ops.strain_gram.block(L.cell_offset(0), L.cell_offset(1), nk, nk) =
      0.5 * KXY.transpose().topLeftCorner(nk, nk);
  ops.strain_gram.block(L.cell_offset(1), L.cell_offset(0), nk, nk) = 0.5 * KXY.topLeftCorner(nk, nk);
  ops.strain_gram.block(L.cell_offset(1), L.cell_offset(1), nk, nk) =
      (KYY + 0.5 * KXX).topLeftCorner(nk, nk);
  for (int f = 0; f < n_faces; ++f) {
    const Eigen::MatrixXd TfK = Tf[f].leftCols(nk);
    for (int c = 0; c < 2; ++c) {
      const int oF = L.face_offset(f, c);
      const int oT = L.cell_offset(c);
      ops.strain_gram.block(oF, oF, nfd, nfd) += inv_hF[f] * Mf[f];
      ops.strain_gram.block(oF, oT, nfd, nk) -= inv_hF[f] * TfK;
      ops.strain_gram.block(oT, oF, nk, nfd) -= inv_hF[f] * TfK.transpose();
      ops.strain_gram.block(oT, oT, nk, nk) += inv_hF[f] * Qf[f];
    }
  }

  return ops;
}

}  // namespace porohho

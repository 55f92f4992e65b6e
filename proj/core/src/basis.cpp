#include "porohho/basis.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace porohho {

const std::vector<std::array<int, 2>>& monomial_exponents(int degree) {
  static std::vector<std::vector<std::array<int, 2>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (degree >= static_cast<int>(cache.size())) cache.resize(degree + 1);
  if (cache[degree].empty()) {
    for (int d = 0; d <= degree; ++d) {
      for (int ay = 0; ay <= d; ++ay) cache[degree].push_back({d - ay, ay});
    }
  }
  return cache[degree];
}

namespace {

// powers[i] = t^i for i = 0..degree
void fill_powers(double t, int degree, double* powers) {
  powers[0] = 1.;
  for (int i = 1; i <= degree; ++i) powers[i] = powers[i - 1] * t;
}

}  // namespace

Eigen::VectorXd CellBasis::eval(const Eigen::Vector2d& x) const {
  const auto& exps = monomial_exponents(m_degree);
  const double xi = (x.x() - m_center.x()) / m_h;
  const double eta = (x.y() - m_center.y()) / m_h;
  double px[32], py[32];
  fill_powers(xi, m_degree, px);
  fill_powers(eta, m_degree, py);
  Eigen::VectorXd phi(dim());
  for (int i = 0; i < dim(); ++i) phi[i] = px[exps[i][0]] * py[exps[i][1]];
  if (m_transform.size() > 0) return m_transform * phi;
  return phi;
}

Eigen::MatrixXd CellBasis::eval_grad(const Eigen::Vector2d& x) const {
  const auto& exps = monomial_exponents(m_degree);
  const double xi = (x.x() - m_center.x()) / m_h;
  const double eta = (x.y() - m_center.y()) / m_h;
  double px[32], py[32];
  fill_powers(xi, m_degree, px);
  fill_powers(eta, m_degree, py);
  Eigen::MatrixXd grad(dim(), 2);
  for (int i = 0; i < dim(); ++i) {
    const int a = exps[i][0], b = exps[i][1];
    grad(i, 0) = a > 0 ? a * px[a - 1] * py[b] / m_h : 0.;
    grad(i, 1) = b > 0 ? b * px[a] * py[b - 1] / m_h : 0.;
  }
  if (m_transform.size() > 0) return m_transform * grad;
  return grad;
}

void CellBasis::orthonormalize(const QuadratureRule& rule) {
  m_transform.resize(0, 0);
  const Eigen::MatrixXd M = mass_matrix(*this, rule);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("CellBasis: singular Gram matrix");
  m_transform = Eigen::MatrixXd(llt.matrixL()).triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(dim(), dim()));
}

Eigen::VectorXd FaceBasis::eval(const Eigen::Vector2d& x) const {
  const double s = (x - m_midpoint).dot(m_tangent) / m_h;
  Eigen::VectorXd phi(dim());
  phi[0] = 1.;
  for (int i = 1; i <= m_degree; ++i) phi[i] = phi[i - 1] * s;
  if (m_transform.size() > 0) return m_transform * phi;
  return phi;
}

void FaceBasis::orthonormalize(const QuadratureRule& rule) {
  m_transform.resize(0, 0);
  const Eigen::MatrixXd M = mass_matrix(*this, rule);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("FaceBasis: singular Gram matrix");
  m_transform = Eigen::MatrixXd(llt.matrixL()).triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(dim(), dim()));
}

RateCheck approximation_order_check(const std::function<double(const Eigen::Vector2d&)>& v,
                                    const std::vector<const PolyMesh*>& meshes, int degree, int sampling_order) {
  RateCheck check;
  for (const PolyMesh* mesh : meshes) {
    double err2 = 0.;
    for (int iT = 0; iT < mesh->n_cells(); ++iT) {
      const CellBasis basis(mesh->cell(iT), degree);
      const QuadratureRule rule = cell_quadrature(*mesh, iT, sampling_order);
      const Eigen::VectorXd coeffs = l2_project(v, basis, rule);
      for (int q = 0; q < rule.size(); ++q) {
        const double diff = v(rule.points[q]) - basis.eval(rule.points[q]).dot(coeffs);
        err2 += rule.weights[q] * diff * diff;
      }
    }
    check.mesh_sizes.push_back(mesh->mesh_size());
    check.errors.push_back(std::sqrt(err2));
  }
  for (size_t l = 0; l + 1 < check.errors.size(); ++l) {
    check.rates.push_back(std::log(check.errors[l] / check.errors[l + 1]) /
                          std::log(check.mesh_sizes[l] / check.mesh_sizes[l + 1]));
  }
  return check;
}

}  // namespace porohho

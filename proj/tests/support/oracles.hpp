#ifndef POROHHO_TESTS_ORACLES_HPP
#define POROHHO_TESTS_ORACLES_HPP

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "porohho/basis.hpp"
#include "porohho/mesh.hpp"
#include "porohho/quadrature.hpp"

namespace porohho::test {

/// Polynomial vector field in global coordinates with analytic derivatives;
/// the coefficient layout follows monomial_exponents(degree).
struct PolyField {
  int degree = 1;
  Eigen::VectorXd cx, cy;

  Eigen::Vector2d value(const Eigen::Vector2d& p) const {
    const auto& exps = monomial_exponents(degree);
    double vx = 0., vy = 0.;
    for (size_t i = 0; i < exps.size(); ++i) {
      const double m = std::pow(p.x(), exps[i][0]) * std::pow(p.y(), exps[i][1]);
      vx += cx[static_cast<int>(i)] * m;
      vy += cy[static_cast<int>(i)] * m;
    }
    return {vx, vy};
  }

  Eigen::Matrix2d gradient(const Eigen::Vector2d& p) const {
    const auto& exps = monomial_exponents(degree);
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    for (size_t i = 0; i < exps.size(); ++i) {
      const int a = exps[i][0], b = exps[i][1];
      const double dx = a > 0 ? a * std::pow(p.x(), a - 1) * std::pow(p.y(), b) : 0.;
      const double dy = b > 0 ? b * std::pow(p.x(), a) * std::pow(p.y(), b - 1) : 0.;
      g(0, 0) += cx[static_cast<int>(i)] * dx;
      g(0, 1) += cx[static_cast<int>(i)] * dy;
      g(1, 0) += cy[static_cast<int>(i)] * dx;
      g(1, 1) += cy[static_cast<int>(i)] * dy;
    }
    return g;
  }

  Eigen::Matrix2d sym_gradient(const Eigen::Vector2d& p) const {
    const Eigen::Matrix2d g = gradient(p);
    return 0.5 * (g + g.transpose());
  }

  double divergence(const Eigen::Vector2d& p) const { return gradient(p).trace(); }
};

inline PolyField random_poly_field(int degree, std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1., 1.);
  const int n = scalar_space_dim(degree);
  PolyField f{degree, Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    f.cx[i] = dist(gen);
    f.cy[i] = dist(gen);
  }
  return f;
}

inline Eigen::Matrix2d random_symmetric(std::mt19937& gen, double scale = 1.) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::Matrix2d m;
  m(0, 0) = dist(gen);
  m(1, 1) = dist(gen);
  m(0, 1) = m(1, 0) = dist(gen);
  return m;
}

/// Integral over a polygon by recursive refinement of the fan triangulation;
/// independent of the production quadrature path.
inline double refine_integrate(const std::function<double(const Eigen::Vector2d&)>& f, const Triangle& tri,
                               int levels) {
  if (levels == 0) {
    // degree-2 exact midpoint rule
    const Eigen::Vector2d mab = 0.5 * (tri.a + tri.b);
    const Eigen::Vector2d mbc = 0.5 * (tri.b + tri.c);
    const Eigen::Vector2d mca = 0.5 * (tri.c + tri.a);
    return tri.area / 3. * (f(mab) + f(mbc) + f(mca));
  }
  const Eigen::Vector2d mab = 0.5 * (tri.a + tri.b);
  const Eigen::Vector2d mbc = 0.5 * (tri.b + tri.c);
  const Eigen::Vector2d mca = 0.5 * (tri.c + tri.a);
  const double quarter = tri.area / 4.;
  return refine_integrate(f, {tri.a, mab, mca, quarter}, levels - 1) +
         refine_integrate(f, {mab, tri.b, mbc, quarter}, levels - 1) +
         refine_integrate(f, {mca, mbc, tri.c, quarter}, levels - 1) +
         refine_integrate(f, {mab, mbc, mca, quarter}, levels - 1);
}

inline double shoelace_area(const std::vector<Eigen::Vector2d>& loop) {
  double acc = 0.;
  for (size_t i = 0; i < loop.size(); ++i) {
    const auto& a = loop[i];
    const auto& b = loop[(i + 1) % loop.size()];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * acc;
}

}  // namespace porohho::test

#endif

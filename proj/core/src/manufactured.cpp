#include "porohho/manufactured.hpp"

#include <cmath>

namespace porohho {

namespace {

// Momentum source of the nonlinear reference case, generated symbolically from
// the exact fields (scripts/generate_case_terms.py) and validated against a
// finite-difference strong-form residual in the tests.
Eigen::Vector2d nl_biot_load(const Eigen::Vector2d& xy, double T) {
  const double X = xy.x();
  const double Y = xy.y();
  double fx, fy;
  const double x0 = M_PI * (X + Y);
  const double x1 = cos(x0);
  const double x2 = 2 * X;
  const double x3 = 2 * Y;
  const double x4 = cos(M_PI * (x2 - x3)) + cos(M_PI * (x2 + x3)) - 2;
  const double x5 = pow(M_PI, 2);
  const double x6 = pow(T, 4) * x5;
  const double x7 = (1.0 / 4.0) * x6;
  const double x8 = x4 * x7;
  const double x9 = x1 * exp(-x8);
  const double x10 = M_PI * X;
  const double x11 = cos(x10);
  const double x12 = cos(M_PI * x3);
  const double x13 = sin(x10);
  const double x14 = 2 * x13;
  const double x15 = x6 * sin(x0);
  const double x16 = x11 * x12 * x14 * x15;
  const double x17 = M_PI * Y;
  const double x18 = cos(x17);
  const double x19 = sin(x17);
  const double x20 = x19 * cos(M_PI * x2);
  const double x21 = 2 * x15 * x18 * x20;
  const double x22 = 4 * x13 * x6;
  const double x23 = exp(-x4 * x7);
  const double x24 = 1 - 2 * x23;
  const double x25 = -x1 * x24 + x1 * (x23 + 1) + x14 * x19 * x24;
  const double x26 = T * x5;
  const double x27 = T * exp(x8);
  fx = -x27 * (x26 * (pow(x11, 2) * x12 * x19 * x22 - x16 + x21 + x25) + x9);
  fy = -x27 * (x26 * (x16 + pow(x18, 2) * x20 * x22 - x21 + x25) + x9);
  return {fx, fy};
}

}  // namespace

ManufacturedCase build_case_nl_biot_2d() {
  ManufacturedCase mc;
  mc.name = "nl_biot_2d";
  mc.law = StressLaw::hencky_mises_exp();
  mc.kappa = Permeability::isotropic(1.);
  mc.c0 = 0.;
  mc.t_final = 1.;

  mc.data.exact_u = [](const Eigen::Vector2d& x, double t) {
    const double s = std::sin(M_PI * x.x()) * std::sin(M_PI * x.y());
    return Eigen::Vector2d(t * t * s, t * t * s);
  };
  mc.data.exact_p = [](const Eigen::Vector2d& x, double t) {
    return -t / M_PI * std::sin(M_PI * (x.x() + x.y()));
  };
  mc.data.load = nl_biot_load;
  // The mass source vanishes identically for this solution; the pressure has
  // a nonzero Neumann flux grad p . n on the boundary.
  mc.data.boundary_flux = [](const Eigen::Vector2d& x, const Eigen::Vector2d& n, double t) {
    return -t * std::cos(M_PI * (x.x() + x.y())) * (n.x() + n.y());
  };
  return mc;
}

ManufacturedCase build_case_linear_poly(int degree) {
  ManufacturedCase mc;
  mc.name = "linear_poly";
  mc.law = StressLaw::linear(1., 1.);
  mc.kappa = Permeability::isotropic(1.);
  mc.c0 = 0.;
  mc.t_final = 1.;

  // Divergence-free displacement with divergence-free stress (harmonic
  // conjugate pair), so u = t w solves the momentum balance with f = grad p.
  auto w = [degree](const Eigen::Vector2d& x) {
    if (degree <= 1) return Eigen::Vector2d(x.x() * x.x() - x.y() * x.y(), -2. * x.x() * x.y());
    return Eigen::Vector2d(std::pow(x.x(), 3) - 3. * x.x() * x.y() * x.y(),
                           -(3. * x.x() * x.x() * x.y() - std::pow(x.y(), 3)));
  };

  mc.data.exact_u = [w](const Eigen::Vector2d& x, double t) { return Eigen::Vector2d(t * w(x)); };
  mc.data.exact_p = [](const Eigen::Vector2d& x, double) { return x.x() + x.y() - 1.; };
  mc.data.load = [](const Eigen::Vector2d&, double) { return Eigen::Vector2d(1., 1.); };
  mc.data.boundary_flux = [](const Eigen::Vector2d&, const Eigen::Vector2d& n, double) { return n.x() + n.y(); };
  mc.data.dirichlet = [w](const Eigen::Vector2d& x, double t) { return Eigen::Vector2d(t * w(x)); };
  return mc;
}

}  // namespace porohho

#include "porohho/check.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "porohho/diagnostics.hpp"
#include "porohho/quadrature.hpp"

namespace porohho {

namespace {

struct PolyField {
  // Global-coordinate polynomial components, coefficients over the degree-m
  // monomial list.
  int degree;
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
  Eigen::Matrix2d sym_gradient(const Eigen::Vector2d& p) const {
    const auto& exps = monomial_exponents(degree);
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    for (size_t i = 0; i < exps.size(); ++i) {
      const int a = exps[i][0], b = exps[i][1];
      const double dx = a > 0 ? a * std::pow(p.x(), a - 1) * std::pow(p.y(), b) : 0.;
      const double dy = b > 0 ? b * std::pow(p.x(), a) * std::pow(p.y(), b - 1) : 0.;
      g(0, 0) += cx[static_cast<int>(i)] * dx;
      g(0, 1) += 0.5 * (cx[static_cast<int>(i)] * dy + cy[static_cast<int>(i)] * dx);
      g(1, 1) += cy[static_cast<int>(i)] * dy;
    }
    g(1, 0) = g(0, 1);
    return g;
  }
  double divergence(const Eigen::Vector2d& p) const {
    const Eigen::Matrix2d g = sym_gradient(p);
    return g(0, 0) + g(1, 1);
  }
};

PolyField random_poly_field(int degree, std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1., 1.);
  const int n = scalar_space_dim(degree);
  PolyField f{degree, Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    f.cx[i] = dist(gen);
    f.cy[i] = dist(gen);
  }
  return f;
}

// L2 projection of a symmetric tensor field onto the component-basis tensor
// space of one cell (the gradient-reconstruction row space).
Eigen::VectorXd project_tensor(const HhoSpace& U, int iT,
                               const std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>& field, int order) {
  const int nk = U.cell_scalar_dim();
  const QuadratureRule rule = cell_quadrature(U.mesh(), iT, order);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * nk);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = U.cell_basis(iT).eval(rule.points[q]).head(nk);
    const Eigen::Matrix2d g = field(rule.points[q]);
    b.segment(0, nk) += rule.weights[q] * g(0, 0) * phi;
    b.segment(nk, nk) += rule.weights[q] * g(1, 1) * phi;
    b.segment(2 * nk, nk) += rule.weights[q] * 2. * g(0, 1) * phi;
  }
  const Eigen::MatrixXd Mk = U.local_operators(iT).cell_mass.topLeftCorner(nk, nk);
  const Eigen::LLT<Eigen::MatrixXd> llt(Mk);
  Eigen::VectorXd c(3 * nk);
  c.segment(0, nk) = llt.solve(b.segment(0, nk));
  c.segment(nk, nk) = llt.solve(b.segment(nk, nk));
  c.segment(2 * nk, nk) = 0.5 * llt.solve(b.segment(2 * nk, nk));
  return c;
}

double tensor_norm(const HhoSpace& U, int iT, const Eigen::VectorXd& coeffs) {
  const int nk = U.cell_scalar_dim();
  const Eigen::MatrixXd Mk = U.local_operators(iT).cell_mass.topLeftCorner(nk, nk);
  double acc = coeffs.segment(0, nk).dot(Mk * coeffs.segment(0, nk));
  acc += coeffs.segment(nk, nk).dot(Mk * coeffs.segment(nk, nk));
  acc += 2. * coeffs.segment(2 * nk, nk).dot(Mk * coeffs.segment(2 * nk, nk));
  return std::sqrt(std::max(0., acc));
}

}  // namespace

bool run_check_battery(const HhoSpace& U, const PressureSpace& P, const Forms& forms, const StressLaw& law,
                       const CheckOptions& options, std::ostream& out) {
  const PolyMesh& mesh = U.mesh();
  const int k = U.degree();
  std::mt19937 gen(options.seed);
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, double value) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << value << ")\n";
    all_ok = all_ok && ok;
  };

  // Mesh closure: sum_F |F| n_TF = 0 on every cell.
  {
    double worst = 0.;
    for (int iT = 0; iT < mesh.n_cells(); ++iT) {
      const Cell& T = mesh.cell(iT);
      Eigen::Vector2d acc = Eigen::Vector2d::Zero();
      double perimeter = 0.;
      for (int iF : T.faces) {
        acc += mesh.face(iF).measure * mesh.outward_normal(iT, iF);
        perimeter += mesh.face(iF).measure;
      }
      worst = std::max(worst, acc.norm() / perimeter);
    }
    report("mesh normal closure", worst <= 1e-12, worst);
  }

  // Quadrature: measures.
  {
    double worst = 0.;
    for (int iT = 0; iT < mesh.n_cells(); ++iT) {
      const QuadratureRule rule = cell_quadrature(mesh, iT, 0);
      double measure = 0.;
      for (double w : rule.weights) measure += w;
      worst = std::max(worst, std::abs(measure - mesh.cell(iT).measure) / mesh.cell(iT).measure);
    }
    report("cell quadrature measures", worst <= 1e-13, worst);
  }

  // Projector idempotency on a random degree-k polynomial.
  {
    const PolyField f = random_poly_field(k, gen);
    const Eigen::VectorXd i1 = U.interpolate([&](const Eigen::Vector2d& x) { return f.value(x); }, 4 * k + 2);
    double worst = 0.;
    for (int iT = 0; iT < mesh.n_cells(); ++iT) {
      // re-project the interpolated polynomial; must reproduce itself
      const CellBasis& basis = U.cell_basis(iT);
      const int nk = U.cell_scalar_dim();
      const QuadratureRule rule = cell_quadrature(mesh, iT, 2 * k);
      Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nk, nk);
      Eigen::VectorXd bx = Eigen::VectorXd::Zero(nk), by = Eigen::VectorXd::Zero(nk);
      for (int q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd phi = basis.eval(rule.points[q]).head(nk);
        const double ux = phi.dot(i1.segment(U.cell_offset(iT), nk));
        const double uy = phi.dot(i1.segment(U.cell_offset(iT) + nk, nk));
        M += rule.weights[q] * phi * phi.transpose();
        bx += rule.weights[q] * ux * phi;
        by += rule.weights[q] * uy * phi;
      }
      const Eigen::VectorXd px = M.llt().solve(bx);
      const Eigen::VectorXd py = M.llt().solve(by);
      worst = std::max(worst, (px - i1.segment(U.cell_offset(iT), nk)).norm());
      worst = std::max(worst, (py - i1.segment(U.cell_offset(iT) + nk, nk)).norm());
    }
    report("projector idempotency", worst <= 1e-12, worst);
  }

  // Commuting property of the symmetric gradient reconstruction.
  {
    double worst = 0.;
    for (int trial = 0; trial < options.n_random_fields; ++trial) {
      const PolyField f = random_poly_field(k + 2, gen);
      const Eigen::VectorXd iv = U.interpolate([&](const Eigen::Vector2d& x) { return f.value(x); }, 4 * k + 4);
      for (int iT = 0; iT < mesh.n_cells(); ++iT) {
        const Eigen::VectorXd gv = U.local_operators(iT).gradient * U.gather(iT, iv);
        const Eigen::VectorXd pg =
            project_tensor(U, iT, [&](const Eigen::Vector2d& x) { return f.sym_gradient(x); }, 4 * k + 4);
        const double scale = std::max(1e-12, tensor_norm(U, iT, pg));
        worst = std::max(worst, tensor_norm(U, iT, gv - pg) / scale);
      }
    }
    report("gradient commuting property", worst <= 1e-11, worst);
  }

  // Stabilization residual vanishes on interpolates of P^{k+1} fields.
  {
    double worst = 0.;
    const int n1 = scalar_space_dim(k + 1);
    for (int comp = 0; comp < 2; ++comp) {
      for (int i = 0; i < n1; ++i) {
        PolyField w{k + 1, Eigen::VectorXd::Zero(n1), Eigen::VectorXd::Zero(n1)};
        (comp == 0 ? w.cx : w.cy)[i] = 1.;
        const Eigen::VectorXd iw = U.interpolate([&](const Eigen::Vector2d& x) { return w.value(x); }, 4 * k + 4);
        for (int iT = 0; iT < mesh.n_cells(); ++iT) {
          const LocalOperators full = U.build_full_operators(iT);
          const Eigen::VectorXd loc = U.gather(iT, iw);
          for (const Eigen::MatrixXd& delta : full.stab_residual) {
            worst = std::max(worst, (delta * loc).cwiseAbs().maxCoeff());
          }
        }
      }
    }
    report("stabilization polynomial exactness", worst <= 1e-11, worst);
  }

  // Fortin identity and b_h(., 1) = 0.
  {
    double worst = 0.;
    for (int trial = 0; trial < options.n_random_fields; ++trial) {
      const PolyField f = random_poly_field(k + 2, gen);
      const Eigen::VectorXd iv = U.interpolate([&](const Eigen::Vector2d& x) { return f.value(x); }, 4 * k + 4);
      const Eigen::VectorXd bh = forms.bh_applied_to_displacement(iv);
      const Eigen::VectorXd oracle = assemble_pressure_load(
          P, [&](const Eigen::Vector2d& x) { return -f.divergence(x); }, 4 * k + 4);
      worst = std::max(worst, (bh - oracle).cwiseAbs().maxCoeff());
    }
    report("Fortin identity", worst <= 1e-11, worst);

    const Eigen::VectorXd ones = P.project([](const Eigen::Vector2d&) { return 1.; });
    double worst1 = 0.;
    for (int trial = 0; trial < options.n_random_fields; ++trial) {
      const Eigen::VectorXd v = random_dirichlet_field(U, options.seed + 100 + static_cast<unsigned>(trial));
      worst1 = std::max(worst1, std::abs(forms.bh(v, ones)) / std::max(1., v.norm()));
    }
    report("b_h(v, 1) = 0 on the Dirichlet space", worst1 <= 1e-13, worst1);
  }

  // Stabilization parameter and local positive definiteness.
  {
    double gamma = options.gamma;
    bool gamma_ok = true;
    if (gamma < 0.) {
      gamma = law.recommended_gamma();
    }
    const LawConstants& constants = law.constants();
    if (constants.declared()) {
      gamma_ok = gamma >= constants.coercivity2 * (1. - 1e-12) && gamma <= constants.growth * (1. + 1e-12);
    } else {
      gamma_ok = gamma > 0.;
    }
    report("gamma within [C_cv^2, C_gr]", gamma_ok, gamma);

    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    double min_eig = std::numeric_limits<double>::max();
    for (int iT = 0; iT < std::min(mesh.n_cells(), 16); ++iT) {
      Eigen::VectorXd u_loc(U.local_operators(iT).gradient.cols());
      for (int i = 0; i < u_loc.size(); ++i) u_loc[i] = dist(gen);
      const CellElasticity ce = assemble_cell_elasticity(U, law, gamma, iT, u_loc, true);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ce.jacobian.topLeftCorner(U.cell_block(), U.cell_block()));
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    report("local elasticity blocks positive definite", min_eig > 0., min_eig);
  }

  // Tangent vs central finite differences.
  {
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    double worst = 0.;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::Matrix2d tau, eta;
      tau << dist(gen), 0., 0., dist(gen);
      tau(0, 1) = tau(1, 0) = dist(gen);
      eta << dist(gen), 0., 0., dist(gen);
      eta(0, 1) = eta(1, 0) = dist(gen);
      const double h = 1e-6;
      const Eigen::Matrix2d fd = (law.stress(tau + h * eta) - law.stress(tau - h * eta)) / (2. * h);
      const Eigen::Matrix2d an = law.tangent(tau, eta);
      worst = std::max(worst, (fd - an).norm() / std::max(1e-8, an.norm()));
    }
    report("stress tangent vs finite differences", worst <= 1e-6, worst);
  }

  // SWIP positivity: c_h(1,1) = 0 and c_h(q,q) > 0 for nonconstant q.
  {
    const Eigen::VectorXd ones = P.project([](const Eigen::Vector2d&) { return 1.; });
    const double c11 = forms.ch(ones, ones);
    report("c_h(1, 1) = 0", std::abs(c11) <= 1e-12 * mesh.domain_measure(), c11);

    std::uniform_real_distribution<double> dist(-1., 1.);
    double min_rq = std::numeric_limits<double>::max();
    for (int trial = 0; trial < options.n_random_fields; ++trial) {
      Eigen::VectorXd q(P.total_dofs());
      for (int i = 0; i < q.size(); ++i) q[i] = dist(gen);
      // project out the constant mode
      const double mean = P.integral(q) / mesh.domain_measure();
      q -= mean * ones;
      const double s = forms.pressure_seminorm(q);
      if (s > 0.) min_rq = std::min(min_rq, forms.ch(q, q) / (s * s));
    }
    report("SWIP coercivity on zero-mean fields", min_rq > 0., min_rq);
  }

  return all_ok;
}

}  // namespace porohho

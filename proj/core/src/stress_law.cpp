#include "porohho/stress_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace porohho {

namespace {

const Eigen::Matrix2d kId = Eigen::Matrix2d::Identity();

// Component basis of 2x2 symmetric tensors used by tangent_matrix().
Eigen::Matrix2d component(int a) {
  Eigen::Matrix2d E = Eigen::Matrix2d::Zero();
  if (a == 0) E(0, 0) = 1.;
  if (a == 1) E(1, 1) = 1.;
  if (a == 2) E(0, 1) = E(1, 0) = 1.;
  return E;
}

double frob(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) { return (a.array() * b.array()).sum(); }

}  // namespace

double dev_invariant(const Eigen::Matrix2d& tau) {
  const double scale = std::max(1., tau.norm());
  if (std::abs(tau(0, 1) - tau(1, 0)) > 1e-12 * scale) {
    throw std::invalid_argument("dev_invariant: tensor is not symmetric");
  }
  const double tr = tau.trace();
  return (tau * tau).trace() - 0.5 * tr * tr;
}

StressLaw::StressLaw(Kind kind, std::vector<Params> params) : m_kind(kind), m_params(std::move(params)) {
  derive_constants();
}

StressLaw StressLaw::linear(double lambda, double mu) { return linear_by_region({{lambda, mu}}); }

StressLaw StressLaw::linear_by_region(std::vector<std::array<double, 2>> lambda_mu) {
  std::vector<Params> params;
  for (const auto& lm : lambda_mu) {
    if (!(lm[1] > 0.) || lm[0] < 0.) throw std::invalid_argument("StressLaw::linear: need mu > 0 and lambda >= 0");
    params.push_back({lm[0], lm[1], 0., 0.});
  }
  return StressLaw(Kind::linear, std::move(params));
}

StressLaw StressLaw::hencky_mises(double lam_inf, double lam_amp, double mu_inf, double mu_amp) {
  const double mu_min = std::min(mu_inf, mu_inf + mu_amp);
  const double lam_min = std::min(lam_inf, lam_inf + lam_amp);
  if (!(mu_min > 0.) || lam_min < 0.) {
    throw std::invalid_argument("StressLaw::hencky_mises: Lame functions must satisfy mu > 0, lambda >= 0");
  }
  return StressLaw(Kind::hencky_mises, {{lam_inf, lam_amp, mu_inf, mu_amp}});
}

StressLaw StressLaw::damage(double lambda_c, double mu_c) {
  if (!(mu_c > 0.) || lambda_c < 0.) throw std::invalid_argument("StressLaw::damage: need mu_c > 0 and lambda_c >= 0");
  return StressLaw(Kind::damage, {{lambda_c, mu_c, 0., 0.}});
}

std::string StressLaw::name() const {
  switch (m_kind) {
    case Kind::linear: return "linear";
    case Kind::hencky_mises: return "hencky_mises";
    case Kind::damage: return "damage";
  }
  return "?";
}

const StressLaw::Params& StressLaw::params(int region) const {
  if (m_params.size() == 1) return m_params[0];
  if (region < 0 || region >= static_cast<int>(m_params.size())) {
    throw std::out_of_range("StressLaw: no parameters for region " + std::to_string(region));
  }
  return m_params[region];
}

void StressLaw::derive_constants() {
  switch (m_kind) {
    case Kind::linear: {
      // Spectrum of the Hooke tensor: 2 mu + d lambda on the trace mode, 2 mu
      // on the deviatoric modes.
      double cv = std::numeric_limits<double>::max(), gr = 0.;
      for (const Params& p : m_params) {
        cv = std::min(cv, 2. * p.b);
        gr = std::max(gr, 2. * p.b + 2. * p.a);
      }
      m_constants = {cv, gr, cv, gr};
      break;
    }
    case Kind::hencky_mises: {
      const Params& p = m_params[0];
      auto lam = [&](double s) { return p.a + p.b * s; };
      auto mu = [&](double s) { return p.c + p.d * s; };
      // s = e^-rho ranges over (0, 1]; all coefficients are affine in s, so
      // extrema sit at the endpoints. Trace mode carries 2 lambda + 2 mu, the
      // deviatoric modes 2 mu.
      const double mu_min = std::min(mu(0.), mu(1.));
      m_constants.coercivity2 = 2. * mu_min;
      m_constants.growth = std::max({2. * lam(0.) + 2. * mu(0.), 2. * lam(1.) + 2. * mu(1.), 2. * mu(0.), 2. * mu(1.)});
      if (p.b == -p.d) {
        // Correlated pair (constant trace coefficient): the tangent spectrum
        // lies in [2 mu_min, growth], giving the strong constants as well.
        m_constants.strong_monotonicity2 = m_constants.coercivity2;
        m_constants.lipschitz = m_constants.growth;
      }
      break;
    }
    case Kind::damage: {
      // (1 + |C tau|)^{-1/2} C is a contraction of C, so the law is Lipschitz
      // with the largest eigenvalue of C; no uniform coercivity at infinity.
      double lp = 0.;
      for (const Params& p : m_params) lp = std::max(lp, 2. * p.b + 2. * p.a);
      m_constants = {0., lp, 0., lp};
      break;
    }
  }
}

Eigen::Matrix2d StressLaw::stress(const Eigen::Matrix2d& tau, int region) const {
  const Params& p = params(region);
  Eigen::Matrix2d sig;
  switch (m_kind) {
    case Kind::linear:
      sig = p.a * tau.trace() * kId + 2. * p.b * tau;
      break;
    case Kind::hencky_mises: {
      const double s = std::exp(-dev_invariant(tau));
      sig = (p.a + p.b * s) * tau.trace() * kId + 2. * (p.c + p.d * s) * tau;
      break;
    }
    case Kind::damage: {
      const Eigen::Matrix2d w = p.a * tau.trace() * kId + 2. * p.b * tau;
      sig = w / std::sqrt(1. + w.norm());
      break;
    }
  }
  if (m_debug_checks && m_constants.declared()) {
    const double t2 = frob(tau, tau);
    if (sig.norm() > m_constants.growth * tau.norm() * (1. + 1e-12) + 1e-14 ||
        frob(sig, tau) < m_constants.coercivity2 * t2 * (1. - 1e-12) - 1e-14) {
      throw std::logic_error("StressLaw: growth/coercivity check failed");
    }
  }
  return sig;
}

Eigen::Matrix2d StressLaw::tangent(const Eigen::Matrix2d& tau, const Eigen::Matrix2d& eta, int region) const {
  const Params& p = params(region);
  switch (m_kind) {
    case Kind::linear:
      return p.a * eta.trace() * kId + 2. * p.b * eta;
    case Kind::hencky_mises: {
      const double s = std::exp(-dev_invariant(tau));
      const Eigen::Matrix2d tau_dev = tau - 0.5 * tau.trace() * kId;
      // d/dtau dev(tau)[eta] = 2 tau_dev : eta
      const double drho = 2. * frob(tau_dev, eta);
      return (p.a + p.b * s) * eta.trace() * kId + 2. * (p.c + p.d * s) * eta -
             s * drho * (p.b * tau.trace() * kId + 2. * p.d * tau);
    }
    case Kind::damage: {
      const Eigen::Matrix2d w = p.a * tau.trace() * kId + 2. * p.b * tau;
      const Eigen::Matrix2d cw = p.a * eta.trace() * kId + 2. * p.b * eta;
      const double r = w.norm();
      Eigen::Matrix2d out = cw / std::sqrt(1. + r);
      if (r > 1e-300) {
        out -= 0.5 * std::pow(1. + r, -1.5) * (frob(w, cw) / r) * w;
      }
      return out;
    }
  }
  return Eigen::Matrix2d::Zero();
}

Eigen::Matrix3d StressLaw::tangent_matrix(const Eigen::Matrix2d& tau, int region) const {
  Eigen::Matrix3d T;
  for (int b = 0; b < 3; ++b) {
    const Eigen::Matrix2d col = tangent(tau, component(b), region);
    T(0, b) = col(0, 0);
    T(1, b) = col(1, 1);
    T(2, b) = 2. * col(0, 1);  // E12 : col
  }
  return T;
}

double StressLaw::recommended_gamma() const {
  if (!m_constants.declared()) {
    throw std::runtime_error("StressLaw: constants undeclared for law '" + name() +
                             "', supply gamma explicitly");
  }
  return m_constants.coercivity2;
}

}  // namespace porohho

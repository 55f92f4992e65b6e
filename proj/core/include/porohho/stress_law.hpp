#ifndef POROHHO_STRESS_LAW_HPP
#define POROHHO_STRESS_LAW_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace porohho {

/// Scalar deviatoric invariant tr(tau^2) - tr(tau)^2/d for d = 2; equals the
/// squared Frobenius norm of the trace-free part of tau. Rejects asymmetric
/// input beyond a 1e-12 tolerance.
double dev_invariant(const Eigen::Matrix2d& tau);

/// Constants of the stress-strain relation, 0 when undeclared. Declared values
/// satisfy coercivity2 <= growth and, when all four are known,
/// strong_monotonicity2 <= coercivity2 <= growth <= lipschitz.
struct LawConstants {
  double coercivity2 = 0.;          ///< sigma(tau):tau >= coercivity2 |tau|^2
  double growth = 0.;               ///< |sigma(tau)| <= growth |tau|
  double strong_monotonicity2 = 0.;
  double lipschitz = 0.;

  bool declared() const { return coercivity2 > 0. && growth > 0.; }
};

/// Pluggable stress-strain relation sigma(x, tau) with its directional
/// derivative for Newton linearization. Parameters are piecewise constant per
/// mesh region. All evaluations are pure and thread-safe.
class StressLaw {
public:
  enum class Kind { linear, hencky_mises, damage };

  /// Hooke's law sigma = lambda tr(tau) I + 2 mu tau.
  static StressLaw linear(double lambda, double mu);
  static StressLaw linear_by_region(std::vector<std::array<double, 2>> lambda_mu);

  /// Hencky-Mises law with exponential Lame functions of rho = dev(tau):
  /// lambda(rho) = lam_inf + lam_amp e^-rho, mu(rho) = mu_inf + mu_amp e^-rho.
  static StressLaw hencky_mises(double lam_inf, double lam_amp, double mu_inf, double mu_amp);
  /// The defaults lam_inf = lam_amp = 1, mu_inf = 2, mu_amp = -1, i.e.
  /// sigma = (1 + e^-dev) tr(tau) I + (4 - 2 e^-dev) tau.
  static StressLaw hencky_mises_exp() { return hencky_mises(1., 1., 2., -1.); }

  /// Reversible isotropic damage sigma = (1 - D)(C tau) with the stiffness
  /// C tau = lambda_c tr(tau) I + 2 mu_c tau and D = 1 - (1 + |C tau|)^{-1/2}.
  /// With lambda_c > 0 the tangent is slightly nonsymmetric; lambda_c = 0
  /// keeps it symmetric.
  static StressLaw damage(double lambda_c, double mu_c);

  Kind kind() const { return m_kind; }
  std::string name() const;
  int n_regions() const { return static_cast<int>(m_params.size()); }

  Eigen::Matrix2d stress(const Eigen::Matrix2d& tau, int region = 0) const;
  /// Directional derivative D sigma(tau)[eta], linear in eta.
  Eigen::Matrix2d tangent(const Eigen::Matrix2d& tau, const Eigen::Matrix2d& eta, int region = 0) const;
  /// Tangent in the symmetric tensor component basis (E11, E22, E12) with
  /// E12 = [[0,1],[1,0]]: entry (a,b) = D sigma(tau)[E_b] : E_a.
  Eigen::Matrix3d tangent_matrix(const Eigen::Matrix2d& tau, int region = 0) const;

  const LawConstants& constants() const { return m_constants; }

  /// Default stabilization parameter, the declared coercivity constant (equal
  /// to 2 mu for Hooke's law). Throws when the constants are undeclared, in
  /// which case the user must supply gamma explicitly.
  double recommended_gamma() const;

  /// Enables growth/coercivity spot checks on every stress evaluation.
  void set_debug_checks(bool on) { m_debug_checks = on; }

private:
  struct Params {
    double a = 0., b = 0., c = 0., d = 0.;  // meaning depends on the kind
  };

  StressLaw(Kind kind, std::vector<Params> params);
  const Params& params(int region) const;
  void derive_constants();

  Kind m_kind = Kind::linear;
  std::vector<Params> m_params;
  LawConstants m_constants;
  bool m_debug_checks = false;
};

}  // namespace porohho

#endif

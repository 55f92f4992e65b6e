#ifndef POROHHO_MANUFACTURED_HPP
#define POROHHO_MANUFACTURED_HPP

#include <string>

#include "porohho/forms.hpp"
#include "porohho/solver.hpp"
#include "porohho/stress_law.hpp"

namespace porohho {

/// A closed-form reference problem: data for the solver plus the exact fields
/// and the physical setup they were derived under.
struct ManufacturedCase {
  std::string name;
  CaseData data;
  StressLaw law = StressLaw::linear(1., 1.);
  Permeability kappa = Permeability::isotropic(1.);
  double c0 = 0.;
  double t_final = 1.;
};

/// The nonlinear reference case on the unit square: trigonometric displacement
/// growing like t^2, linear-in-time pressure, exponential Hencky-Mises law,
/// C0 = 0, kappa = I. The displacement vanishes on the boundary; the pressure
/// has a nonzero Neumann flux, supplied as boundary data. The source g
/// vanishes identically for this solution.
ManufacturedCase build_case_nl_biot_2d();

/// Linear-law case with u = t w, w a divergence-free-stress polynomial of
/// degree k+1, and a time-constant linear pressure; the discrete solution
/// reproduces its interpolate exactly, which the solver tests exploit.
ManufacturedCase build_case_linear_poly(int degree);

}  // namespace porohho

#endif

#ifndef POROHHO_CHECK_HPP
#define POROHHO_CHECK_HPP

#include <iosfwd>

#include "porohho/forms.hpp"

namespace porohho {

/// Options of the self-check battery run by the `check` subcommand.
struct CheckOptions {
  double gamma = -1.;  ///< < 0: law-recommended
  unsigned seed = 7;
  int n_random_fields = 20;
};

/// Property battery on the given discretization: mesh closure identities,
/// quadrature exactness, projector identities, the commuting and polynomial
/// exactness properties of the local operators, the Fortin identity, the
/// stabilization parameter bounds with local positive definiteness, tangent
/// consistency of the law, and SWIP positivity. Prints one pass/fail line per
/// check; returns false if any check fails.
bool run_check_battery(const HhoSpace& U, const PressureSpace& P, const Forms& forms, const StressLaw& law,
                       const CheckOptions& options, std::ostream& out);

}  // namespace porohho

#endif

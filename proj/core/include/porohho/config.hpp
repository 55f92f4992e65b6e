#ifndef POROHHO_CONFIG_HPP
#define POROHHO_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "porohho/manufactured.hpp"
#include "porohho/mesh.hpp"
#include "porohho/solver.hpp"

namespace porohho {

/// Everything a run needs, read from a key = value config file and/or command
/// line overrides. Unset entries fall back to the case (law, kappa, c0,
/// t_final) or the documented defaults.
struct RunSetup {
  // mesh: a file path, an n x n Cartesian grid, or an explicit family
  std::string mesh_path;
  int cartesian_n = 0;
  std::vector<std::string> mesh_files;

  int degree = 1;
  std::string case_name = "nl_biot_2d";

  // law overrides (case provides the default)
  std::optional<std::string> law;
  std::map<std::string, double> law_params;
  std::optional<double> c0;
  std::optional<std::vector<Eigen::Matrix2d>> kappa;

  std::optional<double> t_final;
  int steps = 0;       ///< 0: tau0 convention
  double tau0 = -1.;   ///< <= 0: 0.2 / 2^{k+1}

  SolverConfig solver;
  int quad_order = -1;

  int levels = 4;
  std::string format = "table";
  std::string output;
};

/// Parses the key = value text format ('#' comments, on/off booleans,
/// 'auto' for defaulted numeric keys). Throws std::runtime_error with the
/// offending line number on malformed input.
RunSetup parse_config_file(const std::string& path);
RunSetup parse_config_stream(std::istream& in, const std::string& name);

/// Mesh of the setup (file or Cartesian; throws if neither is given).
PolyMesh make_mesh(const RunSetup& setup);

/// The manufactured case named by the setup with overrides applied;
/// case_name "none" gives zero data (homogeneous problem).
ManufacturedCase make_case(const RunSetup& setup);

}  // namespace porohho

#endif

#include "porohho/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "porohho/mesh_io.hpp"

namespace porohho {

namespace {

bool parse_on_off(const std::string& value, int line, const std::string& key) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw std::runtime_error("config:" + std::to_string(line) + ": key '" + key + "' expects on|off");
}

double parse_number(const std::string& value, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::runtime_error("config:" + std::to_string(line) + ": key '" + key + "' expects a number");
  }
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

RunSetup parse_config_stream(std::istream& in, const std::string& name) {
  RunSetup setup;
  std::vector<std::pair<int, Eigen::Matrix2d>> kappa_regions;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }

    if (key == "mesh") {
      setup.mesh_path = value;
    } else if (key == "meshes") {
      std::istringstream tokens(value);
      std::string tok;
      while (std::getline(tokens, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) setup.mesh_files.push_back(tok);
      }
    } else if (key == "cartesian") {
      setup.cartesian_n = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "degree") {
      setup.degree = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "case") {
      setup.case_name = value;
    } else if (key == "law") {
      setup.law = value;
    } else if (key == "lambda" || key == "mu" || key == "lam_inf" || key == "lam_amp" || key == "mu_inf" ||
               key == "mu_amp" || key == "lambda_c" || key == "mu_c") {
      setup.law_params[key] = parse_number(value, line_no, key);
    } else if (key == "c0") {
      setup.c0 = parse_number(value, line_no, key);
    } else if (key == "kappa") {
      setup.kappa = std::vector<Eigen::Matrix2d>{parse_number(value, line_no, key) * Eigen::Matrix2d::Identity()};
    } else if (key.rfind("kappa.", 0) == 0) {
      const int region = std::stoi(key.substr(6));
      std::istringstream tokens(value);
      double a, b, c, d;
      if (!(tokens >> a >> b >> c >> d)) {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": kappa.N expects 4 numbers (row-major 2x2)");
      }
      Eigen::Matrix2d m;
      m << a, b, c, d;
      kappa_regions.emplace_back(region, m);
    } else if (key == "t_final") {
      setup.t_final = parse_number(value, line_no, key);
    } else if (key == "steps") {
      setup.steps = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "tau0") {
      setup.tau0 = parse_number(value, line_no, key);
    } else if (key == "gamma") {
      setup.solver.gamma = value == "auto" ? -1. : parse_number(value, line_no, key);
    } else if (key == "varsigma") {
      setup.solver.varsigma = value == "auto" ? -1. : parse_number(value, line_no, key);
    } else if (key == "newton_tol") {
      setup.solver.newton_tol = parse_number(value, line_no, key);
    } else if (key == "newton_max") {
      setup.solver.newton_max = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "condense") {
      setup.solver.condense = parse_on_off(value, line_no, key);
    } else if (key == "init") {
      if (value == "project") {
        setup.solver.init = InitMode::project;
      } else if (value == "solve") {
        setup.solver.init = InitMode::solve;
      } else {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": init expects project|solve");
      }
    } else if (key == "time_quadrature") {
      setup.solver.time_quadrature = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "threads") {
      setup.solver.use_threads = parse_on_off(value, line_no, key);
    } else if (key == "quad_order") {
      setup.quad_order = value == "auto" ? -1 : static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "levels") {
      setup.levels = static_cast<int>(parse_number(value, line_no, key));
    } else if (key == "format") {
      setup.format = value;
    } else if (key == "output") {
      setup.output = value;
    } else {
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!kappa_regions.empty()) {
    int max_region = 0;
    for (const auto& [r, m] : kappa_regions) max_region = std::max(max_region, r);
    std::vector<Eigen::Matrix2d> tensors(max_region + 1, Eigen::Matrix2d::Identity());
    for (const auto& [r, m] : kappa_regions) tensors[r] = m;
    setup.kappa = tensors;
  }
  return setup;
}

RunSetup parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  return parse_config_stream(in, path);
}

PolyMesh make_mesh(const RunSetup& setup) {
  if (!setup.mesh_path.empty()) return load_mesh(setup.mesh_path);
  if (setup.cartesian_n > 0) return generate_cartesian(setup.cartesian_n);
  throw std::runtime_error("config: no mesh given (set 'mesh' or 'cartesian')");
}

ManufacturedCase make_case(const RunSetup& setup) {
  ManufacturedCase mc;
  if (setup.case_name == "nl_biot_2d") {
    mc = build_case_nl_biot_2d();
  } else if (setup.case_name == "linear_poly") {
    mc = build_case_linear_poly(setup.degree);
  } else if (setup.case_name == "none") {
    mc.name = "none";
  } else {
    throw std::runtime_error("config: unknown case '" + setup.case_name + "'");
  }

  auto param = [&](const std::string& key, double fallback) {
    const auto it = setup.law_params.find(key);
    return it == setup.law_params.end() ? fallback : it->second;
  };
  if (setup.law) {
    if (*setup.law == "linear") {
      mc.law = StressLaw::linear(param("lambda", 1.), param("mu", 1.));
    } else if (*setup.law == "hencky_mises_exp") {
      mc.law = StressLaw::hencky_mises_exp();
    } else if (*setup.law == "hencky_mises") {
      mc.law = StressLaw::hencky_mises(param("lam_inf", 1.), param("lam_amp", 1.), param("mu_inf", 2.),
                                       param("mu_amp", -1.));
    } else if (*setup.law == "damage") {
      mc.law = StressLaw::damage(param("lambda_c", 0.), param("mu_c", 1.));
    } else {
      throw std::runtime_error("config: unknown law '" + *setup.law + "'");
    }
  }
  if (setup.c0) mc.c0 = *setup.c0;
  if (setup.kappa) mc.kappa = Permeability::per_region(*setup.kappa);
  if (setup.t_final) mc.t_final = *setup.t_final;
  return mc;
}

}  // namespace porohho

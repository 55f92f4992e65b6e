#include "porohho/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace porohho {

namespace {

// Line-oriented tokenizer: skips blank lines and '#' comments, tracks the line
// number for error reporting.
class LineReader {
public:
  LineReader(std::istream& in, std::string name) : m_in(in), m_name(std::move(name)) {}

  std::istringstream next() {
    std::string line;
    while (std::getline(m_in, line)) {
      ++m_line;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream tokens(line);
      std::string first;
      if (tokens >> first) {
        tokens.clear();
        tokens.seekg(0);
        return tokens;
      }
    }
    fail("unexpected end of file");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(m_name + ":" + std::to_string(m_line) + ": " + what);
  }

  template <typename T>
  T get(std::istringstream& tokens, const std::string& what) {
    T value;
    if (!(tokens >> value)) fail("expected " + what);
    return value;
  }

private:
  std::istream& m_in;
  std::string m_name;
  int m_line = 0;
};

}  // namespace

PolyMesh read_polymesh(std::istream& in, const std::string& name) {
  LineReader reader(in, name);

  auto header = reader.next();
  std::string word, dim;
  header >> word >> dim;
  if (word != "polymesh" || dim != "2d") reader.fail("expected header 'polymesh 2d'");

  auto vhead = reader.next();
  if (reader.get<std::string>(vhead, "'vertices'") != "vertices") reader.fail("expected 'vertices N'");
  const int n_vertices = reader.get<int>(vhead, "vertex count");
  if (n_vertices < 3) reader.fail("vertex count must be at least 3");
  std::vector<Eigen::Vector2d> vertices(n_vertices);
  for (int i = 0; i < n_vertices; ++i) {
    auto tokens = reader.next();
    const double x = reader.get<double>(tokens, "x coordinate");
    const double y = reader.get<double>(tokens, "y coordinate");
    vertices[i] = {x, y};
  }

  auto chead = reader.next();
  if (reader.get<std::string>(chead, "'cells'") != "cells") reader.fail("expected 'cells M'");
  const int n_cells = reader.get<int>(chead, "cell count");
  if (n_cells < 1) reader.fail("cell count must be positive");
  std::vector<std::vector<int>> loops(n_cells);
  std::vector<int> regions(n_cells, 0);
  for (int i = 0; i < n_cells; ++i) {
    auto tokens = reader.next();
    const int nv = reader.get<int>(tokens, "vertex count of cell");
    if (nv < 3) reader.fail("cell must have at least 3 vertices");
    loops[i].resize(nv);
    for (int j = 0; j < nv; ++j) loops[i][j] = reader.get<int>(tokens, "vertex index");
    regions[i] = reader.get<int>(tokens, "region id");
    if (regions[i] < 0) reader.fail("region id must be nonnegative");
  }

  // Optional star point block.
  std::vector<Eigen::Vector2d> stars;
  std::string tail;
  if (in >> tail) {
    if (tail != "starpoints") reader.fail("unexpected token '" + tail + "'");
    int count = 0;
    if (!(in >> count) || count != n_cells) reader.fail("starpoints count must equal the cell count");
    stars.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) {
      if (!(in >> stars[i].x() >> stars[i].y())) reader.fail("expected star point coordinates");
    }
  }

  try {
    return build_mesh(std::move(vertices), std::move(loops), std::move(regions),
                      stars.empty() ? nullptr : &stars);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

PolyMesh load_mesh(const std::string& path, MeshFormat format) {
  if (format != MeshFormat::polymesh_2d) throw std::runtime_error("load_mesh: unsupported format");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_mesh: cannot open '" + path + "'");
  return read_polymesh(in, path);
}

void save_mesh(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_mesh: cannot open '" + path + "'");
  out << std::setprecision(17);
  out << "polymesh 2d\n";
  out << "vertices " << mesh.n_vertices() << "\n";
  for (const auto& v : mesh.vertices()) out << v.x() << " " << v.y() << "\n";
  out << "cells " << mesh.n_cells() << "\n";
  bool explicit_stars = false;
  for (const Cell& T : mesh.cells()) {
    out << T.vertices.size();
    for (int v : T.vertices) out << " " << v;
    out << " " << T.region << "\n";
    explicit_stars = explicit_stars || (T.star - T.centroid).norm() > 1e-14 * T.diameter;
  }
  if (explicit_stars) {
    out << "starpoints " << mesh.n_cells() << "\n";
    for (const Cell& T : mesh.cells()) out << T.star.x() << " " << T.star.y() << "\n";
  }
}

}  // namespace porohho

#ifndef POROHHO_MESH_HPP
#define POROHHO_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace porohho {

/// A triangle of a cell sub-triangulation, used to integrate over polygons.
struct Triangle {
  Eigen::Vector2d a, b, c;
  double area;
};

/// A straight mesh face (segment in 2D) shared by one or two cells.
struct Face {
  std::array<int, 2> vertex{{-1, -1}};
  /// Incident cells; cell[1] == -1 on the boundary. The ordering is fixed at
  /// build time and defines the first/second cell of interface quantities.
  std::array<int, 2> cell{{-1, -1}};
  Eigen::Vector2d midpoint = Eigen::Vector2d::Zero();
  /// Unit normal pointing out of cell[0].
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
  /// Unit tangent oriented from vertex[0] to vertex[1].
  Eigen::Vector2d tangent = Eigen::Vector2d::Zero();
  double measure = 0.;

  bool is_boundary() const { return cell[1] < 0; }
  /// Face diameter; coincides with the measure for segments.
  double diameter() const { return measure; }
};

/// A polygonal cell with its geometry and fan sub-triangulation.
struct Cell {
  std::vector<int> vertices;  ///< counterclockwise loop
  std::vector<int> faces;     ///< walk order: faces[i] joins vertices[i], vertices[i+1]
  int region = 0;
  double measure = 0.;
  double diameter = 0.;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  /// Point the cell is star-shaped with respect to (defaults to the centroid).
  Eigen::Vector2d star = Eigen::Vector2d::Zero();
  std::vector<Triangle> triangles;  ///< fan triangulation from the star point
};

/// Summary emitted by validate_regularity(). Diagnostic only, never fails hard.
struct RegularityReport {
  double max_diameter_ratio = 0.;   ///< max over cells and faces of h_T / h_F
  double min_diameter_ratio = 0.;   ///< min over cells and faces of h_F / h_T
  int max_faces_per_cell = 0;       ///< empirical bound on the face count
  double min_measure_ratio = 0.;    ///< min over cells of |T| / h_T^2
  std::vector<std::string> warnings;
};

/// Immutable polygonal mesh of a 2D domain. Cells are arbitrary polygons,
/// faces are derived from the cell loops with incident cells resolved and
/// normals oriented. Safe for concurrent read access once built.
class PolyMesh {
public:
  int n_vertices() const { return static_cast<int>(m_vertices.size()); }
  int n_cells() const { return static_cast<int>(m_cells.size()); }
  int n_faces() const { return static_cast<int>(m_faces.size()); }

  const Eigen::Vector2d& vertex(int i) const { return m_vertices[i]; }
  const Cell& cell(int i) const { return m_cells[i]; }
  const Face& face(int i) const { return m_faces[i]; }
  const std::vector<Eigen::Vector2d>& vertices() const { return m_vertices; }
  const std::vector<Cell>& cells() const { return m_cells; }
  const std::vector<Face>& faces() const { return m_faces; }

  const std::vector<int>& interior_faces() const { return m_interior_faces; }
  const std::vector<int>& boundary_faces() const { return m_boundary_faces; }

  /// +1 if the stored face normal points out of cell iT, -1 otherwise.
  double normal_sign(int iT, int iF) const { return m_faces[iF].cell[0] == iT ? 1. : -1.; }
  /// Outward unit normal of face iF seen from cell iT.
  Eigen::Vector2d outward_normal(int iT, int iF) const { return normal_sign(iT, iF) * m_faces[iF].normal; }

  /// Mesh size h = max cell diameter.
  double mesh_size() const { return m_h; }
  double domain_measure() const { return m_domain_measure; }
  double boundary_perimeter() const { return m_boundary_perimeter; }
  int n_regions() const { return m_n_regions; }

private:
  friend PolyMesh build_mesh(std::vector<Eigen::Vector2d>, std::vector<std::vector<int>>,
                             std::vector<int>, const std::vector<Eigen::Vector2d>*);

  std::vector<Eigen::Vector2d> m_vertices;
  std::vector<Cell> m_cells;
  std::vector<Face> m_faces;
  std::vector<int> m_interior_faces;
  std::vector<int> m_boundary_faces;
  double m_h = 0.;
  double m_domain_measure = 0.;
  double m_boundary_perimeter = 0.;
  int m_n_regions = 1;
};

/// Builds the full topology from cell vertex loops: derives faces, resolves
/// incident cells, orients normals, computes measures and sub-triangulations.
/// Loops may be given clockwise; they are normalized to counterclockwise.
/// Throws std::runtime_error on non-manifold faces (more than two incident
/// cells), degenerate cells, invalid indices, or cells that are not
/// star-shaped with respect to their star point.
PolyMesh build_mesh(std::vector<Eigen::Vector2d> vertices,
                    std::vector<std::vector<int>> cell_loops,
                    std::vector<int> regions = {},
                    const std::vector<Eigen::Vector2d>* star_points = nullptr);

/// n x n Cartesian mesh of the unit square, deterministic vertex ordering.
/// The mesh size is sqrt(2)/n (cell diameter convention).
PolyMesh generate_cartesian(int n);

/// Fan sub-triangulation of a polygon around a star point. Throws if a fan
/// triangle has non-positive area, i.e. the polygon is not star-shaped with
/// respect to the given point; the message instructs to supply a star point.
std::vector<Triangle> subtriangulate(const std::vector<Eigen::Vector2d>& loop,
                                     const Eigen::Vector2d& star_point,
                                     double cell_measure);

/// Shape-regularity diagnostics (h_T/h_F spread, face counts, measure ratios).
RegularityReport validate_regularity(const PolyMesh& mesh);

}  // namespace porohho

#endif

#include "porohho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace porohho {

namespace {

double polygon_signed_area(const std::vector<Eigen::Vector2d>& vertices, const std::vector<int>& loop) {
  double area2 = 0.;
  const int nv = static_cast<int>(loop.size());
  for (int i = 0; i < nv; ++i) {
    const Eigen::Vector2d& a = vertices[loop[i]];
    const Eigen::Vector2d& b = vertices[loop[(i + 1) % nv]];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * area2;
}

Eigen::Vector2d polygon_centroid(const std::vector<Eigen::Vector2d>& vertices, const std::vector<int>& loop,
                                 double area) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  const int nv = static_cast<int>(loop.size());
  for (int i = 0; i < nv; ++i) {
    const Eigen::Vector2d& a = vertices[loop[i]];
    const Eigen::Vector2d& b = vertices[loop[(i + 1) % nv]];
    const double cross = a.x() * b.y() - b.x() * a.y();
    c += cross * (a + b);
  }
  return c / (6. * area);
}

}  // namespace

std::vector<Triangle> subtriangulate(const std::vector<Eigen::Vector2d>& loop, const Eigen::Vector2d& star_point,
                                     double cell_measure) {
  const int nv = static_cast<int>(loop.size());
  std::vector<Triangle> triangles;
  triangles.reserve(nv);
  double area_sum = 0.;
  for (int i = 0; i < nv; ++i) {
    const Eigen::Vector2d& a = loop[i];
    const Eigen::Vector2d& b = loop[(i + 1) % nv];
    const double area = 0.5 * ((a.x() - star_point.x()) * (b.y() - star_point.y()) -
                               (b.x() - star_point.x()) * (a.y() - star_point.y()));
    if (!(area > 0.)) {
      throw std::runtime_error(
          "subtriangulate: fan triangle with non-positive area; the cell is not "
          "star-shaped with respect to the chosen point, supply an explicit star point");
    }
    triangles.push_back({a, b, star_point, area});
    area_sum += area;
  }
  if (std::abs(area_sum - cell_measure) > 1e-13 * std::max(1., cell_measure)) {
    throw std::runtime_error("subtriangulate: fan areas do not sum to the cell measure");
  }
  return triangles;
}

PolyMesh build_mesh(std::vector<Eigen::Vector2d> vertices, std::vector<std::vector<int>> cell_loops,
                    std::vector<int> regions, const std::vector<Eigen::Vector2d>* star_points) {
  const int n_vertices = static_cast<int>(vertices.size());
  const int n_cells = static_cast<int>(cell_loops.size());
  if (n_cells == 0) throw std::runtime_error("build_mesh: empty cell list");
  if (!regions.empty() && static_cast<int>(regions.size()) != n_cells) {
    throw std::runtime_error("build_mesh: region list size mismatch");
  }
  if (star_points && static_cast<int>(star_points->size()) != n_cells) {
    throw std::runtime_error("build_mesh: star point list size mismatch");
  }

  PolyMesh mesh;
  mesh.m_vertices = std::move(vertices);
  mesh.m_cells.resize(n_cells);

  // Cell geometry; loops normalized to counterclockwise.
  for (int iT = 0; iT < n_cells; ++iT) {
    std::vector<int>& loop = cell_loops[iT];
    if (loop.size() < 3) throw std::runtime_error("build_mesh: cell " + std::to_string(iT) + " has fewer than 3 vertices");
    for (int v : loop) {
      if (v < 0 || v >= n_vertices) {
        throw std::runtime_error("build_mesh: cell " + std::to_string(iT) + " references invalid vertex " + std::to_string(v));
      }
    }
    double area = polygon_signed_area(mesh.m_vertices, loop);
    if (area < 0.) {
      std::reverse(loop.begin(), loop.end());
      area = -area;
    }
    Cell& T = mesh.m_cells[iT];
    T.vertices = loop;
    T.measure = area;
    T.centroid = polygon_centroid(mesh.m_vertices, loop, area);
    T.region = regions.empty() ? 0 : regions[iT];
    double diam = 0.;
    for (size_t i = 0; i < loop.size(); ++i) {
      for (size_t j = i + 1; j < loop.size(); ++j) {
        diam = std::max(diam, (mesh.m_vertices[loop[i]] - mesh.m_vertices[loop[j]]).norm());
      }
    }
    T.diameter = diam;
    if (!(area > 1e-14 * diam * diam)) {
      throw std::runtime_error("build_mesh: degenerate cell " + std::to_string(iT) + " (zero area)");
    }
    T.star = star_points ? (*star_points)[iT] : T.centroid;

    std::vector<Eigen::Vector2d> pts(loop.size());
    for (size_t i = 0; i < loop.size(); ++i) pts[i] = mesh.m_vertices[loop[i]];
    try {
      T.triangles = subtriangulate(pts, T.star, T.measure);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("build_mesh: cell " + std::to_string(iT) + ": " + e.what());
    }
  }

  // Faces from cell walks, deduplicated on sorted endpoint pairs.
  std::map<std::pair<int, int>, int> face_of_edge;
  for (int iT = 0; iT < n_cells; ++iT) {
    Cell& T = mesh.m_cells[iT];
    const int nv = static_cast<int>(T.vertices.size());
    T.faces.resize(nv);
    for (int i = 0; i < nv; ++i) {
      const int a = T.vertices[i];
      const int b = T.vertices[(i + 1) % nv];
      const std::pair<int, int> key = std::minmax(a, b);
      auto it = face_of_edge.find(key);
      if (it == face_of_edge.end()) {
        Face F;
        F.vertex = {a, b};
        F.cell = {iT, -1};
        const Eigen::Vector2d va = mesh.m_vertices[a];
        const Eigen::Vector2d vb = mesh.m_vertices[b];
        F.measure = (vb - va).norm();
        if (!(F.measure > 0.)) throw std::runtime_error("build_mesh: zero-length face in cell " + std::to_string(iT));
        F.midpoint = 0.5 * (va + vb);
        F.tangent = (vb - va) / F.measure;
        // CCW walk: (dy, -dx) points out of the creating cell.
        F.normal = Eigen::Vector2d(F.tangent.y(), -F.tangent.x());
        const int iF = static_cast<int>(mesh.m_faces.size());
        mesh.m_faces.push_back(F);
        face_of_edge.emplace(key, iF);
        T.faces[i] = iF;
      } else {
        Face& F = mesh.m_faces[it->second];
        if (F.cell[1] >= 0) {
          throw std::runtime_error("build_mesh: non-manifold face between vertices " + std::to_string(key.first) +
                                   " and " + std::to_string(key.second) + " (more than two incident cells)");
        }
        F.cell[1] = iT;
        T.faces[i] = it->second;
      }
    }
  }

  double h = 0., measure = 0., perimeter = 0.;
  int max_region = 0;
  for (const Cell& T : mesh.m_cells) {
    h = std::max(h, T.diameter);
    measure += T.measure;
    max_region = std::max(max_region, T.region);
  }
  for (int iF = 0; iF < mesh.n_faces(); ++iF) {
    if (mesh.m_faces[iF].is_boundary()) {
      mesh.m_boundary_faces.push_back(iF);
      perimeter += mesh.m_faces[iF].measure;
    } else {
      mesh.m_interior_faces.push_back(iF);
    }
  }
  mesh.m_h = h;
  mesh.m_domain_measure = measure;
  mesh.m_boundary_perimeter = perimeter;
  mesh.m_n_regions = max_region + 1;
  return mesh;
}

PolyMesh generate_cartesian(int n) {
  if (n < 1) throw std::runtime_error("generate_cartesian: need n >= 1");
  std::vector<Eigen::Vector2d> vertices;
  vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> loops;
  loops.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      loops.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return build_mesh(std::move(vertices), std::move(loops));
}

RegularityReport validate_regularity(const PolyMesh& mesh) {
  RegularityReport report;
  report.min_diameter_ratio = 1.;
  report.min_measure_ratio = std::numeric_limits<double>::max();
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    const Cell& T = mesh.cell(iT);
    report.max_faces_per_cell = std::max(report.max_faces_per_cell, static_cast<int>(T.faces.size()));
    report.min_measure_ratio = std::min(report.min_measure_ratio, T.measure / (T.diameter * T.diameter));
    for (int iF : T.faces) {
      const double ratio = T.diameter / mesh.face(iF).diameter();
      report.max_diameter_ratio = std::max(report.max_diameter_ratio, ratio);
      report.min_diameter_ratio = std::min(report.min_diameter_ratio, 1. / ratio);
    }
  }
  if (report.max_diameter_ratio > 50.) {
    report.warnings.push_back("face much smaller than its cell (h_T/h_F > 50), expect degraded constants");
  }
  if (report.min_measure_ratio < 1e-3) {
    report.warnings.push_back("cell measure small compared to its diameter, near-degenerate cell");
  }
  return report;
}

}  // namespace porohho

#ifndef POROHHO_QUADRATURE_HPP
#define POROHHO_QUADRATURE_HPP

#include <vector>

#include <Eigen/Dense>

#include "porohho/mesh.hpp"

namespace porohho {

/// Maximum supported exactness order for cell and face rules.
inline constexpr int max_quadrature_order = 20;

/// Quadrature rule in physical coordinates with positive weights, exact for
/// polynomials of total degree <= order.
struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int order = 0;

  int size() const { return static_cast<int>(points.size()); }

  template <typename F>
  auto integrate(const F& f) const {
    auto acc = weights[0] * f(points[0]);
    for (int q = 1; q < size(); ++q) acc += weights[q] * f(points[q]);
    return acc;
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1], cached per point count.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n_points);

/// Rule on a single triangle, exact to the given total degree.
QuadratureRule triangle_quadrature(const Triangle& tri, int order);

/// Composite rule over the cell's fan sub-triangulation.
QuadratureRule cell_quadrature(const PolyMesh& mesh, int cell_index, int order);

/// Gauss-Legendre rule on the face segment.
QuadratureRule face_quadrature(const PolyMesh& mesh, int face_index, int order);

}  // namespace porohho

#endif

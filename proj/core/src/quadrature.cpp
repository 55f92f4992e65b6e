#include "porohho/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace porohho {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gauss_legendre(int n) {
  // Newton iteration on P_n from the Chebyshev initial guess.
  std::vector<double> nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1., p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2. / ((1. - x * x) * dp * dp);
  }
  return {nodes, weights};
}

void check_order(int order) {
  if (order < 0 || order > max_quadrature_order) {
    throw std::runtime_error("quadrature: unsupported order " + std::to_string(order) + " (cap at " +
                             std::to_string(max_quadrature_order) + ")");
  }
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n_points) {
  static std::unordered_map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n_points);
  if (it == cache.end()) it = cache.emplace(n_points, compute_gauss_legendre(n_points)).first;
  return it->second;
}

QuadratureRule triangle_quadrature(const Triangle& tri, int order) {
  check_order(order);
  // Duffy collapse of a tensor Gauss-Legendre rule; the Jacobian raises the
  // u-degree by one, hence the +2 safety margin in the point count.
  const int n = order / 2 + 2;
  const auto& [nodes, weights] = gauss_legendre(n);

  QuadratureRule rule;
  rule.order = order;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  const Eigen::Vector2d e1 = tri.b - tri.a;
  const Eigen::Vector2d e2 = tri.c - tri.a;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (nodes[i] + 1.);
    const double wu = 0.5 * weights[i];
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (nodes[j] + 1.);
      const double wv = 0.5 * weights[j];
      const double xi = u * (1. - v);
      const double eta = u * v;
      rule.points.push_back(tri.a + xi * e1 + eta * e2);
      rule.weights.push_back(2. * tri.area * u * wu * wv);
    }
  }
  return rule;
}

QuadratureRule cell_quadrature(const PolyMesh& mesh, int cell_index, int order) {
  check_order(order);
  const Cell& T = mesh.cell(cell_index);
  QuadratureRule rule;
  rule.order = order;
  for (const Triangle& tri : T.triangles) {
    QuadratureRule local = triangle_quadrature(tri, order);
    rule.points.insert(rule.points.end(), local.points.begin(), local.points.end());
    rule.weights.insert(rule.weights.end(), local.weights.begin(), local.weights.end());
  }
  return rule;
}

QuadratureRule face_quadrature(const PolyMesh& mesh, int face_index, int order) {
  check_order(order);
  const Face& F = mesh.face(face_index);
  const int n = order / 2 + 1;
  const auto& [nodes, weights] = gauss_legendre(n);
  QuadratureRule rule;
  rule.order = order;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = F.midpoint + 0.5 * F.measure * nodes[i] * F.tangent;
    rule.weights[i] = 0.5 * F.measure * weights[i];
  }
  return rule;
}

}  // namespace porohho

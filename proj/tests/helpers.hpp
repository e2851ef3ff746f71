#pragma once

#include "asymnet/generators.hpp"
#include "asymnet/net.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace testing {

using namespace asymnet;

// 1x1 net from one quadrangle.
inline AsymptoticNet quad_net(const Vec3& A, const Vec3& B, const Vec3& C, const Vec3& D) {
  return make_net(1, 1, {A, B, C, D});
}

inline AsymptoticNet standard_quad_net() {
  return quad_net(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1));
}

// Uniformly spaced parameter grid over [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k) g[k] = lo + (hi - lo) * double(k) / double(count - 1);
  return g;
}

// Random volume-preserving affine map: unimodular linear part plus shift.
inline std::pair<Mat3, Vec3> random_unimodular(SplitMix64& rng) {
  Mat3 m;
  double det = 0.0;
  do {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = rng.symmetric();
    det = m.determinant();
  } while (std::abs(det) < 0.1);
  if (det < 0.0) {
    m.col(0).swap(m.col(1));
    det = -det;
  }
  m /= std::cbrt(det);
  Vec3 shift(rng.symmetric(), rng.symmetric(), rng.symmetric());
  return {m, shift};
}

inline AsymptoticNet transform(const AsymptoticNet& net, const Mat3& m, const Vec3& shift) {
  AsymptoticNet out = net;
  for (Vec3& p : out.positions) p = m * p + shift;
  return out;
}

// Random wiggly polyline with non-parallel consecutive tangent directions.
// The default wiggle keeps generated co-normal fields orientation-uniform
// (large perturbations can flip det[nu, nu1, nu2] between quadrangles).
inline Polyline random_polyline(SplitMix64& rng, int vertices, const Vec3& base,
                                const Vec3& dir, double wiggle = 0.15) {
  Polyline line(vertices);
  for (int k = 0; k < vertices; ++k) {
    line[k] = base + double(k) * dir +
              wiggle * Vec3(rng.symmetric(), rng.symmetric(), rng.symmetric());
  }
  return line;
}

// Valid asymptotic net integrated from an explicit Moutard co-normal field
// with prescribed per-quadrangle factors (row-major): the first row and column
// of co-normals are drawn near (0,0,1), the rest follow the Moutard equation,
// and positions integrate the Lelieuvre equations (closure is automatic).
// Generic factors give nets that admit no constant-curvature gauge.
inline AsymptoticNet moutard_net(SplitMix64& rng, int quads_i, int quads_j,
                                 const std::vector<double>& lambdas) {
  int vi = quads_i + 1, vj = quads_j + 1;
  std::vector<Vec3> nu(vi * vj), q(vi * vj);
  auto nu_at = [&](int i, int j) -> Vec3& { return nu[j * vi + i]; };
  auto q_at = [&](int i, int j) -> Vec3& { return q[j * vi + i]; };
  // Monotone drift keeps the vertex stars embedded (E lands at x1 < 0 in
  // canonical pair coordinates).
  for (int i = 0; i < vi; ++i)
    nu_at(i, 0) = Vec3(0.3 * i + 0.08 * rng.symmetric(), 0.08 * rng.symmetric(), 1.0);
  for (int j = 1; j < vj; ++j)
    nu_at(0, j) = Vec3(0.08 * rng.symmetric(), 0.3 * j + 0.08 * rng.symmetric(), 1.0);
  for (int j = 0; j < quads_j; ++j)
    for (int i = 0; i < quads_i; ++i) {
      double l = lambdas[j * quads_i + i];
      nu_at(i + 1, j + 1) = (nu_at(i + 1, j) + nu_at(i, j + 1)) / (l * l) - nu_at(i, j);
    }
  q_at(0, 0) = Vec3::Zero();
  for (int i = 0; i < quads_i; ++i)
    q_at(i + 1, 0) = q_at(i, 0) + nu_at(i, 0).cross(nu_at(i + 1, 0));
  for (int j = 0; j < quads_j; ++j)
    for (int i = 0; i < vi; ++i)
      q_at(i, j + 1) = q_at(i, j) - nu_at(i, j).cross(nu_at(i, j + 1));
  return make_net(quads_i, quads_j, q);
}

// A mixed bag of valid asymptotic nets: minimal nets from random polylines and
// nets sampled from random quadrics, some affinely transformed.
inline std::vector<AsymptoticNet> random_net_zoo(SplitMix64& rng, int count) {
  std::vector<AsymptoticNet> nets;
  while ((int)nets.size() < count) {
    int kind = int(rng.next() % 3);
    try {
      if (kind == 0) {
        Polyline alpha = random_polyline(rng, 3 + int(rng.next() % 3), Vec3(0, 0, 1),
                                         Vec3(1, 0, 0.1), 0.15);
        Polyline beta = random_polyline(rng, 3 + int(rng.next() % 3), Vec3(0, 0, 1),
                                        Vec3(0, 1, -0.1), 0.15);
        nets.push_back(minimal_from_polylines(alpha, beta).first);
      } else {
        double a = -0.8 + 4.0 * rng.uniform();
        int nu = 3 + int(rng.next() % 3), nv = 3 + int(rng.next() % 3);
        AsymptoticNet net = sphere_from_quadric(a, linspace(0, 1, nu), linspace(0, 1, nv));
        if (kind == 2) {
          auto [m, shift] = random_unimodular(rng);
          net = transform(net, m, shift);
        }
        nets.push_back(std::move(net));
      }
    } catch (const GeometryError&) {
      // rare degenerate draw; take another
    }
  }
  return nets;
}

}  // namespace testing

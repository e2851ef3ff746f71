#include "asymnet/generators.hpp"

#include "asymnet/quadric.hpp"

#include <cmath>
#include <sstream>

namespace asymnet {

std::pair<AsymptoticNet, ConormalField> minimal_from_polylines(const Polyline& alpha,
                                                               const Polyline& beta,
                                                               const Vec3& origin) {
  if (alpha.size() < 2 || beta.size() < 2)
    throw GeometryError("generator polylines need at least two vertices each");
  const int M = int(alpha.size()) - 1;
  const int N = int(beta.size()) - 1;
  GridDomain d{M, N};

  ConormalField field;
  field.domain = d;
  field.nu.resize(d.vertex_count());
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= M; ++i) field.at(i, j) = alpha[i] + beta[j];

  // Lelieuvre integration; with nu = alpha + beta the mixed differences cancel,
  // so any integration path gives the same positions up to round-off.
  AsymptoticNet net;
  net.domain = d;
  net.positions.assign(d.vertex_count(), Vec3::Zero());
  net.at(0, 0) = origin;
  for (int i = 0; i < M; ++i)
    net.at(i + 1, 0) = net.at(i, 0) + field.at(i, 0).cross(field.at(i + 1, 0));
  for (int j = 0; j < N; ++j)
    for (int i = 0; i <= M; ++i)
      net.at(i, j + 1) = net.at(i, j) - field.at(i, j).cross(field.at(i, j + 1));

  field.lambda.assign(d.quad_count(), 0.0);
  field.orientation = 0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i) {
      double delta = quad_delta(net, i, j);
      if (!(delta > 0.0)) {
        std::ostringstream os;
        os << "generated net is degenerate at quadrangle (" << i << "," << j
           << "): discriminant " << delta;
        throw GeometryError(os.str());
      }
      Vec3 m0 = field.at(i, j) + field.at(i + 1, j + 1);
      Vec3 m1 = field.at(i + 1, j) + field.at(i, j + 1);
      field.lambda[d.quad_index(i, j)] = std::sqrt(m1.norm() / m0.norm());
      if (field.orientation == 0) {
        Mat3 t;
        t.col(0) = field.at(i, j);
        t.col(1) = field.at(i + 1, j);
        t.col(2) = field.at(i, j + 1);
        field.orientation = t.determinant() > 0.0 ? +1 : -1;
      }
    }
  return {std::move(net), std::move(field)};
}

AsymptoticNet sphere_from_quadric(double a, const std::vector<double>& u_grid,
                                  const std::vector<double>& v_grid) {
  if (u_grid.size() < 2 || v_grid.size() < 2)
    throw GeometryError("parameter grids need at least two values each");
  for (size_t k = 1; k < u_grid.size(); ++k)
    if (!(u_grid[k] > u_grid[k - 1]))
      throw GeometryError("u grid must be strictly increasing");
  for (size_t k = 1; k < v_grid.size(); ++k)
    if (!(v_grid[k] > v_grid[k - 1]))
      throw GeometryError("v grid must be strictly increasing");

  const int M = int(u_grid.size()) - 1;
  const int N = int(v_grid.size()) - 1;
  AsymptoticNet net;
  net.domain = GridDomain{M, N};
  net.positions.resize(net.domain.vertex_count());
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= M; ++i) net.at(i, j) = eval_standard(a, u_grid[i], v_grid[j]);

  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i) {
      double delta = quad_delta(net, i, j);
      if (!(delta > 0.0)) {
        std::ostringstream os;
        os << "sampled net is degenerate at quadrangle (" << i << "," << j
           << "): discriminant " << delta;
        throw GeometryError(os.str());
      }
    }
  return net;
}

AsymptoticNet standard_pair(double x1, double y1, double x2, double y2) {
  if (!(x1 < 0.0) || !(x2 < 0.0))
    throw GeometryError("standard pair requires x1 < 0 and x2 < 0");
  std::vector<Vec3> pos = {
      Vec3(x1, y1, 0.0), Vec3(0, 0, 0), Vec3(1, 0, 0),
      Vec3(x2, y2, x2),  Vec3(0, 1, 0), Vec3(1, 1, 1),
  };
  AsymptoticNet net = make_net(2, 1, std::move(pos));
  for (int i = 0; i < 2; ++i) {
    double delta = quad_delta(net, i, 0);
    if (!(delta > 0.0)) {
      std::ostringstream os;
      os << "standard pair is degenerate: quadrangle " << i << " has discriminant " << delta;
      throw GeometryError(os.str());
    }
  }
  return net;
}

std::pair<Polyline, Polyline> perturb_polylines(const Polyline& alpha, const Polyline& beta,
                                                double magnitude, std::uint64_t seed) {
  if (magnitude < 0.0) throw GeometryError("perturbation magnitude must be non-negative");
  SplitMix64 rng(seed);
  auto jiggle = [&](const Polyline& in) {
    Polyline out = in;
    if (magnitude == 0.0) return out;  // bit-exact identity
    for (Vec3& p : out)
      for (int c = 0; c < 3; ++c) p[c] += magnitude * rng.symmetric();
    return out;
  };
  Polyline a = jiggle(alpha);
  Polyline b = jiggle(beta);
  return {std::move(a), std::move(b)};
}

}  // namespace asymnet

#include "asymnet/conormal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace asymnet {

namespace {

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  Mat3 m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  return m.determinant();
}

// Required value of nu(v) x nu(w) for the grid edge v -> w. The Lelieuvre
// equations are antisymmetric in the two endpoints, so the same expression
// serves both traversal directions: +(q(w)-q(v)) along i, -(q(w)-q(v)) along j.
Vec3 lelieuvre_rhs(const AsymptoticNet& net, int vi, int vj, int wi, int wj) {
  Vec3 dq = net.at(wi, wj) - net.at(vi, vj);
  return (vj == wj) ? dq : Vec3(-dq);
}

struct Step {
  int di, dj;
};

}  // namespace

ConormalField propagate(const AsymptoticNet& net, Vec3 seed, int seed_i, int seed_j,
                        double tol, double angle_tol, Traversal order) {
  const GridDomain& d = net.domain;
  if (!d.contains_vertex(seed_i, seed_j)) throw GeometryError("seed vertex out of range");
  double seed_norm = seed.norm();
  if (seed_norm < 1e-300) throw GeometryError("seed co-normal must be nonzero");

  // The seed must annihilate the net edges at its vertex (tangent-plane
  // condition of the Lelieuvre representation).
  const Step all_steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const Step& s : all_steps) {
    int ni = seed_i + s.di, nj = seed_j + s.dj;
    if (!d.contains_vertex(ni, nj)) continue;
    Vec3 e = net.at(ni, nj) - net.at(seed_i, seed_j);
    double en = e.norm();
    if (en < 1e-300) throw GeometryError("zero-length edge at seed vertex");
    if (std::abs(seed.dot(e)) > 1e-6 * seed_norm * en)
      throw GeometryError("seed co-normal is not orthogonal to the net edges at the seed");
  }

  ConormalField field;
  field.domain = d;
  field.nu.assign(d.vertex_count(), Vec3::Zero());
  std::vector<char> known(d.vertex_count(), 0);
  field.at(seed_i, seed_j) = seed;
  known[d.vertex_index(seed_i, seed_j)] = 1;

  const Step row_order[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const Step col_order[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  const Step* steps = order == Traversal::RowMajor ? row_order : col_order;

  std::deque<std::pair<int, int>> frontier;
  frontier.push_back({seed_i, seed_j});
  while (!frontier.empty()) {
    auto [vi, vj] = frontier.front();
    frontier.pop_front();
    const Vec3& nu_v = field.at(vi, vj);
    for (int k = 0; k < 4; ++k) {
      int wi = vi + steps[k].di, wj = vj + steps[k].dj;
      if (!d.contains_vertex(wi, wj) || known[d.vertex_index(wi, wj)]) continue;

      // Direction of nu(w): normal to the two net edges at w. Among the
      // incident edges pick the pair with the largest cross product.
      Vec3 dir = Vec3::Zero();
      double best = 0.0;
      Vec3 edges[4];
      int n_edges = 0;
      for (const Step& s : all_steps) {
        int ui = wi + s.di, uj = wj + s.dj;
        if (d.contains_vertex(ui, uj)) edges[n_edges++] = net.at(ui, uj) - net.at(wi, wj);
      }
      for (int a = 0; a < n_edges; ++a)
        for (int b = a + 1; b < n_edges; ++b) {
          Vec3 c = edges[a].cross(edges[b]);
          double cn = c.norm();
          if (cn > best) {
            best = cn;
            dir = c;
          }
        }
      double edge_scale = 0.0;
      for (int a = 0; a < n_edges; ++a) edge_scale = std::max(edge_scale, edges[a].norm());
      if (best <= 1e-14 * edge_scale * edge_scale) {
        std::ostringstream os;
        os << "incident edges at vertex (" << wi << "," << wj
           << ") are parallel; co-normal direction is undetermined";
        throw GeometryError(os.str());
      }
      dir /= best;

      // Scale and sign from the Lelieuvre equation of the connecting edge:
      // nu(v) x (c*dir) = rhs  =>  c = (nu(v) x dir) . rhs / |nu(v) x dir|^2.
      Vec3 rhs = lelieuvre_rhs(net, vi, vj, wi, wj);
      Vec3 t = nu_v.cross(dir);
      double t2 = t.squaredNorm();
      if (t2 < 1e-28 * nu_v.squaredNorm()) {
        std::ostringstream os;
        os << "co-normal at (" << vi << "," << vj << ") is parallel to the propagated "
           << "direction at (" << wi << "," << wj << ")";
        throw InconsistentNetError(os.str());
      }
      field.at(wi, wj) = (t.dot(rhs) / t2) * dir;
      known[d.vertex_index(wi, wj)] = 1;
      frontier.push_back({wi, wj});
    }
  }

  // Verify every edge equation; propagation only used a spanning tree.
  for (int j = 0; j <= d.quads_j; ++j)
    for (int i = 0; i <= d.quads_i; ++i) {
      for (const Step& s : {Step{1, 0}, Step{0, 1}}) {
        int wi = i + s.di, wj = j + s.dj;
        if (!d.contains_vertex(wi, wj)) continue;
        Vec3 rhs = lelieuvre_rhs(net, i, j, wi, wj);
        Vec3 got = field.at(i, j).cross(field.at(wi, wj));
        double res = (got - rhs).norm() / std::max(rhs.norm(), 1e-300);
        if (res > tol) {
          std::ostringstream os;
          os << "net is not asymptotic: Lelieuvre residual " << res << " on edge ("
             << i << "," << j << ")-(" << wi << "," << wj << ") exceeds " << tol;
          throw InconsistentNetError(os.str());
        }
      }
    }

  // Moutard data per quadrangle. Parallelism of nu+nu12 and nu1+nu2 follows
  // from the edge equations (the four Lelieuvre relations of a quadrangle sum
  // to zero), so only positivity is a real constraint. The orientation is the
  // sign of det[nu, nu1, nu2] on the first quadrangle; the discriminant
  // identity delta = (det/lambda)^2 leaves that sign per-quadrangle free, and
  // the metric relation Omega = (sigma/lambda) det presumes it is uniform.
  field.lambda.assign(d.quad_count(), 0.0);
  field.orientation = 0;
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      const Vec3& nu = field.at(i, j);
      const Vec3& nu1 = field.at(i + 1, j);
      const Vec3& nu2 = field.at(i, j + 1);
      const Vec3& nu12 = field.at(i + 1, j + 1);
      Vec3 m0 = nu + nu12, m1 = nu1 + nu2;
      double angle = std::atan2(m0.cross(m1).norm(), std::abs(m0.dot(m1)));
      if (angle > angle_tol) {
        std::ostringstream os;
        os << "Moutard sums of quadrangle (" << i << "," << j << ") are not parallel: angle "
           << angle;
        throw InconsistentNetError(os.str());
      }
      if (m0.dot(m1) <= 0.0) {
        std::ostringstream os;
        os << "Moutard factor of quadrangle (" << i << "," << j
           << ") is not positive (anti-parallel sums)";
        throw InconsistentNetError(os.str());
      }
      field.lambda[d.quad_index(i, j)] = std::sqrt(m1.norm() / m0.norm());
      if (field.orientation == 0)
        field.orientation = det3(nu, nu1, nu2) > 0.0 ? +1 : -1;
    }
  return field;
}

ConormalField propagate_default(const AsymptoticNet& net, double tol, double angle_tol,
                                Traversal order) {
  Vec3 e1 = net.at(1, 0) - net.at(0, 0);
  Vec3 e2 = net.at(0, 1) - net.at(0, 0);
  Vec3 seed = e1.cross(e2);
  double n = seed.norm();
  if (n < 1e-300) throw GeometryError("edges at vertex (0,0) are parallel");
  ConormalField field = propagate(net, seed / n, 0, 0, tol, angle_tol, order);
  if (field.orientation < 0) {
    for (Vec3& v : field.nu) v = -v;
    field.orientation = +1;
  }
  return field;
}

ConormalField black_white_rescale(const ConormalField& field, double rho) {
  if (!(rho > 0.0)) throw GeometryError("rescale factor must be positive");
  ConormalField out = field;
  const GridDomain& d = field.domain;
  for (int j = 0; j <= d.quads_j; ++j)
    for (int i = 0; i <= d.quads_i; ++i)
      out.at(i, j) *= ((i + j) % 2 == 0) ? rho : 1.0 / rho;
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      // lambda^2 scales by rho^(-2p) with p = +1 on even lower-left parity.
      double p = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      out.lambda[d.quad_index(i, j)] = field.lambda[d.quad_index(i, j)] * std::pow(rho, -p);
    }
  return out;
}

double moutard_lambda(const ConormalField& field, int i, int j) {
  const GridDomain& d = field.domain;
  if (!d.contains_quad(i, j)) throw GeometryError("quad index out of range");
  Vec3 m0 = field.at(i, j) + field.at(i + 1, j + 1);
  Vec3 m1 = field.at(i + 1, j) + field.at(i, j + 1);
  double lam = std::sqrt(m1.norm() / m0.norm());
  double cached = field.lambda_at(i, j);
  if (std::abs(lam - cached) > 1e-6 * std::max(1.0, cached))
    throw GeometryError("cached Moutard factor disagrees with the co-normals");
  return lam;
}

ConormalResiduals conormal_residuals(const AsymptoticNet& net, const ConormalField& field) {
  const GridDomain& d = net.domain;
  if (d.quads_i != field.domain.quads_i || d.quads_j != field.domain.quads_j)
    throw GeometryError("net and co-normal field have different extents");
  ConormalResiduals r;
  for (int j = 0; j <= d.quads_j; ++j)
    for (int i = 0; i <= d.quads_i; ++i)
      for (const Step& s : {Step{1, 0}, Step{0, 1}}) {
        int wi = i + s.di, wj = j + s.dj;
        if (!d.contains_vertex(wi, wj)) continue;
        Vec3 rhs = lelieuvre_rhs(net, i, j, wi, wj);
        Vec3 got = field.at(i, j).cross(field.at(wi, wj));
        r.max_lelieuvre =
            std::max(r.max_lelieuvre, (got - rhs).norm() / std::max(rhs.norm(), 1e-300));
      }
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      const Vec3& nu = field.at(i, j);
      const Vec3& nu1 = field.at(i + 1, j);
      const Vec3& nu2 = field.at(i, j + 1);
      const Vec3& nu12 = field.at(i + 1, j + 1);
      Vec3 m0 = nu + nu12, m1 = nu1 + nu2;
      r.max_moutard_angle =
          std::max(r.max_moutard_angle, std::atan2(m0.cross(m1).norm(), std::abs(m0.dot(m1))));
      double omega = affine_metric(net, i, j);
      double rel = std::abs(field.orientation * det3(nu, nu1, nu2) / field.lambda_at(i, j) -
                            omega) /
                   omega;
      r.max_omega_rel = std::max(r.max_omega_rel, rel);
    }
  return r;
}

}  // namespace asymnet

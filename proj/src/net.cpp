#include "asymnet/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

// Unit vector, or zero when the input is degenerate; callers treat a zero as
// maximal residual.
Vec3 unit_or_zero(const Vec3& v) {
  double n = v.norm();
  if (n < 1e-300) return Vec3::Zero();
  return v / n;
}

}  // namespace

void AsymptoticNet::quad_corners(int i, int j, Vec3& A, Vec3& B, Vec3& C, Vec3& D) const {
  A = at(i, j);
  B = at(i + 1, j);
  C = at(i, j + 1);
  D = at(i + 1, j + 1);
}

double AsymptoticNet::diameter() const {
  Vec3 lo = positions.front(), hi = positions.front();
  for (const Vec3& p : positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

AsymptoticNet make_net(int quads_i, int quads_j, std::vector<Vec3> positions) {
  if (quads_i < 1 || quads_j < 1)
    throw GeometryError("net extents must be at least 1x1 quadrangles");
  AsymptoticNet net;
  net.domain = GridDomain{quads_i, quads_j};
  if ((int)positions.size() != net.domain.vertex_count()) {
    std::ostringstream os;
    os << "vertex count mismatch: got " << positions.size() << ", expected "
       << net.domain.vertex_count() << " for extents " << quads_i << " " << quads_j;
    throw GeometryError(os.str());
  }
  net.positions = std::move(positions);
  return net;
}

double quad_delta(const AsymptoticNet& net, int i, int j) {
  if (!net.domain.contains_quad(i, j)) throw GeometryError("quad index out of range");
  Vec3 A, B, C, D;
  net.quad_corners(i, j, A, B, C, D);
  return det3(B - A, C - A, D + A - B - C);
}

double affine_metric(const AsymptoticNet& net, int i, int j) {
  double delta = quad_delta(net, i, j);
  if (delta <= 0.0) {
    std::ostringstream os;
    os << "quadrangle (" << i << "," << j << ") has non-positive discriminant " << delta;
    throw GeometryError(os.str());
  }
  return std::sqrt(delta);
}

ValidationReport validate(const AsymptoticNet& net, double tol) {
  ValidationReport rep;
  const GridDomain& d = net.domain;

  rep.min_delta = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      double delta = quad_delta(net, i, j);
      if (delta < rep.min_delta) {
        rep.min_delta = delta;
        rep.worst_quad_i = i;
        rep.worst_quad_j = j;
      }
    }

  rep.max_cross_residual = 0.0;
  for (int j = 1; j < d.quads_j; ++j)
    for (int i = 1; i < d.quads_i; ++i) {
      Vec3 d1 = unit_or_zero(net.at(i + 1, j) - net.at(i - 1, j));
      Vec3 d2 = unit_or_zero(net.at(i, j + 1) - net.at(i, j - 1));
      double local = 0.0;
      if (d1.isZero() || d2.isZero()) {
        local = 1.0;
      } else {
        const Vec3 center = net.at(i, j);
        const Vec3 spokes[4] = {net.at(i + 1, j) - center, net.at(i - 1, j) - center,
                                net.at(i, j + 1) - center, net.at(i, j - 1) - center};
        for (const Vec3& s : spokes) {
          Vec3 sh = unit_or_zero(s);
          local = std::max(local, sh.isZero() ? 1.0 : std::abs(det3(d1, d2, sh)));
        }
      }
      if (local > rep.max_cross_residual) {
        rep.max_cross_residual = local;
        rep.worst_vertex_i = i;
        rep.worst_vertex_j = j;
      }
    }

  rep.valid = rep.max_cross_residual <= tol && rep.min_delta > 0.0;
  std::ostringstream os;
  if (rep.valid) {
    os << "valid asymptotic net: cross residual " << rep.max_cross_residual
       << ", min discriminant " << rep.min_delta;
  } else if (rep.min_delta <= 0.0) {
    os << "quadrangle (" << rep.worst_quad_i << "," << rep.worst_quad_j
       << ") has non-positive discriminant " << rep.min_delta;
  } else {
    os << "vertex (" << rep.worst_vertex_i << "," << rep.worst_vertex_j
       << ") star is not planar: residual " << rep.max_cross_residual << " > " << tol;
  }
  rep.message = os.str();
  return rep;
}

double strip_coplanarity(const AsymptoticNet& net, StripId strip) {
  const GridDomain& d = net.domain;
  int count = (strip.dir == StripDir::Horizontal ? d.quads_i : d.quads_j) + 1;
  if (count < 3) {
    if ((strip.dir == StripDir::Horizontal && !d.contains_quad(0, strip.index)) ||
        (strip.dir == StripDir::Vertical && !d.contains_quad(strip.index, 0)))
      throw GeometryError("strip index out of range");
    return 0.0;  // two transversal edges always span a plane
  }
  Eigen::MatrixXd rows(count, 3);
  if (strip.dir == StripDir::Horizontal) {
    if (strip.index < 0 || strip.index >= d.quads_j)
      throw GeometryError("horizontal strip index out of range");
    for (int i = 0; i <= d.quads_i; ++i) {
      Vec3 v = unit_or_zero(net.at(i, strip.index + 1) - net.at(i, strip.index));
      if (v.isZero()) return 1.0;
      rows.row(i) = v.transpose();
    }
  } else {
    if (strip.index < 0 || strip.index >= d.quads_i)
      throw GeometryError("vertical strip index out of range");
    for (int j = 0; j <= d.quads_j; ++j) {
      Vec3 v = unit_or_zero(net.at(strip.index + 1, j) - net.at(strip.index, j));
      if (v.isZero()) return 1.0;
      rows.row(j) = v.transpose();
    }
  }
  // Smallest singular value of the stacked unit vectors.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  return svd.singularValues()(2);
}

namespace {

// Collinearity residual of one polyline: second singular value of the stacked
// unit edge directions.
double polyline_residual(const AsymptoticNet& net, EdgeDir along, int index) {
  const GridDomain& d = net.domain;
  int count = along == EdgeDir::I ? d.quads_i : d.quads_j;
  if (count < 2) return 0.0;  // a single edge is straight
  Eigen::MatrixXd rows(count, 3);
  for (int k = 0; k < count; ++k) {
    Vec3 e = along == EdgeDir::I ? net.at(k + 1, index) - net.at(k, index)
                                 : net.at(index, k + 1) - net.at(index, k);
    Vec3 u = unit_or_zero(e);
    if (u.isZero()) return 1.0;
    rows.row(k) = u.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  return svd.singularValues()(1);
}

}  // namespace

RuledVerdict is_ruled(const AsymptoticNet& net, double tol) {
  const GridDomain& d = net.domain;
  double worst_u = 0.0, worst_v = 0.0;
  for (int j = 0; j <= d.quads_j; ++j)
    worst_u = std::max(worst_u, polyline_residual(net, EdgeDir::I, j));
  for (int i = 0; i <= d.quads_i; ++i)
    worst_v = std::max(worst_v, polyline_residual(net, EdgeDir::J, i));

  bool u_straight = worst_u <= tol;
  bool v_straight = worst_v <= tol;
  // Two-vertex polylines are straight by construction; a direction only counts
  // when it spans at least two quadrangles. A single quadrangle reports Both.
  bool u_informative = d.quads_i >= 2;
  bool v_informative = d.quads_j >= 2;

  if (!u_informative && !v_informative) return RuledVerdict::Both;
  bool u_ruled = u_informative && u_straight;
  bool v_ruled = v_informative && v_straight;
  if (u_ruled && v_ruled) return RuledVerdict::Both;
  if (u_ruled) return RuledVerdict::U;
  if (v_ruled) return RuledVerdict::V;
  return RuledVerdict::None;
}

std::vector<EdgeId> interior_edges(const AsymptoticNet& net) {
  const GridDomain& d = net.domain;
  std::vector<EdgeId> edges;
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 1; i < d.quads_i; ++i) edges.push_back({EdgeDir::J, i, j});
  for (int j = 1; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) edges.push_back({EdgeDir::I, i, j});
  return edges;
}

bool is_interior_edge(const AsymptoticNet& net, EdgeId edge) {
  const GridDomain& d = net.domain;
  if (edge.dir == EdgeDir::J)
    return edge.i >= 1 && edge.i < d.quads_i && edge.j >= 0 && edge.j < d.quads_j;
  return edge.j >= 1 && edge.j < d.quads_j && edge.i >= 0 && edge.i < d.quads_i;
}

}  // namespace asymnet

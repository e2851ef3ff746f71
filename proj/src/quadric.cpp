#include "asymnet/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asymnet {

namespace {

void check_parameter(double a) {
  if (!(a > -1.0)) {
    std::ostringstream os;
    os << "quadric parameter a = " << a << " must exceed -1";
    throw GeometryError(os.str());
  }
}

double pole_denominator(double a, double u, double v) {
  double denom = 1.0 + a * u * v;
  if (std::abs(denom) < defaults::pole_eps) {
    std::ostringstream os;
    os << "evaluation at (" << u << "," << v << ") hits the pole of the rational map";
    throw GeometryError(os.str());
  }
  return denom;
}

Mat4 normalize_largest_entry(Mat4 m) {
  double best = 0.0;
  int bi = 0, bj = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (std::abs(m(r, c)) > best) {
        best = std::abs(m(r, c));
        bi = r;
        bj = c;
      }
  if (best < 1e-300) throw GeometryError("zero quadric matrix");
  return m / m(bi, bj);
}

}  // namespace

Vec3 eval_standard(double a, double u, double v) {
  check_parameter(a);
  double denom = pole_denominator(a, u, v);
  double auv = a * u * v;
  return Vec3(u + auv, v + auv, (1.0 + a) * u * v) / denom;
}

Mat4 standard_quadric_matrix(double a) {
  check_parameter(a);
  // z (1 + z - x - y) = (a+1)(z - y)(z - x), expanded and symmetrized in
  // homogeneous coordinates (x, y, z, w).
  Mat4 m;
  m << 0.0, -(a + 1.0) / 2.0, a / 2.0, 0.0,
      -(a + 1.0) / 2.0, 0.0, a / 2.0, 0.0,
      a / 2.0, a / 2.0, -a, 0.5,
      0.0, 0.0, 0.5, 0.0;
  return normalize_largest_entry(m);
}

double HomogeneousQuadric::evaluate(const Vec3& p) const {
  Vec4 ph(p.x(), p.y(), p.z(), 1.0);
  return ph.dot(m * ph);
}

double HomogeneousQuadric::distance(const HomogeneousQuadric& other) const {
  Mat4 p = m / m.norm();
  Mat4 q = other.m / other.m.norm();
  return std::min((p - q).norm(), (p + q).norm());
}

Vec3 QuadricPatch::evaluate(double u, double v) const {
  double denom = pole_denominator(a, u, v);
  // Affine image of the standard interpolator written directly in the corner
  // points; equal to A + frame * phi(u,v).
  Vec3 num = u * (B - A) + v * (C - A) + (u * v) * ((1.0 + a) * D + (1.0 - a) * A - B - C);
  return A + num / denom;
}

HomogeneousQuadric QuadricPatch::homogeneous() const {
  // Pull the standard quadric back through the inverse of x = A + T u.
  Mat3 inv = frame.inverse();
  Mat4 world_to_std = Mat4::Identity();
  world_to_std.topLeftCorner<3, 3>() = inv;
  world_to_std.topRightCorner<3, 1>() = -inv * A;
  Mat4 q = world_to_std.transpose() * standard_quadric_matrix(a) * world_to_std;
  q = 0.5 * (q + q.transpose());
  return HomogeneousQuadric{normalize_largest_entry(q)};
}

QuadricPatch build_patch(const Vec3& A, const Vec3& B, const Vec3& C, const Vec3& D, double a) {
  check_parameter(a);
  QuadricPatch p;
  p.A = A;
  p.B = B;
  p.C = C;
  p.D = D;
  p.a = a;
  p.frame.col(0) = B - A;
  p.frame.col(1) = C - A;
  p.frame.col(2) = D + A - B - C;
  p.delta = p.frame.determinant();
  double scale = p.frame.col(0).norm() * p.frame.col(1).norm() * p.frame.col(2).norm();
  if (!(p.delta > 1e-12 * scale)) {
    std::ostringstream os;
    os << "quadrangle frame is degenerate or negatively oriented (det = " << p.delta << ")";
    throw GeometryError(os.str());
  }
  p.omega = std::sqrt(p.delta);
  return p;
}

Vec3 patch_center(const QuadricPatch& patch) {
  if (std::abs(patch.a) <= 1e-12)
    throw GeometryError("patch quadric is a paraboloid (a = 0); it has no center");
  // Standard-frame center (1/2, 1/2, (a+1)/(2a)) mapped through the frame.
  Vec3 c_std(0.5, 0.5, (patch.a + 1.0) / (2.0 * patch.a));
  return patch.A + patch.frame * c_std;
}

double patch_mean_curvature(const QuadricPatch& patch, double omega) {
  if (!(omega > 0.0)) throw GeometryError("affine metric weight must be positive");
  return -2.0 * patch.a / (std::sqrt(1.0 + patch.a) * omega);
}

double inverted_parameter(double a) {
  check_parameter(a);
  return -a / (1.0 + a);
}

double permute_parameter(double a, QuadPermutation perm) {
  check_parameter(a);
  switch (perm) {
    case QuadPermutation::ABCD:
    case QuadPermutation::DCBA:
      return a;
    case QuadPermutation::BDAC:
    case QuadPermutation::CADB:
      return inverted_parameter(a);
  }
  throw GeometryError("unknown permutation");
}

CanonicalPair canonicalize_pair(const AsymptoticNet& net, EdgeId edge, double tol) {
  if (!is_interior_edge(net, edge)) throw GeometryError("edge is not interior");
  const int i = edge.i, j = edge.j;

  CanonicalPair pair;
  pair.edge = edge;
  Vec3 A, B, C, D, E, F;
  if (edge.dir == EdgeDir::J) {
    // Shared edge q(i,j)-q(i,j+1); primary is the quadrangle on its right.
    pair.perm = QuadPermutation::ABCD;
    pair.primary_i = i;
    pair.primary_j = j;
    pair.secondary_i = i - 1;
    pair.secondary_j = j;
    A = net.at(i, j);
    B = net.at(i + 1, j);
    C = net.at(i, j + 1);
    D = net.at(i + 1, j + 1);
    E = net.at(i - 1, j);
    F = net.at(i - 1, j + 1);
  } else {
    // Shared edge q(i,j)-q(i+1,j); primary is the quadrangle below, relabeled
    // by the 90-degree grid rotation (C, A, D, B).
    pair.perm = QuadPermutation::CADB;
    pair.primary_i = i;
    pair.primary_j = j - 1;
    pair.secondary_i = i;
    pair.secondary_j = j;
    A = net.at(i, j);
    B = net.at(i, j - 1);
    C = net.at(i + 1, j);
    D = net.at(i + 1, j - 1);
    E = net.at(i, j + 1);
    F = net.at(i + 1, j + 1);
  }

  Mat3 frame;
  frame.col(0) = B - A;
  frame.col(1) = C - A;
  frame.col(2) = D + A - B - C;
  double scale = frame.col(0).norm() * frame.col(1).norm() * frame.col(2).norm();
  if (std::abs(frame.determinant()) < 1e-12 * scale)
    throw GeometryError("primary quadrangle of the pair is degenerate");
  pair.n_linear = frame.inverse();
  pair.origin = A;

  Vec3 e = pair.apply(E);
  Vec3 f = pair.apply(F);
  double mag = std::max({1.0, e.cwiseAbs().maxCoeff(), f.cwiseAbs().maxCoeff()});
  pair.residual = std::max(std::abs(e.z()), std::abs(f.z() - f.x())) / mag;
  if (pair.residual > tol) {
    std::ostringstream os;
    os << "cross residual " << pair.residual << " of the shared edge exceeds " << tol
       << "; the pair does not fit a planar vertex star";
    throw GeometryError(os.str());
  }
  pair.x1 = e.x();
  pair.y1 = e.y();
  pair.x2 = f.x();
  pair.y2 = f.y();
  if (!(pair.x1 < 0.0) || !(pair.x2 < 0.0)) {
    std::ostringstream os;
    os << "pair is degenerate: canonical abscissae x1 = " << pair.x1 << ", x2 = " << pair.x2
       << " must be strictly negative";
    throw GeometryError(os.str());
  }
  return pair;
}

CanonicalParameters canonical_parameters(const CanonicalPair& pair, const ConormalField& field) {
  auto quad_a = [&](int qi, int qj) {
    double lam = field.lambda_at(qi, qj);
    return lam * lam - 1.0;
  };
  double p_primary = quad_a(pair.primary_i, pair.primary_j);
  double p_secondary = quad_a(pair.secondary_i, pair.secondary_j);
  CanonicalParameters out;
  if (pair.perm == QuadPermutation::ABCD) {
    // Secondary in canonical order (E,A,F,C) is the grid order of the left
    // quadrangle, so its own parameter is b and b_bar = inv(b).
    out.a = p_primary;
    out.b_bar = inverted_parameter(p_secondary);
  } else {
    // The grid rotation replaces both parameters by their involutes.
    out.a = inverted_parameter(p_primary);
    out.b_bar = p_secondary;
  }
  return out;
}

double primary_parameter_from_canonical(const CanonicalPair& pair, double a_canonical) {
  return pair.perm == QuadPermutation::ABCD ? a_canonical : inverted_parameter(a_canonical);
}

namespace {

double plane_angle(const Vec4& p, const Vec4& q) {
  Vec3 n1 = p.head<3>(), n2 = q.head<3>();
  double c = std::abs(n1.dot(n2));
  double s = n1.cross(n2).norm();
  if (n1.norm() < 1e-300 || n2.norm() < 1e-300)
    throw GeometryError("tangent plane through a finite point has zero normal");
  return std::atan2(s, c);
}

}  // namespace

double edge_compatible(const QuadricPatch& left, const QuadricPatch& right, const Vec3& p0,
                       const Vec3& p1, int samples) {
  if (samples < 2) throw GeometryError("need at least two samples along the edge");
  HomogeneousQuadric ql = left.homogeneous();
  HomogeneousQuadric qr = right.homogeneous();
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double t = double(k) / double(samples - 1);
    Vec3 p = p0 + t * (p1 - p0);
    Vec4 ph(p.x(), p.y(), p.z(), 1.0);
    worst = std::max(worst, plane_angle(ql.tangent_plane(ph), qr.tangent_plane(ph)));
  }
  return worst;
}

QuadricField field_from_conormal(const AsymptoticNet& net, const ConormalField& conormal) {
  const GridDomain& d = net.domain;
  if (d.quads_i != conormal.domain.quads_i || d.quads_j != conormal.domain.quads_j)
    throw GeometryError("net and co-normal field have different extents");
  QuadricField field;
  field.conormal = conormal;
  field.patches.reserve(d.quad_count());
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      double lam = conormal.lambda_at(i, j);
      Vec3 A, B, C, D;
      net.quad_corners(i, j, A, B, C, D);
      field.patches.push_back(build_patch(A, B, C, D, lam * lam - 1.0));
    }
  for (EdgeId edge : interior_edges(net)) {
    const QuadricPatch* first;
    const QuadricPatch* second;
    Vec3 p0, p1;
    if (edge.dir == EdgeDir::J) {
      first = &field.patch(edge.i - 1, edge.j);
      second = &field.patch(edge.i, edge.j);
      p0 = net.at(edge.i, edge.j);
      p1 = net.at(edge.i, edge.j + 1);
    } else {
      first = &field.patch(edge.i, edge.j - 1);
      second = &field.patch(edge.i, edge.j);
      p0 = net.at(edge.i, edge.j);
      p1 = net.at(edge.i + 1, edge.j);
    }
    double angle = edge_compatible(*first, *second, p0, p1);
    field.edge_angles.push_back(angle);
    field.max_edge_angle = std::max(field.max_edge_angle, angle);
  }
  return field;
}

}  // namespace asymnet

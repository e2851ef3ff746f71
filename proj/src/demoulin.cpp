#include "asymnet/demoulin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asymnet {

namespace {

// Canonical secondary patch (E, A, F, C) of a pair; its frame determinant is
// x1 * x2 > 0 by the sign conventions of the canonicalization.
QuadricPatch canonical_secondary_patch(const CanonicalPair& pair, double b_bar) {
  Vec3 E(pair.x1, pair.y1, 0.0);
  Vec3 A(0.0, 0.0, 0.0);
  Vec3 F(pair.x2, pair.y2, pair.x2);
  Vec3 C(0.0, 1.0, 0.0);
  return build_patch(E, A, F, C, inverted_parameter(b_bar));
}

// The two generator directions of a quadric through an on-quadric point p_hat,
// as unit 4-vectors orthogonal to p_hat.
struct GeneratorPair {
  Vec4 d[2];
};

GeneratorPair generators_at(const Mat4& q, const Vec4& p_hat) {
  Vec4 p = p_hat.normalized();
  Vec4 plane = q * p;
  if (plane.norm() < 1e-12) throw GeometryError("singular point of the quadric");

  // Orthonormal basis {c1, c2} of the tangent plane, orthogonal to p itself:
  // kernel of the 2x4 matrix [plane; p].
  Eigen::Matrix<double, 2, 4> rows;
  rows.row(0) = plane.normalized().transpose();
  rows.row(1) = p.transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(rows, Eigen::ComputeFullV);
  Vec4 c1 = svd.matrixV().col(2);
  Vec4 c2 = svd.matrixV().col(3);

  // Restricted quadratic form; p is in its kernel, so a direction alpha*c1 +
  // beta*c2 extends to a line on the quadric iff the 2x2 form annihilates it.
  double m11 = c1.dot(q * c1);
  double m12 = c1.dot(q * c2);
  double m22 = c2.dot(q * c2);
  double scale = std::max({std::abs(m11), std::abs(m12), std::abs(m22), 1e-300});
  m11 /= scale;
  m12 /= scale;
  m22 /= scale;

  double disc = m12 * m12 - m11 * m22;
  double sq = std::sqrt(std::max(disc, 0.0));
  double al[2], be[2];
  if (std::abs(m11) >= std::abs(m22)) {
    if (std::abs(m11) < 1e-14) {  // 2 m12 alpha beta = 0
      al[0] = 1.0; be[0] = 0.0;
      al[1] = 0.0; be[1] = 1.0;
    } else {
      al[0] = -m12 + sq; be[0] = m11;
      al[1] = -m12 - sq; be[1] = m11;
    }
  } else {
    al[0] = m22; be[0] = -m12 + sq;
    al[1] = m22; be[1] = -m12 - sq;
  }

  GeneratorPair g;
  for (int k = 0; k < 2; ++k) {
    Vec4 dir = al[k] * c1 + be[k] * c2;
    double n = dir.norm();
    if (n < 1e-300) throw GeometryError("degenerate generator direction");
    g.d[k] = dir / n;
  }
  return g;
}

// Distance of the direction d from the 2-space spanned by the line through p
// with direction span_dir: zero iff (p, d) is the same line.
double line_mismatch(const Vec4& p_unit, const Vec4& span_dir, const Vec4& d) {
  Eigen::Matrix<double, 3, 4> rows;
  rows.row(0) = p_unit.transpose();
  rows.row(1) = span_dir.normalized().transpose();
  rows.row(2) = d.normalized().transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(rows);
  return svd.singularValues()(2);
}

// Cross generator (the one that is not the shared edge) of a quadric at a
// point of the edge line [0 : s : 0 : w].
Vec4 cross_generator(const Mat4& q, const Vec4& p_unit) {
  //  An auxiliary point of the edge line independent of p.
  Vec4 aux = std::abs(p_unit(3)) > 0.5 ? Vec4(0, 1, 0, 0) : Vec4(0, 0, 0, 1);
  if (std::abs(p_unit.dot(aux)) > 0.99) aux = Vec4(0, 1, 0, 0);
  GeneratorPair g = generators_at(q, p_unit);
  double r0 = line_mismatch(p_unit, aux, g.d[0]);
  double r1 = line_mismatch(p_unit, aux, g.d[1]);
  // The edge is itself a generator; the farther-from-the-edge direction is the
  // cross generator.
  return r0 >= r1 ? g.d[0] : g.d[1];
}

double scale_reference(const CanonicalPair& pair, double a, double b_bar) {
  return std::max({1.0, std::abs(a * pair.x1), std::abs(b_bar), std::abs(pair.y1),
                   std::abs((1.0 + b_bar) * pair.y2)});
}

}  // namespace

void coincidence_coefficients(const CanonicalPair& pair, double a, double b_bar, double& c2,
                              double& c1, double& c0) {
  c2 = b_bar - a * pair.x1;
  c1 = a * pair.x1 + pair.y1 + 1.0 - (1.0 + b_bar) * pair.y2;
  c0 = -pair.y1;
}

double generator_coincidence_residual(const CanonicalPair& pair, double a, double b_bar,
                                      double s, double w) {
  Vec4 p(0.0, s, 0.0, w);
  if (p.norm() < 1e-300) throw GeometryError("invalid projective point");
  p.normalize();
  Mat4 q_primary = standard_quadric_matrix(a);
  Mat4 q_secondary = canonical_secondary_patch(pair, b_bar).homogeneous().m;
  Vec4 d1 = cross_generator(q_primary, p);
  Vec4 d2 = cross_generator(q_secondary, p);
  return line_mismatch(p, d1, d2);
}

CoincidenceResult coincidence_roots(const CanonicalPair& pair, double a, double b_bar,
                                    double tol) {
  CoincidenceResult res;
  double c2, c1, c0;
  coincidence_coefficients(pair, a, b_bar, c2, c1, c0);
  double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale <= tol * scale_reference(pair, a, b_bar)) {
    res.identically_zero = true;
    res.c2 = res.c1 = res.c0 = 0.0;
    return res;
  }
  c2 /= scale;
  c1 /= scale;
  c0 /= scale;
  res.c2 = c2;
  res.c1 = c1;
  res.c0 = c0;

  auto push_root = [&](double s, double w, int mult) {
    ProjectiveRoot r;
    r.s = s;
    r.w = w;
    r.multiplicity = mult;
    r.geometric_residual = generator_coincidence_residual(pair, a, b_bar, s, w);
    res.roots.push_back(r);
  };

  if (std::abs(c2) <= tol) {
    // Degree drop: one root escapes to infinity.
    if (std::abs(c1) <= tol) {
      push_root(1.0, 0.0, 2);
    } else {
      push_root(1.0, 0.0, 1);
      push_root(-c0 / c1, 1.0, 1);
    }
    return res;
  }

  double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < -tol) return res;  // complex pair, no real coincidence
  if (std::abs(disc) <= tol) {
    push_root(-c1 / (2.0 * c2), 1.0, 2);
    return res;
  }
  double sq = std::sqrt(disc);
  double qq = -0.5 * (c1 + (c1 >= 0.0 ? 1.0 : -1.0) * sq);
  double s1 = qq / c2;
  double s2 = std::abs(qq) > 1e-300 ? c0 / qq : 0.0;
  if (s1 > s2) std::swap(s1, s2);
  push_root(s1, 1.0, 1);
  push_root(s2, 1.0, 1);
  return res;
}

Vec4 demoulin_point(const QuadricPatch& patch) {
  Vec4 z;
  z.head<3>() = (1.0 + patch.a) * patch.D + patch.A - patch.B - patch.C;
  z(3) = patch.a;
  double n = z.norm();
  if (n < 1e-300) throw GeometryError("degenerate quadrangle has no normal intersection");
  z /= n;
  // Deterministic sign: make the largest-magnitude component positive.
  int imax = 0;
  z.cwiseAbs().maxCoeff(&imax);
  if (z(imax) < 0.0) z = -z;
  return z;
}

double tangent_incidence_residual(const CanonicalPair& pair, double a, double b_bar) {
  Mat4 q = standard_quadric_matrix(a);
  Vec4 z(a, a, 1.0 + a, a);  // Demoulin point of the standard quadrangle
  Vec4 y((1.0 + b_bar) * pair.x2 - pair.x1, (1.0 + b_bar) * pair.y2 - 1.0 - pair.y1,
         (1.0 + b_bar) * pair.x2, b_bar);
  double zn = z.norm(), yn = y.norm();
  if (zn < 1e-300 || yn < 1e-300) throw GeometryError("degenerate normal intersection point");
  return std::abs(y.dot(q * z)) / (zn * yn);
}

bool tangent_incidence(const CanonicalPair& pair, double a, double b_bar, double tol) {
  return tangent_incidence_residual(pair, a, b_bar) <= tol;
}

bool is_demoulin(const AsymptoticNet& net, const QuadricField& field, double tol) {
  for (EdgeId edge : interior_edges(net)) {
    CanonicalPair pair = canonicalize_pair(net, edge);
    CanonicalParameters par = canonical_parameters(pair, field.conormal);
    double c2, c1, c0;
    coincidence_coefficients(pair, par.a, par.b_bar, c2, c1, c0);
    double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
    if (scale <= tol * scale_reference(pair, par.a, par.b_bar)) continue;  // all s
    if (std::abs(c2) / scale > tol || std::abs(c1) / scale > tol) return false;
  }
  return true;
}

bool q_surface_check(const AsymptoticNet& net, const QuadricField& field, double tol) {
  const GridDomain& d = net.domain;
  for (const QuadricPatch& p : field.patches)
    if (std::abs(p.a) > 1e-9)
      throw GeometryError("field is not affine-minimal; patch quadrics must be paraboloids");

  // Line dual (plane coordinates restricted to w = 0) of the generator family
  // of the patch quadric at infinity that contains the direction t.
  auto strip_line = [&](const QuadricPatch& patch, const Vec3& t) {
    Mat3 q3 = patch.homogeneous().m.topLeftCorner<3, 3>();
    Eigen::SelfAdjointEigenSolver<Mat3> es(q3);
    Vec3 ev = es.eigenvalues();
    if (!(ev(2) > 0.0) || !(ev(0) < 0.0))
      throw GeometryError("patch quadric does not meet infinity in two lines");
    Vec3 p = std::sqrt(ev(2)) * es.eigenvectors().col(2) +
             std::sqrt(-ev(0)) * es.eigenvectors().col(0);
    Vec3 q = std::sqrt(ev(2)) * es.eigenvectors().col(2) -
             std::sqrt(-ev(0)) * es.eigenvectors().col(0);
    p.normalize();
    q.normalize();
    Vec3 th = t.normalized();
    return std::abs(p.dot(th)) <= std::abs(q.dot(th)) ? p : q;
  };

  auto angle = [](const Vec3& u, const Vec3& v) {
    return std::atan2(u.cross(v).norm(), std::abs(u.dot(v)));
  };

  for (int j = 0; j < d.quads_j; ++j) {
    Vec3 ref;
    for (int i = 0; i < d.quads_i; ++i) {
      const QuadricPatch& p = field.patch(i, j);
      Vec3 line = strip_line(p, p.C - p.A);
      if (i == 0)
        ref = line;
      else if (angle(ref, line) > tol)
        return false;
    }
  }
  for (int i = 0; i < d.quads_i; ++i) {
    Vec3 ref;
    for (int j = 0; j < d.quads_j; ++j) {
      const QuadricPatch& p = field.patch(i, j);
      Vec3 line = strip_line(p, p.B - p.A);
      if (j == 0)
        ref = line;
      else if (angle(ref, line) > tol)
        return false;
    }
  }
  return true;
}

RuledStripResult ruled_strip_quadric(const AsymptoticNet& net, StripId strip,
                                     const QuadricField& field, double tol) {
  const GridDomain& d = net.domain;
  RuledStripResult res;

  // The strip must actually be ruled: its two boundary polylines straight.
  auto polyline_straight = [&](EdgeDir along, int index) {
    int count = along == EdgeDir::I ? d.quads_i : d.quads_j;
    if (count < 2) return true;
    Eigen::MatrixXd rows(count, 3);
    for (int k = 0; k < count; ++k) {
      Vec3 e = along == EdgeDir::I ? net.at(k + 1, index) - net.at(k, index)
                                   : net.at(index, k + 1) - net.at(index, k);
      double n = e.norm();
      if (n < 1e-300) return false;
      rows.row(k) = e.transpose() / n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    return svd.singularValues()(1) <= defaults::planarity_tol;
  };

  std::vector<const QuadricPatch*> patches;
  std::vector<EdgeId> inner;
  if (strip.dir == StripDir::Horizontal) {
    if (strip.index < 0 || strip.index >= d.quads_j)
      throw GeometryError("horizontal strip index out of range");
    if (!polyline_straight(EdgeDir::I, strip.index) ||
        !polyline_straight(EdgeDir::I, strip.index + 1))
      throw GeometryError("strip is not ruled: boundary polylines are not straight");
    for (int i = 0; i < d.quads_i; ++i) patches.push_back(&field.patch(i, strip.index));
    for (int i = 1; i < d.quads_i; ++i) inner.push_back({EdgeDir::J, i, strip.index});
  } else {
    if (strip.index < 0 || strip.index >= d.quads_i)
      throw GeometryError("vertical strip index out of range");
    if (!polyline_straight(EdgeDir::J, strip.index) ||
        !polyline_straight(EdgeDir::J, strip.index + 1))
      throw GeometryError("strip is not ruled: boundary polylines are not straight");
    for (int j = 0; j < d.quads_j; ++j) patches.push_back(&field.patch(strip.index, j));
    for (int j = 1; j < d.quads_j; ++j) inner.push_back({EdgeDir::I, strip.index, j});
  }

  HomogeneousQuadric q0 = patches.front()->homogeneous();
  for (size_t k = 1; k < patches.size(); ++k)
    res.worst_distance = std::max(res.worst_distance, q0.distance(patches[k]->homogeneous()));
  if (res.worst_distance <= tol) res.quadric = q0;

  // On a ruled strip the canonical data is pinned: the outer vertices lie on
  // the extended boundary lines (y1 = 0, y2 = 1) and the abscissae obey
  // x2 = x1 (1 + a) / (1 + a x1).
  for (EdgeId edge : inner) {
    CanonicalPair pair = canonicalize_pair(net, edge);
    CanonicalParameters par = canonical_parameters(pair, field.conormal);
    double denom = 1.0 + par.a * pair.x1;
    double rel = std::max(std::abs(pair.y1), std::abs(pair.y2 - 1.0));
    if (std::abs(denom) > 1e-12)
      rel = std::max(rel, std::abs(pair.x2 - pair.x1 * (1.0 + par.a) / denom));
    res.worst_relation = std::max(res.worst_relation, rel);
  }
  return res;
}

}  // namespace asymnet

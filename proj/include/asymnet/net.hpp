#pragma once

#include "asymnet/types.hpp"

#include <vector>

namespace asymnet {

// Discrete net q : [0..M]x[0..N] -> R^3 whose parameter polylines are meant to
// be asymptotic lines. Validity means every interior vertex star is planar and
// every quadrangle has positive discriminant
//   delta = det[q1, q2, q12],
// with q1, q2 the edge vectors out of the lower-left corner and
// q12 = D + A - B - C the mixed difference.
struct AsymptoticNet {
  GridDomain domain;
  std::vector<Vec3> positions;  // row-major, i fastest

  const Vec3& at(int i, int j) const { return positions[domain.vertex_index(i, j)]; }
  Vec3& at(int i, int j) { return positions[domain.vertex_index(i, j)]; }

  // Corners of quadrangle (i,j) in the order A, B, C, D used throughout:
  // A = q(i,j), B = q(i+1,j), C = q(i,j+1), D = q(i+1,j+1).
  void quad_corners(int i, int j, Vec3& A, Vec3& B, Vec3& C, Vec3& D) const;

  // Longest diagonal of the bounding box; scale reference for tolerances.
  double diameter() const;
};

AsymptoticNet make_net(int quads_i, int quads_j, std::vector<Vec3> positions);

// delta of quadrangle (i,j); no sign check.
double quad_delta(const AsymptoticNet& net, int i, int j);

// Affine metric weight Omega = sqrt(delta); throws GeometryError if delta <= 0.
double affine_metric(const AsymptoticNet& net, int i, int j);

struct ValidationReport {
  bool valid = false;
  double max_cross_residual = 0.0;  // worst unit triple product over interior stars
  double min_delta = 0.0;           // most negative discriminant (0x0 nets: +inf)
  int worst_vertex_i = -1, worst_vertex_j = -1;
  int worst_quad_i = -1, worst_quad_j = -1;
  std::string message;
};

// Planarity is checked at interior vertices only: the two diagonals of the
// vertex star d1 = q(i+1,j)-q(i-1,j), d2 = q(i,j+1)-q(i,j-1) and all four
// spokes must be coplanar. The residual is the largest |det| of unit vectors
// [d1^, d2^, s^] over the spokes s. Never throws.
ValidationReport validate(const AsymptoticNet& net, double tol = defaults::planarity_tol);

// Smallest singular value of the stacked unit transversal edge vectors of a
// strip (horizontal strip j: vectors q(i,j+1)-q(i,j) for i = 0..M). Zero iff
// the transversal edges of the strip are parallel to a common plane.
double strip_coplanarity(const AsymptoticNet& net, StripId strip);

enum class RuledVerdict { None, U, V, Both };

// A direction counts as ruled when every parameter polyline of that direction
// is collinear. Polylines with only two vertices are straight without
// geometric content; such a direction is reported only when the other
// direction carries no evidence either (a single quadrangle reports Both).
RuledVerdict is_ruled(const AsymptoticNet& net, double tol = defaults::planarity_tol);

// All interior edges (J-edges with 1 <= i <= M-1, I-edges with 1 <= j <= N-1),
// J-edges first, each in row-major order. An interior edge separates the two
// quadrangles that share it.
std::vector<EdgeId> interior_edges(const AsymptoticNet& net);

bool is_interior_edge(const AsymptoticNet& net, EdgeId edge);

}  // namespace asymnet

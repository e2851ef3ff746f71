#pragma once

#include "asymnet/conormal.hpp"
#include "asymnet/net.hpp"

#include <optional>
#include <vector>

namespace asymnet {

// Rational interpolating map of the standard quadrangle A=(0,0,0), B=(1,0,0),
// C=(0,1,0), D=(1,1,1) for parameter a > -1:
//   phi(u,v) = ( u + a u v,  v + a u v,  (1+a) u v ) / (1 + a u v).
// Its image lies on the quadric  z (1 + z - x - y) = (a+1)(z - y)(z - x) and
// inside the convex hull of the quadrangle for (u,v) in [0,1]^2. Throws a pole
// error when |1 + a u v| < pole_eps (reachable only outside the unit square).
Vec3 eval_standard(double a, double u, double v);

// Symmetric homogeneous 4x4 matrix of the standard quadric in coordinates
// (x, y, z, w), normalized so its largest-magnitude entry is +1.
Mat4 standard_quadric_matrix(double a);

// Homogeneous quadric x^ Q x^ = 0 with x^ = (x, y, z, 1). Stored normalized.
struct HomogeneousQuadric {
  Mat4 m = Mat4::Zero();

  double evaluate(const Vec3& p) const;
  Vec4 tangent_plane(const Vec4& p_hat) const { return m * p_hat; }
  // Scale-invariant distance: both matrices Frobenius-normalized, minimum over
  // the relative sign.
  double distance(const HomogeneousQuadric& other) const;
};

// Quadric patch through a spatial quadrangle (A,B,C,D): the affine image of
// the standard interpolator under the frame T = [B-A | C-A | D+A-B-C] placed
// at A. Requires det T > 0.
struct QuadricPatch {
  Vec3 A, B, C, D;
  double a = 0.0;
  Mat3 frame = Mat3::Identity();     // T
  double delta = 0.0;                // det T
  double omega = 0.0;                // sqrt(delta)

  Vec3 evaluate(double u, double v) const;
  HomogeneousQuadric homogeneous() const;
};

QuadricPatch build_patch(const Vec3& A, const Vec3& B, const Vec3& C, const Vec3& D, double a);

// Center of the patch quadric; a = 0 is a paraboloid and throws.
Vec3 patch_center(const QuadricPatch& patch);

// Discrete affine mean curvature of the patch, H = -2a / (sqrt(1+a) * omega).
double patch_mean_curvature(const QuadricPatch& patch, double omega);

// Parameter of the same quadric when the quadrangle is relabeled. DCBA keeps
// the parameter; BDAC and CADB replace a by inv(a) = -a/(1+a).
enum class QuadPermutation { ABCD, DCBA, BDAC, CADB };
double permute_parameter(double a, QuadPermutation perm);

// a -> -a/(1+a); involution exchanging the two parameters of a quadrangle pair.
double inverted_parameter(double a);

// Two quadrangles sharing the edge A-C of a vertical interior pair, mapped by
// the affine map N into canonical coordinates: primary quadrangle onto the
// standard one, secondary corners E -> (x1, y1, 0), F -> (x2, y2, x2) with
// x1, x2 < 0. For horizontal edges the primary is the quadrangle below the
// edge relabeled C,A,D,B (the 90-degree grid rotation), and N reverses
// orientation; all canonical quantities are unaffected.
struct CanonicalPair {
  EdgeId edge;
  QuadPermutation perm = QuadPermutation::ABCD;
  int primary_i = 0, primary_j = 0;    // quadrangle owning the standard frame
  int secondary_i = 0, secondary_j = 0;
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  double residual = 0.0;               // cross planarity seen by the normalization
  Mat3 n_linear = Mat3::Identity();    // N(x) = n_linear * (x - origin)
  Vec3 origin = Vec3::Zero();
  Vec3 apply(const Vec3& p) const { return n_linear * (p - origin); }
};

CanonicalPair canonicalize_pair(const AsymptoticNet& net, EdgeId edge,
                                double tol = defaults::canonical_tol);

// Quadrangle parameters (a, b_bar) of a canonical pair read off a co-normal
// field (a_quad = lambda^2 - 1 per quadrangle, translated through the
// relabeling of the pair).
struct CanonicalParameters {
  double a = 0.0;      // primary patch parameter in canonical coordinates
  double b_bar = 0.0;  // secondary parameter for the order (C, A, F, E)
};
CanonicalParameters canonical_parameters(const CanonicalPair& pair, const ConormalField& field);

// Inverse translation: canonical primary parameter -> the quadrangle's own
// parameter in grid order.
double primary_parameter_from_canonical(const CanonicalPair& pair, double a_canonical);

// Largest angle between the tangent planes of the two patch quadrics sampled
// along the segment p0-p1.
double edge_compatible(const QuadricPatch& left, const QuadricPatch& right, const Vec3& p0,
                       const Vec3& p1, int samples = 10);

// Interpolating quadric per quadrangle with a = lambda^2 - 1 from a co-normal
// field. edge_angles follows the order of interior_edges(net); max_edge_angle
// summarizes tangent-plane agreement across interior edges (<= tolerance for
// fields derived from a consistent co-normal field).
struct QuadricField {
  ConormalField conormal;
  std::vector<QuadricPatch> patches;  // row-major
  std::vector<double> edge_angles;
  double max_edge_angle = 0.0;

  const QuadricPatch& patch(int i, int j) const {
    return patches[conormal.domain.quad_index(i, j)];
  }
};

QuadricField field_from_conormal(const AsymptoticNet& net, const ConormalField& conormal);

}  // namespace asymnet

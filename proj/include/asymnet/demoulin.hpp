#pragma once

#include "asymnet/quadric.hpp"

#include <optional>
#include <vector>

namespace asymnet {

// Root of the generator-coincidence condition along the shared edge of a
// canonical pair, as a point [s : w] of the projective parameter line (w = 0
// is the far vertex C of the edge extension).
struct ProjectiveRoot {
  double s = 0.0;
  double w = 1.0;
  int multiplicity = 1;
  // Residual of the actual generator lines of the two quadrics at the root
  // point: smallest singular value of the stacked homogeneous points spanning
  // both lines (zero iff the lines coincide).
  double geometric_residual = 0.0;

  bool at_infinity() const { return w == 0.0; }
};

struct CoincidenceResult {
  double c2 = 0.0, c1 = 0.0, c0 = 0.0;  // quadratic in s, scale-normalized
  bool identically_zero = false;        // generators coincide for every s
  std::vector<ProjectiveRoot> roots;    // real roots; empty when complex
};

// Points of the extended shared edge where the cross generators of the two
// patch quadrics of a canonical pair coincide. In canonical coordinates the
// condition is the quadratic
//   (b_bar - a x1) s^2 + (a x1 + y1 + 1 - (1 + b_bar) y2) s - y1 = 0.
// A root at infinity (vanishing leading coefficient) is the constant-curvature
// case; a double root at infinity characterizes concentric quadrics.
CoincidenceResult coincidence_roots(const CanonicalPair& pair, double a, double b_bar,
                                    double tol = defaults::planarity_tol);

// Coefficients only (no geometric verification).
void coincidence_coefficients(const CanonicalPair& pair, double a, double b_bar, double& c2,
                              double& c1, double& c0);

// Coincidence residual of the cross generators at one point [s : w] of the
// extended shared edge, computed from the actual quadrics (independent of the
// quadratic above; used to cross-validate its roots).
double generator_coincidence_residual(const CanonicalPair& pair, double a, double b_bar,
                                      double s, double w);

// Second intersection of the affine normal line at A with the patch quadric,
// as a homogeneous point [x : y : z : w]; finite iff a != 0,
//   Z = ((1+a) D + A - B - C) / a.
Vec4 demoulin_point(const QuadricPatch& patch);

// Whether the polar plane of the secondary Demoulin point passes through the
// primary one; given edge compatibility this is equivalent to constant
// curvature across the pair.
bool tangent_incidence(const CanonicalPair& pair, double a, double b_bar,
                       double tol = defaults::planarity_tol);
double tangent_incidence_residual(const CanonicalPair& pair, double a, double b_bar);

// The net with the given quadric field is a Demoulin net when every interior
// edge carries a coincidence root at infinity of multiplicity two (leading and
// linear coefficients both below tol after scale normalization); identically
// vanishing quadratics pass.
bool is_demoulin(const AsymptoticNet& net, const QuadricField& field,
                 double tol = defaults::planarity_tol);

// For an affine-minimal field (all patches paraboloids), each patch quadric
// meets the plane at infinity in two lines. Per strip, the family of lines
// containing the transversal edge direction must agree across the strip
// (angle between the normalized line duals <= tol). Throws when the field is
// not minimal.
bool q_surface_check(const AsymptoticNet& net, const QuadricField& field, double tol = 1e-8);

struct RuledStripResult {
  std::optional<HomogeneousQuadric> quadric;  // common quadric when it exists
  double worst_distance = 0.0;                // max normalized matrix distance
  double worst_relation = 0.0;  // |x2 - x1 (1+a)/(1 + a x1)| over interior edges
};

// A ruled strip of a constant-curvature field lies on a single quadric; the
// result carries the first patch quadric when all others match it within tol.
RuledStripResult ruled_strip_quadric(const AsymptoticNet& net, StripId strip,
                                     const QuadricField& field, double tol = 1e-9);

}  // namespace asymnet

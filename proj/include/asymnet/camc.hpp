#pragma once

#include "asymnet/quadric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asymnet {

// A member of the one-parameter family of quadric fields with constant affine
// mean curvature H across all quadrangles.
struct CamcResult {
  double rho = 1.0;           // black-white gauge applied to the seed field
  QuadricField field;
  double h = 0.0;             // H of the solve quadrangle
  double max_h_deviation = 0.0;
};

struct CamcOutcome {
  bool is_camc = false;
  std::optional<CamcResult> result;  // candidate whenever a field could be built
  double a_canonical = 0.0;          // closed-form parameters on the solve edge
  double b_canonical = 0.0;
  std::optional<EdgeId> solve_edge;
  std::string failure;               // reason when is_camc is false
};

// Decide whether the net carries a quadric field of constant affine mean
// curvature. The condition pins the gauge on a single interior edge
// (a = -(x1-x2)/(x1(1-x2)), b = (x1-x2)/(1-x1) in canonical coordinates);
// the candidate is verified globally: max |H(quad) - H| <= tol * (1 + |H|).
// Single-quadrangle nets take the affine-minimal member a = 0. Invalid or
// inconsistent nets yield is_camc = false with a failure message; genuinely
// malformed input still throws.
CamcOutcome solve_camc(const AsymptoticNet& net, double tol = defaults::camc_tol);

// H of a quadric field if it is constant, and its worst deviation.
struct FieldCurvature {
  double h = 0.0;             // curvature of quadrangle (0,0)
  double max_deviation = 0.0;
};
FieldCurvature field_curvature(const AsymptoticNet& net, const QuadricField& field);

struct SphereCertificate {
  Vec3 center = Vec3::Zero();
  double h = 0.0;
  double center_spread = 0.0;       // max pairwise center distance / net diameter
  double max_dual_lelieuvre = 0.0;  // relative residual over all edges
  double max_identity_rel = 0.0;    // the two metric identities, relative
  double max_alpha_dev = 0.0;       // dual Moutard factor vs lambda
  bool pass = false;
};

// Certify that all patch quadrics of a CAMC field are concentric (a proper
// affine sphere): centers agree within tol * diameter, the translated
// co-normals satisfy the dual Lelieuvre equations
//   nu1 - nu = -H (q1 - c) x (q - c),   nu2 - nu = +H (q2 - c) x (q - c),
// the identities Omega^2 = 2 (1 - lambda^2) / lambda^2 * det[A-c, B-c, C-c]
// and 1 - lambda^2 = (H/2) lambda Omega hold per quadrangle, and the positions
// relative to the center satisfy a Moutard equation with factor alpha = lambda.
// Throws a paraboloid-field error when any patch has |a| <= 1e-9.
SphereCertificate sphere_center_check(const AsymptoticNet& net, const QuadricField& field,
                                      double tol = 1e-9);

struct ClassificationReport {
  ValidationReport validation;
  CamcOutcome camc;
  bool minimal = false;
  std::vector<double> strip_residuals;  // horizontal strips then vertical
  double max_strip_residual = 0.0;
  bool proper_sphere = false;
  std::optional<SphereCertificate> sphere;
  bool improper_sphere = false;  // minimal with co-normals in an affine plane
  double conormal_plane_residual = 0.0;
  bool demoulin = false;
  bool q_surface = false;
  RuledVerdict ruled = RuledVerdict::None;
};

// Run every characterization on one net: validation, CAMC solve, minimality
// (H = 0 and strip coplanarity), sphere certification, Demoulin property,
// Q-surface property for minimal nets, and ruledness.
ClassificationReport classify(const AsymptoticNet& net, double tol = defaults::camc_tol);

}  // namespace asymnet

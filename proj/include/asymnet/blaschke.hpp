#pragma once

#include "asymnet/quadric.hpp"
#include "asymnet/types.hpp"

#include <functional>

namespace asymnet {

// Affine-differential data of a smooth surface in asymptotic parameters,
// estimated by central differences: metric weight omega^2 = det[f_u, f_v, f_uv],
// affine normal xi = f_uv / omega, and the affine mean curvature H read off the
// structure equations  xi_u = H1 f_u + ... , xi_v = ... + H2 f_v  by expanding
// xi_u and xi_v in the frame (f_u, f_v, xi); a proper affine sphere satisfies
// xi = H (f - center). For an affine sphere H1 = H2 and the xi-components
// vanish; `residual` aggregates the deviation.
struct BlaschkeSample {
  double omega = 0.0;
  Vec3 xi = Vec3::Zero();
  double h = 0.0;         // mean of the two frame coefficients
  double residual = 0.0;  // |H1 - H2| + |xi-components of xi_u, xi_v|
};

using SurfaceFn = std::function<Vec3(double, double)>;

// Finite-difference estimate at (u, v) with step size `step`. Throws a
// degenerate-metric error when det[f_u, f_v, f_uv] <= 0.
BlaschkeSample blaschke_numeric(const SurfaceFn& f, double u, double v, double step = 1e-3);

// Convenience wrapper for a quadric patch: clamps (u, v) so the full stencil
// stays inside the unit square.
BlaschkeSample blaschke_patch(const QuadricPatch& patch, double u, double v,
                              double step = 1e-3);

}  // namespace asymnet

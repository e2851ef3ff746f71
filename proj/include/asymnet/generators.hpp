#pragma once

#include "asymnet/conormal.hpp"
#include "asymnet/net.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace asymnet {

using Polyline = std::vector<Vec3>;

// Deterministic 64-bit generator (splitmix64); identical sequences across
// platforms and languages, which keeps generated fixtures reproducible.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

// Affine-minimal net from two polylines: co-normals nu(i,j) = alpha(i) + beta(j)
// integrated through the Lelieuvre equations starting at `origin`. Every such
// net has Moutard factor lambda = 1 on all quadrangles (H = 0). Throws a
// degenerate-net error when consecutive co-normals are parallel or some
// quadrangle discriminant fails to be positive.
std::pair<AsymptoticNet, ConormalField> minimal_from_polylines(const Polyline& alpha,
                                                               const Polyline& beta,
                                                               const Vec3& origin = Vec3::Zero());

// Net sampled from the standard quadric of parameter a along the given
// parameter grids (strictly increasing). Guards the pole of the rational map
// and positivity of the discriminants.
AsymptoticNet sphere_from_quadric(double a, const std::vector<double>& u_grid,
                                  const std::vector<double>& v_grid);

// The 2x1 configuration of two quadrangles in canonical position sharing the
// edge A-C: vertices E=(x1,y1,0), A=0, B=(1,0,0) / F=(x2,y2,x2), C=(0,1,0),
// D=(1,1,1). Requires x1 < 0 and x2 < 0.
AsymptoticNet standard_pair(double x1, double y1, double x2, double y2);

// Random perturbation of the two generator polylines, component-wise uniform
// in [-magnitude, magnitude), alpha vertices first. The perturbed polylines
// still generate an affine-minimal net; deterministic in `seed`.
std::pair<Polyline, Polyline> perturb_polylines(const Polyline& alpha, const Polyline& beta,
                                                double magnitude, std::uint64_t seed);

}  // namespace asymnet

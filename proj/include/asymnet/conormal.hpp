#pragma once

#include "asymnet/net.hpp"

#include <vector>

namespace asymnet {

// Co-normal field nu on the vertices of an asymptotic net, discrete Lelieuvre
// representation:
//   nu(i,j) x nu(i+1,j) =  q(i+1,j) - q(i,j)
//   nu(i,j) x nu(i,j+1) = -(q(i,j+1) - q(i,j))
// Such a field satisfies a Moutard equation per quadrangle,
//   lambda^2 (nu + nu12) = nu1 + nu2,   lambda > 0,
// and relates to the affine metric by  Omega = (sigma/lambda) det[nu, nu1, nu2]
// where sigma in {+1,-1} is the orientation of the field (globally constant;
// negating the whole field flips it while preserving Lelieuvre).
struct ConormalField {
  GridDomain domain;
  std::vector<Vec3> nu;       // row-major, i fastest
  std::vector<double> lambda; // per quadrangle, row-major
  int orientation = +1;       // sigma = sign det[nu, nu1, nu2]

  const Vec3& at(int i, int j) const { return nu[domain.vertex_index(i, j)]; }
  Vec3& at(int i, int j) { return nu[domain.vertex_index(i, j)]; }
  double lambda_at(int i, int j) const { return lambda[domain.quad_index(i, j)]; }
};

enum class Traversal { RowMajor, ColumnMajor };

// Breadth-first integration of the Lelieuvre equations from a seed co-normal.
// The seed must be orthogonal to the net edges at the seed vertex; each new
// vertex receives the direction spanned by the cross product of two incident
// net edges, scaled and signed by the Lelieuvre equation of the connecting
// edge. Afterwards every edge equation is re-verified (relative residual
// <= tol, throws InconsistentNetError otherwise) and the Moutard data is
// extracted per quadrangle (sums positively parallel within angle_tol).
ConormalField propagate(const AsymptoticNet& net, Vec3 seed, int seed_i = 0, int seed_j = 0,
                        double tol = defaults::lelieuvre_tol,
                        double angle_tol = defaults::moutard_angle_tol,
                        Traversal order = Traversal::RowMajor);

// propagate() from vertex (0,0) with the unit normal of the first quadrangle
// as seed, then negated if needed so that the orientation is +1.
ConormalField propagate_default(const AsymptoticNet& net,
                                double tol = defaults::lelieuvre_tol,
                                double angle_tol = defaults::moutard_angle_tol,
                                Traversal order = Traversal::RowMajor);

// The gauge freedom of the Lelieuvre representation: nu -> rho*nu on vertices
// with i+j even and nu -> nu/rho on the others (rho > 0). Positions are
// unchanged; lambda on a quadrangle with even (odd) lower-left parity becomes
// lambda/rho (lambda*rho).
ConormalField black_white_rescale(const ConormalField& field, double rho);

// Moutard factor of quadrangle (i,j) recomputed from the stored co-normals;
// throws if it disagrees with the cached value by more than 1e-6 relative.
double moutard_lambda(const ConormalField& field, int i, int j);

struct ConormalResiduals {
  double max_lelieuvre = 0.0;    // edge-relative
  double max_moutard_angle = 0.0; // radians
  double max_omega_rel = 0.0;    // Omega-relation, relative
};

// Residuals of the three defining relations against a net.
ConormalResiduals conormal_residuals(const AsymptoticNet& net, const ConormalField& field);

}  // namespace asymnet

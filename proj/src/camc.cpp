#include "asymnet/camc.hpp"

#include "asymnet/demoulin.hpp"

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

int parity_sign(int i, int j) { return ((i + j) % 2 == 0) ? +1 : -1; }

}  // namespace

FieldCurvature field_curvature(const AsymptoticNet& net, const QuadricField& field) {
  const GridDomain& d = net.domain;
  FieldCurvature out;
  out.h = patch_mean_curvature(field.patch(0, 0), field.patch(0, 0).omega);
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      const QuadricPatch& p = field.patch(i, j);
      out.max_deviation =
          std::max(out.max_deviation, std::abs(patch_mean_curvature(p, p.omega) - out.h));
    }
  return out;
}

CamcOutcome solve_camc(const AsymptoticNet& net, double tol) {
  CamcOutcome out;

  ValidationReport rep = validate(net);
  if (!rep.valid) {
    out.failure = "not an asymptotic net: " + rep.message;
    return out;
  }

  ConormalField seed;
  try {
    seed = propagate_default(net);
  } catch (const InconsistentNetError& e) {
    out.failure = std::string("no consistent co-normal field: ") + e.what();
    return out;
  }

  const GridDomain& d = net.domain;
  double rho = 1.0;
  int pin_i = 0, pin_j = 0;  // quadrangle whose parameter the gauge pins

  if (d.quad_count() == 1) {
    // A single quadrangle fits every member of the family; take the
    // affine-minimal one (a = 0, H = 0).
    rho = std::pow(seed.lambda_at(0, 0), parity_sign(0, 0));
    out.a_canonical = 0.0;
    out.b_canonical = 0.0;
  } else {
    EdgeId edge = d.quads_i >= 2 ? EdgeId{EdgeDir::J, 1, 0} : EdgeId{EdgeDir::I, 0, 1};
    out.solve_edge = edge;
    CanonicalPair pair;
    try {
      pair = canonicalize_pair(net, edge);
    } catch (const GeometryError& e) {
      out.failure = std::string("solve edge cannot be canonicalized: ") + e.what();
      return out;
    }
    double x1 = pair.x1, x2 = pair.x2;
    if (std::abs(x1) < 1e-12 || std::abs(1.0 - x2) < 1e-12 || std::abs(1.0 - x1) < 1e-12)
      throw GeometryError("constant-curvature solve is singular for this pair");
    out.a_canonical = -(x1 - x2) / (x1 * (1.0 - x2));
    out.b_canonical = (x1 - x2) / (1.0 - x1);
    if (!(out.a_canonical > -1.0)) {
      std::ostringstream os;
      os << "solved parameter a = " << out.a_canonical << " leaves the admissible range";
      throw GeometryError(os.str());
    }

    double a_primary = primary_parameter_from_canonical(pair, out.a_canonical);
    pin_i = pair.primary_i;
    pin_j = pair.primary_j;
    double lam = seed.lambda_at(pin_i, pin_j);
    // lambda_rho^2 = rho^(-2p) lambda^2 = 1 + a_primary.
    rho = std::pow(lam * lam / (1.0 + a_primary), 0.5 * parity_sign(pin_i, pin_j));
  }

  CamcResult cand;
  cand.rho = rho;
  cand.field = field_from_conormal(net, black_white_rescale(seed, rho));
  const QuadricPatch& pin = cand.field.patch(pin_i, pin_j);
  cand.h = patch_mean_curvature(pin, pin.omega);
  cand.max_h_deviation = 0.0;
  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      const QuadricPatch& p = cand.field.patch(i, j);
      cand.max_h_deviation =
          std::max(cand.max_h_deviation, std::abs(patch_mean_curvature(p, p.omega) - cand.h));
    }
  out.is_camc = cand.max_h_deviation <= tol * (1.0 + std::abs(cand.h));
  if (!out.is_camc) {
    std::ostringstream os;
    os << "curvature varies across quadrangles: max deviation " << cand.max_h_deviation
       << " from H = " << cand.h;
    out.failure = os.str();
  }
  out.result = std::move(cand);
  return out;
}

SphereCertificate sphere_center_check(const AsymptoticNet& net, const QuadricField& field,
                                      double tol) {
  const GridDomain& d = net.domain;
  for (const QuadricPatch& p : field.patches)
    if (std::abs(p.a) <= 1e-9)
      throw GeometryError(
          "field contains a paraboloid patch (a = 0); centers are undefined. "
          "Use strip coplanarity / improper-sphere checks for minimal nets");

  SphereCertificate cert;
  std::vector<Vec3> centers;
  centers.reserve(field.patches.size());
  for (const QuadricPatch& p : field.patches) centers.push_back(patch_center(p));

  double diameter = net.diameter();
  double spread = 0.0;
  Vec3 mean = Vec3::Zero();
  for (size_t i = 0; i < centers.size(); ++i) {
    mean += centers[i];
    for (size_t j = i + 1; j < centers.size(); ++j)
      spread = std::max(spread, (centers[i] - centers[j]).norm());
  }
  cert.center = mean / double(centers.size());
  cert.center_spread = spread / std::max(diameter, 1e-300);

  double h_sum = 0.0;
  for (const QuadricPatch& p : field.patches) h_sum += patch_mean_curvature(p, p.omega);
  cert.h = h_sum / double(field.patches.size());

  // Dual Lelieuvre equations for the positions relative to the center. The
  // stored co-normals satisfy them after applying the field orientation.
  const double sig = field.conormal.orientation;
  auto nu_eff = [&](int i, int j) { return Vec3(sig * field.conormal.at(i, j)); };
  auto pos = [&](int i, int j) { return Vec3(net.at(i, j) - cert.center); };
  for (int j = 0; j <= d.quads_j; ++j)
    for (int i = 0; i <= d.quads_i; ++i) {
      if (i < d.quads_i) {
        Vec3 lhs = nu_eff(i + 1, j) - nu_eff(i, j);
        Vec3 rhs = -cert.h * pos(i + 1, j).cross(pos(i, j));
        cert.max_dual_lelieuvre =
            std::max(cert.max_dual_lelieuvre,
                     (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1e-300}));
      }
      if (j < d.quads_j) {
        Vec3 lhs = nu_eff(i, j + 1) - nu_eff(i, j);
        Vec3 rhs = cert.h * pos(i, j + 1).cross(pos(i, j));
        cert.max_dual_lelieuvre =
            std::max(cert.max_dual_lelieuvre,
                     (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1e-300}));
      }
    }

  for (int j = 0; j < d.quads_j; ++j)
    for (int i = 0; i < d.quads_i; ++i) {
      const QuadricPatch& p = field.patch(i, j);
      double lam = field.conormal.lambda_at(i, j);
      double omega = p.omega;
      // Omega^2 = 2 (1 - lambda^2)/lambda^2 det[A-c, B-c, C-c].
      double rhs1 = 2.0 * (1.0 - lam * lam) / (lam * lam) *
                    det3(pos(i, j), pos(i + 1, j), pos(i, j + 1));
      cert.max_identity_rel = std::max(
          cert.max_identity_rel, std::abs(omega * omega - rhs1) / std::abs(omega * omega));
      // 1 - lambda^2 = (H/2) lambda Omega.
      double lhs2 = 1.0 - lam * lam;
      double rhs2 = 0.5 * cert.h * lam * omega;
      cert.max_identity_rel =
          std::max(cert.max_identity_rel,
                   std::abs(lhs2 - rhs2) / std::max({std::abs(lhs2), std::abs(rhs2), 1e-300}));
      // Positions relative to the center satisfy a Moutard equation with
      // factor alpha = lambda.
      Vec3 m0 = pos(i, j) + pos(i + 1, j + 1);
      Vec3 m1 = pos(i + 1, j) + pos(i, j + 1);
      double alpha2 = m1.norm() / std::max(m0.norm(), 1e-300);
      double angle = std::atan2(m0.cross(m1).norm(), std::abs(m0.dot(m1)));
      cert.max_alpha_dev =
          std::max({cert.max_alpha_dev, angle, std::abs(std::sqrt(alpha2) - lam)});
    }

  cert.pass = cert.center_spread <= tol && cert.max_dual_lelieuvre <= tol &&
              cert.max_identity_rel <= tol && cert.max_alpha_dev <= tol;
  return cert;
}

ClassificationReport classify(const AsymptoticNet& net, double tol) {
  ClassificationReport rep;
  rep.validation = validate(net);
  rep.ruled = is_ruled(net);

  const GridDomain& d = net.domain;
  for (int j = 0; j < d.quads_j; ++j)
    rep.strip_residuals.push_back(strip_coplanarity(net, {StripDir::Horizontal, j}));
  for (int i = 0; i < d.quads_i; ++i)
    rep.strip_residuals.push_back(strip_coplanarity(net, {StripDir::Vertical, i}));
  for (double r : rep.strip_residuals) rep.max_strip_residual = std::max(rep.max_strip_residual, r);

  rep.camc = solve_camc(net, tol);
  if (!rep.camc.result) return rep;
  const QuadricField& field = rep.camc.result->field;

  rep.minimal = rep.camc.is_camc && std::abs(rep.camc.result->h) <= tol &&
                rep.max_strip_residual <= defaults::planarity_tol;

  if (rep.camc.is_camc && !rep.minimal) {
    bool all_proper = true;
    for (const QuadricPatch& p : field.patches)
      if (std::abs(p.a) <= 1e-9) all_proper = false;
    if (all_proper) {
      rep.sphere = sphere_center_check(net, field);
      rep.proper_sphere = rep.sphere->pass;
    }
  }

  if (rep.minimal) {
    // Improper sphere: co-normals contained in an affine plane not through the
    // origin. Solve nu . n = c in the least-squares sense on normalized rows.
    const ConormalField& cf = field.conormal;
    Eigen::MatrixXd rows(cf.nu.size(), 4);
    for (size_t k = 0; k < cf.nu.size(); ++k) {
      double n = cf.nu[k].norm();
      if (n < 1e-300) n = 1.0;
      rows.row(k) << cf.nu[k].transpose() / n, -1.0 / n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    rep.conormal_plane_residual = svd.singularValues().tail<1>()(0);
    rep.improper_sphere = rep.conormal_plane_residual <= defaults::planarity_tol;

    try {
      rep.q_surface = q_surface_check(net, field);
    } catch (const GeometryError&) {
      rep.q_surface = false;
    }
  }

  if (rep.camc.is_camc) rep.demoulin = is_demoulin(net, field);
  return rep;
}

}  // namespace asymnet

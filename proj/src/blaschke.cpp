#include "asymnet/blaschke.hpp"

#include <algorithm>
#include <cmath>

namespace asymnet {

namespace {

struct FrameData {
  Vec3 fu, fv, xi;
  double omega;
};

FrameData frame_at(const SurfaceFn& f, double u, double v, double h) {
  FrameData d;
  d.fu = (f(u + h, v) - f(u - h, v)) / (2.0 * h);
  d.fv = (f(u, v + h) - f(u, v - h)) / (2.0 * h);
  Vec3 fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) /
             (4.0 * h * h);
  Mat3 m;
  m.col(0) = d.fu;
  m.col(1) = d.fv;
  m.col(2) = fuv;
  double det = m.determinant();
  if (det <= 0.0) throw GeometryError("degenerate affine metric: det[f_u, f_v, f_uv] <= 0");
  d.omega = std::sqrt(det);
  d.xi = fuv / d.omega;
  return d;
}

}  // namespace

BlaschkeSample blaschke_numeric(const SurfaceFn& f, double u, double v, double step) {
  if (!(step > 0.0)) throw GeometryError("step size must be positive");
  const double h = step;
  FrameData c = frame_at(f, u, v, h);

  // xi at the four neighbors, then central differences of xi itself.
  Vec3 xi_u = (frame_at(f, u + h, v, h).xi - frame_at(f, u - h, v, h).xi) / (2.0 * h);
  Vec3 xi_v = (frame_at(f, u, v + h, h).xi - frame_at(f, u, v - h, h).xi) / (2.0 * h);

  Mat3 basis;
  basis.col(0) = c.fu;
  basis.col(1) = c.fv;
  basis.col(2) = c.xi;
  Eigen::ColPivHouseholderQR<Mat3> qr(basis);
  Vec3 cu = qr.solve(xi_u);  // xi_u = cu0 f_u + cu1 f_v + cu2 xi
  Vec3 cv = qr.solve(xi_v);

  BlaschkeSample s;
  s.omega = c.omega;
  s.xi = c.xi;
  // Sign convention: a proper affine sphere satisfies xi = H (f - c), so the
  // frame coefficients enter the curvature directly (H < 0 for the standard
  // interpolators).
  double h1 = cu(0);
  double h2 = cv(1);
  s.h = 0.5 * (h1 + h2);
  s.residual = std::abs(h1 - h2) + std::abs(cu(2)) + std::abs(cv(2));
  return s;
}

BlaschkeSample blaschke_patch(const QuadricPatch& patch, double u, double v, double step) {
  double margin = 2.0 * step + 1e-9;
  if (margin >= 0.5) throw GeometryError("step size too large for the unit square");
  u = std::clamp(u, margin, 1.0 - margin);
  v = std::clamp(v, margin, 1.0 - margin);
  return blaschke_numeric([&patch](double uu, double vv) { return patch.evaluate(uu, vv); },
                          u, v, step);
}

}  // namespace asymnet

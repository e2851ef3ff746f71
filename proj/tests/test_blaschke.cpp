#include "asymnet/blaschke.hpp"

#include "asymnet/generators.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace asymnet;

TEST_CASE("paraboloid is affine-minimal with unit metric") {
  SurfaceFn f = [](double u, double v) { return Vec3(u, v, u * v); };
  BlaschkeSample s = blaschke_numeric(f, 0.3, -0.4);
  CHECK(s.omega == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((s.xi - Vec3(0, 0, 1)).norm() < 1e-9);
  CHECK(std::abs(s.h) < 1e-9);
  CHECK(s.residual < 1e-8);
}

TEST_CASE("standard interpolator has constant affine mean curvature") {
  SurfaceFn f = [](double u, double v) { return eval_standard(1.0, u, v); };
  BlaschkeSample s = blaschke_numeric(f, 0.5, 0.5);
  CHECK(s.h == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-5));
  CHECK(s.residual < 1e-4);
  // The same value away from the symmetric point and for other parameters.
  BlaschkeSample t = blaschke_numeric(f, 0.3, 0.7);
  CHECK(t.h == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-5));
  for (double a : {-0.5, 3.0}) {
    SurfaceFn g = [a](double u, double v) { return eval_standard(a, u, v); };
    double expected = -2.0 * a / std::sqrt(1.0 + a);
    CHECK(blaschke_numeric(g, 0.4, 0.6).h == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("finite differences converge at second order") {
  SurfaceFn f = [](double u, double v) { return eval_standard(1.0, u, v); };
  double exact = -std::sqrt(2.0);
  double coarse = std::abs(blaschke_numeric(f, 0.45, 0.55, 2e-3).h - exact);
  double fine = std::abs(blaschke_numeric(f, 0.45, 0.55, 1e-3).h - exact);
  CHECK(coarse / fine > 3.0);
  CHECK(coarse / fine < 5.0);
}

TEST_CASE("patch wrapper matches the closed form and clamps the stencil") {
  QuadricPatch p = build_patch(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1), 3.0);
  double expected = patch_mean_curvature(p, p.omega);
  CHECK(blaschke_patch(p, 0.5, 0.5).h == doctest::Approx(expected).epsilon(1e-5));
  // Corner evaluation survives by clamping into the domain.
  CHECK(blaschke_patch(p, 0.0, 1.0).h == doctest::Approx(expected).epsilon(1e-4));
  // And is equivariant: evaluating a sheared copy gives the same H.
  SplitMix64 rng(41);
  auto [m, shift] = testing::random_unimodular(rng);
  QuadricPatch q = build_patch(m * p.A + shift, m * p.B + shift, m * p.C + shift,
                               m * p.D + shift, 3.0);
  CHECK(blaschke_patch(q, 0.5, 0.5).h == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("degenerate metric is rejected") {
  SurfaceFn plane = [](double u, double v) { return Vec3(u, v, 0.0); };
  CHECK_THROWS_AS(blaschke_numeric(plane, 0.5, 0.5), GeometryError);
  SurfaceFn wrong_sign = [](double u, double v) { return Vec3(u, v, -u * v); };
  CHECK_THROWS_AS(blaschke_numeric(wrong_sign, 0.5, 0.5), GeometryError);
}

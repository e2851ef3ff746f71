#include "asymnet/camc.hpp"

#include "asymnet/generators.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace asymnet;
using testing::linspace;
using testing::moutard_net;
using testing::standard_quad_net;

namespace {

double formula_h(double a, double omega) { return -2.0 * a / (std::sqrt(1.0 + a) * omega); }

}  // namespace

TEST_CASE("closed-form solve on the reference pair") {
  AsymptoticNet net = standard_pair(-1.0, 0.3, -0.9, 1.1);
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.is_camc);
  REQUIRE(out.result.has_value());
  CHECK(out.a_canonical == doctest::Approx(-1.0 / 19.0).epsilon(1e-12));
  CHECK(out.b_canonical == doctest::Approx(-0.05).epsilon(1e-12));
  // The coincidence condition a * x1 = b_bar.
  CHECK(out.a_canonical * (-1.0) == doctest::Approx(0.05 / 0.95).epsilon(1e-12));
  REQUIRE(out.solve_edge.has_value());
  CHECK(out.solve_edge->dir == EdgeDir::J);
  CHECK(out.solve_edge->i == 1);
  CHECK(out.solve_edge->j == 0);

  // H of the primary (standard-position) quadrangle: omega = 1.
  CHECK(out.result->h == doctest::Approx(2.0 / std::sqrt(342.0)).epsilon(1e-12));
  CHECK(out.result->max_h_deviation < 1e-12);
  // Grid-order parameters: primary carries a, secondary carries b.
  CHECK(out.result->field.patch(1, 0).a == doctest::Approx(-1.0 / 19.0).epsilon(1e-10));
  CHECK(out.result->field.patch(0, 0).a == doctest::Approx(-0.05).epsilon(1e-10));

  // Both quadrangles agree on H through the curvature formula.
  const QuadricField& f = out.result->field;
  double h0 = patch_mean_curvature(f.patch(0, 0), f.patch(0, 0).omega);
  double h1 = patch_mean_curvature(f.patch(1, 0), f.patch(1, 0).omega);
  CHECK(h0 == doctest::Approx(h1).epsilon(1e-12));

  FieldCurvature fc = field_curvature(net, f);
  CHECK(fc.h == doctest::Approx(out.result->h).epsilon(1e-12));
  CHECK(fc.max_deviation < 1e-12);
}

TEST_CASE("CAMC pair without the adjacency relation is not a sphere") {
  // y2 - 1 = 0.1 while (1+b) y1 = 0.95 * 0.3 = 0.285: centers differ.
  AsymptoticNet net = standard_pair(-1.0, 0.3, -0.9, 1.1);
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.is_camc);
  SphereCertificate cert = sphere_center_check(net, out.result->field);
  CHECK(!cert.pass);
  CHECK(cert.center_spread > 1e-6);
}

TEST_CASE("the adjacency relation y2 - 1 = (1+b) y1 gives a concentric pair") {
  double y1 = 0.3, b = -0.05;
  AsymptoticNet net = standard_pair(-1.0, y1, -0.9, 1.0 + (1.0 + b) * y1);
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.is_camc);
  SphereCertificate cert = sphere_center_check(net, out.result->field);
  CHECK(cert.pass);
  CHECK(cert.center_spread < 1e-9);
  // Primary patch sits in standard position with a = -1/19: center (1/2, 1/2, -9).
  CHECK((cert.center - Vec3(0.5, 0.5, -9.0)).norm() < 1e-8);
  CHECK(cert.h == doctest::Approx(out.result->h).epsilon(1e-12));
  CHECK(cert.max_dual_lelieuvre < 1e-9);
  CHECK(cert.max_identity_rel < 1e-9);
  CHECK(cert.max_alpha_dev < 1e-9);
}

TEST_CASE("minimal nets solve to H = 0") {
  SplitMix64 rng(47);
  auto [net, gen] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.2)),
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(0, 1, -0.15)));
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.is_camc);
  CHECK(std::abs(out.result->h) < 1e-12);
  for (const QuadricPatch& p : out.result->field.patches) CHECK(std::abs(p.a) < 1e-10);
  CHECK_THROWS_AS(sphere_center_check(net, out.result->field), GeometryError);
}

TEST_CASE("sphere nets are CAMC with the ambient curvature") {
  for (double a : {-0.5, 1.0, 3.0}) {
    AsymptoticNet net = sphere_from_quadric(a, {0.0, 0.37, 1.0}, {0.0, 0.61, 1.0});
    CamcOutcome out = solve_camc(net);
    REQUIRE(out.is_camc);
    // The discrete H of any quadrangle inscribed with generator edges equals
    // the ambient -2a/sqrt(1+a), independent of the sampling grid.
    CHECK(out.result->h == doctest::Approx(formula_h(a, 1.0)).epsilon(1e-9));
    CHECK(out.result->max_h_deviation <= 1e-9 * (1.0 + std::abs(out.result->h)));
  }
}

TEST_CASE("solved sphere field is concentric with the ambient center") {
  AsymptoticNet net = sphere_from_quadric(1.0, linspace(0, 1, 3), linspace(0, 1, 3));
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.is_camc);
  SphereCertificate cert = sphere_center_check(net, out.result->field);
  CHECK(cert.pass);
  CHECK((cert.center - Vec3(0.5, 0.5, 1.0)).norm() < 1e-9);
  CHECK(cert.h == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("default-gauge sphere field has non-constant curvature") {
  AsymptoticNet net = sphere_from_quadric(1.0, {0.0, 0.37, 1.0}, {0.0, 1.0});
  QuadricField raw = field_from_conormal(net, propagate_default(net));
  FieldCurvature fc = field_curvature(net, raw);
  CHECK(fc.max_deviation > defaults::camc_tol * (1.0 + std::abs(fc.h)));
}

TEST_CASE("single quadrangle takes the affine-minimal member") {
  CamcOutcome out = solve_camc(standard_quad_net());
  REQUIRE(out.is_camc);
  CHECK(!out.solve_edge.has_value());
  CHECK(out.result->h == 0.0);
  CHECK(out.result->max_h_deviation == 0.0);
  CHECK(std::abs(out.result->field.patch(0, 0).a) < 1e-14);
}

TEST_CASE("pair solution is unique: one sign change along the parameter scan") {
  double x1 = -1.0, x2 = -0.9;
  double omega2 = std::sqrt(x1 * x2);
  auto h_difference = [&](double a) {
    double b_bar = (1.0 + a) * x1 / x2 - 1.0;
    double b = inverted_parameter(b_bar);
    return formula_h(a, 1.0) - formula_h(b, omega2);
  };
  int sign_changes = 0;
  double prev = h_difference(-0.999);
  for (int k = 1; k <= 400; ++k) {
    double a = -0.999 + (6.0 - -0.999) * double(k) / 400.0;
    double cur = h_difference(a);
    if (prev * cur < 0.0) ++sign_changes;
    prev = cur;
  }
  CHECK(sign_changes == 1);
  CHECK(std::abs(h_difference(-1.0 / 19.0)) < 1e-12);
}

TEST_CASE("curvature is strictly decreasing in the parameter") {
  AsymptoticNet base = standard_quad_net();
  double prev = formula_h(-0.99, 1.0);
  for (int k = 1; k <= 100; ++k) {
    double a = -0.99 + 9.0 * double(k) / 100.0;
    QuadricPatch p = build_patch(base.at(0, 0), base.at(1, 0), base.at(0, 1), base.at(1, 1), a);
    double h = patch_mean_curvature(p, 1.0);
    CHECK(h < prev);
    prev = h;
  }
  CHECK(formula_h(-0.9, 1.0) == doctest::Approx(1.8 / std::sqrt(0.1)));
  CHECK(formula_h(0.0, 1.0) == 0.0);
  CHECK(formula_h(3.0, 1.0) == doctest::Approx(-3.0));
}

TEST_CASE("parameter inversion flips the curvature sign") {
  AsymptoticNet base = standard_quad_net();
  for (double a : {-0.7, -1.0 / 19.0, 0.8, 2.5}) {
    QuadricPatch p = build_patch(base.at(0, 0), base.at(1, 0), base.at(0, 1), base.at(1, 1), a);
    QuadricPatch q = build_patch(base.at(0, 0), base.at(1, 0), base.at(0, 1), base.at(1, 1),
                                 inverted_parameter(a));
    CHECK(patch_mean_curvature(q, 1.0) ==
          doctest::Approx(-patch_mean_curvature(p, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("valid nets without a constant-curvature gauge") {
  SplitMix64 rng(53);
  AsymptoticNet row = moutard_net(rng, 3, 1, {1.0, 1.12, 0.93});
  REQUIRE(validate(row).valid);
  CamcOutcome out = solve_camc(row);
  CHECK(!out.is_camc);
  REQUIRE(out.result.has_value());
  CHECK(out.result->max_h_deviation >
        defaults::camc_tol * (1.0 + std::abs(out.result->h)));
  CHECK(!out.failure.empty());

  AsymptoticNet block = moutard_net(rng, 2, 2, {1.0, 1.08, 0.94, 1.05});
  REQUIRE(validate(block).valid);
  CHECK(!solve_camc(block).is_camc);
}

TEST_CASE("invalid and inconsistent nets fail gracefully") {
  SplitMix64 rng(59);
  auto [net, gen] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.2)),
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(0, 1, -0.1)));
  // Break an interior star: the net no longer validates.
  AsymptoticNet broken = net;
  broken.positions[net.domain.vertex_index(1, 1)] += Vec3(0.1, -0.2, 0.3);
  CamcOutcome invalid = solve_camc(broken);
  CHECK(!invalid.is_camc);
  CHECK(!invalid.result.has_value());
  CHECK(!invalid.failure.empty());

  // Displace a corner: all interior stars stay planar but the Lelieuvre system
  // becomes unsolvable.
  AsymptoticNet sphere = sphere_from_quadric(1.0, linspace(0, 1, 3), linspace(0, 1, 3));
  AsymptoticNet twisted = sphere;
  twisted.positions[sphere.domain.vertex_index(0, 0)] += Vec3(0.02, -0.015, 0.02);
  REQUIRE(validate(twisted).valid);
  CamcOutcome inconsistent = solve_camc(twisted);
  CHECK(!inconsistent.is_camc);
  CHECK(!inconsistent.result.has_value());
  CHECK(!inconsistent.failure.empty());
}

TEST_CASE("classification of a proper sphere net") {
  ClassificationReport rep = classify(sphere_from_quadric(1.0, linspace(0, 1, 3), linspace(0, 1, 3)));
  CHECK(rep.validation.valid);
  CHECK(rep.camc.is_camc);
  CHECK(!rep.minimal);
  CHECK(rep.max_strip_residual > defaults::planarity_tol);
  CHECK(rep.proper_sphere);
  REQUIRE(rep.sphere.has_value());
  CHECK((rep.sphere->center - Vec3(0.5, 0.5, 1.0)).norm() < 1e-9);
  CHECK(!rep.improper_sphere);
  CHECK(rep.demoulin);
  CHECK(!rep.q_surface);
  CHECK(rep.ruled == RuledVerdict::Both);
}

TEST_CASE("classification of a paraboloid net") {
  ClassificationReport rep =
      classify(sphere_from_quadric(0.0, {0.0, 0.4, 1.0}, {0.0, 0.55, 1.0}));
  CHECK(rep.validation.valid);
  CHECK(rep.camc.is_camc);
  CHECK(std::abs(rep.camc.result->h) < 1e-10);
  CHECK(rep.minimal);
  CHECK(rep.max_strip_residual < defaults::planarity_tol);
  CHECK(!rep.proper_sphere);
  CHECK(rep.improper_sphere);
  CHECK(rep.conormal_plane_residual < 1e-9);
  CHECK(rep.demoulin);
  CHECK(rep.q_surface);
  CHECK(rep.ruled == RuledVerdict::Both);
}

TEST_CASE("classification of generic minimal and generic valid nets") {
  SplitMix64 rng(61);
  auto [net, gen] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.2)),
      testing::random_polyline(rng, 5, Vec3(0, 0, 1), Vec3(0, 1, -0.1)));
  ClassificationReport rep = classify(net);
  CHECK(rep.minimal);
  CHECK(!rep.proper_sphere);
  CHECK(!rep.improper_sphere);  // wiggly polylines: co-normals span all of space
  CHECK(!rep.demoulin);         // generic minimal nets are not spheres
  CHECK(rep.q_surface);         // but every minimal net is a Q-surface
  CHECK(rep.ruled == RuledVerdict::None);

  ClassificationReport generic = classify(moutard_net(rng, 3, 1, {1.0, 1.1, 0.92}));
  CHECK(generic.validation.valid);
  CHECK(!generic.camc.is_camc);
  CHECK(!generic.minimal);
  CHECK(!generic.proper_sphere);
  CHECK(!generic.demoulin);
}

TEST_CASE("planar polylines give an improper affine sphere") {
  Polyline alpha = {Vec3(0, 0, 1), Vec3(1, 0.05, 1), Vec3(2, 0.3, 1), Vec3(3, 0.7, 1)};
  Polyline beta = {Vec3(0, 0, 1), Vec3(0.1, 1, 1), Vec3(0.35, 2, 1)};
  auto [net, gen] = minimal_from_polylines(alpha, beta);
  ClassificationReport rep = classify(net);
  CHECK(rep.minimal);
  CHECK(rep.improper_sphere);
  CHECK(rep.conormal_plane_residual < 1e-10);
  CHECK(!rep.proper_sphere);
}

TEST_CASE("minimal equivalence: planar strips if and only if H = 0") {
  SplitMix64 rng(67);
  int checked = 0;
  for (const AsymptoticNet& net : testing::random_net_zoo(rng, 8)) {
    ClassificationReport rep = classify(net);
    if (!rep.camc.is_camc) continue;
    bool strips_planar = rep.max_strip_residual <= defaults::planarity_tol;
    bool h_zero = std::abs(rep.camc.result->h) <= defaults::camc_tol;
    CHECK(strips_planar == h_zero);
    ++checked;
  }
  CHECK(checked >= 6);
}

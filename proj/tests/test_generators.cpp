#include "asymnet/generators.hpp"

#include "asymnet/camc.hpp"
#include "asymnet/demoulin.hpp"
#include "asymnet/quadric.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace asymnet;
using testing::linspace;

TEST_CASE("minimal net from straight generator polylines") {
  // alpha_i = (i,0,1), beta_j = (0,j,1): nu(i,j) = (i,j,2) and Lelieuvre
  // integration gives q(i,j) = (2j, 2i, -ij) exactly.
  Polyline alpha, beta;
  for (int k = 0; k <= 3; ++k) {
    alpha.push_back(Vec3(k, 0, 1));
    beta.push_back(Vec3(0, k, 1));
  }
  auto [net, field] = minimal_from_polylines(alpha, beta);
  REQUIRE(net.domain.quads_i == 3);
  REQUIRE(net.domain.quads_j == 3);
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i <= 3; ++i) {
      CHECK((net.at(i, j) - Vec3(2.0 * j, 2.0 * i, -double(i * j))).norm() == 0.0);
      CHECK((field.at(i, j) - Vec3(i, j, 2.0)).norm() == 0.0);
    }
  CHECK(field.orientation == 1);
  for (double l : field.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));

  // The returned co-normals satisfy both Lelieuvre equations edge by edge.
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i < 3; ++i)
      CHECK((field.at(i, j).cross(field.at(i + 1, j)) - (net.at(i + 1, j) - net.at(i, j)))
                .norm() < 1e-14);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i <= 3; ++i)
      CHECK((field.at(i, j).cross(field.at(i, j + 1)) + (net.at(i, j + 1) - net.at(i, j)))
                .norm() < 1e-14);

  CHECK(validate(net).valid);
  ClassificationReport rep = classify(net);
  CHECK(rep.minimal);
  CHECK(rep.improper_sphere);  // co-normals all lie in the plane z = 2
  CHECK(rep.conormal_plane_residual < 1e-12);
  CHECK(rep.demoulin);
  CHECK(rep.q_surface);
}

TEST_CASE("generator base point shifts the whole net") {
  Polyline alpha = {Vec3(0, 0, 1), Vec3(1, 0.1, 1.2), Vec3(2, 0.05, 0.9)};
  Polyline beta = {Vec3(0, 0, 1), Vec3(0.1, 1, 0.8), Vec3(-0.05, 2, 1.1)};
  Vec3 origin(1.0, -2.0, 3.0);
  auto [net0, f0] = minimal_from_polylines(alpha, beta);
  auto [net1, f1] = minimal_from_polylines(alpha, beta, origin);
  CHECK((net1.at(0, 0) - origin).norm() == 0.0);
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i <= 2; ++i)
      CHECK((net1.at(i, j) - net0.at(i, j) - origin).norm() < 1e-14);
}

TEST_CASE("degenerate generator polylines are rejected") {
  Polyline alpha = {Vec3(0, 0, 1), Vec3(0, 0, 1), Vec3(1, 0, 1)};  // repeated vertex
  Polyline beta = {Vec3(0, 0, 1), Vec3(0, 1, 1)};
  CHECK_THROWS_AS(minimal_from_polylines(alpha, beta), GeometryError);
  CHECK_THROWS_AS(minimal_from_polylines(Polyline{Vec3(0, 0, 1)}, beta), GeometryError);
}

TEST_CASE("quadric sampling hits the standard interpolator exactly") {
  AsymptoticNet net = sphere_from_quadric(1.0, linspace(0, 1, 3), linspace(0, 1, 3));
  CHECK((net.at(0, 0) - Vec3(0, 0, 0)).norm() == 0.0);
  CHECK((net.at(1, 1) - Vec3(0.6, 0.6, 0.4)).norm() < 1e-15);
  CHECK((net.at(2, 1) - Vec3(1.0, 2.0 / 3.0, 2.0 / 3.0)).norm() < 1e-15);
  CHECK((net.at(1, 2) - Vec3(2.0 / 3.0, 1.0, 2.0 / 3.0)).norm() < 1e-15);
  CHECK((net.at(2, 2) - Vec3(1, 1, 1)).norm() == 0.0);
  CHECK(validate(net).valid);

  // Every sampled vertex lies on the global quadric.
  Mat4 q = standard_quadric_matrix(1.0);
  for (const Vec3& p : net.positions) {
    Vec4 ph(p.x(), p.y(), p.z(), 1.0);
    ph.normalize();
    CHECK(std::abs(ph.dot(q * ph)) < 1e-12);
  }
}

TEST_CASE("quadric sampling input guards") {
  CHECK_THROWS_AS(sphere_from_quadric(1.0, {0.0}, {0.0, 1.0}), GeometryError);
  CHECK_THROWS_AS(sphere_from_quadric(1.0, std::vector<double>{0.0, 0.5, 0.4},
                                      std::vector<double>{0.0, 1.0}),
                  GeometryError);
  CHECK_THROWS_AS(sphere_from_quadric(-1.0, std::vector<double>{0.0, 1.0},
                                      std::vector<double>{0.0, 1.0}),
                  GeometryError);
}

TEST_CASE("standard pair layout and guards") {
  AsymptoticNet net = standard_pair(-1.0, 0.3, -0.9, 1.1);
  CHECK((net.at(0, 0) - Vec3(-1.0, 0.3, 0.0)).norm() == 0.0);
  CHECK((net.at(1, 0) - Vec3(0, 0, 0)).norm() == 0.0);
  CHECK((net.at(2, 0) - Vec3(1, 0, 0)).norm() == 0.0);
  CHECK((net.at(0, 1) - Vec3(-0.9, 1.1, -0.9)).norm() == 0.0);
  CHECK((net.at(1, 1) - Vec3(0, 1, 0)).norm() == 0.0);
  CHECK((net.at(2, 1) - Vec3(1, 1, 1)).norm() == 0.0);
  CHECK(validate(net).valid);

  CHECK_THROWS_AS(standard_pair(0.1, 0.0, -1.0, 1.0), GeometryError);
  CHECK_THROWS_AS(standard_pair(-1.0, 0.0, 0.0, 1.0), GeometryError);
}

TEST_CASE("equal abscissae give a ruled minimal pair") {
  AsymptoticNet net = standard_pair(-1.0, 0.0, -1.0, 1.0);
  ClassificationReport rep = classify(net);
  CHECK(rep.camc.is_camc);
  CHECK(rep.minimal);
  // Rows are collinear; the single-quad column direction is uninformative.
  CHECK(rep.ruled == RuledVerdict::U);

  // The whole strip lies on the paraboloid z = xy.
  CamcOutcome out = solve_camc(net);
  REQUIRE(out.result.has_value());
  RuledStripResult r =
      ruled_strip_quadric(net, StripId{StripDir::Horizontal, 0}, out.result->field);
  REQUIRE(r.quadric.has_value());
  HomogeneousQuadric paraboloid{standard_quadric_matrix(0.0)};
  CHECK(r.quadric->distance(paraboloid) <= 1e-9);
  CHECK(r.worst_relation <= 1e-12);
}

TEST_CASE("polyline perturbation is deterministic and magnitude-faithful") {
  Polyline alpha = {Vec3(0, 0, 1), Vec3(1, 0.1, 1.2), Vec3(2, 0.05, 0.9)};
  Polyline beta = {Vec3(0, 0, 1), Vec3(0.1, 1, 0.8), Vec3(-0.05, 2, 1.1)};

  auto [a0, b0] = perturb_polylines(alpha, beta, 0.0, 7);
  for (size_t k = 0; k < alpha.size(); ++k) CHECK((a0[k] - alpha[k]).norm() == 0.0);
  for (size_t k = 0; k < beta.size(); ++k) CHECK((b0[k] - beta[k]).norm() == 0.0);

  auto [a1, b1] = perturb_polylines(alpha, beta, 0.1, 42);
  auto [a2, b2] = perturb_polylines(alpha, beta, 0.1, 42);
  auto [a3, b3] = perturb_polylines(alpha, beta, 0.1, 43);
  double same = 0.0, other = 0.0;
  for (size_t k = 0; k < alpha.size(); ++k) {
    same += (a1[k] - a2[k]).norm() + (b1[k] - b2[k]).norm();
    other += (a1[k] - a3[k]).norm() + (b1[k] - b3[k]).norm();
    CHECK((a1[k] - alpha[k]).norm() <= 0.1 * std::sqrt(3.0));
  }
  CHECK(same == 0.0);
  CHECK(other > 1e-3);

  CHECK_THROWS_AS(perturb_polylines(alpha, beta, -0.1, 1), GeometryError);

  // Perturbed generators still produce a minimal net, but generically no
  // longer an improper sphere.
  auto [net, field] = minimal_from_polylines(a1, b1);
  for (double l : field.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  ClassificationReport rep = classify(net);
  CHECK(rep.minimal);
  CHECK(!rep.improper_sphere);
}

TEST_CASE("sampled quadrics classify as proper spheres after affine shuffling") {
  SplitMix64 rng(0x9e3779b9u);
  AsymptoticNet net = sphere_from_quadric(3.0, std::vector<double>{0.0, 0.35, 0.7, 1.0},
                                          std::vector<double>{0.0, 0.6, 1.0});
  auto [m, shift] = testing::random_unimodular(rng);
  AsymptoticNet moved = testing::transform(net, m, shift);
  ClassificationReport rep = classify(moved);
  CHECK(rep.camc.is_camc);
  CHECK(!rep.minimal);
  CHECK(rep.proper_sphere);
  CHECK(rep.demoulin);
  REQUIRE(rep.sphere.has_value());
  // Unimodular image of the standard center for a = 3.
  Vec3 want = m * patch_center(build_patch(Vec3::Zero(), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                           Vec3(1, 1, 1), 3.0)) +
              shift;
  CHECK((rep.sphere->center - want).norm() < 1e-7);
}

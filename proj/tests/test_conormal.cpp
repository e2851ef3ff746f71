#include "asymnet/conormal.hpp"

#include "asymnet/generators.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace asymnet;
using testing::standard_quad_net;

namespace {

double vec_diff(const Vec3& got, const Vec3& want) { return (got - want).norm(); }

}  // namespace

TEST_CASE("propagation reproduces the reference co-normals of the standard quadrangle") {
  AsymptoticNet net = standard_quad_net();
  const double r2 = std::sqrt(2.0);
  ConormalField field = propagate(net, Vec3(0, 0, 1) / r2, 0, 0);

  CHECK(vec_diff(field.at(0, 0), Vec3(0, 0, 1) / r2) < 1e-12);
  CHECK(vec_diff(field.at(1, 0), r2 * Vec3(0, -1, 1)) < 1e-12);
  CHECK(vec_diff(field.at(0, 1), r2 * Vec3(-1, 0, 1)) < 1e-12);
  CHECK(vec_diff(field.at(1, 1), Vec3(-1, -1, 1) / r2) < 1e-12);
  CHECK(field.lambda_at(0, 0) == doctest::Approx(r2).epsilon(1e-13));
  CHECK(field.orientation == -1);
}

TEST_CASE("default propagation fixes a positively oriented field") {
  AsymptoticNet net = standard_quad_net();
  ConormalField field = propagate_default(net);
  CHECK(field.orientation == +1);
  ConormalResiduals res = conormal_residuals(net, field);
  CHECK(res.max_lelieuvre < 1e-12);
  CHECK(res.max_omega_rel < 1e-12);
}

TEST_CASE("scaling the seed is the black-white rescaling") {
  testing::SplitMix64 rng(5);
  auto [net, gen_field] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.1)),
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(0, 1, 0.2)));
  ConormalField base = propagate_default(net);
  double rho = 1.7;
  ConormalField scaled_seed = propagate(net, rho * base.at(0, 0), 0, 0);
  ConormalField rescaled = black_white_rescale(base, rho);
  for (int j = 0; j <= net.domain.quads_j; ++j)
    for (int i = 0; i <= net.domain.quads_i; ++i)
      CHECK(vec_diff(scaled_seed.at(i, j), rescaled.at(i, j)) < 1e-10);
  for (int j = 0; j < net.domain.quads_j; ++j)
    for (int i = 0; i < net.domain.quads_i; ++i)
      CHECK(scaled_seed.lambda_at(i, j) ==
            doctest::Approx(rescaled.lambda_at(i, j)).epsilon(1e-10));
}

TEST_CASE("black-white rescaling moves lambda by the parity power") {
  AsymptoticNet net = standard_quad_net();
  ConormalField field = propagate_default(net);
  double rho = std::sqrt(2.0);
  ConormalField rescaled = black_white_rescale(field, rho);
  // Quad (0,0) has even parity: lambda -> lambda / rho.
  CHECK(rescaled.lambda_at(0, 0) == doctest::Approx(field.lambda_at(0, 0) / rho).epsilon(1e-13));
  // Lelieuvre residual is untouched by the gauge.
  CHECK(conormal_residuals(net, rescaled).max_lelieuvre < 1e-12);
  // rho = 1 is the identity.
  ConormalField same = black_white_rescale(field, 1.0);
  for (size_t k = 0; k < field.nu.size(); ++k) CHECK(vec_diff(same.nu[k], field.nu[k]) == 0.0);
}

TEST_CASE("non-asymptotic input is rejected as inconsistent") {
  testing::SplitMix64 rng(7);
  auto [net, gen_field] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.1)),
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(0, 1, 0.2)));
  AsymptoticNet broken = net;
  broken.at(2, 2) += Vec3(0.05, -0.03, 0.08);
  CHECK_THROWS_AS(propagate_default(broken), InconsistentNetError);
}

TEST_CASE("non-orthogonal seeds are rejected") {
  AsymptoticNet net = standard_quad_net();
  CHECK_THROWS_AS(propagate(net, Vec3(1, 0, 0), 0, 0), GeometryError);
}

TEST_CASE("propagation is independent of the traversal order") {
  testing::SplitMix64 rng(13);
  for (const AsymptoticNet& net : testing::random_net_zoo(rng, 5)) {
    ConormalField row = propagate_default(net, defaults::lelieuvre_tol,
                                          defaults::moutard_angle_tol, Traversal::RowMajor);
    ConormalField col = propagate_default(net, defaults::lelieuvre_tol,
                                          defaults::moutard_angle_tol, Traversal::ColumnMajor);
    double scale = 0.0;
    for (const Vec3& v : row.nu) scale = std::max(scale, v.norm());
    for (size_t k = 0; k < row.nu.size(); ++k)
      CHECK(vec_diff(row.nu[k], col.nu[k]) < 1e-9 * scale);
  }
}

TEST_CASE("residuals and the metric relation hold on random nets") {
  testing::SplitMix64 rng(17);
  for (const AsymptoticNet& net : testing::random_net_zoo(rng, 8)) {
    ConormalField field = propagate_default(net);
    CHECK(field.orientation == +1);
    ConormalResiduals res = conormal_residuals(net, field);
    CHECK(res.max_lelieuvre <= defaults::lelieuvre_tol);
    CHECK(res.max_moutard_angle <= defaults::moutard_angle_tol);
    CHECK(res.max_omega_rel <= defaults::lelieuvre_tol);
  }
}

TEST_CASE("moutard factor recomputation matches the cached value") {
  testing::SplitMix64 rng(19);
  auto [net, gen_field] = minimal_from_polylines(
      testing::random_polyline(rng, 5, Vec3(0, 0, 1), Vec3(1, 0, -0.1)),
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(0, 1, 0.1)));
  ConormalField field = propagate_default(net);
  for (int j = 0; j < net.domain.quads_j; ++j)
    for (int i = 0; i < net.domain.quads_i; ++i) {
      double lam = moutard_lambda(field, i, j);
      CHECK(lam == doctest::Approx(field.lambda_at(i, j)).epsilon(1e-12));
    }
  // The construction field has lambda = 1; re-seeding only changes the gauge,
  // so lambdas of adjacent quadrangles multiply to 1.
  for (int j = 0; j < net.domain.quads_j; ++j)
    for (int i = 0; i + 1 < net.domain.quads_i; ++i)
      CHECK(field.lambda_at(i, j) * field.lambda_at(i + 1, j) ==
            doctest::Approx(1.0).epsilon(1e-9));
  for (int j = 0; j < net.domain.quads_j; ++j)
    for (int i = 0; i < net.domain.quads_i; ++i)
      CHECK(moutard_lambda(gen_field, i, j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generated minimal fields satisfy the Lelieuvre equations exactly") {
  testing::SplitMix64 rng(29);
  auto [net, field] = minimal_from_polylines(
      testing::random_polyline(rng, 4, Vec3(0, 0, 1), Vec3(1, 0, 0.3)),
      testing::random_polyline(rng, 5, Vec3(0, 0, 1), Vec3(0, 1, -0.3)));
  ConormalResiduals res = conormal_residuals(net, field);
  CHECK(res.max_lelieuvre < 1e-12);
  CHECK(res.max_moutard_angle < 1e-12);
  CHECK(res.max_omega_rel < 1e-10);
}

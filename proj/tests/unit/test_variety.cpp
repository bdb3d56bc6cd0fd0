#include "mam/variety.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mam;

namespace {

Vec symmetric_pentagon_point() {
  Vec x = Vec::Zero(10);
  for (int j = 0; j < 5; ++j) x(2 * j) = 1.0 / std::sqrt(5.0);
  return x;
}

}  // namespace

TEST_CASE("residual examples") {
  const Configuration pent = fixtures::pentagon();
  CHECK(evaluate_system(pent, symmetric_pentagon_point()).lpNorm<Eigen::Infinity>() < 1e-15);
  const Vec r0 = evaluate_system(pent, Vec::Zero(10));
  CHECK(r0.head(2).norm() == 0.0);
  CHECK(r0(2) == -1.0);
}

TEST_CASE("property: residuals match a direct complex transcription") {
  Philox rng(11, 0);
  for (const char* name : {"pentagon", "classical_m2_n6", "mixed_m1_s1", "mixed_m1_s2", "mixed_general_m2",
                           "mixed_general_m3"}) {
    const Configuration cfg = fixtures::load(name);
    for (int t = 0; t < 20; ++t) {
      const Vec x = fixtures::random_vec(rng, cfg.ambient_dim());
      CHECK((evaluate_system(cfg, x) - oracle::residual_direct(cfg, x)).norm() < 1e-12 * (1 + x.squaredNorm()));
    }
  }
}

TEST_CASE("property: Jacobian matches central differences") {
  Philox rng(12, 0);
  for (const char* name : {"pentagon", "mixed_m1_s2", "mixed_general_m3"}) {
    const Configuration cfg = fixtures::load(name);
    const Vec x = fixtures::random_vec(rng, cfg.ambient_dim());
    const Mat j = system_jacobian(cfg, x);
    const double h = 1e-6;
    for (int c = 0; c < cfg.ambient_dim(); ++c) {
      Vec e = Vec::Zero(cfg.ambient_dim());
      e(c) = h;
      const Vec fd = (evaluate_system(cfg, x + e) - evaluate_system(cfg, x - e)) / (2 * h);
      CHECK((fd - j.col(c)).norm() < 1e-6);
    }
  }
}

TEST_CASE("property: quadric residuals are homogeneous of degree 2") {
  Philox rng(13, 0);
  const Configuration cfg = fixtures::load("mixed_general_m2");
  for (int t = 0; t < 20; ++t) {
    const Vec x = fixtures::random_vec(rng, cfg.ambient_dim());
    const double s = 0.1 + 3 * rng.uniform();
    CHECK((quadric_residuals(cfg, s * x) - s * s * quadric_residuals(cfg, x)).norm() < 1e-11 * (1 + s * s) * (1 + x.squaredNorm()));
  }
}

TEST_CASE("projection") {
  const Configuration pent = fixtures::pentagon();
  const ProjectionResult on = project_to_variety(pent, symmetric_pentagon_point());
  REQUIRE(on.ok());
  CHECK(on.iterations == 0);
  CHECK(on.point.coordinates == symmetric_pentagon_point());

  Philox rng(3, 3);
  Vec d = fixtures::random_vec(rng, 10);
  d *= 1e-3 / d.norm();
  const ProjectionResult near = project_to_variety(pent, symmetric_pentagon_point() + d);
  REQUIRE(near.ok());
  CHECK(near.point.residual_inf_norm < 1e-12);
  CHECK(near.iterations <= 10);

  // Idempotence.
  const ProjectionResult again = project_to_variety(pent, near.point.coordinates);
  REQUIRE(again.ok());
  CHECK((again.point.coordinates - near.point.coordinates).norm() < 1e-10);
}

TEST_CASE("projection detects singular points of inadmissible configurations") {
  // lambda_0 = 1, lambda_1 = -1: the circle |z_0| = |z_1|, z_others = 0 is singular.
  const Configuration cfg = make_classical(std::vector<cplx>{{1, 0}, {-1, 0}, {0, 1}, {-1, 1}, {1, 1}});
  Vec x = Vec::Zero(10);
  x(0) = 1.0 / std::sqrt(2.0) + 1e-4;
  x(2) = 1.0 / std::sqrt(2.0);
  x(4) = 1e-5;
  const ProjectionResult r = project_to_variety(cfg, x);
  CHECK(r.status == ProjectionStatus::singular_point);
}

TEST_CASE("sampling") {
  const Configuration pent = fixtures::pentagon();
  CHECK(sample_points(pent, 0, 1).empty());
  const auto pts = sample_points(pent, 100, 42);
  REQUIRE(pts.size() == 100);
  for (const VarietyPoint& p : pts) {
    CHECK(p.jacobian_real_rank == 3);
    CHECK(p.residual_inf_norm <= 1e-10);
    CHECK(nonzero_coordinate_count(pent, p.coordinates) >= 3);
    CHECK(p.tangent_frame.cols() == 7);
    const Mat j = system_jacobian(pent, p.coordinates);
    CHECK((j * p.tangent_frame).norm() < 1e-9);
    CHECK((p.tangent_frame.transpose() * p.tangent_frame - Mat::Identity(7, 7)).norm() < 1e-10);
    CHECK(frame_orientation(j, p.tangent_frame) > 0.0);
  }
  CHECK(nonzero_coordinate_count(pent, symmetric_pentagon_point()) == 5);
}

TEST_CASE("property: OpenMP and serial sampling agree bit for bit") {
  for (const char* name : {"pentagon", "classical_m2_n6", "mixed_m1_s2", "mixed_general_m2"}) {
    const Configuration cfg = fixtures::load(name);
    const auto a = sample_points(cfg, 40, 7);
    const auto b = sample_points_serial(cfg, 40, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].coordinates == b[i].coordinates);
      CHECK(a[i].tangent_frame == b[i].tangent_frame);
    }
    const auto c = sample_points(cfg, 5, 8);
    CHECK(c[0].coordinates != a[0].coordinates);
  }
  const Configuration mg = fixtures::load("mixed_general_m2");
  const auto a = sample_with_zero_pattern(mg, {1}, 20, 3);
  const auto b = sample_with_zero_pattern_serial(mg, {1}, 20, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coordinates == b[i].coordinates);
}

TEST_CASE("samples are distinct") {
  const auto pts = sample_points(fixtures::load("classical_m2_n6"), 60, 5);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK((pts[i].coordinates - pts[j].coordinates).norm() > 1e-6);
}

TEST_CASE("mixed-general sampling and strata") {
  const Configuration mg = fixtures::load("mixed_general_m2");
  const auto pts = sample_points(mg, 60, 1);
  bool all_nonzero = false;
  for (const VarietyPoint& p : pts) {
    CHECK(p.tangent_frame.cols() == 2 * mg.n - 1);
    double rho = p.coordinates.squaredNorm();
    CHECK(std::abs(rho - 1.0) < 1e-10);
    const auto w = w_block(mg, p.coordinates);
    all_nonzero |= std::abs(w[0]) > 1e-6 && std::abs(w[1]) > 1e-6;
  }
  CHECK(all_nonzero);

  const auto full = sample_with_zero_pattern(mg, {0, 1}, 20, 2);
  for (const VarietyPoint& p : full) {
    CHECK(p.zero_pattern == std::vector<int>{0, 1});
    for (cplx w : w_block(mg, p.coordinates)) CHECK(w == cplx(0.0));
    const Configuration cl = make_classical(fixtures::moment_curve(2, 5));
    CHECK(evaluate_system(cl, p.coordinates.tail(2 * mg.n)).lpNorm<Eigen::Infinity>() < 1e-10);
  }
  for (const VarietyPoint& p : sample_with_zero_pattern(mg, {1}, 20, 2)) {
    const auto w = w_block(mg, p.coordinates);
    CHECK(w[1] == cplx(0.0));
    CHECK(std::abs(w[0]) > 0.0);
  }
}

TEST_CASE("mixed-m1 strata") {
  const Configuration s1 = fixtures::load("mixed_m1_s1");
  for (const VarietyPoint& p : sample_with_zero_pattern(s1, {}, 20, 4))
    CHECK(w_block(s1, p.coordinates)[0] == cplx(0.0));

  const Configuration s2 = fixtures::load("mixed_m1_s2");
  for (const VarietyPoint& p : sample_with_zero_pattern(s2, {}, 20, 4)) {
    const auto w = w_block(s2, p.coordinates);
    CHECK(std::abs(w[0] * w[0] + w[1] * w[1]) < 1e-10);
    CHECK(std::abs(w[0]) > 1e-6);
    CHECK(std::abs(std::abs(w[1]) - std::abs(w[0])) < 1e-8);
    CHECK(p.zero_pattern == std::vector<int>{0});
  }
  for (const VarietyPoint& p : sample_with_zero_pattern(s2, {0, 1}, 10, 4))
    for (cplx w : w_block(s2, p.coordinates)) CHECK(w == cplx(0.0));
  CHECK_THROWS_AS(sample_with_zero_pattern(fixtures::pentagon(), {}, 1, 1), StructuralError);
}

TEST_CASE("empty varieties raise a partial-sample error") {
  // All lambda equal: sum lambda |z|^2 = lambda * 1 never vanishes on the sphere.
  const Configuration cfg = make_classical(std::vector<cplx>{{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}});
  SolverOptions opts;
  opts.max_attempts = 2;
  try {
    (void)sample_points(cfg, 3, 1, opts);
    FAIL("expected PartialSampleError");
  } catch (const PartialSampleError& e) {
    CHECK(e.requested == 3);
    CHECK(e.succeeded == 0);
  }
}

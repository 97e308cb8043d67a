#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "kinetic/error.hpp"
#include "kinetic/format.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/snapshot.hpp"
#include "kinetic/summation.hpp"

using namespace kinetic;

TEST_CASE("gauss-legendre integrates polynomials up to degree 2n-1") {
  for (std::size_t n = 1; n <= 12; ++n) {
    const GaussRule rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (std::size_t i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], static_cast<double>(k));
      const double exact = (k % 2 == 0) ? 2.0 / static_cast<double>(k + 1) : 0.0;
      CHECK(q == doctest::Approx(exact).epsilon(1e-13));
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
  }
  const GaussRule two = gauss_legendre(2);
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("spatial grid indexing, wrapping and validation") {
  const SpatialGrid g(3, {1.0, 2.0, 3.0}, {4, 5, 6});
  CHECK(g.cell_count() == 120);
  CHECK(g.cell_volume() == doctest::Approx(6.0 / 120.0));
  CHECK(g.volume() == doctest::Approx(6.0));
  for (std::size_t c = 0; c < g.cell_count(); ++c) CHECK(g.index(g.coords(c)) == c);
  CHECK(g.index({1, 0, 0}) == 1);  // axis 0 fastest
  CHECK(g.wrap(1, -0.5) == doctest::Approx(1.5));
  CHECK(g.wrap(0, 2.25) == doctest::Approx(0.25));
  CHECK(g.center(0)[2] == doctest::Approx(0.25));

  const SpatialGrid line(1, {2.0, 7.0, 7.0}, {8, 9, 9});
  CHECK(line.cells(1) == 1);
  CHECK(line.cell_count() == 8);

  CHECK_THROWS_AS(SpatialGrid(0, {1, 1, 1}, {4, 4, 4}), DomainError);
  CHECK_THROWS_AS(SpatialGrid(4, {1, 1, 1}, {4, 4, 4}), DomainError);
  CHECK_THROWS_AS(SpatialGrid(1, {-1, 1, 1}, {4, 4, 4}), DomainError);
  CHECK_THROWS_AS(SpatialGrid(2, {1, 1, 1}, {4, 1, 4}), DomainError);
}

TEST_CASE("velocity grid quadrature matches closed forms") {
  const std::size_t S = 5;
  const double s_max = 2.0;
  const VelocityGrid vg = build_velocity_grid(S, 32, s_max);
  const double ds = s_max / S;
  // Midpoint rule for s^2: ds^3 (S^3/3 - S/12).
  const double radial_exact = ds * ds * ds * (std::pow(S, 3) / 3.0 - S / 12.0);
  double radial = 0.0;
  for (double r : vg.radial_weights()) radial += r;
  CHECK(radial == doctest::Approx(radial_exact).epsilon(1e-14));

  double sphere = 0.0;
  Mat3 second{};
  for (std::size_t a = 0; a < vg.angle_count(); ++a) {
    sphere += vg.angular_weights()[a];
    const Vec3& u = vg.direction(a);
    CHECK(dot(u, u) == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) second[i][j] += vg.angular_weights()[a] * u[i] * u[j];
    }
    const Vec3& v = vg.direction(vg.antipode(a));
    for (int i = 0; i < 3; ++i) CHECK(v[i] == -u[i]);
  }
  CHECK(sphere == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double exact = (i == j) ? 4.0 * std::numbers::pi / 3.0 : 0.0;
      CHECK(second[i][j] == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
  CHECK(vg.polar_count() == 2);
  CHECK(build_velocity_grid(3, 2, 1.0).polar_count() == 1);
  CHECK_THROWS_AS(build_velocity_grid(3, 6, 1.0), DomainError);
  CHECK_THROWS_AS(build_velocity_grid(0, 8, 1.0), DomainError);
  CHECK_THROWS_AS(build_velocity_grid(3, 8, -1.0), DomainError);
}

TEST_CASE("phase integral of a constant field") {
  auto g = testing::phase_grid(2, 6, 1.5);
  const double c = 0.7;
  const auto f = DistributionField::sample(g, [c](const Vec3&, const Vec3&) { return c; });
  double radial = 0.0;
  for (double r : g->velocity().radial_weights()) radial += r;
  const double exact = c * g->spatial().volume() * 4.0 * std::numbers::pi * radial;
  CHECK(phase_integral(f, [](const Vec3&, const Vec3&) { return 1.0; }) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(phase_integral_velocity(f, [](const Vec3&) { return 1.0; }) == doctest::Approx(exact).epsilon(1e-14));
  CHECK_THROWS_AS(phase_integral(f, [](const Vec3&, const Vec3&) { return std::nan(""); }), InvalidValue);
}

TEST_CASE("distribution fields reject negative and non-finite values, naming the node") {
  auto g = testing::phase_grid();
  std::vector<double> v(g->size(), 1.0);
  v[g->index(3, 1, 2)] = -1e-3;
  try {
    DistributionField f(g, v);
    FAIL("negative entry accepted");
  } catch (const InvalidValue& e) {
    const std::string what = e.what();
    CHECK(what.find("cell 3") != std::string::npos);
  }
  v[g->index(3, 1, 2)] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DistributionField(g, v), InvalidValue);
  CHECK_THROWS_AS(DistributionField(g, std::vector<double>(3, 1.0)), GridMismatch);
}

TEST_CASE("grid mismatch is detected") {
  auto a = testing::phase_grid(1, 8);
  auto b = testing::phase_grid(1, 16);
  CHECK(same_grid(*a, *a));
  CHECK_FALSE(same_grid(*a, *b));
  CHECK_THROWS_AS(require_same_grid(*a, *b, "test"), GridMismatch);
}

TEST_CASE("rotated velocity grid keeps weights and rotates directions") {
  const VelocityGrid vg = build_velocity_grid(2, 8, 1.0);
  const Mat3 rz{{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
  const VelocityGrid r = vg.rotated(rz);
  for (std::size_t a = 0; a < vg.angle_count(); ++a) {
    const Vec3& u = vg.direction(a);
    CHECK(r.direction(a)[0] == doctest::Approx(-u[1]));
    CHECK(r.direction(a)[1] == doctest::Approx(u[0]));
    CHECK(r.angular_weights()[a] == vg.angular_weights()[a]);
  }
}

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum s;
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 1.0);
  std::vector<double> v(1000, 0.1);
  CHECK(compensated_sum(v) == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("shortest round-trip formatting and FNV-1a") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<double>(i % 40 - 20));
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.125) == "0.125");
  CHECK(hex64(fnv1a64(std::string())) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64(std::string("a"))) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a64(std::string("foobar"))) == "85944171f73967e8");
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (unsigned workers : {1u, 3u, 8u}) {
    set_worker_count(workers);
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                      if (i == 7) throw DomainError("boom");
                    }),
                    DomainError);
  }
  set_worker_count(0);
}

TEST_CASE("snapshot round trip is bit-exact and detects corruption") {
  auto g = testing::phase_grid(2, 4, 1.0, 3, 8);
  std::mt19937_64 rng(11);
  DistributionField f = testing::random_field(g, rng);
  f.set_time(0.375);
  const auto dir = std::filesystem::temp_directory_path() / "kinetic_snapshot_test";
  std::filesystem::create_directories(dir);
  const std::string sum = write_snapshot(f, dir / "snap");
  CHECK(sum.rfind("fnv1a64:", 0) == 0);
  const DistributionField back = read_snapshot(dir / "snap");
  CHECK(back.time() == f.time());
  CHECK(same_grid(back.grid(), f.grid()));
  for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(back.values()[i] == f.values()[i]);
  CHECK_THROWS_AS(read_snapshot(dir / "snap", testing::phase_grid(2, 8, 1.0, 3, 8)), GridMismatch);
  {
    std::fstream bin(snapshot_paths(dir / "snap").data, std::ios::in | std::ios::out | std::ios::binary);
    bin.seekp(17);
    bin.put('\x7f');
  }
  CHECK_THROWS_AS(read_snapshot(dir / "snap"), KineticError);
  CHECK_THROWS_AS(read_snapshot(dir / "missing"), KineticError);
  std::filesystem::remove_all(dir);
}

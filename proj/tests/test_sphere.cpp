#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rtlab/io.hpp"
#include "rtlab/sphere.hpp"
#include "support/oracles.hpp"

using namespace rtlab;

namespace {

SpherePoint axis(int k, int i, double sign = 1) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c[static_cast<std::size_t>(i)] = sign;
  return SpherePoint::from_unit(c);
}

}  // namespace

TEST_CASE("uniform points lie on the sphere and are reproducible") {
  Rng rng(3);
  const auto p = sample_uniform_point(1, rng);
  CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sample_uniform_point(0, rng), std::invalid_argument);

  Rng a(7), b(7);
  CHECK(sample_uniform_point(20, a) == sample_uniform_point(20, b));
}

TEST_CASE("uniform points on S^2 have mean near zero") {
  Rng rng(11);
  double sum[3] = {0, 0, 0};
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_uniform_point(2, rng);
    for (int j = 0; j < 3; ++j) sum[j] += p[static_cast<std::size_t>(j)];
  }
  for (double s : sum) CHECK(std::abs(s / n) < 0.02);
}

TEST_CASE("distance") {
  const auto e0 = axis(3, 0), e1 = axis(3, 1);
  CHECK(distance(e0, e0) == 0.0);
  CHECK(distance(e0, e0.antipode()) == doctest::Approx(2.0));
  CHECK(distance(e0, e1) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(distance(e0, axis(4, 0)), std::invalid_argument);

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample_uniform_point(6, rng), y = sample_uniform_point(6, rng), z = sample_uniform_point(6, rng);
    CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-12);
  }
}

TEST_CASE("cap measure closed forms") {
  for (int k : {1, 2, 3, 5, 10, 50, 100, 200}) CHECK(std::abs(cap_measure(k, 0.0) - 0.5) < 1e-12);
  CHECK(cap_measure(2, 0.5) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(cap_measure(2, 0.9) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(cap_measure(7, -1.0) == 1.0);
  CHECK(cap_measure(7, 1.0) == 0.0);
  CHECK_THROWS_AS(cap_measure(3, 1.5), std::invalid_argument);
}

TEST_CASE("cap measure against the incomplete beta function") {
  for (int k : {3, 4, 5, 10, 20, 50, 200})
    for (double s = -0.95; s < 0.96; s += 0.05) {
      INFO("k=" << k << " s=" << s);
      CHECK(std::abs(cap_measure(k, s) - oracle::cap_measure_beta(k, s)) < 1e-9);
    }
}

TEST_CASE("cap measure is strictly decreasing") {
  for (int k : {2, 10, 40}) {
    double prev = 1.0 + 1e-9;
    for (double s = -0.99; s <= 0.99; s += 0.01) {
      const double m = cap_measure(k, s);
      if (m > 1e-12 && m < 1 - 1e-12)
        CHECK(m < prev);
      else
        CHECK(m <= prev);
      prev = m;
    }
  }
}

TEST_CASE("cap helpers") {
  CHECK(cap_threshold_for_radius(1.0) == doctest::Approx(0.5));
  const auto cap = SphericalCap::with_radius(axis(2, 0), 1.0);
  CHECK(2 * cap.height() == doctest::Approx(cap.radius() * cap.radius()));
  CHECK(cap_threshold_for_measure(5, cap_measure(5, 0.3)) == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("simplex edge length") {
  CHECK(simplex_edge_length(2) == doctest::Approx(2.0));
  CHECK(simplex_edge_length(3) == doctest::Approx(std::sqrt(3.0)));
  CHECK(std::abs(simplex_edge_length(1'000'000) - std::sqrt(2.0)) < 1e-5);
  CHECK_THROWS_AS(simplex_edge_length(1), std::invalid_argument);
}

TEST_CASE("find_eps_k") {
  const EpsK loose = find_eps_k(0.49, 0.49, 2);
  CHECK(loose.k <= 50);

  const EpsK e = find_eps_k(0.3, 0.3, 3);
  const double s3 = cap_threshold_for_diameter(2 - e.epsilon / (2 * std::sqrt(static_cast<double>(e.k))));
  CHECK(cap_measure(e.k, s3) <= 0.3);
  CHECK(e.p1_measure >= 0.5 - 0.3);
  CHECK(e.theta < 0.25);
  for (const auto& c : e.p2) CHECK(c.holds);

  const EpsK tighter = find_eps_k(0.3, 0.2, 3);
  CHECK(tighter.k >= e.k);
  CHECK_THROWS_AS(find_eps_k(0.6, 0.3, 2), std::invalid_argument);
}

TEST_CASE("check_p4 margins") {
  const double g = 0.2;
  const auto p = axis(4, 0);
  CHECK(check_p4(p, p, axis(4, 1), axis(4, 1, -1), g) <= -(2 - g));
  CHECK(check_p4(p, p.antipode(), axis(4, 1), axis(4, 1, -1), g) == doctest::Approx(-g));
  CHECK_THROWS_AS(check_p4(p, p, p, p, 0.3), std::invalid_argument);

  Rng rng(1);
  const P4Search r = p4_search(20, g, 100'000, 100, rng);
  CHECK(r.best_margin < 0);
}

TEST_CASE("no triangles of far points below 2 - sqrt3") {
  const double theta = 0.2;
  Rng rng(8);
  for (int i = 0; i < 5000; ++i) {
    const auto x = sample_uniform_point(3, rng);
    // Start near the antipode so that near misses are actually probed.
    auto nudge = [&](const SpherePoint& c) {
      std::vector<double> v(c.coords().begin(), c.coords().end());
      for (auto& a : v) a += 0.3 * rng.normal();
      return SpherePoint::normalized(v);
    };
    const auto y = nudge(x.antipode()), z = nudge(x.antipode());
    const double lim = 2 - theta;
    CHECK_FALSE((distance(x, y) >= lim && distance(x, z) >= lim && distance(y, z) >= lim));
  }
}

TEST_CASE("partitions") {
  const SpherePartition two = build_partition(2, 2, 0.1, 4);
  REQUIRE(two.reps.size() == 2);
  Rng rng(2);
  const PartitionReport rep = assess_partition(two, 100'000, rng);
  for (double m : rep.measures) CHECK(std::abs(m - 0.5) <= 0.02);

  const SpherePartition one = build_partition(3, 1, 0.1, 4);
  Rng rng1(2);
  CHECK(assess_partition(one, 1000, rng1).measures.at(0) == 1.0);

  const SpherePartition a = build_partition(5, 30, 0.1, 99), b = build_partition(5, 30, 0.1, 99);
  CHECK(a.reps == b.reps);
  for (const auto& x : a.reps) {
    double n2 = 0;
    for (double c : x.coords()) n2 += c * c;
    CHECK(std::abs(n2 - 1) < 1e-12);
  }
}

TEST_CASE("partition measures are balanced at moderate z") {
  const std::size_t z = 50;
  const SpherePartition p = build_partition(4, z, 0.1, 17);
  Rng rng(23);
  const PartitionReport rep = assess_partition(p, 400 * z * 10, rng);
  for (double m : rep.measures) CHECK(std::abs(m * static_cast<double>(z) - 1) <= 0.2);
}

TEST_CASE("partition files round-trip") {
  const SpherePartition p = build_partition(3, 7, 0.125, 5);
  std::stringstream s;
  write_partition(s, p);
  const SpherePartition q = read_partition(s);
  CHECK(q.k == p.k);
  CHECK(q.z == p.z);
  CHECK(q.seed == p.seed);
  CHECK(q.theta == p.theta);
  for (std::size_t i = 0; i < p.z; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(q.reps[i][j] == p.reps[i][j]);
}

TEST_CASE("d_t estimates") {
  Rng rng(3);
  const std::vector<SphericalCap> point{SphericalCap{axis(2, 0), 1.0}};
  CHECK(estimate_dt(point, 2, 50, rng) == doctest::Approx(0.0).epsilon(1e-9));

  const std::vector<SphericalCap> whole{SphericalCap{axis(2, 0), -1.0}};
  CHECK(estimate_dt(whole, 3, 200, rng) == doctest::Approx(std::sqrt(3.0)).epsilon(0.05));
  CHECK_THROWS_AS(estimate_dt(std::span<const SphericalCap>{}, 3, 10, rng), std::invalid_argument);
}

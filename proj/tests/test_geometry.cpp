#include <doctest.h>

#include <cmath>
#include <random>

#include "hplateau/geometry.hpp"

using namespace hplateau;

TEST_CASE("distance along the vertical geodesic is log z") {
  CHECK(hyp_distance({0, 0, 1}, {0, 0, std::exp(1.0)}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hyp_distance({0, 0, 1}, {0, 0, 1}) == 0.0);
}

TEST_CASE("horizontal unit offset gives arccosh(1.5)") {
  CHECK(hyp_distance({0, 0, 1}, {1, 0, 1}) ==
        doctest::Approx(std::acosh(1.5)).epsilon(1e-12));
}

TEST_CASE("distance rejects nonpositive z") {
  CHECK_THROWS_AS(hyp_distance({0, 0, 0}, {0, 0, 1}), std::domain_error);
  CHECK_THROWS_AS(hyp_distance({0, 0, 1}, {0, 0, -2}), std::domain_error);
}

TEST_CASE("primitive isometries act as expected") {
  const auto dil = Isometry::dilation({0, 0}, 2.0);
  const HPoint p = apply(dil, {0, 0, 1});
  CHECK(p.x == 0.0);
  CHECK(p.z == 2.0);

  const HPoint q = apply(Isometry::identity(), {3, 4, 5});
  CHECK(q.x == 3.0);
  CHECK(q.y == 4.0);
  CHECK(q.z == 5.0);

  // d((0,0,1),(1,0,1)) = d((0,0,2),(2,0,2))
  CHECK(hyp_distance(apply(dil, {0, 0, 1}), apply(dil, {1, 0, 1})) ==
        doctest::Approx(hyp_distance({0, 0, 1}, {1, 0, 1})).epsilon(1e-12));
}

TEST_CASE("random isometry words preserve distance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::uniform_real_distribution<double> zdist(0.05, 4.0);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> len(1, 4);

  for (int trial = 0; trial < 1000; ++trial) {
    Isometry g;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) {
      switch (kind(rng)) {
        case 0:
          g = g.then(Isometry::dilation({uni(rng), uni(rng)}, zdist(rng)));
          break;
        case 1:
          g = g.then(Isometry::translation({uni(rng), uni(rng)}));
          break;
        case 2:
          g = g.then(Isometry::rotation({uni(rng), uni(rng)}, uni(rng)));
          break;
        default:
          g = g.then(Isometry::inversion({uni(rng), uni(rng)}, zdist(rng)));
          break;
      }
    }
    const HPoint p{uni(rng), uni(rng), zdist(rng)};
    const HPoint q{uni(rng), uni(rng), zdist(rng)};
    const HPoint gp = apply(g, p), gq = apply(g, q);
    CHECK(gp.z > 0);
    CHECK(gq.z > 0);
    CHECK(std::abs(hyp_distance(gp, gq) - hyp_distance(p, q)) < 1e-10);
  }
}

TEST_CASE("model conversion is pinned and involutive") {
  const Vec3 b = half_space_to_ball({0, 0, 1});
  CHECK(b.norm() < 1e-14);

  const HPoint h = ball_to_half_space({0, 0, 0});
  CHECK(h.x == doctest::Approx(0.0));
  CHECK(h.z == doctest::Approx(1.0));

  const HPoint p{0.3, -0.2, 0.7};
  const HPoint rt = ball_to_half_space(half_space_to_ball(p));
  CHECK(std::abs(rt.x - p.x) < 1e-12);
  CHECK(std::abs(rt.y - p.y) < 1e-12);
  CHECK(std::abs(rt.z - p.z) < 1e-12);

  CHECK_THROWS_AS(half_space_to_ball({0, 0, -1}), std::domain_error);
  CHECK_THROWS_AS(ball_to_half_space({1.2, 0, 0}), std::domain_error);
}

TEST_CASE("model conversion is a metric isometry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::uniform_real_distribution<double> zdist(0.05, 4.0);
  for (int i = 0; i < 500; ++i) {
    const HPoint p{uni(rng), uni(rng), zdist(rng)};
    const HPoint q{uni(rng), uni(rng), zdist(rng)};
    const double dh = hyp_distance(p, q);
    const double db = ball_distance(half_space_to_ball(p), half_space_to_ball(q));
    CHECK(std::abs(dh - db) < 1e-10);
  }
}

TEST_CASE("side of plane matches the stated arithmetic") {
  const auto hemi = GeodesicPlane::hemisphere({0, 0}, 1.0);
  CHECK(side_of_plane(hemi, {0, 0, 2}) == doctest::Approx(3.0));
  CHECK(side_of_plane(hemi, {0, 0, 1}) == doctest::Approx(0.0));

  const auto vert = GeodesicPlane::vertical({0, 0}, {0, 1});
  CHECK(side_of_plane(vert, {-1, 0, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("side sign is invariant under isometries preserving the plane") {
  // rotations about the hemisphere center preserve it
  const auto hemi = GeodesicPlane::hemisphere({0, 0}, 1.0);
  const auto rot = Isometry::rotation({0, 0}, 0.8);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::uniform_real_distribution<double> zdist(0.05, 3.0);
  for (int i = 0; i < 200; ++i) {
    const HPoint p{uni(rng), uni(rng), zdist(rng)};
    const double s0 = side_of_plane(hemi, p);
    const double s1 = side_of_plane(hemi, apply(rot, p));
    CHECK(s0 * s1 >= 0);
  }
  // translations along the vertical plane x = 0 preserve it
  const auto vert = GeodesicPlane::vertical({0, 0}, {0, 1});
  const auto tr = Isometry::translation({0, 1.3});
  for (int i = 0; i < 200; ++i) {
    const HPoint p{uni(rng), uni(rng), zdist(rng)};
    CHECK(side_of_plane(vert, p) * side_of_plane(vert, apply(tr, p)) >= 0);
  }
}

TEST_CASE("signed plane distance agrees with the vertical geodesic") {
  // distance from (0,0,t) to the unit hemisphere is ln t
  for (double t : {1.5, 2.0, 3.0}) {
    CHECK(signed_plane_distance(GeodesicPlane::hemisphere({0, 0}, 1.0),
                                {0, 0, t}) ==
          doctest::Approx(std::log(t)).epsilon(1e-12));
  }
}

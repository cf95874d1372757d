#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "hplateau/mesh.hpp"

using namespace hplateau;

TEST_CASE("disk mesh has disk topology") {
  const auto pm = disk_mesh({0, 0}, 1.0, 8);
  auto m = lift_planar(pm, 0.1, 0.1);
  validate_mesh(m);
  const auto topo = mesh_topology(m);
  CHECK(topo.chi == 1);
  CHECK(topo.boundary_components == 1);
  CHECK(topo.genus == 0);
  CHECK(topo.shells == 1);
}

TEST_CASE("annulus mesh has annulus topology") {
  const auto pm = annulus_mesh({0, 0}, 0.5, 1.0, 6, 48);
  auto m = lift_planar(pm, 0.1, 0.1);
  validate_mesh(m);
  const auto topo = mesh_topology(m);
  CHECK(topo.chi == 0);
  CHECK(topo.boundary_components == 2);
  CHECK(topo.genus == 0);
}

TEST_CASE("annulus with a handle bookkeeps genus") {
  // torus minus two disks: build a parametric torus grid and delete two
  // separated patches
  const int nu = 24, nv = 16;
  TriMesh m;
  m.truncation_eps = 0.0001;
  auto id = [&](int i, int j) { return (i % nu + nu) % nu * nv + ((j % nv + nv) % nv); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double u = 2 * M_PI * i / nu, v = 2 * M_PI * j / nv;
      const double R = 2.0, r = 0.5;
      m.pos.push_back({(R + r * std::cos(v)) * std::cos(u),
                       (R + r * std::cos(v)) * std::sin(u),
                       3.0 + r * std::sin(v)});
    }
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const bool hole1 = (i == 3 && j == 3);
      const bool hole2 = (i == 13 && j == 9);
      if (hole1 || hole2) continue;
      m.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.vclass.assign(m.pos.size(), VertexClass::free_vertex);
  const auto topo = mesh_topology(m);
  CHECK(topo.chi == -2);
  CHECK(topo.boundary_components == 2);
  CHECK(topo.genus == 1);
}

TEST_CASE("non-manifold edge is rejected") {
  TriMesh m;
  m.truncation_eps = 0.01;
  m.pos = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {0, -1, 1}, {0.5, 0.5, 2}};
  m.tris = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
  m.vclass.assign(5, VertexClass::free_vertex);
  CHECK_THROWS(mesh_topology(m));
}

TEST_CASE("mesh text round trip") {
  const auto pm = disk_mesh({0.3, -0.2}, 0.8, 4);
  auto m = lift_planar(pm, 0.05, 0.05);
  const std::string path = "/tmp/hplateau_test_mesh.txt";
  save_mesh(m, path);
  const auto m2 = load_mesh(path, 0.05);
  REQUIRE(m2.n_vertices() == m.n_vertices());
  REQUIRE(m2.n_triangles() == m.n_triangles());
  for (int v = 0; v < m.n_vertices(); ++v)
    CHECK((m.pos[v] - m2.pos[v]).norm() < 1e-15);
  std::remove(path.c_str());
}

TEST_CASE("polygon mesh of a square with a square hole") {
  std::vector<Vec2> outer = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  // densify sides
  std::vector<Vec2> outer_d;
  for (int s = 0; s < 4; ++s)
    for (int k = 0; k < 8; ++k) {
      const double t = k / 8.0;
      outer_d.push_back(outer[s] * (1 - t) + outer[(s + 1) % 4] * t);
    }
  std::vector<Vec2> hole;
  for (int s = 0; s < 4; ++s)
    for (int k = 0; k < 4; ++k) {
      const double t = k / 4.0;
      const Vec2 a = outer[s] * 0.35, b = outer[(s + 1) % 4] * 0.35;
      hole.push_back(a * (1 - t) + b * t);
    }
  const auto pm = polygon_mesh({outer_d, hole}, 2);
  auto m = lift_planar(pm, 0.1, 0.1);
  const auto topo = mesh_topology(m);
  CHECK(topo.boundary_components == 2);
  CHECK(topo.chi == 0);
  // area sanity: 4 - 0.49 within a few percent (flat at z = 0.1 scales 1/z^2)
  double area = 0;
  for (int t = 0; t < m.n_triangles(); ++t) area += m.triangle_euclidean_area(t);
  CHECK(area == doctest::Approx(4.0 - 0.7 * 0.7).epsilon(1e-6));
}

TEST_CASE("point in polygon parity") {
  std::vector<Vec2> tri = {{0, 0}, {2, 0}, {0, 2}};
  CHECK(point_in_polygon({0.4, 0.4}, tri));
  CHECK(!point_in_polygon({1.5, 1.5}, tri));
}

#pragma once

// Triangulated surfaces in the half-space model with a fixed lifted
// boundary at the truncation height, plus the planar meshing utilities the
// solvers build their initial surfaces from.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hplateau/geometry.hpp"

namespace hplateau {

enum class VertexClass : std::uint8_t {
  free_vertex,   // all three coordinates move
  fixed_vertex,  // Dirichlet: pinned at the lifted boundary
  slide_xz,      // symmetry edge: y pinned, x and z move
};

struct TriMesh {
  std::vector<Vec3> pos;
  std::vector<std::array<int, 3>> tris;
  std::vector<VertexClass> vclass;
  double truncation_eps = 0.1;

  int n_vertices() const { return static_cast<int>(pos.size()); }
  int n_triangles() const { return static_cast<int>(tris.size()); }
  bool movable(int v) const { return vclass[v] != VertexClass::fixed_vertex; }

  Vec3 triangle_normal(int t) const;  // Euclidean, unnormalized
  double triangle_euclidean_area(int t) const;
};

struct MeshTopology {
  int chi = 0;
  int boundary_components = 0;
  int genus = 0;
  int shells = 0;  // connected components of the surface
};

// V - E + F, boundary cycles by boundary-edge tracing, genus per shell from
// chi = 2 - 2g - b.  Throws on a non-manifold edge.
MeshTopology mesh_topology(const TriMesh& m);

// Structural invariants: every edge in <= 2 triangles, boundary-flagged
// vertices exactly at z = eps, all z >= eps (within tol), consistent
// orientability, no degenerate triangles.  Throws with a description.
void validate_mesh(const TriMesh& m, double tol = 1e-9);

std::vector<std::array<int, 2>> boundary_edges(const TriMesh& m);

// Reorders triangle winding so adjacent triangles are consistent; throws if
// the surface is non-orientable.
void orient_consistently(TriMesh& m);

// ASCII format: "v x y z" per vertex, "f i j k" per triangle (1-based).
void save_mesh(const TriMesh& m, const std::string& path);
TriMesh load_mesh(const std::string& path, double eps);

// -------- planar meshing --------

struct PlanarMesh {
  std::vector<Vec2> pts;
  std::vector<std::array<int, 3>> tris;  // CCW
  std::vector<bool> on_boundary;
};

// Structured polar disk: ring k at radius r*k/rings with 6k vertices.
PlanarMesh disk_mesh(Vec2 center, double radius, int rings);

// Structured polar annulus between two concentric circles.
PlanarMesh annulus_mesh(Vec2 center, double r_inner, double r_outer, int n_r,
                        int n_theta);

// Structured rectangle grid.
PlanarMesh rect_mesh(Vec2 lo, Vec2 hi, int nx, int ny);

// Ear-clipping triangulation of a simple CCW polygon, optionally with CW
// holes, followed by `refine_levels` rounds of 4-1 subdivision and interior
// Laplacian smoothing.  Boundary vertices (polygon samples and their
// subdivision midpoints) stay on the input polylines.
PlanarMesh polygon_mesh(const std::vector<std::vector<Vec2>>& outer_then_holes,
                        int refine_levels, int smooth_iters = 30);

// 4-1 subdivision and smoothing, exposed for mesh assembly code.
void refine_planar(PlanarMesh& pm);
void smooth_planar(PlanarMesh& pm, int iters);

// Lift a planar mesh to the z = height plane; boundary samples become
// Dirichlet vertices.
TriMesh lift_planar(const PlanarMesh& pm, double height, double eps);

// Parity test against a closed polygon (1 = inside).
bool point_in_polygon(Vec2 q, const std::vector<Vec2>& poly);

}  // namespace hplateau

#include "hplateau/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hplateau {

Vec3 TriMesh::triangle_normal(int t) const {
  const auto& tri = tris[t];
  const Vec3 a = pos[tri[0]], b = pos[tri[1]], c = pos[tri[2]];
  return (b - a).cross(c - a);
}

double TriMesh::triangle_euclidean_area(int t) const {
  return 0.5 * triangle_normal(t).norm();
}

namespace {

using EdgeKey = std::pair<int, int>;
EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<EdgeKey, std::vector<int>> edge_faces(const TriMesh& m) {
  std::map<EdgeKey, std::vector<int>> ef;
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& tri = m.tris[t];
    for (int e = 0; e < 3; ++e)
      ef[edge_key(tri[e], tri[(e + 1) % 3])].push_back(t);
  }
  return ef;
}

}  // namespace

std::vector<std::array<int, 2>> boundary_edges(const TriMesh& m) {
  std::vector<std::array<int, 2>> out;
  for (const auto& [key, faces] : edge_faces(m))
    if (faces.size() == 1) out.push_back({key.first, key.second});
  return out;
}

MeshTopology mesh_topology(const TriMesh& m) {
  const auto ef = edge_faces(m);
  for (const auto& [key, faces] : ef)
    if (faces.size() > 2)
      throw std::runtime_error("non-manifold edge in mesh_topology");

  MeshTopology topo;
  const int V = m.n_vertices();
  const int E = static_cast<int>(ef.size());
  const int F = m.n_triangles();
  topo.chi = V - E + F;

  // Boundary cycles: walk vertex-to-vertex along boundary edges.
  std::map<int, std::vector<int>> blinks;
  for (const auto& [key, faces] : ef) {
    if (faces.size() == 1) {
      blinks[key.first].push_back(key.second);
      blinks[key.second].push_back(key.first);
    }
  }
  std::map<int, bool> visited;
  for (const auto& [v, nbrs] : blinks) {
    if (nbrs.size() != 2)
      throw std::runtime_error("boundary vertex without two boundary edges");
    visited[v] = false;
  }
  for (const auto& [v0, seen] : visited) {
    if (seen) continue;
    int prev = -1, cur = v0;
    while (!visited[cur]) {
      visited[cur] = true;
      const auto& nb = blinks[cur];
      const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
      prev = cur;
      cur = nxt;
    }
    ++topo.boundary_components;
  }

  // Shells and per-shell genus.
  std::vector<int> shell(F, -1);
  std::map<EdgeKey, std::vector<int>> ef2 = ef;
  int n_shells = 0;
  for (int seed = 0; seed < F; ++seed) {
    if (shell[seed] >= 0) continue;
    std::queue<int> q;
    q.push(seed);
    shell[seed] = n_shells;
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      const auto& tri = m.tris[t];
      for (int e = 0; e < 3; ++e)
        for (int s : ef2[edge_key(tri[e], tri[(e + 1) % 3])])
          if (shell[s] < 0) {
            shell[s] = n_shells;
            q.push(s);
          }
    }
    ++n_shells;
  }
  topo.shells = n_shells;

  if (n_shells == 1) {
    topo.genus = (2 - topo.chi - topo.boundary_components) / 2;
  } else {
    // per-shell chi and boundary counts
    std::vector<int> chi_s(n_shells, 0), b_s(n_shells, 0);
    std::vector<int> vshell(V, -1);
    for (int t = 0; t < F; ++t)
      for (int v : m.tris[t]) vshell[v] = shell[t];
    std::vector<int> vcount(n_shells, 0), ecount(n_shells, 0), fcount(n_shells, 0);
    for (int v = 0; v < V; ++v)
      if (vshell[v] >= 0) ++vcount[vshell[v]];
    for (const auto& [key, faces] : ef) ++ecount[shell[faces[0]]];
    for (int t = 0; t < F; ++t) ++fcount[shell[t]];
    // boundary cycles per shell
    std::map<int, bool> seen2;
    for (auto& [v, b] : visited) seen2[v] = false;
    for (const auto& [v0, dummy] : seen2) {
      if (seen2[v0]) continue;
      int prev = -1, cur = v0;
      while (!seen2[cur]) {
        seen2[cur] = true;
        const auto& nb = blinks[cur];
        const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      ++b_s[vshell[v0]];
    }
    topo.genus = 0;
    for (int s = 0; s < n_shells; ++s) {
      chi_s[s] = vcount[s] - ecount[s] + fcount[s];
      topo.genus += (2 - chi_s[s] - b_s[s]) / 2;
    }
  }
  return topo;
}

void validate_mesh(const TriMesh& m, double tol) {
  if (m.pos.size() != m.vclass.size())
    throw std::runtime_error("mesh: vclass size mismatch");
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (m.pos[v].z < m.truncation_eps - tol)
      throw std::runtime_error("mesh: vertex below truncation height");
    if (m.vclass[v] == VertexClass::fixed_vertex &&
        std::abs(m.pos[v].z - m.truncation_eps) > tol &&
        m.pos[v].z < m.truncation_eps)
      throw std::runtime_error("mesh: fixed vertex below z = eps");
  }
  for (int t = 0; t < m.n_triangles(); ++t) {
    if (m.triangle_euclidean_area(t) <= 1e-14)
      throw std::runtime_error("mesh: degenerate triangle");
    for (int v : m.tris[t])
      if (v < 0 || v >= m.n_vertices())
        throw std::runtime_error("mesh: triangle index out of range");
  }
  const auto ef = edge_faces(m);
  for (const auto& [key, faces] : ef)
    if (faces.size() > 2) throw std::runtime_error("mesh: non-manifold edge");
  TriMesh copy = m;
  orient_consistently(copy);  // throws if non-orientable
}

void orient_consistently(TriMesh& m) {
  const int F = m.n_triangles();
  std::map<EdgeKey, std::vector<int>> ef = edge_faces(m);
  std::vector<int> state(F, 0);  // 0 unvisited, 1 kept, 2 flipped
  for (int seed = 0; seed < F; ++seed) {
    if (state[seed]) continue;
    state[seed] = 1;
    std::queue<int> q;
    q.push(seed);
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      auto tri = m.tris[t];
      if (state[t] == 2) std::swap(tri[1], tri[2]);
      for (int e = 0; e < 3; ++e) {
        const int a = tri[e], b = tri[(e + 1) % 3];
        for (int s : ef[edge_key(a, b)]) {
          if (s == t) continue;
          // neighbor must traverse the shared edge as (b, a)
          auto st = m.tris[s];
          bool same_dir = false;
          for (int k = 0; k < 3; ++k)
            if (st[k] == a && st[(k + 1) % 3] == b) same_dir = true;
          const int want = same_dir ? 2 : 1;
          if (state[s] == 0) {
            state[s] = want;
            q.push(s);
          } else if (state[s] != want) {
            throw std::runtime_error("mesh is not orientable");
          }
        }
      }
    }
  }
  for (int t = 0; t < F; ++t)
    if (state[t] == 2) std::swap(m.tris[t][1], m.tris[t][2]);
}

void save_mesh(const TriMesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  for (const auto& p : m.pos) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& t : m.tris)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

TriMesh load_mesh(const std::string& path, double eps) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  TriMesh m;
  m.truncation_eps = eps;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      ss >> p.x >> p.y >> p.z;
      m.pos.push_back(p);
    } else if (tag == "f") {
      int a, b, c;
      ss >> a >> b >> c;
      m.tris.push_back({a - 1, b - 1, c - 1});
    }
  }
  m.vclass.assign(m.pos.size(), VertexClass::free_vertex);
  for (const auto& e : boundary_edges(m)) {
    m.vclass[e[0]] = VertexClass::fixed_vertex;
    m.vclass[e[1]] = VertexClass::fixed_vertex;
  }
  return m;
}

}  // namespace hplateau

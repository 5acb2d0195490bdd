#include "folcalc/rotation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace folcalc {

RotationSystem::RotationSystem(int vertex_count) : rotation_(vertex_count) {}

int RotationSystem::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
    throw std::out_of_range("RotationSystem::add_edge: vertex out of range");
  }
  int e = edge_count();
  dart_vertex_.push_back(u);
  dart_vertex_.push_back(v);
  rotation_[u].push_back(2 * e);
  rotation_[v].push_back(2 * e + 1);
  return e;
}

void RotationSystem::set_rotation(int vertex, std::vector<int> darts) {
  std::vector<int> have = rotation_.at(vertex);
  std::vector<int> want = darts;
  std::sort(have.begin(), have.end());
  std::sort(want.begin(), want.end());
  if (have != want) {
    throw std::invalid_argument("RotationSystem::set_rotation: dart set mismatch");
  }
  rotation_[vertex] = std::move(darts);
}

std::vector<std::vector<int>> RotationSystem::trace_faces() const {
  const int darts = static_cast<int>(dart_vertex_.size());
  std::vector<int> next(darts, -1);
  for (const auto& rot : rotation_) {
    for (std::size_t i = 0; i < rot.size(); ++i) {
      next[rot[i]] = rot[(i + 1) % rot.size()];
    }
  }
  std::vector<char> seen(darts, 0);
  std::vector<std::vector<int>> faces;
  for (int start = 0; start < darts; ++start) {
    if (seen[start]) continue;
    std::vector<int> walk;
    int d = start;
    while (!seen[d]) {
      seen[d] = 1;
      walk.push_back(d);
      d = next[d ^ 1];
    }
    faces.push_back(std::move(walk));
  }
  return faces;
}

int RotationSystem::isolated_vertices() const {
  int n = 0;
  for (const auto& rot : rotation_) n += rot.empty() ? 1 : 0;
  return n;
}

std::vector<int> RotationSystem::components(int* count) const {
  std::vector<int> parent(vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < edge_count(); ++e) {
    parent[find(dart_vertex_[2 * e])] = find(dart_vertex_[2 * e + 1]);
  }
  std::vector<int> label(vertex_count(), -1);
  std::vector<int> root_label(vertex_count(), -1);
  int n = 0;
  for (int v = 0; v < vertex_count(); ++v) {
    int r = find(v);
    if (root_label[r] < 0) root_label[r] = n++;
    label[v] = root_label[r];
  }
  if (count) *count = n;
  return label;
}

int RotationSystem::euler_characteristic() const {
  int faces = static_cast<int>(trace_faces().size()) + isolated_vertices();
  return vertex_count() - edge_count() + faces;
}

}  // namespace folcalc

#pragma once

#include <vector>

namespace folcalc {

/// Combinatorial map of an embedded multigraph. Darts come in pairs: dart 2e
/// and 2e+1 are the two ends of edge e. Each vertex lists its darts in
/// counterclockwise order; loops contribute two darts to the same vertex.
class RotationSystem {
 public:
  explicit RotationSystem(int vertex_count);

  /// Adds an edge u -> v; returns its index. Darts are appended to the end of
  /// the rotation at each endpoint unless placed later with set_rotation.
  int add_edge(int u, int v);
  void set_rotation(int vertex, std::vector<int> darts);

  int vertex_count() const { return static_cast<int>(rotation_.size()); }
  int edge_count() const { return static_cast<int>(dart_vertex_.size()) / 2; }
  int vertex_of(int dart) const { return dart_vertex_[dart]; }

  /// Boundary walks of the faces, traced by dart -> next(twin(dart)).
  /// Isolated vertices are not reported as walks.
  std::vector<std::vector<int>> trace_faces() const;
  int isolated_vertices() const;
  /// Connected component index per vertex.
  std::vector<int> components(int* count = nullptr) const;
  /// V - E + F summed over the cellular embedding, with each isolated vertex
  /// counted as its own sphere (one face).
  int euler_characteristic() const;

 private:
  std::vector<int> dart_vertex_;
  std::vector<std::vector<int>> rotation_;
};

}  // namespace folcalc

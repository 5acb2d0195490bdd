#pragma once

// The graph G++ of a foliation: sources as vertices, one edge per positive
// saddle joining the sources of the two arcs it consumes. A regular
// neighbourhood of the embedded graph has one boundary circle exactly when the
// graph is a tree, which is the combinatorial tightness certificate.

#include <string>
#include <vector>

#include "folcalc/foliation.hpp"

namespace folcalc {

struct GppEdge {
  int rank = 0;  // ordinal position of the positive saddle
  std::string u;
  std::string v;
};

/// End of an edge at a vertex: edge index plus which endpoint (0 = u, 1 = v).
struct GppDart {
  int edge = 0;
  int end = 0;
  bool operator==(const GppDart&) const = default;
};

struct GppGraph {
  std::vector<std::string> vertices;
  std::vector<GppEdge> edges;
  // Counterclockwise order of edge-ends at each vertex (same order as vertices).
  std::vector<std::vector<GppDart>> rotation;

  int vertex_index(const std::string& id) const;
  /// Graph with rotation given by insertion order of edges at each vertex.
  static GppGraph from_edges(std::vector<std::string> vertices, std::vector<GppEdge> edges);
};

GppGraph build_gpp(const FoliationMovie& m);

bool is_tree(const GppGraph& g);

struct CircleCount {
  int closed_form = 0;  // sum over components of E_c - V_c + 2
  int face_trace = 0;   // boundary walks of the embedding, plus isolated vertices
};

/// Counts boundary circles of a regular neighbourhood both ways. Throws
/// std::logic_error if they disagree (the rotation is not planar).
CircleCount boundary_circles(const GppGraph& g);
int dividing_circle_count(const FoliationMovie& m);

enum class Verdict { TightCompatible, OvertwistedWitness };
const char* verdict_name(Verdict v);

struct TightnessReport {
  bool tree = false;
  int dividing_circles = 0;
  Verdict verdict = Verdict::TightCompatible;
};

/// Both computations must agree; a mismatch throws std::logic_error.
TightnessReport tightness_verdict(const FoliationMovie& m);

/// Why a graph is not a tree: a loop, a cycle or a disconnection, named by
/// edge ranks or vertex ids. Empty for trees.
std::string tree_obstruction(const GppGraph& g);

}  // namespace folcalc

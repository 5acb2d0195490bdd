#include "folcalc/tightness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "folcalc/rotation.hpp"

namespace folcalc {

int GppGraph::vertex_index(const std::string& id) const {
  auto it = std::find(vertices.begin(), vertices.end(), id);
  if (it == vertices.end()) throw std::out_of_range("G++ has no vertex '" + id + "'");
  return static_cast<int>(it - vertices.begin());
}

GppGraph GppGraph::from_edges(std::vector<std::string> vertices, std::vector<GppEdge> edges) {
  GppGraph g;
  g.vertices = std::move(vertices);
  g.edges = std::move(edges);
  g.rotation.resize(g.vertices.size());
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    g.rotation[g.vertex_index(g.edges[e].u)].push_back({e, 0});
    g.rotation[g.vertex_index(g.edges[e].v)].push_back({e, 1});
  }
  return g;
}

GppGraph build_gpp(const FoliationMovie& input) {
  FoliationMovie m = normalized(input);
  GppGraph g;
  for (const auto& e : m.elliptic) {
    if (e.sign == Sign::Plus) g.vertices.push_back(e.id);
  }
  g.rotation.resize(g.vertices.size());
  auto pages = replay(m);
  // Around a source the saddles it meets appear counterclockwise in page order.
  for (std::size_t j = 0; j < m.events.size(); ++j) {
    const auto& ev = m.events[j];
    if (ev.sign != Sign::Plus) continue;
    const Arc& a = *pages[j].find(ev.arc_a);
    const Arc& b = *pages[j].find(ev.arc_b);
    int idx = static_cast<int>(g.edges.size());
    g.edges.push_back({ev.rank, a.pos, b.pos});
    g.rotation[g.vertex_index(a.pos)].push_back({idx, 0});
    g.rotation[g.vertex_index(b.pos)].push_back({idx, 1});
  }
  return g;
}

namespace {

struct Components {
  std::vector<int> label;
  int count = 0;
};

Components components_of(const GppGraph& g) {
  std::vector<int> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(g.vertex_index(e.u))] = find(g.vertex_index(e.v));
  Components c;
  c.label.assign(g.vertices.size(), -1);
  std::vector<int> root_label(g.vertices.size(), -1);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    int r = find(static_cast<int>(v));
    if (root_label[r] < 0) root_label[r] = c.count++;
    c.label[v] = root_label[r];
  }
  return c;
}

}  // namespace

bool is_tree(const GppGraph& g) {
  if (g.vertices.empty()) return false;
  for (const auto& e : g.edges) {
    if (e.u == e.v) return false;
  }
  if (g.edges.size() + 1 != g.vertices.size()) return false;
  return components_of(g).count == 1;
}

CircleCount boundary_circles(const GppGraph& g) {
  CircleCount c;
  auto comps = components_of(g);
  std::vector<int> verts(comps.count, 0), edges(comps.count, 0);
  for (int l : comps.label) ++verts[l];
  for (const auto& e : g.edges) ++edges[comps.label[g.vertex_index(e.u)]];
  for (int i = 0; i < comps.count; ++i) c.closed_form += edges[i] - verts[i] + 2;

  RotationSystem rs(static_cast<int>(g.vertices.size()));
  for (const auto& e : g.edges) rs.add_edge(g.vertex_index(e.u), g.vertex_index(e.v));
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    std::vector<int> darts;
    for (const auto& d : g.rotation[v]) darts.push_back(2 * d.edge + d.end);
    rs.set_rotation(static_cast<int>(v), darts);
  }
  c.face_trace = static_cast<int>(rs.trace_faces().size()) + rs.isolated_vertices();
  if (c.closed_form != c.face_trace) {
    std::ostringstream os;
    os << "G++ rotation is not planar: closed form gives " << c.closed_form << " circles, face tracing gives "
       << c.face_trace;
    throw std::logic_error(os.str());
  }
  return c;
}

int dividing_circle_count(const FoliationMovie& m) { return boundary_circles(build_gpp(m)).face_trace; }

const char* verdict_name(Verdict v) {
  return v == Verdict::TightCompatible ? "tight-compatible" : "overtwisted-witness";
}

TightnessReport tightness_verdict(const FoliationMovie& m) {
  auto g = build_gpp(m);
  TightnessReport r;
  r.tree = is_tree(g);
  r.dividing_circles = boundary_circles(g).face_trace;
  if (r.tree != (r.dividing_circles == 1)) {
    throw std::logic_error("tree test and dividing-circle count disagree");
  }
  r.verdict = r.tree ? Verdict::TightCompatible : Verdict::OvertwistedWitness;
  return r;
}

std::string tree_obstruction(const GppGraph& g) {
  if (g.vertices.empty()) return "empty graph";
  for (const auto& e : g.edges) {
    if (e.u == e.v) return "loop at " + e.u + " from positive saddle of rank " + std::to_string(e.rank);
  }
  // First edge that closes a cycle, together with the tree path it closes.
  const int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge)
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    int u = g.vertex_index(g.edges[i].u), v = g.vertex_index(g.edges[i].v);
    if (find(u) == find(v)) {
      // BFS for the path u -> v in the forest built so far.
      std::vector<int> prev_edge(n, -1), prev(n, -1);
      std::vector<char> seen(n, 0);
      std::vector<int> queue{u};
      seen[u] = 1;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (auto [y, e] : adj[x]) {
          if (!seen[y]) {
            seen[y] = 1;
            prev[y] = x;
            prev_edge[y] = e;
            queue.push_back(y);
          }
        }
      }
      std::vector<int> ranks{g.edges[i].rank};
      for (int x = v; x != u; x = prev[x]) ranks.push_back(g.edges[prev_edge[x]].rank);
      std::sort(ranks.begin(), ranks.end());
      std::ostringstream os;
      os << "cycle through positive saddles of ranks";
      for (int r : ranks) os << ' ' << r;
      return os.str();
    }
    parent[find(u)] = find(v);
    adj[u].push_back({v, i});
    adj[v].push_back({u, i});
  }
  auto comps = components_of(g);
  if (comps.count > 1) {
    std::ostringstream os;
    os << "disconnected into " << comps.count << " components:";
    for (int c = 0; c < comps.count; ++c) {
      os << " {";
      bool first = true;
      for (int v = 0; v < n; ++v) {
        if (comps.label[v] != c) continue;
        os << (first ? "" : " ") << g.vertices[v];
        first = false;
      }
      os << '}';
    }
    return os.str();
  }
  return "";
}

}  // namespace folcalc
